#pragma once

#include <stdexcept>
#include <string>

namespace grafrec {

/// Every failure the library reports, by kind. The CLI maps the
/// format-category codes to exit 2 and everything else to exit 1.
enum class Errc {
  // graph-core
  bad_id,
  duplicate_arc,
  unknown_node,
  // session model
  unknown_kernel,
  unknown_object,
  unknown_user,
  unknown_class,
  // pagerank
  empty_graph,
  dangling_node,
  not_strongly_connected,
  singular_system,
  bad_config,
  // heterogeneous graphs
  duplicate_node,
  out_of_scale,
  wrong_node_type,
  bad_weight,
  type_mismatch,
  bad_pattern,
  // files and CLI
  io_error,
  parse_error,
  validation
};

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Error(Errc code, int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        code_(code),
        line_(line) {}

  Errc code() const noexcept { return code_; }

  /// 1-based input line for parse diagnostics, 0 when not applicable.
  int line() const noexcept { return line_; }

private:
  Errc code_;
  int line_ = 0;
};

/// True for errors caused by malformed input files, bad patterns or bad
/// configuration values, as opposed to violated model constraints.
inline bool is_format_error(Errc code) noexcept {
  switch (code) {
    case Errc::io_error:
    case Errc::parse_error:
    case Errc::bad_pattern:
    case Errc::bad_config:
      return true;
    default:
      return false;
  }
}

}  // namespace grafrec
