#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grafrec/graph.hpp"
#include "grafrec/hetnet.hpp"
#include "grafrec/session.hpp"

// On-disk formats and their parsers/serializers. Graph files are UTF-8
// TSV with '#' comment lines and [section] headers; ratings are 3-column
// CSV. Node names in files are free-form labels; the NameMap ties them to
// the numeric ids the engines work with.

namespace grafrec {

/// Label <-> id mapping. When every label is a canonical decimal number
/// the ids are the numbers themselves; otherwise labels get 0-based ids in
/// lexicographic order. Labels added later (class files, preference nodes)
/// receive ids above everything already mapped.
class NameMap {
 public:
  static NameMap build(std::vector<std::string> labels);

  std::optional<NodeId> find(const std::string& label) const;

  /// Existing label keeps its id; a new one gets the next free id.
  NodeId add(const std::string& label);

  /// Registers a label for an id allocated elsewhere. Both sides must be
  /// unmapped.
  void bind(NodeId id, const std::string& label);

  /// Falls back to the decimal form of the id itself when unmapped.
  std::string label(NodeId id) const;

  std::size_t size() const { return by_label_.size(); }

 private:
  std::map<std::string, NodeId> by_label_;
  std::map<NodeId, std::string> by_id_;
};

struct ParsedSession {
  SessionGraph graph;
  NameMap names;
};

struct ParsedLink {
  Digraph graph;
  NameMap names;
};

struct ParsedHet {
  HetGraph graph;
  NameMap names;
};

struct ParsedRatings {
  RatingMatrix matrix;
  NameMap names;
};

/// Session graph file: [nodes] lines `label<TAB>kernel|object[<TAB>class]`,
/// [edges] lines `src<TAB>dst`. An inline class column attaches a partition
/// whose classes all get type mixed. With validate set, any constraint
/// violation raises a Validation error naming the findings.
ParsedSession parse_session_text(const std::string& text, bool validate);
ParsedSession parse_session_file(const std::string& path, bool validate);

/// Link graph file: either bare `src<TAB>dst[<TAB>weight]` lines or the
/// sectioned form with [nodes] (one label per line) and [edges].
ParsedLink parse_link_text(const std::string& text);
ParsedLink parse_link_file(const std::string& path);

/// Representation dump as written by serialize_representation: [nodes]
/// plus the kind-specific payload section, plus [weights] when present.
ParsedLink parse_representation_text(const std::string& text, RepKind kind);
ParsedLink parse_representation_file(const std::string& path, RepKind kind);

/// Het graph file: [nodes] lines `label<TAB>type`, [edges] lines
/// `a<TAB>b[<TAB>weight]` with types user|object|preference|group|category.
ParsedHet parse_het_text(const std::string& text);
ParsedHet parse_het_file(const std::string& path);

/// Ratings: CSV lines `user,object,rating` with integer ratings on the
/// given scale.
ParsedRatings parse_ratings_text(const std::string& text, RatingScale scale);
ParsedRatings parse_ratings_file(const std::string& path, RatingScale scale);

/// Classes file: lines `class_id<TAB>behavioral|static|mixed<TAB>kernel`.
/// Lines of one class accumulate members and must agree on the type.
/// Unknown kernel labels are added to the NameMap so the validator can
/// name them.
KernelClassPartition parse_classes_text(const std::string& text,
                                        NameMap& names);
KernelClassPartition parse_classes_file(const std::string& path,
                                        NameMap& names);

/// Canonical session form: nodes then edges, both in id order.
std::string serialize_session(const SessionGraph& g, const NameMap& names);

/// Dump of the graph in its current representation: [nodes] in id order,
/// one kind-specific payload section ([edges], [matrix], [incidence],
/// [adjacency] or [arcs]) and [weights] when any arc carries one.
std::string serialize_representation(const Digraph& g, const NameMap& names);

/// Canonical het form: typed nodes then edges, both in id order.
std::string serialize_het(const HetGraph& g, const NameMap& names);

/// `Rule(args)` one-liner for a validator finding, e.g. "OrphanObject(o2)"
/// or "OverlappingClasses(j3: c1,c2)".
std::string format_violation(const Violation& v, const NameMap& names);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace grafrec
