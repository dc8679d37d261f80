#include "grafrec/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>
#include <utility>

#include "grafrec/errors.hpp"

namespace grafrec {

namespace {

// A canonical decimal is the only label form that maps to its own numeric
// value; 18 digits keeps the value comfortably inside NodeId.
bool canonical_decimal(const std::string& s) {
  if (s.empty() || s.size() > 18) return false;
  if (s == "0") return true;
  if (s[0] == '0') return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

NodeId decimal_value(const std::string& s) {
  NodeId v = 0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

}  // namespace

NameMap NameMap::build(std::vector<std::string> labels) {
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  const bool numeric =
      std::all_of(labels.begin(), labels.end(), canonical_decimal);
  NameMap m;
  NodeId next = 0;
  for (const std::string& s : labels) {
    const NodeId id = numeric ? decimal_value(s) : next++;
    m.by_label_.emplace(s, id);
    m.by_id_.emplace(id, s);
  }
  return m;
}

std::optional<NodeId> NameMap::find(const std::string& label) const {
  auto it = by_label_.find(label);
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

NodeId NameMap::add(const std::string& label) {
  auto it = by_label_.find(label);
  if (it != by_label_.end()) return it->second;
  NodeId id;
  if (canonical_decimal(label) && !by_id_.count(decimal_value(label))) {
    id = decimal_value(label);
  } else {
    id = by_id_.empty() ? 0 : by_id_.rbegin()->first + 1;
  }
  by_label_.emplace(label, id);
  by_id_.emplace(id, label);
  return id;
}

void NameMap::bind(NodeId id, const std::string& label) {
  if (by_id_.count(id) || by_label_.count(label)) {
    throw Error(Errc::validation,
                "cannot bind label '" + label + "': already mapped");
  }
  by_label_.emplace(label, id);
  by_id_.emplace(id, label);
}

std::string NameMap::label(NodeId id) const {
  auto it = by_id_.find(id);
  if (it != by_id_.end()) return it->second;
  return std::to_string(id);
}

namespace {

struct FileLine {
  int no = 0;
  std::string text;
};

std::vector<FileLine> significant_lines(const std::string& text) {
  std::vector<FileLine> out;
  std::istringstream in(text);
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    out.push_back({no, line});
  }
  return out;
}

std::vector<std::string> split(const std::string& s, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t p = s.find(delim, start);
    if (p == std::string::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, p - start));
    start = p + 1;
  }
  return out;
}

// Labels must survive TSV, CSV and space-separated list contexts.
void check_label(const std::string& s, int line) {
  bool ok = !s.empty() && s[0] != '[';
  for (char c : s) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) ok = false;
  }
  if (!ok) throw Error(Errc::parse_error, line, "bad label '" + s + "'");
}

int parse_int(const std::string& s, int line, const std::string& what) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw Error(Errc::parse_error, line, "bad " + what + " '" + s + "'");
  return v;
}

double parse_double(const std::string& s, int line, const std::string& what) {
  double v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw Error(Errc::parse_error, line, "bad " + what + " '" + s + "'");
  return v;
}

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

ParsedSession parse_session_text(const std::string& text, bool validate) {
  // label -> (declared kernel, declared object); the same label may be
  // declared once per type so the validator can see collisions.
  std::map<std::string, std::pair<bool, bool>> types;
  std::map<std::string, std::set<std::string>> class_members;
  struct RawEdge {
    std::string src, dst;
  };
  std::vector<RawEdge> raw_edges;
  std::set<std::pair<std::string, std::string>> seen_edges;

  int section = 0;  // 0 none, 1 nodes, 2 edges
  for (const FileLine& l : significant_lines(text)) {
    if (l.text[0] == '[') {
      if (l.text == "[nodes]" && section == 0) {
        section = 1;
      } else if (l.text == "[edges]" && section == 1) {
        section = 2;
      } else {
        throw Error(Errc::parse_error, l.no,
                    "unexpected section '" + l.text + "'");
      }
      continue;
    }
    if (section == 0)
      throw Error(Errc::parse_error, l.no, "expected a section header");
    const std::vector<std::string> f = split(l.text, '\t');
    if (section == 1) {
      if (f.size() != 2 && f.size() != 3) {
        throw Error(Errc::parse_error, l.no,
                    "expected 'label<TAB>kernel|object[<TAB>class]'");
      }
      check_label(f[0], l.no);
      bool kernel;
      if (f[1] == "kernel") {
        kernel = true;
      } else if (f[1] == "object") {
        kernel = false;
      } else {
        throw Error(Errc::parse_error, l.no,
                    "bad node type '" + f[1] + "', expected kernel or object");
      }
      auto& t = types[f[0]];
      bool& flag = kernel ? t.first : t.second;
      if (flag)
        throw Error(Errc::parse_error, l.no, "duplicate node '" + f[0] + "'");
      flag = true;
      if (f.size() == 3) {
        check_label(f[2], l.no);
        class_members[f[2]].insert(f[0]);
      }
    } else {
      if (f.size() != 2)
        throw Error(Errc::parse_error, l.no, "expected 'src<TAB>dst'");
      for (const std::string& label : {f[0], f[1]}) {
        if (!types.count(label))
          throw Error(Errc::parse_error, l.no, "unknown node '" + label + "'");
      }
      if (!seen_edges.emplace(f[0], f[1]).second) {
        throw Error(Errc::parse_error, l.no,
                    "duplicate edge '" + f[0] + " -> " + f[1] + "'");
      }
      raw_edges.push_back({f[0], f[1]});
    }
  }

  std::vector<std::string> labels;
  labels.reserve(types.size());
  for (const auto& [label, t] : types) labels.push_back(label);
  NameMap names = NameMap::build(labels);

  std::vector<NodeId> kernels, objects;
  for (const auto& [label, t] : types) {
    if (t.first) kernels.push_back(*names.find(label));
    if (t.second) objects.push_back(*names.find(label));
  }
  std::vector<Arc> arcs;
  arcs.reserve(raw_edges.size());
  for (const RawEdge& e : raw_edges)
    arcs.push_back(Arc{*names.find(e.src), *names.find(e.dst), {}});

  std::optional<KernelClassPartition> partition;
  if (!class_members.empty()) {
    partition.emplace();
    for (const auto& [cid, members] : class_members) {
      KernelClass c;
      c.id = cid;
      c.type = KernelClassType::Mixed;
      for (const std::string& m : members) c.kernels.push_back(*names.find(m));
      partition->classes.push_back(std::move(c));
    }
  }

  ParsedSession out{SessionGraph::build(std::move(kernels), std::move(objects),
                                        std::move(arcs), std::move(partition)),
                    std::move(names)};
  if (validate) {
    const std::vector<Violation> found = validate_session_graph(out.graph);
    if (!found.empty()) {
      std::string msg = "invalid session graph: ";
      for (std::size_t i = 0; i < found.size(); ++i) {
        if (i) msg += ", ";
        msg += format_violation(found[i], out.names);
      }
      throw Error(Errc::validation, msg);
    }
  }
  return out;
}

ParsedSession parse_session_file(const std::string& path, bool validate) {
  return parse_session_text(read_file(path), validate);
}

namespace {

struct RawWeightedEdge {
  int line = 0;
  std::string src, dst;
  std::optional<double> weight;
};

// Shared edge-line reader for link files: `src<TAB>dst[<TAB>weight]`.
RawWeightedEdge read_edge_line(const FileLine& l,
                               const std::vector<std::string>& f) {
  if (f.size() != 2 && f.size() != 3) {
    throw Error(Errc::parse_error, l.no,
                "expected 'src<TAB>dst[<TAB>weight]'");
  }
  check_label(f[0], l.no);
  check_label(f[1], l.no);
  RawWeightedEdge e{l.no, f[0], f[1], {}};
  if (f.size() == 3) e.weight = parse_double(f[2], l.no, "weight");
  return e;
}

ParsedLink link_from_raw(const std::vector<std::string>& labels,
                         const std::vector<RawWeightedEdge>& raw) {
  NameMap names = NameMap::build(labels);
  std::vector<Arc> arcs;
  arcs.reserve(raw.size());
  for (const RawWeightedEdge& e : raw)
    arcs.push_back(Arc{*names.find(e.src), *names.find(e.dst), e.weight});
  std::vector<NodeId> declared;
  declared.reserve(labels.size());
  for (const std::string& s : labels) declared.push_back(*names.find(s));
  Digraph g = Digraph::from_edges(arcs, declared);
  return {std::move(g), std::move(names)};
}

}  // namespace

ParsedLink parse_link_text(const std::string& text) {
  const std::vector<FileLine> lines = significant_lines(text);
  const bool sectioned = !lines.empty() && lines[0].text[0] == '[';

  std::vector<std::string> labels;
  std::set<std::string> declared;
  std::vector<RawWeightedEdge> raw;
  std::set<std::pair<std::string, std::string>> seen;

  if (!sectioned) {
    for (const FileLine& l : lines) {
      RawWeightedEdge e = read_edge_line(l, split(l.text, '\t'));
      if (!seen.emplace(e.src, e.dst).second) {
        throw Error(Errc::parse_error, l.no,
                    "duplicate edge '" + e.src + " -> " + e.dst + "'");
      }
      labels.push_back(e.src);
      labels.push_back(e.dst);
      raw.push_back(std::move(e));
    }
    return link_from_raw(labels, raw);
  }

  int section = 0;  // 0 none, 1 nodes, 2 edges
  for (const FileLine& l : lines) {
    if (l.text[0] == '[') {
      if (l.text == "[nodes]" && section == 0) {
        section = 1;
      } else if (l.text == "[edges]" && section == 1) {
        section = 2;
      } else {
        throw Error(Errc::parse_error, l.no,
                    "unexpected section '" + l.text + "'");
      }
      continue;
    }
    const std::vector<std::string> f = split(l.text, '\t');
    if (section == 1) {
      if (f.size() != 1)
        throw Error(Errc::parse_error, l.no, "expected one node label");
      check_label(f[0], l.no);
      if (!declared.insert(f[0]).second)
        throw Error(Errc::parse_error, l.no, "duplicate node '" + f[0] + "'");
      labels.push_back(f[0]);
    } else {
      RawWeightedEdge e = read_edge_line(l, f);
      for (const std::string& label : {e.src, e.dst}) {
        if (!declared.count(label))
          throw Error(Errc::parse_error, l.no, "unknown node '" + label + "'");
      }
      if (!seen.emplace(e.src, e.dst).second) {
        throw Error(Errc::parse_error, l.no,
                    "duplicate edge '" + e.src + " -> " + e.dst + "'");
      }
      raw.push_back(std::move(e));
    }
  }
  return link_from_raw(labels, raw);
}

ParsedLink parse_link_file(const std::string& path) {
  return parse_link_text(read_file(path));
}

ParsedLink parse_representation_text(const std::string& text, RepKind kind) {
  if (kind == RepKind::EdgeList) return parse_link_text(text);

  const char* payload_name = nullptr;
  switch (kind) {
    case RepKind::AdjacencyMatrix: payload_name = "[matrix]"; break;
    case RepKind::IncidenceMatrix: payload_name = "[incidence]"; break;
    case RepKind::AdjacencyList: payload_name = "[adjacency]"; break;
    case RepKind::IncidenceList: payload_name = "[arcs]"; break;
    case RepKind::EdgeList: break;
  }

  std::vector<std::string> labels;  // declaration order, drives row order
  std::set<std::string> declared;
  std::vector<FileLine> payload, weight_lines;

  int section = 0;  // 0 none, 1 nodes, 2 payload, 3 weights
  for (const FileLine& l : significant_lines(text)) {
    if (l.text[0] == '[') {
      if (l.text == "[nodes]" && section == 0) {
        section = 1;
      } else if (l.text == payload_name && section == 1) {
        section = 2;
      } else if (l.text == "[weights]" && section == 2) {
        section = 3;
      } else {
        throw Error(Errc::parse_error, l.no,
                    "unexpected section '" + l.text + "'");
      }
      continue;
    }
    switch (section) {
      case 0:
        throw Error(Errc::parse_error, l.no, "expected a section header");
      case 1: {
        const std::vector<std::string> f = split(l.text, '\t');
        if (f.size() != 1)
          throw Error(Errc::parse_error, l.no, "expected one node label");
        check_label(f[0], l.no);
        if (!declared.insert(f[0]).second)
          throw Error(Errc::parse_error, l.no,
                      "duplicate node '" + f[0] + "'");
        labels.push_back(f[0]);
        break;
      }
      case 2: payload.push_back(l); break;
      default: weight_lines.push_back(l); break;
    }
  }
  if (section < 2)
    throw Error(Errc::parse_error, "missing " + std::string(payload_name) +
                                       " section");

  NameMap names = NameMap::build(labels);
  const std::size_t n = labels.size();
  std::vector<NodeId> row_ids;
  row_ids.reserve(n);
  for (const std::string& s : labels) row_ids.push_back(*names.find(s));

  std::vector<Arc> arcs;
  std::set<std::pair<NodeId, NodeId>> seen;
  auto push_arc = [&](NodeId src, NodeId dst, int line) {
    if (!seen.emplace(src, dst).second) {
      std::string msg = "duplicate arc '" + names.label(src) + " -> " +
                        names.label(dst) + "'";
      if (line > 0) throw Error(Errc::parse_error, line, msg);
      throw Error(Errc::parse_error, msg);
    }
    arcs.push_back(Arc{src, dst, {}});
  };

  switch (kind) {
    case RepKind::AdjacencyMatrix: {
      if (payload.size() != n) {
        throw Error(Errc::parse_error,
                    "matrix has " + std::to_string(payload.size()) +
                        " rows, expected " + std::to_string(n));
      }
      for (std::size_t i = 0; i < payload.size(); ++i) {
        const std::vector<std::string> cells = split(payload[i].text, ' ');
        if (cells.size() != n) {
          throw Error(Errc::parse_error, payload[i].no,
                      "expected " + std::to_string(n) + " matrix cells");
        }
        for (std::size_t j = 0; j < n; ++j) {
          if (cells[j] == "1") {
            push_arc(row_ids[i], row_ids[j], payload[i].no);
          } else if (cells[j] != "0") {
            throw Error(Errc::parse_error, payload[i].no,
                        "bad matrix cell '" + cells[j] + "'");
          }
        }
      }
      break;
    }
    case RepKind::IncidenceMatrix: {
      // Zero rows encode e = 0; otherwise one row per node.
      if (!payload.empty()) {
        if (payload.size() != n) {
          throw Error(Errc::parse_error,
                      "incidence matrix has " +
                          std::to_string(payload.size()) +
                          " rows, expected " + std::to_string(n));
        }
        std::vector<std::vector<int>> rows;
        std::size_t e = 0;
        for (std::size_t i = 0; i < payload.size(); ++i) {
          const std::vector<std::string> cells = split(payload[i].text, ' ');
          if (i == 0) {
            e = cells.size();
          } else if (cells.size() != e) {
            throw Error(Errc::parse_error, payload[i].no,
                        "expected " + std::to_string(e) + " incidence cells");
          }
          std::vector<int> row;
          row.reserve(e);
          for (const std::string& c : cells) {
            if (c != "-1" && c != "0" && c != "1" && c != "2") {
              throw Error(Errc::parse_error, payload[i].no,
                          "bad incidence cell '" + c + "'");
            }
            row.push_back(parse_int(c, payload[i].no, "incidence cell"));
          }
          rows.push_back(std::move(row));
        }
        for (std::size_t col = 0; col < e; ++col) {
          std::optional<std::size_t> src, dst, self;
          bool bad = false;
          for (std::size_t i = 0; i < n; ++i) {
            switch (rows[i][col]) {
              case -1: bad = bad || src.has_value(); src = i; break;
              case 1: bad = bad || dst.has_value(); dst = i; break;
              case 2: bad = bad || self.has_value(); self = i; break;
              default: break;
            }
          }
          if (self) bad = bad || src.has_value() || dst.has_value();
          else bad = bad || !src.has_value() || !dst.has_value();
          if (bad) {
            throw Error(Errc::parse_error, "incidence column " +
                                               std::to_string(col + 1) +
                                               " is malformed");
          }
          if (self) push_arc(row_ids[*self], row_ids[*self], 0);
          else push_arc(row_ids[*src], row_ids[*dst], 0);
        }
      }
      break;
    }
    case RepKind::AdjacencyList: {
      std::set<std::string> listed;
      for (const FileLine& l : payload) {
        const std::vector<std::string> f = split(l.text, '\t');
        if (f.size() != 1 && f.size() != 2) {
          throw Error(Errc::parse_error, l.no,
                      "expected 'node[<TAB>neighbor list]'");
        }
        if (!declared.count(f[0]))
          throw Error(Errc::parse_error, l.no, "unknown node '" + f[0] + "'");
        if (!listed.insert(f[0]).second)
          throw Error(Errc::parse_error, l.no,
                      "duplicate adjacency line for '" + f[0] + "'");
        if (f.size() == 2) {
          for (const std::string& dst : split(f[1], ' ')) {
            if (!declared.count(dst)) {
              throw Error(Errc::parse_error, l.no,
                          "unknown node '" + dst + "'");
            }
            push_arc(*names.find(f[0]), *names.find(dst), l.no);
          }
        }
      }
      break;
    }
    case RepKind::IncidenceList: {
      int expected = 0;
      for (const FileLine& l : payload) {
        const std::vector<std::string> f = split(l.text, '\t');
        if (f.size() != 3)
          throw Error(Errc::parse_error, l.no,
                      "expected 'index<TAB>src<TAB>dst'");
        if (parse_int(f[0], l.no, "arc index") != expected) {
          throw Error(Errc::parse_error, l.no,
                      "arc index out of order, expected " +
                          std::to_string(expected));
        }
        ++expected;
        for (const std::string& label : {f[1], f[2]}) {
          if (!declared.count(label))
            throw Error(Errc::parse_error, l.no,
                        "unknown node '" + label + "'");
        }
        push_arc(*names.find(f[1]), *names.find(f[2]), l.no);
      }
      break;
    }
    case RepKind::EdgeList: break;
  }

  if (!weight_lines.empty()) {
    std::map<std::pair<NodeId, NodeId>, std::size_t> arc_pos;
    for (std::size_t i = 0; i < arcs.size(); ++i)
      arc_pos[{arcs[i].src, arcs[i].dst}] = i;
    std::set<std::pair<NodeId, NodeId>> weighted;
    for (const FileLine& l : weight_lines) {
      const std::vector<std::string> f = split(l.text, '\t');
      if (f.size() != 3)
        throw Error(Errc::parse_error, l.no,
                    "expected 'src<TAB>dst<TAB>weight'");
      for (const std::string& label : {f[0], f[1]}) {
        if (!declared.count(label))
          throw Error(Errc::parse_error, l.no, "unknown node '" + label + "'");
      }
      const std::pair<NodeId, NodeId> key{*names.find(f[0]),
                                          *names.find(f[1])};
      auto it = arc_pos.find(key);
      if (it == arc_pos.end()) {
        throw Error(Errc::parse_error, l.no,
                    "weight for missing arc '" + f[0] + " -> " + f[1] + "'");
      }
      if (!weighted.insert(key).second) {
        throw Error(Errc::parse_error, l.no,
                    "duplicate weight for '" + f[0] + " -> " + f[1] + "'");
      }
      arcs[it->second].weight = parse_double(f[2], l.no, "weight");
    }
  }

  std::vector<NodeId> declared_ids = row_ids;
  Digraph g;
  try {
    g = Digraph::from_edges(arcs, declared_ids);
  } catch (const Error& e) {
    throw Error(Errc::parse_error, e.what());
  }
  return {g.convert_to(kind), std::move(names)};
}

ParsedLink parse_representation_file(const std::string& path, RepKind kind) {
  return parse_representation_text(read_file(path), kind);
}

ParsedHet parse_het_text(const std::string& text) {
  struct RawNode {
    int line;
    std::string label;
    NodeType type;
  };
  std::vector<RawNode> raw_nodes;
  std::set<std::string> declared;
  std::vector<RawWeightedEdge> raw_edges;

  int section = 0;  // 0 none, 1 nodes, 2 edges
  for (const FileLine& l : significant_lines(text)) {
    if (l.text[0] == '[') {
      if (l.text == "[nodes]" && section == 0) {
        section = 1;
      } else if (l.text == "[edges]" && section == 1) {
        section = 2;
      } else {
        throw Error(Errc::parse_error, l.no,
                    "unexpected section '" + l.text + "'");
      }
      continue;
    }
    if (section == 0)
      throw Error(Errc::parse_error, l.no, "expected a section header");
    const std::vector<std::string> f = split(l.text, '\t');
    if (section == 1) {
      if (f.size() != 2)
        throw Error(Errc::parse_error, l.no, "expected 'label<TAB>type'");
      check_label(f[0], l.no);
      auto type = node_type_from_string(f[1]);
      if (!type)
        throw Error(Errc::parse_error, l.no, "bad node type '" + f[1] + "'");
      if (!declared.insert(f[0]).second)
        throw Error(Errc::parse_error, l.no, "duplicate node '" + f[0] + "'");
      raw_nodes.push_back({l.no, f[0], *type});
    } else {
      RawWeightedEdge e = read_edge_line(l, f);
      for (const std::string& label : {e.src, e.dst}) {
        if (!declared.count(label))
          throw Error(Errc::parse_error, l.no, "unknown node '" + label + "'");
      }
      raw_edges.push_back(std::move(e));
    }
  }

  std::vector<std::string> labels(declared.begin(), declared.end());
  NameMap names = NameMap::build(labels);
  HetGraph g;
  for (const RawNode& node : raw_nodes)
    g.add_node(*names.find(node.label), node.type);
  for (const RawWeightedEdge& e : raw_edges) {
    try {
      g.add_edge(*names.find(e.src), *names.find(e.dst), e.weight);
    } catch (const Error& err) {
      throw Error(Errc::parse_error, e.line, err.what());
    }
  }
  return {std::move(g), std::move(names)};
}

ParsedHet parse_het_file(const std::string& path) {
  return parse_het_text(read_file(path));
}

ParsedRatings parse_ratings_text(const std::string& text, RatingScale scale) {
  struct RawRating {
    int line;
    std::string user, object;
    int rating;
  };
  std::vector<RawRating> raw;
  std::set<std::string> users, objects;
  for (const FileLine& l : significant_lines(text)) {
    const std::vector<std::string> f = split(l.text, ',');
    if (f.size() != 3)
      throw Error(Errc::parse_error, l.no, "expected 'user,object,rating'");
    check_label(f[0], l.no);
    check_label(f[1], l.no);
    const int r = parse_int(f[2], l.no, "rating");
    if (objects.count(f[0]) || users.count(f[1]) || f[0] == f[1]) {
      const std::string& offender = objects.count(f[0]) ? f[0] : f[1];
      throw Error(Errc::parse_error, l.no,
                  "label '" + offender + "' used as both user and object");
    }
    users.insert(f[0]);
    objects.insert(f[1]);
    raw.push_back({l.no, f[0], f[1], r});
  }

  std::vector<std::string> labels(users.begin(), users.end());
  labels.insert(labels.end(), objects.begin(), objects.end());
  NameMap names = NameMap::build(labels);
  RatingMatrix rm(scale);
  for (const RawRating& r : raw) {
    try {
      rm.rate(*names.find(r.user), *names.find(r.object), r.rating);
    } catch (const Error& err) {
      throw Error(Errc::parse_error, r.line, err.what());
    }
  }
  return {std::move(rm), std::move(names)};
}

ParsedRatings parse_ratings_file(const std::string& path, RatingScale scale) {
  return parse_ratings_text(read_file(path), scale);
}

KernelClassPartition parse_classes_text(const std::string& text,
                                        NameMap& names) {
  struct Cls {
    KernelClassType type;
    std::set<NodeId> members;
  };
  std::map<std::string, Cls> classes;
  for (const FileLine& l : significant_lines(text)) {
    const std::vector<std::string> f = split(l.text, '\t');
    if (f.size() != 3)
      throw Error(Errc::parse_error, l.no,
                  "expected 'class<TAB>type<TAB>kernel'");
    check_label(f[0], l.no);
    auto type = kernel_class_type_from_string(f[1]);
    if (!type)
      throw Error(Errc::parse_error, l.no, "bad class type '" + f[1] + "'");
    check_label(f[2], l.no);
    const NodeId k = names.add(f[2]);
    auto [it, inserted] = classes.emplace(f[0], Cls{*type, {}});
    if (!inserted && it->second.type != *type) {
      throw Error(Errc::parse_error, l.no,
                  "class '" + f[0] + "' re-declared with type " + f[1]);
    }
    if (!it->second.members.insert(k).second) {
      throw Error(Errc::parse_error, l.no,
                  "duplicate member '" + f[2] + "' in class '" + f[0] + "'");
    }
  }
  KernelClassPartition out;
  for (const auto& [cid, c] : classes) {
    KernelClass kc;
    kc.id = cid;
    kc.type = c.type;
    kc.kernels.assign(c.members.begin(), c.members.end());
    out.classes.push_back(std::move(kc));
  }
  return out;
}

KernelClassPartition parse_classes_file(const std::string& path,
                                        NameMap& names) {
  return parse_classes_text(read_file(path), names);
}

std::string serialize_session(const SessionGraph& g, const NameMap& names) {
  std::map<NodeId, std::string> kernel_class;
  if (g.partition()) {
    for (const KernelClass& c : g.partition()->classes) {
      for (NodeId k : c.kernels) kernel_class.emplace(k, c.id);
    }
  }
  std::string out = "[nodes]\n";
  for (NodeId id : g.graph().nodes()) {
    if (g.is_kernel(id)) {
      out += names.label(id) + "\tkernel";
      auto it = kernel_class.find(id);
      if (it != kernel_class.end()) out += "\t" + it->second;
      out += "\n";
    }
    if (g.is_object(id)) out += names.label(id) + "\tobject\n";
  }
  out += "[edges]\n";
  for (const Arc& a : g.graph().arcs())
    out += names.label(a.src) + "\t" + names.label(a.dst) + "\n";
  return out;
}

std::string serialize_representation(const Digraph& g, const NameMap& names) {
  const std::vector<NodeId>& ids = g.nodes();
  const std::vector<Arc> arcs = g.arcs();
  const std::size_t n = ids.size();

  std::string out = "[nodes]\n";
  for (NodeId id : ids) out += names.label(id) + "\n";

  std::map<NodeId, std::size_t> row;
  for (std::size_t i = 0; i < n; ++i) row[ids[i]] = i;

  switch (g.kind()) {
    case RepKind::EdgeList: {
      out += "[edges]\n";
      for (const Arc& a : arcs) {
        out += names.label(a.src) + "\t" + names.label(a.dst);
        if (a.weight) out += "\t" + fmt_g(*a.weight);
        out += "\n";
      }
      return out;  // weights ride inline
    }
    case RepKind::AdjacencyMatrix: {
      out += "[matrix]\n";
      std::vector<std::string> cells(n * n, "0");
      for (const Arc& a : arcs) cells[row[a.src] * n + row[a.dst]] = "1";
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          out += cells[i * n + j];
          out += j + 1 < n ? ' ' : '\n';
        }
      }
      break;
    }
    case RepKind::IncidenceMatrix: {
      out += "[incidence]\n";
      // Zero arcs would mean blank rows, so rows are omitted entirely.
      if (!arcs.empty()) {
        std::vector<std::string> cells(n * arcs.size(), "0");
        for (std::size_t c = 0; c < arcs.size(); ++c) {
          if (arcs[c].src == arcs[c].dst) {
            cells[row[arcs[c].src] * arcs.size() + c] = "2";
          } else {
            cells[row[arcs[c].src] * arcs.size() + c] = "-1";
            cells[row[arcs[c].dst] * arcs.size() + c] = "1";
          }
        }
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t c = 0; c < arcs.size(); ++c) {
            out += cells[i * arcs.size() + c];
            out += c + 1 < arcs.size() ? ' ' : '\n';
          }
        }
      }
      break;
    }
    case RepKind::AdjacencyList: {
      out += "[adjacency]\n";
      for (NodeId id : ids) {
        out += names.label(id);
        const std::vector<NodeId> dsts = g.adjacency(id).out_neighbors;
        for (std::size_t i = 0; i < dsts.size(); ++i) {
          out += i == 0 ? '\t' : ' ';
          out += names.label(dsts[i]);
        }
        out += "\n";
      }
      break;
    }
    case RepKind::IncidenceList: {
      out += "[arcs]\n";
      for (std::size_t i = 0; i < arcs.size(); ++i) {
        out += std::to_string(i) + "\t" + names.label(arcs[i].src) + "\t" +
               names.label(arcs[i].dst) + "\n";
      }
      break;
    }
  }

  bool any_weight = false;
  for (const Arc& a : arcs) any_weight = any_weight || a.weight.has_value();
  if (any_weight) {
    out += "[weights]\n";
    for (const Arc& a : arcs) {
      if (a.weight) {
        out += names.label(a.src) + "\t" + names.label(a.dst) + "\t" +
               fmt_g(*a.weight) + "\n";
      }
    }
  }
  return out;
}

std::string serialize_het(const HetGraph& g, const NameMap& names) {
  std::string out = "[nodes]\n";
  for (const auto& [id, type] : g.nodes())
    out += names.label(id) + "\t" + to_string(type) + "\n";
  out += "[edges]\n";
  for (const HetEdge& e : g.edges()) {
    out += names.label(e.a) + "\t" + names.label(e.b);
    if (e.weight) out += "\t" + fmt_g(*e.weight);
    out += "\n";
  }
  return out;
}

std::string format_violation(const Violation& v, const NameMap& names) {
  std::string out = to_string(v.rule);
  out += "(";
  if (v.rule == ViolationRule::BadArc && v.nodes.size() == 2) {
    out += names.label(v.nodes[0]) + "->" + names.label(v.nodes[1]);
  } else {
    for (std::size_t i = 0; i < v.nodes.size(); ++i) {
      if (i) out += ",";
      out += names.label(v.nodes[i]);
    }
  }
  if (!v.class_ids.empty()) {
    out += ": ";
    for (std::size_t i = 0; i < v.class_ids.size(); ++i) {
      if (i) out += ",";
      out += v.class_ids[i];
    }
  }
  out += ")";
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(Errc::io_error, "cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad())
    throw Error(Errc::io_error, "cannot read '" + path + "'");
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error(Errc::io_error, "cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw Error(Errc::io_error, "cannot write '" + path + "'");
}

}  // namespace grafrec
