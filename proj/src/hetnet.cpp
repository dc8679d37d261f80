#include "grafrec/hetnet.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <set>
#include <string>
#include <tuple>

#include "grafrec/errors.hpp"

namespace grafrec {

std::string to_string(NodeType t) {
  switch (t) {
    case NodeType::User: return "user";
    case NodeType::Object: return "object";
    case NodeType::Preference: return "preference";
    case NodeType::Group: return "group";
    case NodeType::Category: return "category";
  }
  return "?";
}

std::optional<NodeType> node_type_from_string(const std::string& s) {
  if (s == "user") return NodeType::User;
  if (s == "object") return NodeType::Object;
  if (s == "preference") return NodeType::Preference;
  if (s == "group") return NodeType::Group;
  if (s == "category") return NodeType::Category;
  return std::nullopt;
}

void HetGraph::add_node(NodeId id, NodeType type) {
  if (id < 0)
    throw Error(Errc::bad_id, "negative node id " + std::to_string(id));
  auto [it, inserted] = nodes_.emplace(id, type);
  if (!inserted && it->second != type) {
    throw Error(Errc::duplicate_node,
                "node " + std::to_string(id) + " is already a " +
                    to_string(it->second));
  }
}

namespace {

struct EdgeShape {
  EdgeFamily family;
  NodeId a;
  NodeId b;
  bool weighted;
};

// Canonical endpoint order per family; nullopt means no family admits the
// given type combination.
std::optional<EdgeShape> infer_edge(NodeId a, NodeType ta, NodeId b,
                                    NodeType tb) {
  using NT = NodeType;
  if (ta == NT::User && tb == NT::Object)
    return EdgeShape{EdgeFamily::UserObject, a, b, true};
  if (ta == NT::Object && tb == NT::User)
    return EdgeShape{EdgeFamily::UserObject, b, a, true};
  if (ta == NT::Preference && tb == NT::Object)
    return EdgeShape{EdgeFamily::PreferenceObject, a, b, true};
  if (ta == NT::Object && tb == NT::Preference)
    return EdgeShape{EdgeFamily::PreferenceObject, b, a, true};
  if (ta == NT::User && tb == NT::Preference)
    return EdgeShape{EdgeFamily::UserPreference, a, b, true};
  if (ta == NT::Preference && tb == NT::User)
    return EdgeShape{EdgeFamily::UserPreference, b, a, true};
  if (ta == NT::User && tb == NT::Group)
    return EdgeShape{EdgeFamily::Membership, a, b, false};
  if (ta == NT::Group && tb == NT::User)
    return EdgeShape{EdgeFamily::Membership, b, a, false};
  if (ta == NT::Object && tb == NT::Category)
    return EdgeShape{EdgeFamily::Membership, a, b, false};
  if (ta == NT::Category && tb == NT::Object)
    return EdgeShape{EdgeFamily::Membership, b, a, false};
  if (ta == NT::User && tb == NT::User)
    return EdgeShape{EdgeFamily::UserUser, std::min(a, b), std::max(a, b),
                     false};
  if (ta == NT::Object && tb == NT::Object)
    return EdgeShape{EdgeFamily::ObjectObject, std::min(a, b), std::max(a, b),
                     false};
  return std::nullopt;
}

}  // namespace

void HetGraph::add_edge(NodeId a, NodeId b, std::optional<double> weight) {
  auto ta = node_type(a);
  if (!ta) throw Error(Errc::unknown_node, "unknown node " + std::to_string(a));
  auto tb = node_type(b);
  if (!tb) throw Error(Errc::unknown_node, "unknown node " + std::to_string(b));
  if (a == b)
    throw Error(Errc::bad_id, "self edge on node " + std::to_string(a));
  auto shape = infer_edge(a, *ta, b, *tb);
  if (!shape) {
    throw Error(Errc::type_mismatch,
                "no edge family joins " + to_string(*ta) + " and " +
                    to_string(*tb));
  }
  if (shape->weighted && !weight) {
    throw Error(Errc::bad_weight, "edge " + std::to_string(a) + "-" +
                                      std::to_string(b) + " requires a weight");
  }
  if (!shape->weighted && weight) {
    throw Error(Errc::bad_weight, "edge " + std::to_string(a) + "-" +
                                      std::to_string(b) + " must be unweighted");
  }
  if (shape->family == EdgeFamily::PreferenceObject && *weight != 1.0 &&
      *weight != -1.0) {
    throw Error(Errc::bad_weight, "preference-object weight must be +1 or -1");
  }
  auto key = std::make_tuple(shape->a, shape->b, shape->family);
  if (!edges_.emplace(key, weight).second) {
    throw Error(Errc::duplicate_arc, "duplicate edge " + std::to_string(a) +
                                         "-" + std::to_string(b));
  }
}

bool HetGraph::has_node(NodeId id) const { return nodes_.count(id) != 0; }

std::optional<NodeType> HetGraph::node_type(NodeId id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) return std::nullopt;
  return it->second;
}

std::vector<HetEdge> HetGraph::edges() const {
  std::vector<HetEdge> out;
  out.reserve(edges_.size());
  for (const auto& [key, weight] : edges_) {
    out.push_back(HetEdge{std::get<0>(key), std::get<1>(key),
                          std::get<2>(key), weight});
  }
  return out;
}

std::vector<HetEdge> HetGraph::incident(NodeId id) const {
  std::vector<HetEdge> out;
  for (const auto& [key, weight] : edges_) {
    if (std::get<0>(key) == id || std::get<1>(key) == id) {
      out.push_back(HetEdge{std::get<0>(key), std::get<1>(key),
                            std::get<2>(key), weight});
    }
  }
  std::sort(out.begin(), out.end(), [id](const HetEdge& x, const HetEdge& y) {
    NodeId ox = x.a == id ? x.b : x.a;
    NodeId oy = y.a == id ? y.b : y.a;
    return std::tie(ox, x.a, x.b, x.family) < std::tie(oy, y.a, y.b, y.family);
  });
  return out;
}

RatingMatrix::RatingMatrix(RatingScale scale) : scale_(scale) {
  if (scale.min >= scale.max)
    throw Error(Errc::bad_config, "rating scale needs min < max");
}

void RatingMatrix::rate(NodeId user, NodeId object, int rating) {
  if (user < 0 || object < 0)
    throw Error(Errc::bad_id, "negative node id");
  if (rating < scale_.min || rating > scale_.max) {
    throw Error(Errc::out_of_scale,
                "rating " + std::to_string(rating) + " for (" +
                    std::to_string(user) + ", " + std::to_string(object) +
                    ") outside scale " + std::to_string(scale_.min) + ".." +
                    std::to_string(scale_.max));
  }
  if (!entries_.emplace(std::make_pair(user, object), rating).second) {
    throw Error(Errc::duplicate_arc,
                "second rating for (" + std::to_string(user) + ", " +
                    std::to_string(object) + ")");
  }
}

std::optional<int> RatingMatrix::rating(NodeId user, NodeId object) const {
  auto it = entries_.find(std::make_pair(user, object));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::vector<NodeId> RatingMatrix::users() const {
  std::vector<NodeId> out;
  for (const auto& [key, r] : entries_) {
    if (out.empty() || out.back() != key.first) out.push_back(key.first);
  }
  return out;
}

std::vector<NodeId> RatingMatrix::objects() const {
  std::set<NodeId> seen;
  for (const auto& [key, r] : entries_) seen.insert(key.second);
  return std::vector<NodeId>(seen.begin(), seen.end());
}

RatingMatrix rating_matrix_from_bipartite(const HetGraph& g,
                                          RatingScale scale) {
  for (const auto& [id, type] : g.nodes()) {
    if (type != NodeType::User && type != NodeType::Object) {
      throw Error(Errc::wrong_node_type,
                  "node " + std::to_string(id) + " is a " + to_string(type) +
                      ", expected user or object");
    }
  }
  RatingMatrix rm(scale);
  for (const HetEdge& e : g.edges()) {
    if (e.family != EdgeFamily::UserObject) {
      throw Error(Errc::wrong_node_type,
                  "edge " + std::to_string(e.a) + "-" + std::to_string(e.b) +
                      " is not a user-object rating");
    }
    const double w = *e.weight;
    if (!(std::floor(w) == w) || w < scale.min || w > scale.max) {
      throw Error(Errc::out_of_scale,
                  "weight of (" + std::to_string(e.a) + ", " +
                      std::to_string(e.b) + ") outside scale " +
                      std::to_string(scale.min) + ".." +
                      std::to_string(scale.max));
    }
    rm.rate(e.a, e.b, static_cast<int>(w));
  }
  return rm;
}

PGRecGraph build_pgrec(const RatingMatrix& rm) {
  PGRecGraph out{HetGraph{}, {}, rm.scale()};
  const std::vector<NodeId> users = rm.users();
  const std::vector<NodeId> objects = rm.objects();
  for (NodeId u : users) out.graph.add_node(u, NodeType::User);
  for (NodeId o : objects) out.graph.add_node(o, NodeType::Object);
  for (const auto& [key, r] : rm.entries())
    out.graph.add_edge(key.first, key.second, static_cast<double>(r));

  NodeId next = 0;
  for (const auto& [id, type] : out.graph.nodes())
    next = std::max(next, id + 1);

  // One preference node per object pair some user rated with two different
  // values; pairs visited in ascending (i, j) order so ids are stable.
  for (std::size_t x = 0; x < objects.size(); ++x) {
    for (std::size_t y = x + 1; y < objects.size(); ++y) {
      const NodeId i = objects[x];
      const NodeId j = objects[y];
      std::vector<std::pair<NodeId, int>> diffs;  // (user, r_ui - r_uj)
      for (NodeId u : users) {
        auto ri = rm.rating(u, i);
        auto rj = rm.rating(u, j);
        if (ri && rj && *ri != *rj) diffs.emplace_back(u, *ri - *rj);
      }
      if (diffs.empty()) continue;
      const NodeId p = next++;
      out.graph.add_node(p, NodeType::Preference);
      out.graph.add_edge(p, i, 1.0);
      out.graph.add_edge(p, j, -1.0);
      for (const auto& [u, d] : diffs)
        out.graph.add_edge(u, p, static_cast<double>(d));
      out.preferences.push_back(PreferenceNode{p, i, j});
    }
  }
  return out;
}

HetGraph extend_pgrec(const PGRecGraph& g,
                      const std::map<NodeId, std::vector<NodeId>>& groups,
                      const std::map<NodeId, std::vector<NodeId>>& categories,
                      const std::vector<std::pair<NodeId, NodeId>>& intra_edges) {
  HetGraph h = g.graph;
  for (const auto& [user, ids] : groups) {
    if (h.node_type(user) != NodeType::User)
      throw Error(Errc::unknown_user, "unknown user " + std::to_string(user));
    std::set<NodeId> unique(ids.begin(), ids.end());
    for (NodeId gid : unique) {
      h.add_node(gid, NodeType::Group);
      h.add_edge(user, gid);
    }
  }
  for (const auto& [object, ids] : categories) {
    if (h.node_type(object) != NodeType::Object)
      throw Error(Errc::unknown_object,
                  "unknown object " + std::to_string(object));
    std::set<NodeId> unique(ids.begin(), ids.end());
    for (NodeId cid : unique) {
      h.add_node(cid, NodeType::Category);
      h.add_edge(object, cid);
    }
  }
  std::set<std::pair<NodeId, NodeId>> unique;
  for (const auto& [a, b] : intra_edges)
    unique.emplace(std::min(a, b), std::max(a, b));
  for (const auto& [a, b] : unique) {
    auto ta = h.node_type(a);
    auto tb = h.node_type(b);
    if (!ta || !tb)
      throw Error(Errc::unknown_node,
                  "unknown node " + std::to_string(ta ? b : a));
    if (ta != tb || (*ta != NodeType::User && *ta != NodeType::Object)) {
      throw Error(Errc::type_mismatch,
                  "intra edge " + std::to_string(a) + "-" + std::to_string(b) +
                      " must join two users or two objects");
    }
    h.add_edge(a, b);
  }
  return h;
}

MetaPathPattern MetaPathPattern::parse(const std::string& text) {
  if (text.size() < 2)
    throw Error(Errc::bad_pattern, "pattern needs at least 2 letters");
  MetaPathPattern p;
  p.text_ = text;
  for (char c : text) {
    switch (c) {
      case 'U': p.letters_.push_back(NodeType::User); break;
      case 'O': p.letters_.push_back(NodeType::Object); break;
      case 'G': p.letters_.push_back(NodeType::Group); break;
      case 'K': p.letters_.push_back(NodeType::Category); break;
      default:
        throw Error(Errc::bad_pattern,
                    std::string("bad pattern letter '") + c + "'");
    }
  }
  return p;
}

std::map<NodeId, std::uint64_t> match_metapath(const HetGraph& g,
                                               const MetaPathPattern& pattern,
                                               NodeId start) {
  auto st = g.node_type(start);
  if (!st)
    throw Error(Errc::unknown_node, "unknown node " + std::to_string(start));
  const std::vector<NodeType>& letters = pattern.letters();
  if (*st != letters.front()) {
    throw Error(Errc::type_mismatch,
                "start node " + std::to_string(start) + " is a " +
                    to_string(*st) + ", pattern expects " +
                    to_string(letters.front()));
  }

  // Incidence index with stable edge ids so a walk can refuse the edge it
  // just arrived by.
  const std::vector<HetEdge> edges = g.edges();
  std::map<NodeId, std::vector<std::pair<std::size_t, NodeId>>> inc;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    inc[edges[e].a].emplace_back(e, edges[e].b);
    inc[edges[e].b].emplace_back(e, edges[e].a);
  }

  constexpr std::size_t kNoEdge = std::numeric_limits<std::size_t>::max();
  std::map<std::pair<NodeId, std::size_t>, std::uint64_t> frontier;
  frontier[{start, kNoEdge}] = 1;
  for (std::size_t pos = 1; pos < letters.size(); ++pos) {
    std::map<std::pair<NodeId, std::size_t>, std::uint64_t> next;
    for (const auto& [state, count] : frontier) {
      auto it = inc.find(state.first);
      if (it == inc.end()) continue;
      for (const auto& [eid, other] : it->second) {
        if (eid == state.second) continue;
        if (g.node_type(other) != letters[pos]) continue;
        next[{other, eid}] += count;
      }
    }
    frontier = std::move(next);
  }

  std::map<NodeId, std::uint64_t> counts;
  for (const auto& [state, count] : frontier) counts[state.first] += count;
  counts.erase(start);
  return counts;
}

RecommendationVector recommend_via_metapath(const HetGraph& g, NodeId user,
                                            const MetaPathPattern& pattern,
                                            std::optional<std::size_t> top_n) {
  if (pattern.letters().front() != NodeType::User ||
      pattern.letters().back() != NodeType::User) {
    throw Error(Errc::bad_pattern,
                "recommendation pattern must start and end with U");
  }
  const std::map<NodeId, std::uint64_t> counts =
      match_metapath(g, pattern, user);

  std::map<NodeId, std::set<NodeId>> rated;  // user -> objects
  for (const HetEdge& e : g.edges()) {
    if (e.family == EdgeFamily::UserObject) rated[e.a].insert(e.b);
  }
  const std::set<NodeId>& own = rated[user];

  RecommendationVector scored;
  for (const auto& [id, type] : g.nodes()) {
    if (type != NodeType::Object || own.count(id)) continue;
    std::uint64_t score = 0;
    for (const auto& [v, count] : counts) {
      auto it = rated.find(v);
      if (it != rated.end() && it->second.count(id)) score += count;
    }
    if (score > 0) scored.push_back(ScoredObject{id, score});
  }
  finalize_ranking(scored, top_n);
  return scored;
}

}  // namespace grafrec
