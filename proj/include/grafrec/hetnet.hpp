#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "grafrec/graph.hpp"
#include "grafrec/ranking.hpp"

// Heterogeneous information network layer: typed nodes and edge families,
// rating matrices lifted from weighted bipartite graphs, the tripartite
// preference graph (user / preference / object) built from co-ratings, its
// extension with group and category nodes, and meta-path walk counting.

namespace grafrec {

enum class NodeType { User, Object, Preference, Group, Category };

std::string to_string(NodeType t);
std::optional<NodeType> node_type_from_string(const std::string& s);

/// Edge families are not stored in input files; they are inferred from the
/// endpoint types, which also fixes the canonical endpoint order below.
enum class EdgeFamily {
  UserObject,        // user, object; weight = rating
  PreferenceObject,  // preference, object; weight is +1 or -1
  UserPreference,    // user, preference; weight = rating difference
  Membership,        // user, group or object, category; unweighted
  UserUser,          // lower id, higher id; unweighted
  ObjectObject,      // lower id, higher id; unweighted
};

struct HetEdge {
  NodeId a = 0;
  NodeId b = 0;
  EdgeFamily family = EdgeFamily::UserObject;
  std::optional<double> weight;

  friend bool operator==(const HetEdge&, const HetEdge&) = default;
};

class HetGraph {
 public:
  /// Idempotent for a repeated (id, type); a second type for the same id
  /// is a DuplicateNode error.
  void add_node(NodeId id, NodeType type);

  /// Infers the family from the endpoint types and normalizes the endpoint
  /// order. Weight presence must match the family: rating and preference
  /// families require one, membership and intra-layer edges forbid it, and
  /// preference-object weights must be exactly +1 or -1.
  void add_edge(NodeId a, NodeId b, std::optional<double> weight = {});

  bool has_node(NodeId id) const;
  std::optional<NodeType> node_type(NodeId id) const;
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::map<NodeId, NodeType>& nodes() const { return nodes_; }

  /// Canonical order: ascending (a, b, family).
  std::vector<HetEdge> edges() const;

  /// Edges incident to id, ascending by the other endpoint.
  std::vector<HetEdge> incident(NodeId id) const;

 private:
  std::map<NodeId, NodeType> nodes_;
  std::map<std::tuple<NodeId, NodeId, EdgeFamily>, std::optional<double>>
      edges_;
};

struct RatingScale {
  int min = 1;
  int max = 5;
};

/// Sparse user x object matrix of integer ratings, at most one per pair.
class RatingMatrix {
 public:
  explicit RatingMatrix(RatingScale scale);

  void rate(NodeId user, NodeId object, int rating);

  std::optional<int> rating(NodeId user, NodeId object) const;
  const std::map<std::pair<NodeId, NodeId>, int>& entries() const {
    return entries_;
  }
  std::vector<NodeId> users() const;
  std::vector<NodeId> objects() const;
  RatingScale scale() const { return scale_; }

 private:
  RatingScale scale_;
  std::map<std::pair<NodeId, NodeId>, int> entries_;  // (user, object)
};

/// Reads a weighted user-object bipartite graph back into matrix form.
RatingMatrix rating_matrix_from_bipartite(const HetGraph& g, RatingScale scale);

/// One preference node stands for an unordered object pair {i, j}, i < j;
/// its +1 edge points at i and its -1 edge at j.
struct PreferenceNode {
  NodeId id = 0;
  NodeId plus_object = 0;
  NodeId minus_object = 0;

  friend bool operator==(const PreferenceNode&, const PreferenceNode&) =
      default;
};

struct PGRecGraph {
  HetGraph graph;
  std::vector<PreferenceNode> preferences;  // ascending by id
  RatingScale scale;
};

/// Tripartite preference graph. A preference node exists for every object
/// pair some user rated with two different values; each such user gets a
/// user-preference edge weighted r_ui - r_uj (i the lower object id). Equal
/// ratings express no preference and add no edge. Preference ids are
/// allocated sequentially above the largest user or object id, in pair
/// order.
PGRecGraph build_pgrec(const RatingMatrix& rm);

/// Adds group nodes per user and category nodes per object, joined by
/// unweighted membership edges, plus optional unweighted user-user and
/// object-object pairs. Never touches existing edges.
HetGraph extend_pgrec(const PGRecGraph& g,
                      const std::map<NodeId, std::vector<NodeId>>& groups,
                      const std::map<NodeId, std::vector<NodeId>>& categories,
                      const std::vector<std::pair<NodeId, NodeId>>& intra_edges = {});

/// Sequence of node-type letters over U, O, G, K (K = category), length
/// at least 2, e.g. "UOU" or "UOKOU".
class MetaPathPattern {
 public:
  static MetaPathPattern parse(const std::string& text);

  const std::string& text() const { return text_; }
  const std::vector<NodeType>& letters() const { return letters_; }

 private:
  std::string text_;
  std::vector<NodeType> letters_;
};

/// Counts typed walks from start whose node types spell the pattern.
/// Edge direction is ignored, a walk may not immediately reuse the edge it
/// arrived by, and the start node is excluded from its own result.
std::map<NodeId, std::uint64_t> match_metapath(const HetGraph& g,
                                               const MetaPathPattern& pattern,
                                               NodeId start);

/// Scores every object the user has not rated by the number of pattern
/// walks ending at users who rated it; zero-scored candidates are dropped.
/// The pattern must start and end with U.
RecommendationVector recommend_via_metapath(
    const HetGraph& g, NodeId user, const MetaPathPattern& pattern,
    std::optional<std::size_t> top_n = {});

}  // namespace grafrec
