#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "grafrec/errors.hpp"

// Generic finite digraph with five interchangeable physical layouts:
// edge list, adjacency matrix, incidence matrix, adjacency list and
// incidence list. All five encode the same abstract node/arc sets and can
// be converted into each other losslessly. Graphs are immutable once
// built; queries are pure and safe to run concurrently.

namespace grafrec {

using NodeId = std::int64_t;

enum class RepKind {
  EdgeList,
  AdjacencyMatrix,
  IncidenceMatrix,
  AdjacencyList,
  IncidenceList
};

constexpr std::size_t kRepKindCount = 5;

const char* to_string(RepKind kind);
std::optional<RepKind> rep_kind_from_string(const std::string& name);

struct Arc {
  NodeId src = 0;
  NodeId dst = 0;
  std::optional<double> weight;

  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Memory cost model for one representation, both the exact stored-cell
/// count under this library's layout and the asymptotic class.
enum class ComplexityClass { NSquared, NTimesE, NPlusE, E };

const char* to_string(ComplexityClass c);

struct MemoryProfile {
  RepKind kind;
  std::size_t nodes = 0;
  std::size_t arcs = 0;
  std::size_t cells = 0;
  ComplexityClass asymptotic_class;
};

MemoryProfile memory_profile(RepKind kind, std::size_t n, std::size_t e);

/// In/out degrees and sorted neighbor lists of one node.
struct AdjacencyInfo {
  std::size_t in_degree = 0;
  std::size_t out_degree = 0;
  std::vector<NodeId> in_neighbors;   // ascending
  std::vector<NodeId> out_neighbors;  // ascending

  friend bool operator==(const AdjacencyInfo&, const AdjacencyInfo&) = default;
};

class Digraph {
public:
  Digraph() : store_(EdgeListStore{}) {}

  /// Builds an edge-list graph from arcs plus optionally declared isolated
  /// nodes. Rejects negative ids and repeated (src,dst) pairs; at most one
  /// arc may join an ordered node pair.
  static Digraph from_edges(const std::vector<Arc>& arcs,
                            const std::vector<NodeId>& extra_nodes = {});

  /// Re-encodes this graph in the target layout. Total: never fails and
  /// preserves nodes, arcs and weights exactly.
  Digraph convert_to(RepKind target) const;

  RepKind kind() const noexcept;
  std::size_t node_count() const noexcept { return ids_.size(); }
  std::size_t arc_count() const noexcept { return arc_count_; }

  /// Node ids in ascending order.
  const std::vector<NodeId>& nodes() const noexcept { return ids_; }

  /// Arcs in canonical (src,dst)-ascending order, weights attached.
  std::vector<Arc> arcs() const;

  bool has_node(NodeId id) const;
  bool has_arc(NodeId src, NodeId dst) const;

  /// Degrees and sorted neighbor lists of v, answered through whatever
  /// physical layout the graph currently uses.
  AdjacencyInfo adjacency(NodeId v) const;

  /// Memory cost of this graph in its current representation.
  MemoryProfile profile() const;

private:
  // Arc endpoints are stored as dense indices into ids_. Node ids are
  // sorted, so index order and id order agree everywhere.
  using Index = std::uint32_t;
  using IndexArc = std::pair<Index, Index>;

  struct EdgeListStore {
    std::vector<IndexArc> arcs;  // canonical order
  };
  struct AdjMatrixStore {
    std::size_t n = 0;
    std::vector<std::uint8_t> cells;  // n*n row-major, 1 iff arc
  };
  struct IncMatrixStore {
    std::size_t n = 0;
    std::size_t e = 0;
    // n rows by e columns; -1 marks the source row of an arc column, +1
    // the destination row, 2 both when the arc is a self-loop.
    std::vector<std::int8_t> cells;
  };
  struct AdjListStore {
    std::vector<std::vector<Index>> out;  // per node, ascending
    std::vector<std::vector<Index>> in;
  };
  struct IncListStore {
    std::vector<IndexArc> arc_table;             // canonical order
    std::vector<std::vector<Index>> incident;    // arc ids per node, ascending
  };

  using Store = std::variant<EdgeListStore, AdjMatrixStore, IncMatrixStore,
                             AdjListStore, IncListStore>;

  std::vector<IndexArc> canonical_arcs() const;
  static Store build_store(RepKind kind, std::size_t n,
                           const std::vector<IndexArc>& arcs);
  Index index_of(NodeId id) const;

  std::vector<NodeId> ids_;  // ascending
  std::unordered_map<NodeId, Index> index_;
  std::size_t arc_count_ = 0;
  std::vector<std::optional<double>> weights_;  // aligned with canonical order
  Store store_;
};

}  // namespace grafrec
