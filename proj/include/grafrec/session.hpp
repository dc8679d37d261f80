#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "grafrec/graph.hpp"

// Recommendation-session data model: a bipartite digraph of kernels and
// objects where every arc runs kernel -> object, sessions as
// kernel-centered subgraphs, an optional partition of kernels into
// classes, and utility-argmax recommendation sets.

namespace grafrec {

enum class KernelClassType { Behavioral, Static, Mixed };

const char* to_string(KernelClassType t);
std::optional<KernelClassType> kernel_class_type_from_string(
    const std::string& name);

struct KernelClass {
  std::string id;
  KernelClassType type = KernelClassType::Mixed;
  std::vector<NodeId> kernels;  // ascending
};

/// Intended to partition the kernel set; overlap and gaps are representable
/// so the validator can report them.
struct KernelClassPartition {
  std::vector<KernelClass> classes;

  bool has_class(const std::string& id) const;
  const KernelClass* find(const std::string& id) const;
};

class SessionGraph {
public:
  /// Permissive: stores whatever it is given so that the validator can
  /// report constraint violations. Arc endpoints outside the declared
  /// kernel/object sets still become graph nodes.
  static SessionGraph build(std::vector<NodeId> kernels,
                            std::vector<NodeId> objects,
                            std::vector<Arc> arcs,
                            std::optional<KernelClassPartition> partition = {});

  const std::vector<NodeId>& kernels() const noexcept { return kernels_; }
  const std::vector<NodeId>& objects() const noexcept { return objects_; }
  const std::optional<KernelClassPartition>& partition() const noexcept {
    return partition_;
  }
  const Digraph& graph() const noexcept { return graph_; }

  bool is_kernel(NodeId id) const;
  bool is_object(NodeId id) const;

  /// Same session graph with the underlying digraph re-encoded.
  SessionGraph with_representation(RepKind kind) const;

private:
  std::vector<NodeId> kernels_;  // ascending
  std::vector<NodeId> objects_;  // ascending
  std::optional<KernelClassPartition> partition_;
  Digraph graph_;
};

struct Session {
  NodeId kernel = 0;
  std::vector<NodeId> objects;  // ascending; arcs are kernel -> each object

  friend bool operator==(const Session&, const Session&) = default;
};

enum class ViolationRule {
  KernelObjectCollision,
  OrphanKernel,
  OrphanObject,
  BadArc,
  OverlappingClasses,
  NonCoveringClasses,
  UnknownClassMember
};

const char* to_string(ViolationRule rule);

struct Violation {
  ViolationRule rule;
  std::vector<NodeId> nodes;           // offending node(s)
  std::vector<std::string> class_ids;  // offending class(es), when relevant

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Checks every session-graph constraint (disjoint kernel/object sets, no
/// orphan kernels or objects, arcs kernel->object only) and, when a
/// partition is attached, disjointness and coverage of the classes.
/// Returns an empty list iff the graph is valid.
std::vector<Violation> validate_session_graph(const SessionGraph& g);

/// The session of kernel j: j plus exactly its out-neighborhood.
Session extract_session(const SessionGraph& g, NodeId j);

enum class UtilityDomain { UserObject, ObjectObject };

/// Sparse utility table over (left,right) pairs; missing entries mean the
/// pair was never evaluated and never participate in a maximum.
class UtilityTable {
public:
  explicit UtilityTable(UtilityDomain domain) : domain_(domain) {}

  UtilityDomain domain() const noexcept { return domain_; }
  void set(NodeId left, NodeId right, double value);
  std::optional<double> get(NodeId left, NodeId right) const;
  std::size_t size() const noexcept { return entries_.size(); }

private:
  friend std::vector<NodeId> recommend_by_utility(const UtilityTable&, NodeId);
  friend std::vector<NodeId> recommend_for_object_by_utility(
      const UtilityTable&, NodeId);

  UtilityDomain domain_;
  std::map<std::pair<NodeId, NodeId>, double> entries_;
};

/// Argmax set over the objects user c evaluated; ties all kept, ascending.
std::vector<NodeId> recommend_by_utility(const UtilityTable& u, NodeId c);

/// Argmax set over the objects evaluated against m, with m itself excluded
/// from the candidates.
std::vector<NodeId> recommend_for_object_by_utility(const UtilityTable& u,
                                                    NodeId m);

}  // namespace grafrec
