#include "grafrec/session.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

namespace grafrec {

const char* to_string(KernelClassType t) {
  switch (t) {
    case KernelClassType::Behavioral: return "behavioral";
    case KernelClassType::Static: return "static";
    case KernelClassType::Mixed: return "mixed";
  }
  return "?";
}

std::optional<KernelClassType> kernel_class_type_from_string(
    const std::string& name) {
  for (KernelClassType t : {KernelClassType::Behavioral, KernelClassType::Static,
                            KernelClassType::Mixed}) {
    if (name == to_string(t)) return t;
  }
  return std::nullopt;
}

bool KernelClassPartition::has_class(const std::string& id) const {
  return find(id) != nullptr;
}

const KernelClass* KernelClassPartition::find(const std::string& id) const {
  for (const KernelClass& c : classes)
    if (c.id == id) return &c;
  return nullptr;
}

SessionGraph SessionGraph::build(std::vector<NodeId> kernels,
                                 std::vector<NodeId> objects,
                                 std::vector<Arc> arcs,
                                 std::optional<KernelClassPartition> partition) {
  SessionGraph g;
  std::sort(kernels.begin(), kernels.end());
  kernels.erase(std::unique(kernels.begin(), kernels.end()), kernels.end());
  std::sort(objects.begin(), objects.end());
  objects.erase(std::unique(objects.begin(), objects.end()), objects.end());

  std::vector<NodeId> declared = kernels;
  declared.insert(declared.end(), objects.begin(), objects.end());

  g.kernels_ = std::move(kernels);
  g.objects_ = std::move(objects);
  g.partition_ = std::move(partition);
  if (g.partition_) {
    for (KernelClass& c : g.partition_->classes)
      std::sort(c.kernels.begin(), c.kernels.end());
  }
  g.graph_ = Digraph::from_edges(arcs, declared);
  return g;
}

bool SessionGraph::is_kernel(NodeId id) const {
  return std::binary_search(kernels_.begin(), kernels_.end(), id);
}

bool SessionGraph::is_object(NodeId id) const {
  return std::binary_search(objects_.begin(), objects_.end(), id);
}

SessionGraph SessionGraph::with_representation(RepKind kind) const {
  SessionGraph g = *this;
  g.graph_ = graph_.convert_to(kind);
  return g;
}

const char* to_string(ViolationRule rule) {
  switch (rule) {
    case ViolationRule::KernelObjectCollision: return "KernelObjectCollision";
    case ViolationRule::OrphanKernel: return "OrphanKernel";
    case ViolationRule::OrphanObject: return "OrphanObject";
    case ViolationRule::BadArc: return "BadArc";
    case ViolationRule::OverlappingClasses: return "OverlappingClasses";
    case ViolationRule::NonCoveringClasses: return "NonCoveringClasses";
    case ViolationRule::UnknownClassMember: return "UnknownClassMember";
  }
  return "?";
}

std::vector<Violation> validate_session_graph(const SessionGraph& g) {
  std::vector<Violation> found;

  for (NodeId id : g.kernels())
    if (g.is_object(id))
      found.push_back({ViolationRule::KernelObjectCollision, {id}, {}});

  for (NodeId k : g.kernels())
    if (g.graph().adjacency(k).out_degree == 0)
      found.push_back({ViolationRule::OrphanKernel, {k}, {}});

  for (NodeId o : g.objects())
    if (g.graph().adjacency(o).in_degree == 0)
      found.push_back({ViolationRule::OrphanObject, {o}, {}});

  for (const Arc& a : g.graph().arcs())
    if (!g.is_kernel(a.src) || !g.is_object(a.dst))
      found.push_back({ViolationRule::BadArc, {a.src, a.dst}, {}});

  if (g.partition()) {
    std::map<NodeId, std::vector<std::string>> membership;
    for (const KernelClass& c : g.partition()->classes) {
      for (NodeId k : c.kernels) {
        membership[k].push_back(c.id);
        if (!g.is_kernel(k))
          found.push_back({ViolationRule::UnknownClassMember, {k}, {c.id}});
      }
    }
    for (auto& [k, classes] : membership) {
      if (classes.size() > 1)
        found.push_back({ViolationRule::OverlappingClasses, {k}, classes});
    }
    for (NodeId k : g.kernels()) {
      if (membership.find(k) == membership.end())
        found.push_back({ViolationRule::NonCoveringClasses, {k}, {}});
    }
  }

  std::sort(found.begin(), found.end(), [](const Violation& l, const Violation& r) {
    if (l.rule != r.rule) return l.rule < r.rule;
    if (l.nodes != r.nodes) return l.nodes < r.nodes;
    return l.class_ids < r.class_ids;
  });
  return found;
}

Session extract_session(const SessionGraph& g, NodeId j) {
  if (!g.is_kernel(j))
    throw Error(Errc::unknown_kernel, "unknown kernel " + std::to_string(j));
  Session s;
  s.kernel = j;
  s.objects = g.graph().adjacency(j).out_neighbors;
  return s;
}

void UtilityTable::set(NodeId left, NodeId right, double value) {
  entries_[{left, right}] = value;
}

std::optional<double> UtilityTable::get(NodeId left, NodeId right) const {
  auto it = entries_.find({left, right});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

namespace {

// Shared argmax scan over the evaluated entries of one left id. The map is
// ordered, so candidates arrive with ascending right id.
std::vector<NodeId> argmax_entries(
    const std::map<std::pair<NodeId, NodeId>, double>& entries, NodeId left,
    std::optional<NodeId> excluded) {
  std::vector<NodeId> best;
  double best_value = 0;
  auto it = entries.lower_bound({left, std::numeric_limits<NodeId>::min()});
  for (; it != entries.end() && it->first.first == left; ++it) {
    const NodeId candidate = it->first.second;
    if (excluded && candidate == *excluded) continue;
    if (best.empty() || it->second > best_value) {
      best_value = it->second;
      best.assign(1, candidate);
    } else if (it->second == best_value) {
      best.push_back(candidate);
    }
  }
  return best;
}

bool has_left(const std::map<std::pair<NodeId, NodeId>, double>& entries,
              NodeId left) {
  auto it = entries.lower_bound({left, std::numeric_limits<NodeId>::min()});
  return it != entries.end() && it->first.first == left;
}

}  // namespace

std::vector<NodeId> recommend_by_utility(const UtilityTable& u, NodeId c) {
  if (u.domain() != UtilityDomain::UserObject)
    throw Error(Errc::type_mismatch, "utility table is not user-object");
  if (!has_left(u.entries_, c))
    throw Error(Errc::unknown_user, "no utility entries for user " +
                                        std::to_string(c));
  return argmax_entries(u.entries_, c, std::nullopt);
}

std::vector<NodeId> recommend_for_object_by_utility(const UtilityTable& u,
                                                    NodeId m) {
  if (u.domain() != UtilityDomain::ObjectObject)
    throw Error(Errc::type_mismatch, "utility table is not object-object");
  if (!has_left(u.entries_, m))
    throw Error(Errc::unknown_object, "no utility entries for object " +
                                          std::to_string(m));
  return argmax_entries(u.entries_, m, m);
}

}  // namespace grafrec
