#include "grafrec/ars.hpp"

#include <algorithm>
#include <set>

namespace grafrec {

void finalize_ranking(RecommendationVector& vec,
                      std::optional<std::size_t> top_n) {
  std::sort(vec.begin(), vec.end(),
            [](const ScoredObject& l, const ScoredObject& r) {
              if (l.score != r.score) return l.score > r.score;
              return l.object < r.object;
            });
  if (top_n && vec.size() > *top_n) vec.resize(*top_n);
}

ArsSubgraphs ars_subgraphs(const SessionGraph& g, NodeId m,
                           const std::optional<std::string>& class_filter) {
  if (!g.is_object(m))
    throw Error(Errc::unknown_object, "unknown object " + std::to_string(m));

  const KernelClass* cls = nullptr;
  if (class_filter) {
    if (!g.partition() || !(cls = g.partition()->find(*class_filter)))
      throw Error(Errc::unknown_class, "unknown kernel class " + *class_filter);
  }
  auto admitted = [&](NodeId kernel) {
    return !cls || std::binary_search(cls->kernels.begin(), cls->kernels.end(),
                                      kernel);
  };

  // Hop 1: m plus the kernels linking to it.
  std::vector<NodeId> kernels;
  std::vector<Arc> hop1_arcs;
  for (NodeId k : g.graph().adjacency(m).in_neighbors) {
    if (!admitted(k)) continue;
    kernels.push_back(k);
    hop1_arcs.push_back({k, m, std::nullopt});
  }

  // Hop 2: everything those kernels link to.
  std::set<NodeId> objects{m};
  std::vector<Arc> hop2_arcs;
  for (NodeId k : kernels) {
    for (NodeId o : g.graph().adjacency(k).out_neighbors) {
      objects.insert(o);
      hop2_arcs.push_back({k, o, std::nullopt});
    }
  }

  ArsSubgraphs result;
  result.hop1 = SessionGraph::build(kernels, {m}, hop1_arcs);
  result.hop2 = SessionGraph::build(
      kernels, std::vector<NodeId>(objects.begin(), objects.end()), hop2_arcs);
  return result;
}

RecommendationVector ars_recommend(const SessionGraph& g, const ArsQuery& q) {
  const ArsSubgraphs sub = ars_subgraphs(g, q.object, q.class_filter);

  RecommendationVector vec;
  for (NodeId o : sub.hop2.objects()) {
    if (o == q.object) continue;
    const std::size_t score = sub.hop2.graph().adjacency(o).in_degree;
    vec.push_back({o, score});
  }
  finalize_ranking(vec, q.top_n);
  return vec;
}

}  // namespace grafrec
