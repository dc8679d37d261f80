#pragma once

// Brute-force reference implementations and random model generators for
// the test suite. Everything here is deliberately naive, correctness by
// direct transcription of the definitions, so the engines can be checked
// through an independent path.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "grafrec/graph.hpp"
#include "grafrec/hetnet.hpp"
#include "grafrec/session.hpp"

namespace testsupport {

using grafrec::Arc;
using grafrec::NodeId;

// ----- ARS oracle: explicit two-hop set construction plus counting -----

struct OracleScore {
  NodeId object;
  std::uint64_t score;

  friend bool operator==(const OracleScore&, const OracleScore&) = default;
};

inline std::vector<OracleScore> ars_oracle(
    const std::vector<Arc>& arcs, NodeId m,
    const std::optional<std::set<NodeId>>& admitted_kernels,
    std::optional<std::size_t> top_n) {
  std::set<NodeId> kernels;
  for (const Arc& a : arcs) {
    if (a.dst != m) continue;
    if (admitted_kernels && !admitted_kernels->count(a.src)) continue;
    kernels.insert(a.src);
  }
  std::set<NodeId> objects{m};
  std::map<NodeId, std::uint64_t> indeg;
  for (const Arc& a : arcs) {
    if (!kernels.count(a.src)) continue;
    objects.insert(a.dst);
    ++indeg[a.dst];
  }
  std::vector<OracleScore> out;
  for (NodeId o : objects) {
    if (o == m) continue;
    out.push_back({o, indeg[o]});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const OracleScore& l, const OracleScore& r) {
                     if (l.score != r.score) return l.score > r.score;
                     return l.object < r.object;
                   });
  if (top_n && out.size() > *top_n) out.resize(*top_n);
  return out;
}

// ----- meta-path oracle: recursive enumeration of typed walks -----

inline std::vector<grafrec::NodeType> letters_of(const std::string& pattern) {
  std::vector<grafrec::NodeType> out;
  for (char c : pattern) {
    switch (c) {
      case 'U': out.push_back(grafrec::NodeType::User); break;
      case 'O': out.push_back(grafrec::NodeType::Object); break;
      case 'G': out.push_back(grafrec::NodeType::Group); break;
      case 'K': out.push_back(grafrec::NodeType::Category); break;
      default: break;
    }
  }
  return out;
}

inline void walk_rec(const std::vector<std::pair<NodeId, NodeId>>& edges,
                     const std::map<NodeId, grafrec::NodeType>& types,
                     const std::vector<grafrec::NodeType>& letters, NodeId v,
                     std::size_t pos, std::size_t last_edge,
                     std::map<NodeId, std::uint64_t>& counts) {
  if (pos + 1 == letters.size()) {
    ++counts[v];
    return;
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (e == last_edge) continue;
    NodeId other;
    if (edges[e].first == v) {
      other = edges[e].second;
    } else if (edges[e].second == v) {
      other = edges[e].first;
    } else {
      continue;
    }
    if (types.at(other) != letters[pos + 1]) continue;
    walk_rec(edges, types, letters, other, pos + 1, e, counts);
  }
}

inline std::map<NodeId, std::uint64_t> typed_walk_oracle(
    const grafrec::HetGraph& g, const std::string& pattern, NodeId start) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (const grafrec::HetEdge& e : g.edges()) edges.emplace_back(e.a, e.b);
  const std::map<NodeId, grafrec::NodeType> types(g.nodes().begin(),
                                                  g.nodes().end());
  const std::vector<grafrec::NodeType> letters = letters_of(pattern);
  std::map<NodeId, std::uint64_t> counts;
  walk_rec(edges, types, letters, start, 0,
           static_cast<std::size_t>(-1), counts);
  counts.erase(start);
  return counts;
}

// ----- PGRec oracle: differing co-ratings of one object pair -----

inline int differing_corating_count(
    const std::map<std::pair<NodeId, NodeId>, int>& entries, NodeId i,
    NodeId j) {
  int n = 0;
  for (const auto& [key, ri] : entries) {
    if (key.second != i) continue;
    auto it = entries.find({key.first, j});
    if (it != entries.end() && it->second != ri) ++n;
  }
  return n;
}

// ----- random model generators -----

/// Arcs over nodes 0..n-1, each ordered pair present with probability p;
/// self loops with probability p/2 when allowed. Isolated nodes are kept
/// by passing 0..n-1 as declared nodes.
inline std::vector<Arc> random_arcs(std::mt19937& rng, int n, double p,
                                    bool self_loops) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<Arc> arcs;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        if (self_loops && coin(rng) < p / 2) arcs.push_back({i, i, {}});
      } else if (coin(rng) < p) {
        arcs.push_back({i, j, {}});
      }
    }
  }
  return arcs;
}

inline std::vector<NodeId> iota_nodes(int n) {
  std::vector<NodeId> ids(n);
  for (int i = 0; i < n; ++i) ids[i] = i;
  return ids;
}

/// Every node keeps out-degree >= 1 and no self loops, as PageRank wants.
inline std::vector<Arc> random_dangling_free_arcs(std::mt19937& rng, int n,
                                                  double p) {
  std::vector<Arc> arcs = random_arcs(rng, n, p, false);
  std::set<std::pair<NodeId, NodeId>> have;
  std::vector<int> outdeg(n, 0);
  for (const Arc& a : arcs) {
    have.emplace(a.src, a.dst);
    ++outdeg[a.src];
  }
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int i = 0; i < n; ++i) {
    while (outdeg[i] == 0) {
      int j = pick(rng);
      if (j == i || have.count({i, j})) continue;
      arcs.push_back({i, j, {}});
      have.emplace(i, j);
      ++outdeg[i];
    }
  }
  return arcs;
}

/// A permutation cycle through all nodes plus extra arcs: strongly
/// connected by construction, no self loops, no dangling nodes. For n >= 3
/// a chord closing a cycle of length n-1 is always added; gcd(n, n-1) = 1
/// makes the chain aperiodic, so power iteration converges on every
/// generated graph. n = 2 needs no chord: the uniform vector is already
/// stationary there.
inline std::vector<Arc> random_strongly_connected_arcs(std::mt19937& rng,
                                                       int n, double extra_p) {
  std::vector<NodeId> order = iota_nodes(n);
  std::shuffle(order.begin(), order.end(), rng);
  std::set<std::pair<NodeId, NodeId>> have;
  std::vector<Arc> arcs;
  for (int i = 0; i < n; ++i) {
    NodeId s = order[i], d = order[(i + 1) % n];
    arcs.push_back({s, d, {}});
    have.emplace(s, d);
  }
  if (n >= 3 && have.emplace(order[0], order[2]).second)
    arcs.push_back({order[0], order[2], {}});
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j || have.count({i, j})) continue;
      if (coin(rng) < extra_p) {
        arcs.push_back({i, j, {}});
        have.emplace(i, j);
      }
    }
  }
  return arcs;
}

/// Valid session graph: kernels 1..J, objects 101..100+O, every kernel
/// linked out and every object linked in, plus optional covering and
/// disjoint kernel classes c1..ck.
struct SessionCase {
  std::vector<NodeId> kernels;
  std::vector<NodeId> objects;
  std::vector<Arc> arcs;
  std::optional<grafrec::KernelClassPartition> partition;
};

inline SessionCase random_session_case(std::mt19937& rng,
                                       bool with_partition) {
  std::uniform_int_distribution<int> jdist(1, 20), odist(1, 30);
  const int nj = jdist(rng), no = odist(rng);
  SessionCase c;
  for (int j = 1; j <= nj; ++j) c.kernels.push_back(j);
  for (int o = 1; o <= no; ++o) c.objects.push_back(100 + o);

  std::uniform_int_distribution<int> pick_j(0, nj - 1), pick_o(0, no - 1);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::set<std::pair<NodeId, NodeId>> have;
  auto link = [&](NodeId j, NodeId o) {
    if (have.emplace(j, o).second) c.arcs.push_back({j, o, {}});
  };
  for (NodeId j : c.kernels) link(j, c.objects[pick_o(rng)]);
  for (NodeId o : c.objects) link(c.kernels[pick_j(rng)], o);
  for (NodeId j : c.kernels) {
    for (NodeId o : c.objects) {
      if (coin(rng) < 0.1) link(j, o);
    }
  }

  if (with_partition) {
    std::uniform_int_distribution<int> ncls(1, 3);
    const int k = ncls(rng);
    grafrec::KernelClassPartition part;
    for (int i = 0; i < k; ++i) {
      grafrec::KernelClass cls;
      cls.id = "c" + std::to_string(i + 1);
      cls.type = grafrec::KernelClassType::Mixed;
      part.classes.push_back(cls);
    }
    std::uniform_int_distribution<int> pick_c(0, k - 1);
    for (NodeId j : c.kernels)
      part.classes[pick_c(rng)].kernels.push_back(j);
    c.partition = std::move(part);
  }
  return c;
}

/// Sparse ratings: users 1..U, objects 101..100+O, scale 1..5.
inline grafrec::RatingMatrix random_rating_matrix(std::mt19937& rng) {
  std::uniform_int_distribution<int> udist(1, 10), odist(1, 10), rdist(1, 5);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const int nu = udist(rng), no = odist(rng);
  grafrec::RatingMatrix rm(grafrec::RatingScale{1, 5});
  for (int u = 1; u <= nu; ++u) {
    for (int o = 1; o <= no; ++o) {
      if (coin(rng) < 0.5) rm.rate(u, 100 + o, rdist(rng));
    }
  }
  return rm;
}

/// Mixed het graph with every node and edge family the meta-paths touch:
/// users 1.., objects 101.., groups 201.., categories 301...
inline grafrec::HetGraph random_het_graph(std::mt19937& rng) {
  std::uniform_int_distribution<int> udist(1, 8), odist(1, 10), gdist(0, 5),
      kdist(0, 5), rdist(1, 5);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const int nu = udist(rng), no = odist(rng), ng = gdist(rng), nk = kdist(rng);
  grafrec::HetGraph g;
  for (int u = 1; u <= nu; ++u) g.add_node(u, grafrec::NodeType::User);
  for (int o = 1; o <= no; ++o) g.add_node(100 + o, grafrec::NodeType::Object);
  for (int i = 1; i <= ng; ++i) g.add_node(200 + i, grafrec::NodeType::Group);
  for (int i = 1; i <= nk; ++i)
    g.add_node(300 + i, grafrec::NodeType::Category);
  for (int u = 1; u <= nu; ++u) {
    for (int o = 1; o <= no; ++o) {
      if (coin(rng) < 0.3)
        g.add_edge(u, 100 + o, static_cast<double>(rdist(rng)));
    }
    for (int i = 1; i <= ng; ++i) {
      if (coin(rng) < 0.3) g.add_edge(u, 200 + i);
    }
  }
  for (int o = 1; o <= no; ++o) {
    for (int i = 1; i <= nk; ++i) {
      if (coin(rng) < 0.3) g.add_edge(100 + o, 300 + i);
    }
  }
  for (int a = 1; a <= nu; ++a) {
    for (int b = a + 1; b <= nu; ++b) {
      if (coin(rng) < 0.15) g.add_edge(a, b);
    }
  }
  for (int a = 1; a <= no; ++a) {
    for (int b = a + 1; b <= no; ++b) {
      if (coin(rng) < 0.1) g.add_edge(100 + a, 100 + b);
    }
  }
  return g;
}

}  // namespace testsupport
