#include "grafrec/pagerank.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "grafrec/errors.hpp"

namespace grafrec {

namespace {

// Index-based view of the graph, fixed once per computation so that
// repeated steps sum in exactly the same order.
struct LinkSnapshot {
  std::vector<NodeId> ids;  // ascending
  std::vector<std::vector<std::size_t>> in_idx;
  std::vector<std::vector<std::size_t>> out_idx;
  std::vector<std::size_t> out_degree;
  std::vector<std::size_t> dangling;  // ascending indices
};

std::size_t index_of(const std::vector<NodeId>& ids, NodeId v) {
  auto it = std::lower_bound(ids.begin(), ids.end(), v);
  return static_cast<std::size_t>(it - ids.begin());
}

LinkSnapshot snapshot(const Digraph& g) {
  LinkSnapshot s;
  s.ids = g.nodes();
  const std::size_t m = s.ids.size();
  s.in_idx.resize(m);
  s.out_idx.resize(m);
  s.out_degree.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    AdjacencyInfo adj = g.adjacency(s.ids[i]);
    s.out_degree[i] = adj.out_degree;
    if (adj.out_degree == 0) s.dangling.push_back(i);
    s.in_idx[i].reserve(adj.in_neighbors.size());
    for (NodeId v : adj.in_neighbors) s.in_idx[i].push_back(index_of(s.ids, v));
    s.out_idx[i].reserve(adj.out_neighbors.size());
    for (NodeId v : adj.out_neighbors) s.out_idx[i].push_back(index_of(s.ids, v));
  }
  return s;
}

void check_config(const PageRankConfig& cfg) {
  if (!(cfg.d >= 0.0 && cfg.d <= 1.0))
    throw Error(Errc::bad_config, "damping factor must be in [0, 1]");
  if (!(cfg.epsilon >= 0.0))
    throw Error(Errc::bad_config, "epsilon must be non-negative");
  if (cfg.max_iter < 1)
    throw Error(Errc::bad_config, "max-iter must be at least 1");
}

void check_dangling(const LinkSnapshot& s, DanglingPolicy policy) {
  if (policy == DanglingPolicy::Error && !s.dangling.empty()) {
    throw Error(Errc::dangling_node,
                "node " + std::to_string(s.ids[s.dangling.front()]) +
                    " has no outgoing links");
  }
}

// One update over the index view. values and out must not alias.
void step_values(const LinkSnapshot& s, const PageRankConfig& cfg,
                 const std::vector<double>& values, std::vector<double>& out) {
  const std::size_t m = s.ids.size();
  double loose = 0.0;  // mass held by dangling nodes, spread uniformly
  for (std::size_t i : s.dangling) loose += values[i];
  const double base = cfg.variant == PageRankVariant::Damped
                          ? (1.0 - cfg.d) / static_cast<double>(m)
                          : 0.0;
  for (std::size_t u = 0; u < m; ++u) {
    double sum = loose / static_cast<double>(m);
    for (std::size_t v : s.in_idx[u])
      sum += values[v] / static_cast<double>(s.out_degree[v]);
    out[u] = base + cfg.d * sum;
  }
}

RankState to_state(const LinkSnapshot& s, const std::vector<double>& values,
                   int iterations, bool converged) {
  RankState st;
  for (std::size_t i = 0; i < s.ids.size(); ++i) st.ranks[s.ids[i]] = values[i];
  st.iterations = iterations;
  st.converged = converged;
  return st;
}

std::vector<double> from_state(const LinkSnapshot& s, const RankState& state) {
  if (state.ranks.size() != s.ids.size())
    throw Error(Errc::validation, "rank state does not match the graph nodes");
  std::vector<double> values(s.ids.size());
  for (std::size_t i = 0; i < s.ids.size(); ++i) {
    auto it = state.ranks.find(s.ids[i]);
    if (it == state.ranks.end())
      throw Error(Errc::validation, "rank state does not match the graph nodes");
    values[i] = it->second;
  }
  return values;
}

}  // namespace

RankState init_ranks(const Digraph& g) {
  if (g.node_count() == 0)
    throw Error(Errc::empty_graph, "cannot rank an empty graph");
  RankState st;
  const double v = 1.0 / static_cast<double>(g.node_count());
  for (NodeId id : g.nodes()) st.ranks[id] = v;
  st.iterations = 0;
  st.converged = false;
  return st;
}

RankState pagerank_step(const Digraph& g, const RankState& state,
                        const PageRankConfig& cfg) {
  check_config(cfg);
  if (g.node_count() == 0)
    throw Error(Errc::empty_graph, "cannot rank an empty graph");
  LinkSnapshot s = snapshot(g);
  check_dangling(s, cfg.dangling);
  std::vector<double> values = from_state(s, state);
  std::vector<double> next(values.size());
  step_values(s, cfg, values, next);
  return to_state(s, next, state.iterations + 1, false);
}

RankState pagerank_run(const Digraph& g, const PageRankConfig& cfg) {
  check_config(cfg);
  if (g.node_count() == 0)
    throw Error(Errc::empty_graph, "cannot rank an empty graph");
  LinkSnapshot s = snapshot(g);
  check_dangling(s, cfg.dangling);
  std::vector<double> values(s.ids.size(),
                             1.0 / static_cast<double>(s.ids.size()));
  std::vector<double> next(values.size());
  int iterations = 0;
  bool converged = false;
  while (iterations < cfg.max_iter) {
    step_values(s, cfg, values, next);
    ++iterations;
    double diff = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
      diff = std::max(diff, std::fabs(next[i] - values[i]));
    values.swap(next);
    if (diff <= cfg.epsilon) {
      converged = true;
      break;
    }
  }
  return to_state(s, values, iterations, converged);
}

RankState pagerank_iterate(const Digraph& g, const PageRankConfig& cfg,
                           int steps) {
  check_config(cfg);
  if (steps < 0) throw Error(Errc::bad_config, "steps must be non-negative");
  if (g.node_count() == 0)
    throw Error(Errc::empty_graph, "cannot rank an empty graph");
  LinkSnapshot s = snapshot(g);
  check_dangling(s, cfg.dangling);
  std::vector<double> values(s.ids.size(),
                             1.0 / static_cast<double>(s.ids.size()));
  std::vector<double> next(values.size());
  for (int t = 0; t < steps; ++t) {
    step_values(s, cfg, values, next);
    values.swap(next);
  }
  return to_state(s, values, steps, false);
}

TransitionMatrix transition_matrix(const Digraph& g, DanglingPolicy policy) {
  LinkSnapshot s = snapshot(g);
  check_dangling(s, policy);
  TransitionMatrix a;
  a.nodes = s.ids;
  a.size = s.ids.size();
  a.values.assign(a.size * a.size, 0.0);
  for (std::size_t i = 0; i < a.size; ++i) {
    if (s.out_degree[i] == 0) {
      // UniformRedistribute: a dangling page links everywhere equally.
      for (std::size_t j = 0; j < a.size; ++j)
        a.values[i * a.size + j] = 1.0 / static_cast<double>(a.size);
      continue;
    }
    const double w = 1.0 / static_cast<double>(s.out_degree[i]);
    for (std::size_t j : s.out_idx[i]) a.values[i * a.size + j] = w;
  }
  return a;
}

namespace {

std::vector<bool> reach(const std::vector<std::vector<std::size_t>>& adj,
                        std::size_t start) {
  std::vector<bool> seen(adj.size(), false);
  std::vector<std::size_t> queue{start};
  seen[start] = true;
  while (!queue.empty()) {
    std::size_t v = queue.back();
    queue.pop_back();
    for (std::size_t w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
    }
  }
  return seen;
}

}  // namespace

RankState solve_linear(const Digraph& g) {
  if (g.node_count() == 0)
    throw Error(Errc::empty_graph, "cannot rank an empty graph");
  LinkSnapshot s = snapshot(g);
  check_dangling(s, DanglingPolicy::Error);
  std::vector<bool> fwd = reach(s.out_idx, 0);
  std::vector<bool> bwd = reach(s.in_idx, 0);
  for (std::size_t i = 0; i < s.ids.size(); ++i) {
    if (!fwd[i] || !bwd[i])
      throw Error(Errc::not_strongly_connected,
                  "graph is not strongly connected");
  }

  // Stationary condition r = r*A transposed to column form, with the last
  // equation replaced by the normalization sum(r) = 1.
  const std::size_t m = s.ids.size();
  TransitionMatrix a = transition_matrix(g, DanglingPolicy::Error);
  std::vector<std::vector<double>> sys(m, std::vector<double>(m + 1, 0.0));
  for (std::size_t i = 0; i + 1 < m; ++i) {
    for (std::size_t j = 0; j < m; ++j)
      sys[i][j] = a.at(j, i) - (i == j ? 1.0 : 0.0);
  }
  for (std::size_t j = 0; j < m; ++j) sys[m - 1][j] = 1.0;
  sys[m - 1][m] = 1.0;

  // Gaussian elimination with partial pivoting.
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < m; ++row) {
      if (std::fabs(sys[row][col]) > std::fabs(sys[pivot][col])) pivot = row;
    }
    if (std::fabs(sys[pivot][col]) < 1e-12)
      throw Error(Errc::singular_system, "stationary system is singular");
    if (pivot != col) std::swap(sys[pivot], sys[col]);
    for (std::size_t row = col + 1; row < m; ++row) {
      const double f = sys[row][col] / sys[col][col];
      if (f == 0.0) continue;
      for (std::size_t j = col; j <= m; ++j) sys[row][j] -= f * sys[col][j];
    }
  }
  std::vector<double> values(m);
  for (std::size_t i = m; i-- > 0;) {
    double acc = sys[i][m];
    for (std::size_t j = i + 1; j < m; ++j) acc -= sys[i][j] * values[j];
    values[i] = acc / sys[i][i];
  }
  return to_state(s, values, 0, true);
}

std::vector<RankedPage> rank_positions(const RankState& state) {
  std::vector<RankedPage> out;
  out.reserve(state.ranks.size());
  for (const auto& [node, score] : state.ranks)
    out.push_back(RankedPage{0, node, score});
  std::stable_sort(out.begin(), out.end(),
                   [](const RankedPage& a, const RankedPage& b) {
                     return a.score > b.score;
                   });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].position = i + 1;
  return out;
}

}  // namespace grafrec
