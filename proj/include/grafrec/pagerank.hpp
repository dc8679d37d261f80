#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "grafrec/graph.hpp"

// PageRank over a link graph in two algebraically equivalent forms: the
// iterative fixed-point computation (basic and damped update rules) and
// the direct linear-system solution of the stationary equation r = r*A.
// All arithmetic is binary64 with a fixed ascending-id summation order, so
// results are bit-identical across runs and across graph representations.

namespace grafrec {

enum class PageRankVariant { Basic, Damped };

/// What to do with nodes that have no outgoing links. They are a hard
/// error by default; the redistribute policy treats them as linking to
/// every node with weight 1/|N|.
enum class DanglingPolicy { Error, UniformRedistribute };

struct PageRankConfig {
  PageRankVariant variant = PageRankVariant::Damped;
  double d = 0.85;          // damping factor
  double epsilon = 0.01;    // per-page stop margin, max-norm
  int max_iter = 100;
  DanglingPolicy dangling = DanglingPolicy::Error;
};

struct RankState {
  std::map<NodeId, double> ranks;
  int iterations = 0;
  bool converged = false;
};

/// All ranks set to 1/|N|.
RankState init_ranks(const Digraph& g);

/// One update of every rank from the previous state.
/// Basic:  PR'(u) = d * sum over v in in(u) of PR(v)/|out(v)|
/// Damped: PR'(u) = (1-d)/|N| + d * sum over v in in(u) of PR(v)/|out(v)|
RankState pagerank_step(const Digraph& g, const RankState& state,
                        const PageRankConfig& cfg);

/// Iterates from init_ranks until the largest per-page change is at most
/// epsilon (converged) or max_iter iterations ran, whichever comes first.
RankState pagerank_run(const Digraph& g, const PageRankConfig& cfg);

/// Exactly `steps` updates from init_ranks, no convergence check.
RankState pagerank_iterate(const Digraph& g, const PageRankConfig& cfg,
                           int steps);

/// Row-stochastic transition matrix: a_ij = 1/|out(i)| when the arc i->j
/// exists, 0 otherwise.
struct TransitionMatrix {
  std::vector<NodeId> nodes;   // ascending; row/column order
  std::size_t size = 0;
  std::vector<double> values;  // row-major size*size

  double at(std::size_t i, std::size_t j) const {
    return values[i * size + j];
  }
};

TransitionMatrix transition_matrix(const Digraph& g,
                                   DanglingPolicy policy = DanglingPolicy::Error);

/// Solves r = r*A together with the normalization sum(r) = 1 by replacing
/// one row of (A^T - I) with the all-ones row and running Gaussian
/// elimination with partial pivoting. Requires a strongly connected graph.
RankState solve_linear(const Digraph& g);

struct RankedPage {
  std::size_t position = 0;  // 1-based, contiguous
  NodeId node = 0;
  double score = 0;

  friend bool operator==(const RankedPage&, const RankedPage&) = default;
};

/// Pages by descending rank, ties broken by ascending node id.
std::vector<RankedPage> rank_positions(const RankState& state);

}  // namespace grafrec
