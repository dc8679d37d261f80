#pragma once

#include <optional>
#include <string>

#include "grafrec/ranking.hpp"
#include "grafrec/session.hpp"

// Session-based recommendation: expand a two-hop subgraph around a query
// object, score the reached objects by their in-degree inside that
// subgraph, and return them as a ranked Top-N vector.

namespace grafrec {

struct ArsQuery {
  NodeId object = 0;
  std::optional<std::string> class_filter;  // restricts participating kernels
  std::optional<std::size_t> top_n;
};

struct ArsSubgraphs {
  SessionGraph hop1;  // query object, its kernels, and the arcs to it
  SessionGraph hop2;  // hop1 plus everything those kernels link to
};

/// Builds the one-hop and two-hop subgraphs around object m. With a class
/// filter only kernels of that class participate.
ArsSubgraphs ars_subgraphs(const SessionGraph& g, NodeId m,
                           const std::optional<std::string>& class_filter = {});

/// Every object of the two-hop subgraph except m itself, ordered by
/// descending in-degree within that subgraph, ties by ascending id.
RecommendationVector ars_recommend(const SessionGraph& g, const ArsQuery& q);

}  // namespace grafrec
