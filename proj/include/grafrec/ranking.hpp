#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "grafrec/graph.hpp"

namespace grafrec {

/// One entry of a ranked recommendation vector. Lower position means a
/// better recommendation; the vector is sorted by descending score with
/// ties broken by ascending object id.
struct ScoredObject {
  NodeId object = 0;
  std::uint64_t score = 0;

  friend bool operator==(const ScoredObject&, const ScoredObject&) = default;
};

using RecommendationVector = std::vector<ScoredObject>;

/// Sorts scored objects into recommendation order and truncates to top_n
/// when given.
void finalize_ranking(RecommendationVector& vec,
                      std::optional<std::size_t> top_n);

}  // namespace grafrec
