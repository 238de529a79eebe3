#pragma once

#include "heegcone/lattice.hpp"

#include <optional>
#include <vector>

namespace heegcone {

/// Some x >= 0 with A x = b, or nullopt. Exact two-phase simplex (phase one only), Bland's rule.
std::optional<RatVector> find_nonnegative_solution(const std::vector<RatVector>& a, const RatVector& b);

/// x in conv(points)? Returns convex weights on success.
std::optional<RatVector> convex_combination(const std::vector<RatVector>& points, const RatVector& x);

/// Rank of a set of rational vectors.
std::size_t rational_rank(std::vector<RatVector> rows);

}  // namespace heegcone
