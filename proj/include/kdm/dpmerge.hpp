#pragma once

#include <vector>

#include "kdm/core.hpp"

namespace kdm {

/// One connected component of the union of two matchings, as the ordered
/// sequence of its edges. In a cycle the last edge closes back onto the
/// first vertex.
struct AlternatingComponent {
  std::vector<WeightedEdge> edges;
  bool cycle = false;
};

/// Splits M1 ∪ M2 into alternating paths and even cycles. Throws
/// std::invalid_argument when either input is not a matching or the two
/// share an endpoint pair.
std::vector<AlternatingComponent> decompose_union(const Matching& m1, const Matching& m2);

/// Maximum-weight matching of the union graph of two edge-disjoint
/// matchings. Linear time: a take/skip recurrence per path, two path
/// recurrences per cycle. Ties go to fewer edges.
Matching merge_matchings(const Matching& m1, const Matching& m2);

}  // namespace kdm
