#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "kdm/core.hpp"
#include "kdm/stk.hpp"

namespace kdm {

class InstanceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kExactKdmMaxEdges = 16;
inline constexpr std::size_t kExactMwbmMaxEdges = 20;

struct ExactKdm {
  Weight weight = 0.0;
  KDisjointMatching solution;
};

/// Optimum k-disjoint matching by exhaustive color assignment (with
/// symmetry breaking and a suffix-weight bound). At most 16 edges.
ExactKdm exact_kdm(std::span<const WeightedEdge> graph, std::size_t k);

/// Optimum b-matching weight by exhaustive subset search. At most 20 edges.
Weight exact_mwbm(std::span<const WeightedEdge> graph, const Capacity& b);

/// Dual solution of the k-DM LP built from a terminal stack-algorithm state:
/// y(c, v) = (1 + eps) phi(c, v), and for each edge
/// z(e) = max(0, max_c (w(e) - y(c, u) - y(c, v))).
struct DualCertificate {
  std::size_t k = 0;
  /// y[v * k + c]; vertices beyond the state's extent have y = 0.
  std::vector<Weight> y;
  /// Aligned with the edge list the certificate was built for.
  std::vector<Weight> z;
  Weight y_total = 0.0;
  Weight z_total = 0.0;

  Weight objective() const { return y_total + z_total; }
  Weight y_at(Color c, VertexId v) const {
    const std::size_t i = static_cast<std::size_t>(v) * k + c;
    return i < y.size() ? y[i] : 0.0;
  }
};

class CertificateInfeasible : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Relative slack allowed for floating-point rounding in certificate checks.
inline constexpr double kCertificateTolerance = 1e-9;

/// First violated constraint y(c,u) + y(c,v) + z(e) >= w(e), if any.
std::optional<std::string> find_dual_violation(const DualCertificate& cert,
                                               std::span<const WeightedEdge> graph);

/// Builds the certificate over the complete edge list (verification only;
/// needs the whole instance in memory). Throws CertificateInfeasible.
DualCertificate build_dual_certificate(const StkState& state, std::span<const WeightedEdge> graph);

/// (3 + 2 eps) w(solution) >= objective: certifies the approximation ratio
/// without knowing the optimum, since the objective bounds it from above.
bool certified_ratio_check(const KDisjointMatching& solution, const DualCertificate& cert,
                           double eps);

/// k rounds of weight-sorted greedy matching, removing matched edges
/// between rounds. Ties go to the earlier edge.
KDisjointMatching greedy_iterative_baseline(std::span<const WeightedEdge> graph, std::size_t k);

}  // namespace kdm
