#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "kdm/core.hpp"

namespace kdm {

using Color = std::size_t;  // 0-based; files and messages use 1-based.

inline constexpr double kDefaultEps = 0.001;

struct StackEntry {
  WeightedEdge edge;
  Weight reduced_weight = 0.0;  // w(e) - phi_c at push time
};

/// Emitted for every push, streaming or post-processing.
struct PushEvent {
  WeightedEdge edge;
  Color color = 0;
  Weight phi_u_before = 0.0;
  Weight phi_v_before = 0.0;
  Weight phi_u_after = 0.0;
  Weight phi_v_after = 0.0;
  bool during_post_processing = false;
};

/// State of the primal-dual stack algorithm for k-disjoint matching.
///
/// Each color c keeps approximate duals phi(c, v) and a stack of candidate
/// edges. An arriving edge goes to the first color whose duals it beats by
/// a (1 + eps) margin; finalize() unwinds the stacks greedily, in color
/// order, re-offering blocked edges to higher colors.
class StkState {
 public:
  StkState(std::size_t k, double eps);

  /// Offers one stream edge. Returns the color it was pushed to, or nothing
  /// if it was discarded (state unchanged in that case).
  std::optional<Color> stream_edge(const WeightedEdge& e);

  /// Post-processing. Unwinds every stack; may be called once.
  KDisjointMatching finalize();

  std::size_t k() const { return k_; }
  double eps() const { return eps_; }
  bool finalized() const { return finalized_; }

  Weight phi(Color c, VertexId v) const;
  /// Number of pushes onto stack c incident on v over the whole run.
  std::uint32_t push_count(Color c, VertexId v) const;
  std::uint32_t max_push_count() const { return max_push_count_; }

  const std::vector<StackEntry>& stack(Color c) const { return stacks_[c]; }

  /// One past the largest vertex id that touched the duals.
  std::size_t vertex_extent() const { return phi_.size(); }

  /// Sum over colors and vertices of phi(c, v).
  Weight phi_total() const;

  std::size_t pushes_total() const { return pushes_total_; }
  std::size_t stream_pushes() const { return stream_pushes_; }
  /// Largest number of edges held at once in stacks plus output matchings.
  std::size_t edges_stored_peak() const { return stored_peak_; }

  void set_push_observer(std::function<void(const PushEvent&)> observer) {
    observer_ = std::move(observer);
  }

 private:
  bool try_push(const WeightedEdge& e, Color c, bool post);
  std::vector<Weight>& duals_of(VertexId v);
  std::vector<std::uint32_t>& counts_of(VertexId v);

  std::size_t k_;
  double eps_;
  bool finalized_ = false;
  // Lazily allocated per vertex: an empty inner vector means all zero.
  std::vector<std::vector<Weight>> phi_;
  std::vector<std::vector<std::uint32_t>> push_counts_;
  std::vector<std::vector<StackEntry>> stacks_;
  std::size_t pushes_total_ = 0;
  std::size_t stream_pushes_ = 0;
  std::size_t stored_ = 0;
  std::size_t stored_peak_ = 0;
  std::uint32_t max_push_count_ = 0;
  std::function<void(const PushEvent&)> observer_;
};

struct StkMetrics {
  std::size_t edges_stored_peak = 0;
  std::size_t pushes_total = 0;
  std::uint32_t max_push_count = 0;
  InstanceStats stats;
};

struct StkRun {
  KDisjointMatching solution;
  StkState state;
  StkMetrics metrics;
};

StkRun run_stk(EdgeStream& stream, std::size_t k, double eps = kDefaultEps);

/// Runs with 2k colors and merges color i with color 2k-1-i (0-based) by the
/// optimal matching on their union.
StkRun run_stk_dp(EdgeStream& stream, std::size_t k, double eps = kDefaultEps);

/// 2 + log_{1+eps}(W / eps): the per-(color, vertex) push bound for eps > 0.
double stk_push_bound(double weight_ratio, double eps);

}  // namespace kdm
