#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "kdm/core.hpp"

namespace kdm {

inline constexpr std::int32_t kUncolored = -1;

/// colors[i] is the 0-based color of edges[i], or kUncolored.
struct EdgeColoring {
  std::size_t palette_size = 0;
  std::vector<WeightedEdge> edges;
  std::vector<std::int32_t> colors;

  std::size_t colors_used() const;
};

/// Keeps the heaviest copy of every endpoint pair (first copy on ties), in
/// first-occurrence order.
std::vector<WeightedEdge> simplify_parallel(std::span<const WeightedEdge> edges);

std::size_t max_degree(std::span<const WeightedEdge> edges);

/// Misra–Gries (Δ+1)-edge coloring. With `use_common_color`, an edge whose
/// endpoints share a free color takes the lowest such color directly.
/// Free-color searches always return the lowest index. Throws
/// std::invalid_argument on parallel edges or self-loops.
EdgeColoring color_graph(std::span<const WeightedEdge> edges, bool use_common_color);

/// Proper and fully colored within the palette.
bool is_proper(const EdgeColoring& coloring);

/// Groups color classes into k matchings. With more than k non-empty
/// classes (at most k+1 allowed) the lightest class is dropped, or with
/// `merge` the two lightest are replaced by their optimal merged matching.
KDisjointMatching select_k_heaviest(const EdgeColoring& coloring, std::size_t k, bool merge);

struct StkbOptions {
  bool common_color = false;
  bool merge = false;
};

struct StkbRun {
  KDisjointMatching solution;
  std::size_t bmatching_size = 0;
  std::size_t parallel_dropped = 0;
  std::size_t max_degree = 0;
  std::size_t colors_used = 0;
  std::size_t pushes = 0;
  InstanceStats stats;
};

/// b-matching reduction: semi-streaming b-matching with b ≡ k and eps/2,
/// color the result, keep k classes.
StkbRun run_stkb(EdgeStream& stream, std::size_t k, double eps, StkbOptions opts = {});

}  // namespace kdm
