#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "kdm/core.hpp"

namespace kdm {

/// Quadrant probabilities (a, b, c, d) of the recursive matrix model.
using Initiator = std::array<double, 4>;

inline constexpr Initiator kInitiatorB{0.55, 0.15, 0.15, 0.15};
inline constexpr Initiator kInitiatorG{0.45, 0.15, 0.15, 0.25};
inline constexpr Initiator kInitiatorEr{0.25, 0.25, 0.25, 0.25};

/// "b", "g", "er" or four comma-separated probabilities. The probabilities
/// are not validated here; see RmatParams::validate.
std::optional<Initiator> parse_initiator(std::string_view text);

struct RmatParams {
  std::uint32_t scale = 10;  // n = 2^scale
  std::uint32_t edge_factor = 8;
  Initiator initiator = kInitiatorEr;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument.
  void validate() const;
};

enum class WeightKind { uniform, exponential };

/// Uniform on [lo, hi], or lo + Exp(mean (hi - lo) / 4) resampled until it
/// lands in [lo, hi].
struct WeightDistribution {
  WeightKind kind = WeightKind::uniform;
  double lo = 1.0;
  double hi = 524288.0;  // 2^19
  std::uint64_t seed = 1;

  void validate() const;
};

struct GeneratedGraph {
  std::vector<WeightedEdge> edges;
  InstanceStats stats;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_dropped = 0;
};

/// Samples edge_factor * 2^scale quadrant-descent edges, drops self-loops
/// and repeated unordered pairs (first copy wins), then draws weights in
/// edge order. Reproducible across platforms: the bit source is
/// std::mt19937_64 and every conversion to reals is done here.
GeneratedGraph generate_rmat_edges(const RmatParams& params, const WeightDistribution& dist);

/// Writes the edge-list format with an "n m" header. Weights use the
/// shortest round-trip decimal form.
void write_edge_list(const std::filesystem::path& out, std::size_t n,
                     std::span<const WeightedEdge> edges);

InstanceStats generate_rmat(const RmatParams& params, const WeightDistribution& dist,
                            const std::filesystem::path& out);

}  // namespace kdm
