#include "kdm/gen.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace kdm {

namespace {

// 53 random bits -> [0, 1).
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double draw_weight(std::mt19937_64& rng, const WeightDistribution& dist) {
  if (dist.kind == WeightKind::uniform) return dist.lo + unit(rng) * (dist.hi - dist.lo);
  const double mean = (dist.hi - dist.lo) / 4.0;
  if (mean == 0.0) return dist.lo;
  for (;;) {
    const double w = dist.lo - mean * std::log1p(-unit(rng));
    if (w <= dist.hi) return w;
  }
}

}  // namespace

std::optional<Initiator> parse_initiator(std::string_view text) {
  if (text == "b") return kInitiatorB;
  if (text == "g") return kInitiatorG;
  if (text == "er") return kInitiatorEr;
  Initiator out{};
  std::size_t i = 0;
  for (;;) {
    const auto comma = text.find(',');
    const auto tok = text.substr(0, comma);
    const auto* end = tok.data() + tok.size();
    if (i == 4) return std::nullopt;
    auto [ptr, ec] = std::from_chars(tok.data(), end, out[i]);
    if (ec != std::errc() || ptr != end) return std::nullopt;
    ++i;
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (i != 4) return std::nullopt;
  return out;
}

void RmatParams::validate() const {
  if (scale < 1 || scale > 30) throw std::invalid_argument("scale must be in [1, 30]");
  if (edge_factor < 1) throw std::invalid_argument("edge factor must be positive");
  double sum = 0.0;
  for (double p : initiator) {
    if (!(p >= 0.0)) throw std::invalid_argument("initiator probabilities must be >= 0");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("initiator probabilities must sum to 1");
}

void WeightDistribution::validate() const {
  if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi))
    throw std::invalid_argument("weight range must satisfy 0 < lo <= hi");
}

GeneratedGraph generate_rmat_edges(const RmatParams& params, const WeightDistribution& dist) {
  params.validate();
  dist.validate();
  const std::uint64_t samples = static_cast<std::uint64_t>(params.edge_factor) << params.scale;
  const double a = params.initiator[0];
  const double ab = a + params.initiator[1];
  const double abc = ab + params.initiator[2];

  GeneratedGraph g;
  std::mt19937_64 rng(params.seed);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(samples);
  for (std::uint64_t s = 0; s < samples; ++s) {
    VertexId row = 0, col = 0;
    for (std::uint32_t level = 0; level < params.scale; ++level) {
      const double r = unit(rng);
      const unsigned quadrant = r < a ? 0 : r < ab ? 1 : r < abc ? 2 : 3;
      row = (row << 1) | (quadrant >> 1);
      col = (col << 1) | (quadrant & 1);
    }
    if (row == col) {
      ++g.self_loops_dropped;
      continue;
    }
    if (!seen.insert(pair_key(row, col)).second) {
      ++g.duplicates_dropped;
      continue;
    }
    g.edges.push_back({row, col, 0.0});
  }

  std::mt19937_64 wrng(dist.seed);
  for (auto& e : g.edges) {
    e.w = draw_weight(wrng, dist);
    g.stats.observe(e);
  }
  g.stats.n = std::size_t{1} << params.scale;
  return g;
}

void write_edge_list(const std::filesystem::path& out, std::size_t n,
                     std::span<const WeightedEdge> edges) {
  std::ofstream os(out, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + out.string() + " for writing");
  std::string line;
  char buf[64];
  os << n << ' ' << edges.size() << '\n';
  for (const auto& e : edges) {
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, e.w);
    line.clear();
    line += std::to_string(e.u);
    line += ' ';
    line += std::to_string(e.v);
    line += ' ';
    line.append(buf, end);
    line += '\n';
    os << line;
  }
  if (!os) throw std::runtime_error("write failed: " + out.string());
}

InstanceStats generate_rmat(const RmatParams& params, const WeightDistribution& dist,
                            const std::filesystem::path& out) {
  const auto g = generate_rmat_edges(params, dist);
  write_edge_list(out, g.stats.n, g.edges);
  return g.stats;
}

}  // namespace kdm
