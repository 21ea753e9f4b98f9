#include "kdm/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace kdm {

namespace {

struct LocalGraph {
  std::vector<WeightedEdge> edges;  // heaviest first, local vertex ids
  std::vector<std::size_t> original;  // index into the input
  std::vector<Weight> suffix;         // suffix[i] = sum of weights i..m-1
  std::size_t n = 0;
};

LocalGraph localize(std::span<const WeightedEdge> graph) {
  LocalGraph g;
  g.original.resize(graph.size());
  std::iota(g.original.begin(), g.original.end(), 0);
  std::stable_sort(g.original.begin(), g.original.end(),
                   [&](std::size_t a, std::size_t b) { return graph[a].w > graph[b].w; });
  std::unordered_map<VertexId, VertexId> local;
  for (std::size_t i : g.original) {
    const auto& e = graph[i];
    if (e.u == e.v) throw std::invalid_argument("self-loop in oracle input");
    const auto id = [&](VertexId x) {
      return local.try_emplace(x, static_cast<VertexId>(local.size())).first->second;
    };
    g.edges.push_back({id(e.u), id(e.v), e.w});
  }
  g.n = local.size();
  g.suffix.assign(g.edges.size() + 1, 0.0);
  for (std::size_t i = g.edges.size(); i-- > 0;) g.suffix[i] = g.suffix[i + 1] + g.edges[i].w;
  return g;
}

}  // namespace

ExactKdm exact_kdm(std::span<const WeightedEdge> graph, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  if (graph.size() > kExactKdmMaxEdges)
    throw InstanceTooLarge("exact k-DM supports at most " + std::to_string(kExactKdmMaxEdges) +
                           " edges, got " + std::to_string(graph.size()));
  const LocalGraph g = localize(graph);
  const std::size_t m = g.edges.size();
  // More than m colors can never be used.
  const std::size_t colors = std::min(k, std::max<std::size_t>(m, 1));

  std::vector<std::uint64_t> busy(colors, 0);  // vertex bitmask per color
  std::vector<std::int32_t> assign(m, -1);
  std::vector<std::int32_t> best_assign(m, -1);
  Weight best = 0.0;

  const auto search = [&](auto&& self, std::size_t i, Weight current, std::size_t used) -> void {
    if (current > best) {
      best = current;
      best_assign = assign;
    }
    if (i == m || current + g.suffix[i] <= best) return;
    const auto& e = g.edges[i];
    const std::uint64_t mask = (1ull << e.u) | (1ull << e.v);
    // Colors are interchangeable: a fresh color is only ever the next unused one.
    const std::size_t limit = std::min(colors, used + 1);
    for (std::size_t c = 0; c < limit; ++c) {
      if (busy[c] & mask) continue;
      busy[c] |= mask;
      assign[i] = static_cast<std::int32_t>(c);
      self(self, i + 1, current + e.w, std::max(used, c + 1));
      assign[i] = -1;
      busy[c] &= ~mask;
    }
    self(self, i + 1, current, used);
  };
  search(search, 0, 0.0, 0);

  ExactKdm out{best, KDisjointMatching(k)};
  for (std::size_t i = 0; i < m; ++i) {
    if (best_assign[i] >= 0) out.solution.matchings[best_assign[i]].edges.push_back(graph[g.original[i]]);
  }
  return out;
}

Weight exact_mwbm(std::span<const WeightedEdge> graph, const Capacity& b) {
  if (graph.size() > kExactMwbmMaxEdges)
    throw InstanceTooLarge("exact b-matching supports at most " +
                           std::to_string(kExactMwbmMaxEdges) + " edges, got " +
                           std::to_string(graph.size()));
  const LocalGraph g = localize(graph);
  const std::size_t m = g.edges.size();
  // Capacities follow the original vertex ids.
  std::vector<std::uint32_t> room(g.n, 0);
  for (std::size_t i = 0; i < m; ++i) {
    room[g.edges[i].u] = b(graph[g.original[i]].u);
    room[g.edges[i].v] = b(graph[g.original[i]].v);
  }

  Weight best = 0.0;
  const auto search = [&](auto&& self, std::size_t i, Weight current) -> void {
    best = std::max(best, current);
    if (i == m || current + g.suffix[i] <= best) return;
    const auto& e = g.edges[i];
    if (room[e.u] > 0 && room[e.v] > 0) {
      --room[e.u];
      --room[e.v];
      self(self, i + 1, current + e.w);
      ++room[e.u];
      ++room[e.v];
    }
    self(self, i + 1, current);
  };
  search(search, 0, 0.0);
  return best;
}

std::optional<std::string> find_dual_violation(const DualCertificate& cert,
                                               std::span<const WeightedEdge> graph) {
  if (cert.z.size() != graph.size()) return "certificate has " + std::to_string(cert.z.size()) +
                                            " edge duals for " + std::to_string(graph.size()) +
                                            " edges";
  for (Weight y : cert.y)
    if (y < 0.0) return std::string("negative vertex dual");
  for (std::size_t i = 0; i < graph.size(); ++i) {
    const auto& e = graph[i];
    if (cert.z[i] < 0.0) return "negative edge dual on edge " + std::to_string(i);
    for (Color c = 0; c < cert.k; ++c) {
      const Weight lhs = cert.y_at(c, e.u) + cert.y_at(c, e.v) + cert.z[i];
      if (lhs < e.w * (1.0 - kCertificateTolerance)) {
        std::ostringstream os;
        os << "edge (" << e.u << ',' << e.v << ") color " << c + 1 << ": " << lhs << " < " << e.w;
        return os.str();
      }
    }
  }
  return std::nullopt;
}

DualCertificate build_dual_certificate(const StkState& state, std::span<const WeightedEdge> graph) {
  DualCertificate cert;
  cert.k = state.k();
  const double scale = 1.0 + state.eps();
  cert.y.assign(state.vertex_extent() * cert.k, 0.0);
  for (VertexId v = 0; v < state.vertex_extent(); ++v) {
    for (Color c = 0; c < cert.k; ++c) {
      const Weight y = scale * state.phi(c, v);
      cert.y[static_cast<std::size_t>(v) * cert.k + c] = y;
      cert.y_total += y;
    }
  }
  cert.z.reserve(graph.size());
  for (const auto& e : graph) {
    Weight z = 0.0;
    for (Color c = 0; c < cert.k; ++c)
      z = std::max(z, e.w - (cert.y_at(c, e.u) + cert.y_at(c, e.v)));
    cert.z.push_back(z);
    cert.z_total += z;
  }
  if (auto violation = find_dual_violation(cert, graph))
    throw CertificateInfeasible("infeasible dual certificate: " + *violation);
  return cert;
}

bool certified_ratio_check(const KDisjointMatching& solution, const DualCertificate& cert,
                           double eps) {
  const Weight lhs = (3.0 + 2.0 * eps) * solution_weight(solution);
  const Weight rhs = cert.objective();
  return lhs >= rhs - kCertificateTolerance * std::max(1.0, rhs);
}

KDisjointMatching greedy_iterative_baseline(std::span<const WeightedEdge> graph, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  std::vector<std::size_t> order(graph.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return graph[a].w > graph[b].w; });

  VertexId extent = 0;
  for (const auto& e : graph) extent = std::max({extent, e.u + 1, e.v + 1});
  std::vector<std::size_t> round_of(extent, 0);  // round + 1 that covered v
  std::vector<bool> taken(graph.size(), false);

  KDisjointMatching out(k);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t i : order) {
      if (taken[i]) continue;
      const auto& e = graph[i];
      if (e.u == e.v || round_of[e.u] == r + 1 || round_of[e.v] == r + 1) continue;
      round_of[e.u] = round_of[e.v] = r + 1;
      taken[i] = true;
      out.matchings[r].edges.push_back(e);
    }
  }
  return out;
}

}  // namespace kdm
