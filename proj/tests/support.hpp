#pragma once

// Test-side generators and reference implementations. Nothing here calls
// into the library's algorithms, so the library can be checked against it.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "kdm/core.hpp"

namespace kdm::test {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Simple graph on n vertices with up to m distinct pairs (fewer if n is
/// too small). Integral weights when `integral`.
inline std::vector<WeightedEdge> random_graph(Rng& rng, std::size_t n, std::size_t m, double wlo,
                                              double whi, bool integral = true) {
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  std::shuffle(pairs.begin(), pairs.end(), rng);
  pairs.resize(std::min(m, pairs.size()));
  std::vector<WeightedEdge> edges;
  for (auto [a, b] : pairs) {
    double w = integral ? static_cast<double>(pick(rng, static_cast<std::size_t>(wlo),
                                                   static_cast<std::size_t>(whi)))
                        : std::uniform_real_distribution<double>(wlo, whi)(rng);
    if (rng() & 1) std::swap(a, b);
    edges.push_back({a, b, w});
  }
  return edges;
}

inline bool is_matching(const std::vector<WeightedEdge>& edges) {
  std::set<VertexId> seen;
  for (const auto& e : edges)
    if (!seen.insert(e.u).second || !seen.insert(e.v).second) return false;
  return true;
}

/// Literal transcription of the k-color stack algorithm, with maps in place
/// of the library's lazily grown arrays.
struct RefStk {
  std::size_t k;
  double eps;
  std::map<std::pair<std::size_t, VertexId>, double> phi;
  std::vector<std::vector<std::pair<WeightedEdge, double>>> stacks;
  std::map<std::pair<std::size_t, VertexId>, std::uint32_t> counts;

  RefStk(std::size_t k_, double eps_) : k(k_), eps(eps_), stacks(k_) {}

  double get(std::size_t c, VertexId v) const {
    auto it = phi.find({c, v});
    return it == phi.end() ? 0.0 : it->second;
  }

  bool try_color(const WeightedEdge& e, std::size_t c) {
    const double phic = get(c, e.u) + get(c, e.v);
    if (!(e.w >= (1.0 + eps) * phic)) return false;
    const double wp = e.w - phic;
    phi[{c, e.u}] = get(c, e.u) + wp;
    phi[{c, e.v}] = get(c, e.v) + wp;
    ++counts[{c, e.u}];
    ++counts[{c, e.v}];
    stacks[c].push_back({e, wp});
    return true;
  }

  std::optional<std::size_t> stream(const WeightedEdge& e) {
    for (std::size_t c = 0; c < k; ++c)
      if (try_color(e, c)) return c;
    return std::nullopt;
  }

  std::vector<std::vector<WeightedEdge>> finalize() {
    std::vector<std::vector<WeightedEdge>> out(k);
    for (std::size_t c = 0; c < k; ++c) {
      std::set<VertexId> matched;
      while (!stacks[c].empty()) {
        const WeightedEdge e = stacks[c].back().first;
        stacks[c].pop_back();
        if (!matched.count(e.u) && !matched.count(e.v)) {
          matched.insert(e.u);
          matched.insert(e.v);
          out[c].push_back(e);
        } else {
          for (std::size_t j = c + 1; j < k; ++j)
            if (try_color(e, j)) break;
        }
      }
    }
    return out;
  }
};

/// The single-matching stack algorithm, transcribed line by line.
struct RefSingleMatching {
  std::vector<bool> pushed;
  std::vector<WeightedEdge> matching;
};

inline RefSingleMatching ref_single_matching(const std::vector<WeightedEdge>& stream,
                                             double eps) {
  RefSingleMatching out;
  std::map<VertexId, double> phi;
  std::vector<WeightedEdge> s;
  for (const auto& e : stream) {
    if (e.w >= (1.0 + eps) * (phi[e.u] + phi[e.v])) {
      const double wp = e.w - (phi[e.u] + phi[e.v]);
      phi[e.u] += wp;
      phi[e.v] += wp;
      s.push_back(e);
      out.pushed.push_back(true);
    } else {
      out.pushed.push_back(false);
    }
  }
  std::set<VertexId> vm;
  while (!s.empty()) {
    const auto e = s.back();
    s.pop_back();
    if (!vm.count(e.u) && !vm.count(e.v)) {
      out.matching.push_back(e);
      vm.insert(e.u);
      vm.insert(e.v);
    }
  }
  return out;
}

/// Maximum matching weight by include/exclude search. Fine for the sparse
/// unions of two matchings (at most a few thousand matchings).
inline double brute_max_matching(const std::vector<WeightedEdge>& edges) {
  std::set<VertexId> used;
  std::function<double(std::size_t)> go = [&](std::size_t i) -> double {
    if (i == edges.size()) return 0.0;
    double best = go(i + 1);
    const auto& e = edges[i];
    if (!used.count(e.u) && !used.count(e.v)) {
      used.insert(e.u);
      used.insert(e.v);
      best = std::max(best, e.w + go(i + 1));
      used.erase(e.u);
      used.erase(e.v);
    }
    return best;
  };
  return go(0);
}

/// Optimum k-DM by trying all (k+1)^m color assignments. Tiny m only.
inline double brute_kdm(const std::vector<WeightedEdge>& edges, std::size_t k) {
  const std::size_t m = edges.size();
  std::vector<std::size_t> assign(m, 0);  // 0 = unused, c+1 = color c
  double best = 0.0;
  for (;;) {
    std::set<std::pair<std::size_t, VertexId>> seen;
    bool ok = true;
    double w = 0.0;
    for (std::size_t i = 0; i < m && ok; ++i) {
      if (assign[i] == 0) continue;
      ok = seen.insert({assign[i], edges[i].u}).second && seen.insert({assign[i], edges[i].v}).second;
      w += edges[i].w;
    }
    if (ok) best = std::max(best, w);
    std::size_t i = 0;
    while (i < m && assign[i] == k) assign[i++] = 0;
    if (i == m) break;
    ++assign[i];
  }
  return best;
}

/// Optimum b-matching weight over all 2^m subsets. Tiny m only.
inline double brute_mwbm(const std::vector<WeightedEdge>& edges,
                         const std::function<std::uint32_t(VertexId)>& b) {
  const std::size_t m = edges.size();
  double best = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::map<VertexId, std::uint32_t> deg;
    bool ok = true;
    double w = 0.0;
    for (std::size_t i = 0; i < m && ok; ++i) {
      if (!(mask >> i & 1)) continue;
      ok = ++deg[edges[i].u] <= b(edges[i].u) && ++deg[edges[i].v] <= b(edges[i].v);
      w += edges[i].w;
    }
    if (ok) best = std::max(best, w);
  }
  return best;
}

/// Two random edge-disjoint matchings whose union has at most `max_edges`
/// edges.
inline std::pair<std::vector<WeightedEdge>, std::vector<WeightedEdge>> random_matching_pair(
    Rng& rng, std::size_t n, std::size_t max_edges) {
  std::vector<WeightedEdge> m1, m2;
  std::set<std::uint64_t> pairs;
  std::set<VertexId> used1, used2;
  for (std::size_t tries = 0; tries < 200 && m1.size() + m2.size() < max_edges; ++tries) {
    VertexId a = static_cast<VertexId>(pick(rng, 0, n - 1));
    VertexId b = static_cast<VertexId>(pick(rng, 0, n - 1));
    if (a == b || pairs.count(pair_key(a, b))) continue;
    auto& m = (rng() & 1) ? m1 : m2;
    auto& used = (&m == &m1) ? used1 : used2;
    if (used.count(a) || used.count(b)) continue;
    used.insert(a);
    used.insert(b);
    pairs.insert(pair_key(a, b));
    m.push_back({a, b, static_cast<double>(pick(rng, 1, 100))});
  }
  return {m1, m2};
}

}  // namespace kdm::test
