#include "kdm/stk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "kdm/dpmerge.hpp"

namespace kdm {

StkState::StkState(std::size_t k, double eps) : k_(k), eps_(eps), stacks_(k) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw std::invalid_argument("eps must be >= 0");
}

std::vector<Weight>& StkState::duals_of(VertexId v) {
  if (v >= phi_.size()) {
    phi_.resize(v + 1ull);
    push_counts_.resize(v + 1ull);
  }
  auto& row = phi_[v];
  if (row.empty()) row.assign(k_, 0.0);
  return row;
}

std::vector<std::uint32_t>& StkState::counts_of(VertexId v) {
  auto& row = push_counts_[v];
  if (row.empty()) row.assign(k_, 0);
  return row;
}

Weight StkState::phi(Color c, VertexId v) const {
  if (v >= phi_.size() || phi_[v].empty()) return 0.0;
  return phi_[v][c];
}

std::uint32_t StkState::push_count(Color c, VertexId v) const {
  if (v >= push_counts_.size() || push_counts_[v].empty()) return 0;
  return push_counts_[v][c];
}

Weight StkState::phi_total() const {
  Weight total = 0.0;
  for (const auto& row : phi_)
    for (Weight x : row) total += x;
  return total;
}

bool StkState::try_push(const WeightedEdge& e, Color c, bool post) {
  const Weight phi_u = phi(c, e.u);
  const Weight phi_v = phi(c, e.v);
  const Weight phi_c = phi_u + phi_v;
  if (!(e.w >= (1.0 + eps_) * phi_c)) return false;

  const Weight reduced = e.w - phi_c;
  // Grow for the larger id first so the two row references stay valid.
  duals_of(std::max(e.u, e.v));
  auto& du = duals_of(e.u);
  auto& dv = duals_of(e.v);
  du[c] += reduced;
  dv[c] += reduced;
  stacks_[c].push_back({e, reduced});

  for (VertexId x : {e.u, e.v}) {
    auto& cnt = counts_of(x)[c];
    ++cnt;
    max_push_count_ = std::max(max_push_count_, cnt);
  }
  ++pushes_total_;
  if (observer_) observer_({e, c, phi_u, phi_v, du[c], dv[c], post});
  return true;
}

std::optional<Color> StkState::stream_edge(const WeightedEdge& e) {
  if (finalized_) throw std::logic_error("stream_edge after finalize");
  for (Color c = 0; c < k_; ++c) {
    if (try_push(e, c, false)) {
      ++stream_pushes_;
      stored_peak_ = std::max(stored_peak_, ++stored_);
      return c;
    }
  }
  return std::nullopt;
}

KDisjointMatching StkState::finalize() {
  if (finalized_) throw std::logic_error("finalize called twice");
  finalized_ = true;

  KDisjointMatching out(k_);
  // matched[v] == c + 1 iff v is covered by M_c.
  std::vector<std::size_t> matched(phi_.size(), 0);
  for (Color c = 0; c < k_; ++c) {
    auto& stack = stacks_[c];
    while (!stack.empty()) {
      const WeightedEdge e = stack.back().edge;
      stack.pop_back();
      if (matched[e.u] != c + 1 && matched[e.v] != c + 1) {
        matched[e.u] = matched[e.v] = c + 1;
        out.matchings[c].edges.push_back(e);
        continue;
      }
      bool repushed = false;
      for (Color j = c + 1; j < k_ && !repushed; ++j) repushed = try_push(e, j, true);
      if (!repushed) --stored_;
    }
  }
  return out;
}

double stk_push_bound(double weight_ratio, double eps) {
  return 2.0 + std::log(weight_ratio / eps) / std::log1p(eps);
}

StkRun run_stk(EdgeStream& stream, std::size_t k, double eps) {
  StkState state(k, eps);
  stream.drain([&](const WeightedEdge& e) { state.stream_edge(e); });
  auto solution = state.finalize();
  StkMetrics metrics{state.edges_stored_peak(), state.pushes_total(), state.max_push_count(),
                     stream.stats()};
  return {std::move(solution), std::move(state), metrics};
}

namespace {

// Parallel copies of the same pair can land in the two matchings of a
// multigraph run. At most one of them can be in a matching of the union,
// so only the heavier copy is kept before merging.
void drop_shared_pairs(Matching& a, Matching& b) {
  std::unordered_map<std::uint64_t, std::size_t> in_a;
  for (std::size_t i = 0; i < a.edges.size(); ++i) in_a.emplace(pair_key(a.edges[i]), i);
  std::vector<bool> drop_a(a.edges.size(), false);
  std::erase_if(b.edges, [&](const WeightedEdge& e) {
    auto it = in_a.find(pair_key(e));
    if (it == in_a.end()) return false;
    if (a.edges[it->second].w >= e.w) return true;
    drop_a[it->second] = true;
    return false;
  });
  std::size_t i = 0;
  std::erase_if(a.edges, [&](const WeightedEdge&) { return drop_a[i++]; });
}

}  // namespace

StkRun run_stk_dp(EdgeStream& stream, std::size_t k, double eps) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  StkRun run = run_stk(stream, 2 * k, eps);
  KDisjointMatching merged(k);
  for (std::size_t i = 0; i < k; ++i) {
    Matching a = std::move(run.solution.matchings[i]);
    Matching b = std::move(run.solution.matchings[2 * k - 1 - i]);
    drop_shared_pairs(a, b);
    merged.matchings[i] = merge_matchings(a, b);
  }
  run.solution = std::move(merged);
  return run;
}

}  // namespace kdm
