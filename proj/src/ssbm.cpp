#include "kdm/ssbm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kdm {

SsbmState::SsbmState(Capacity b, double eps) : b_(std::move(b)), eps_(eps) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw std::invalid_argument("eps must be >= 0");
}

std::vector<SsbmState::Slot>& SsbmState::slots_of(VertexId v) {
  if (v >= slots_.size()) {
    slots_.resize(v + 1ull);
    stacked_.resize(v + 1ull, 0);
  }
  auto& row = slots_[v];
  if (row.empty()) row.resize(b_(v));
  return row;
}

// Lowest index among the minimum duals.
std::uint32_t SsbmState::min_slot(VertexId v) {
  const auto& row = slots_of(v);
  std::uint32_t best = 0;
  for (std::uint32_t i = 1; i < row.size(); ++i)
    if (row[i].phi < row[best].phi) best = i;
  return best;
}

Weight SsbmState::slot_phi(VertexId v, std::uint32_t slot) const {
  if (v >= slots_.size() || slots_[v].empty()) return 0.0;
  return slots_[v].at(slot).phi;
}

EntryIndex SsbmState::slot_ptr(VertexId v, std::uint32_t slot) const {
  if (v >= slots_.size() || slots_[v].empty()) return kNoEntry;
  return slots_[v].at(slot).ptr;
}

std::uint32_t SsbmState::stacked_at(VertexId v) const {
  return v < stacked_.size() ? stacked_[v] : 0;
}

bool SsbmState::stream_edge(const WeightedEdge& e) {
  if (finalized_) throw std::logic_error("stream_edge after finalize");
  const std::uint32_t qu = min_slot(e.u);
  const std::uint32_t qv = min_slot(e.v);
  Slot& su = slots_of(e.u)[qu];
  Slot& sv = slots_of(e.v)[qv];
  const Weight phi_sum = su.phi + sv.phi;
  if (!(e.w >= (1.0 + eps_ / 2.0) * phi_sum)) return false;

  const Weight gain = e.w - phi_sum;
  const auto index = static_cast<EntryIndex>(stack_.size());
  stack_.push_back({e, gain, su.ptr, sv.ptr, true});
  su.phi += gain;
  sv.phi += gain;
  su.ptr = index;
  sv.ptr = index;
  for (VertexId x : {e.u, e.v}) max_stacked_ = std::max(max_stacked_, ++stacked_[x]);
  return true;
}

BMatching SsbmState::finalize() {
  if (finalized_) throw std::logic_error("finalize called twice");
  finalized_ = true;
  BMatching out;
  for (auto i = static_cast<EntryIndex>(stack_.size()) - 1; i >= 0; --i) {
    if (!stack_[i].alive) continue;
    const WeightedEdge e = stack_[i].edge;
    out.edges.push_back(e);
    for (VertexId x : {e.u, e.v}) {
      for (EntryIndex c = i; c != kNoEntry; c = stack_[c].back_for(x)) stack_[c].alive = false;
    }
  }
  return out;
}

SsbmRun run_ssbm(EdgeStream& stream, const Capacity& b, double eps) {
  SsbmState state(b, eps);
  stream.drain([&](const WeightedEdge& e) { state.stream_edge(e); });
  SsbmRun run;
  run.pushes = state.stack().size();
  run.max_stacked_at = state.max_stacked_at();
  run.matching = state.finalize();
  run.stats = stream.stats();
  return run;
}

double ssbm_stack_bound(std::uint32_t b, double weight_ratio, double eps) {
  return b * (2.0 + std::log(2.0 * weight_ratio / eps) / std::log1p(eps / 2.0));
}

}  // namespace kdm
