#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "kdm/core.hpp"

namespace kdm {

/// Stack index of an SsbmEntry; kNoEntry marks an empty pointer.
using EntryIndex = std::int64_t;
inline constexpr EntryIndex kNoEntry = -1;

struct SsbmEntry {
  WeightedEdge edge;
  Weight gain = 0.0;
  EntryIndex back_u = kNoEntry;  // previous occupant of the slot of edge.u
  EntryIndex back_v = kNoEntry;  // previous occupant of the slot of edge.v
  bool alive = true;

  EntryIndex back_for(VertexId x) const { return x == edge.u ? back_u : back_v; }
};

/// Semi-streaming maximum-weight b-matching with per-vertex slots.
///
/// Every vertex v owns b(v) slots, each with a dual phi(v, i) and a pointer
/// to the last stacked edge that took the slot. An edge is stacked when its
/// weight beats (1 + eps/2) times the sum of the minimum slot duals of its
/// endpoints. finalize() unwinds the stack and, for each accepted edge,
/// kills the chain of earlier occupants of the two slots it used.
///
/// `eps` is used as given; the b-matching-to-k-DM reduction already passes
/// its own eps halved, so callers must not halve it again.
class SsbmState {
 public:
  SsbmState(Capacity b, double eps);

  bool stream_edge(const WeightedEdge& e);
  BMatching finalize();

  double eps() const { return eps_; }
  const Capacity& capacity() const { return b_; }
  const std::vector<SsbmEntry>& stack() const { return stack_; }

  Weight slot_phi(VertexId v, std::uint32_t slot) const;
  EntryIndex slot_ptr(VertexId v, std::uint32_t slot) const;
  /// Stacked edges incident on v.
  std::uint32_t stacked_at(VertexId v) const;
  std::uint32_t max_stacked_at() const { return max_stacked_; }

 private:
  struct Slot {
    Weight phi = 0.0;
    EntryIndex ptr = kNoEntry;
  };
  std::vector<Slot>& slots_of(VertexId v);
  std::uint32_t min_slot(VertexId v);

  Capacity b_;
  double eps_;
  bool finalized_ = false;
  std::vector<std::vector<Slot>> slots_;
  std::vector<std::uint32_t> stacked_;
  std::uint32_t max_stacked_ = 0;
  std::vector<SsbmEntry> stack_;
};

struct SsbmRun {
  BMatching matching;
  std::size_t pushes = 0;
  std::uint32_t max_stacked_at = 0;
  InstanceStats stats;
};

SsbmRun run_ssbm(EdgeStream& stream, const Capacity& b, double eps);

/// b(v) * (2 + log_{1+eps/2}(2W/eps)): per-vertex bound on stacked edges.
double ssbm_stack_bound(std::uint32_t b, double weight_ratio, double eps);

}  // namespace kdm
