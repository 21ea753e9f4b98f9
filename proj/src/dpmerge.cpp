#include "kdm/dpmerge.hpp"

#include <array>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace kdm {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

void require_matching(const Matching& m, const char* name) {
  std::unordered_set<VertexId> seen;
  for (const auto& e : m.edges) {
    if (e.u == e.v || !seen.insert(e.u).second || !seen.insert(e.v).second)
      throw std::invalid_argument(std::string(name) + " is not a matching");
  }
}

struct Value {
  Weight weight = 0.0;
  std::size_t count = 0;
};

bool better(const Value& a, const Value& b) {
  return a.weight > b.weight || (a.weight == b.weight && a.count < b.count);
}

struct PathChoice {
  Value value;
  std::vector<std::size_t> taken;  // indices into the input span
};

PathChoice path_dp(std::span<const WeightedEdge> path) {
  const std::size_t len = path.size();
  // best[i]: optimum over the first i edges.
  std::vector<Value> best(len + 1);
  std::vector<bool> take(len + 1, false);
  for (std::size_t i = 1; i <= len; ++i) {
    Value with = i >= 2 ? best[i - 2] : Value{};
    with.weight += path[i - 1].w;
    with.count += 1;
    if (better(with, best[i - 1])) {
      best[i] = with;
      take[i] = true;
    } else {
      best[i] = best[i - 1];
    }
  }
  PathChoice out{best[len], {}};
  for (std::size_t i = len; i >= 1;) {
    if (take[i]) {
      out.taken.push_back(i - 1);
      i = i >= 2 ? i - 2 : 0;
    } else {
      --i;
    }
  }
  return out;
}

}  // namespace

std::vector<AlternatingComponent> decompose_union(const Matching& m1, const Matching& m2) {
  require_matching(m1, "m1");
  require_matching(m2, "m2");

  std::vector<WeightedEdge> edges = m1.edges;
  {
    std::unordered_set<std::uint64_t> pairs;
    for (const auto& e : m1.edges) pairs.insert(pair_key(e));
    for (const auto& e : m2.edges) {
      if (pairs.contains(pair_key(e)))
        throw std::invalid_argument("m1 and m2 are not edge-disjoint");
      edges.push_back(e);
    }
  }

  std::unordered_map<VertexId, std::array<std::size_t, 2>> incident;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (VertexId x : {edges[i].u, edges[i].v}) {
      auto [it, inserted] = incident.try_emplace(x, std::array<std::size_t, 2>{kNone, kNone});
      it->second[it->second[0] == kNone ? 0 : 1] = i;
    }
  }
  const auto degree = [&](VertexId x) { return incident.at(x)[1] == kNone ? 1 : 2; };

  std::vector<bool> visited(edges.size(), false);
  const auto walk = [&](VertexId start, std::size_t first) {
    AlternatingComponent comp;
    VertexId at = start;
    std::size_t e = first;
    while (e != kNone && !visited[e]) {
      visited[e] = true;
      comp.edges.push_back(edges[e]);
      at = edges[e].u == at ? edges[e].v : edges[e].u;
      const auto& inc = incident.at(at);
      e = inc[0] == e ? inc[1] : inc[0];
    }
    return comp;
  };

  std::vector<AlternatingComponent> out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (visited[i]) continue;
    for (VertexId x : {edges[i].u, edges[i].v}) {
      if (!visited[i] && degree(x) == 1) {
        // Walk from the end of the path that contains edge i.
        const auto& inc = incident.at(x);
        out.push_back(walk(x, inc[0]));
      }
    }
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (visited[i]) continue;
    auto comp = walk(edges[i].u, i);
    comp.cycle = true;
    out.push_back(std::move(comp));
  }
  return out;
}

Matching merge_matchings(const Matching& m1, const Matching& m2) {
  Matching out;
  for (const auto& comp : decompose_union(m1, m2)) {
    std::span<const WeightedEdge> es(comp.edges);
    if (!comp.cycle) {
      for (std::size_t i : path_dp(es).taken) out.edges.push_back(es[i]);
      continue;
    }
    // Cycle: either edge 0 is out (path over 1..L-1), or it is in and both
    // of its neighbours 1 and L-1 are out (path over 2..L-2).
    const std::size_t len = es.size();
    PathChoice without = path_dp(es.subspan(1));
    PathChoice with = path_dp(es.subspan(2, len - 3));
    with.value.weight += es[0].w;
    with.value.count += 1;
    if (better(with.value, without.value)) {
      out.edges.push_back(es[0]);
      for (std::size_t i : with.taken) out.edges.push_back(es[i + 2]);
    } else {
      for (std::size_t i : without.taken) out.edges.push_back(es[i + 1]);
    }
  }
  // The DP optimum can only lose to an input through summation order; keep
  // the lower bound exact as measured by Matching::weight().
  const Matching& heavier = m1.weight() >= m2.weight() ? m1 : m2;
  if (out.weight() < heavier.weight()) return heavier;
  return out;
}

}  // namespace kdm
