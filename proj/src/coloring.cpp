#include "kdm/coloring.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "kdm/dpmerge.hpp"
#include "kdm/ssbm.hpp"

namespace kdm {

std::size_t EdgeColoring::colors_used() const {
  std::unordered_set<std::int32_t> used;
  for (auto c : colors)
    if (c != kUncolored) used.insert(c);
  return used.size();
}

std::vector<WeightedEdge> simplify_parallel(std::span<const WeightedEdge> edges) {
  std::vector<WeightedEdge> out;
  std::unordered_map<std::uint64_t, std::size_t> where;
  for (const auto& e : edges) {
    auto [it, inserted] = where.emplace(pair_key(e), out.size());
    if (inserted) {
      out.push_back(e);
    } else if (e.w > out[it->second].w) {
      out[it->second] = e;
    }
  }
  return out;
}

std::size_t max_degree(std::span<const WeightedEdge> edges) {
  std::unordered_map<VertexId, std::size_t> deg;
  std::size_t best = 0;
  for (const auto& e : edges) {
    best = std::max(best, ++deg[e.u]);
    best = std::max(best, ++deg[e.v]);
  }
  return best;
}

namespace {

// Working state for one Misra–Gries run over a compacted simple graph.
class MisraGries {
 public:
  MisraGries(std::span<const WeightedEdge> edges, bool common_color)
      : common_color_(common_color) {
    std::unordered_map<VertexId, std::int32_t> local;
    std::unordered_set<std::uint64_t> pairs;
    ends_.reserve(edges.size());
    std::vector<std::size_t> degree;
    for (const auto& e : edges) {
      if (e.u == e.v) throw std::invalid_argument("self-loop in coloring input");
      if (!pairs.insert(pair_key(e)).second)
        throw std::invalid_argument("parallel edge in coloring input");
      std::array<std::int32_t, 2> lv{};
      for (int s = 0; s < 2; ++s) {
        auto [it, inserted] =
            local.emplace(s == 0 ? e.u : e.v, static_cast<std::int32_t>(degree.size()));
        if (inserted) degree.push_back(0);
        lv[s] = it->second;
        ++degree[it->second];
      }
      ends_.push_back(lv);
    }
    const std::size_t delta = degree.empty() ? 0 : *std::max_element(degree.begin(), degree.end());
    palette_ = delta + 1;
    at_.assign(degree.size() * palette_, kUncolored);
    colors_.assign(edges.size(), kUncolored);
    in_fan_.assign(degree.size(), 0);
  }

  std::size_t palette() const { return palette_; }

  std::vector<std::int32_t> run() {
    for (std::size_t e = 0; e < colors_.size(); ++e)
      if (colors_[e] == kUncolored) color_edge(static_cast<std::int32_t>(e));
    return colors_;
  }

 private:
  std::int32_t& slot(std::int32_t x, std::int32_t c) { return at_[x * palette_ + c]; }
  bool is_free(std::int32_t x, std::int32_t c) { return slot(x, c) == kUncolored; }
  std::int32_t other(std::int32_t e, std::int32_t x) const {
    return ends_[e][0] == x ? ends_[e][1] : ends_[e][0];
  }

  std::int32_t lowest_free(std::int32_t x) {
    for (std::int32_t c = 0; c < static_cast<std::int32_t>(palette_); ++c)
      if (is_free(x, c)) return c;
    throw std::logic_error("no free color");
  }

  void uncolor(std::int32_t e) {
    const auto c = colors_[e];
    if (c == kUncolored) return;
    for (auto x : ends_[e])
      if (slot(x, c) == e) slot(x, c) = kUncolored;
    colors_[e] = kUncolored;
  }

  void paint(std::int32_t e, std::int32_t c) {
    uncolor(e);
    colors_[e] = c;
    for (auto x : ends_[e]) slot(x, c) = e;
  }

  // Recolors a batch of edges; all are cleared first so intermediate states
  // never collide.
  void repaint(const std::vector<std::int32_t>& es, const std::vector<std::int32_t>& cs) {
    for (auto e : es) uncolor(e);
    for (std::size_t i = 0; i < es.size(); ++i)
      if (cs[i] != kUncolored) paint(es[i], cs[i]);
  }

  void color_edge(std::int32_t e) {
    const std::int32_t u = ends_[e][0];
    const std::int32_t v = ends_[e][1];

    if (common_color_) {
      for (std::int32_t c = 0; c < static_cast<std::int32_t>(palette_); ++c) {
        if (is_free(u, c) && is_free(v, c)) {
          paint(e, c);
          return;
        }
      }
    }

    // Maximal fan around u starting at v: fan[i] is reached through the
    // edge fan_edges[i], whose color is free on fan[i-1].
    ++stamp_;
    std::vector<std::int32_t> fan{v};
    std::vector<std::int32_t> fan_edges{e};
    in_fan_[v] = stamp_;
    for (bool grown = true; grown;) {
      grown = false;
      const std::int32_t back = fan.back();
      for (std::int32_t c = 0; c < static_cast<std::int32_t>(palette_); ++c) {
        const std::int32_t f = slot(u, c);
        if (f == kUncolored || !is_free(back, c)) continue;
        const std::int32_t x = other(f, u);
        if (in_fan_[x] == stamp_) continue;
        in_fan_[x] = stamp_;
        fan.push_back(x);
        fan_edges.push_back(f);
        grown = true;
        break;
      }
    }

    const std::int32_t c = lowest_free(u);
    const std::int32_t d = lowest_free(fan.back());

    if (!is_free(u, d)) {
      invert_cd_path(u, c, d);
      // Shrink to the first fan vertex on which d is free.
      std::size_t keep = fan.size();
      for (std::size_t i = 0; i < fan.size(); ++i) {
        if (is_free(fan[i], d)) {
          keep = i + 1;
          break;
        }
      }
      fan.resize(keep);
      fan_edges.resize(keep);
    }

    // Rotate: every fan edge takes the color of its successor, the last
    // one takes d.
    std::vector<std::int32_t> next_colors(fan_edges.size());
    for (std::size_t i = 0; i + 1 < fan_edges.size(); ++i) next_colors[i] = colors_[fan_edges[i + 1]];
    next_colors.back() = d;
    repaint(fan_edges, next_colors);
  }

  // Swaps c and d along the maximal c/d alternating path that starts at u
  // with a d-edge. c is free on u, so the path is simple.
  void invert_cd_path(std::int32_t u, std::int32_t c, std::int32_t d) {
    std::vector<std::int32_t> path;
    std::vector<std::int32_t> swapped;
    std::int32_t x = u;
    std::int32_t q = d;
    while (!is_free(x, q)) {
      const std::int32_t f = slot(x, q);
      path.push_back(f);
      const std::int32_t p = q == d ? c : d;
      swapped.push_back(p);
      x = other(f, x);
      q = p;
    }
    repaint(path, swapped);
  }

  bool common_color_;
  std::size_t palette_ = 1;
  std::vector<std::array<std::int32_t, 2>> ends_;
  std::vector<std::int32_t> at_;  // [vertex * palette + color] -> edge
  std::vector<std::int32_t> colors_;
  std::vector<std::uint32_t> in_fan_;
  std::uint32_t stamp_ = 0;
};

}  // namespace

EdgeColoring color_graph(std::span<const WeightedEdge> edges, bool use_common_color) {
  MisraGries mg(edges, use_common_color);
  EdgeColoring out;
  out.colors = mg.run();
  out.palette_size = mg.palette();
  out.edges.assign(edges.begin(), edges.end());
  return out;
}

bool is_proper(const EdgeColoring& coloring) {
  if (coloring.colors.size() != coloring.edges.size()) return false;
  std::unordered_set<std::uint64_t> taken;  // (vertex, color)
  for (std::size_t i = 0; i < coloring.edges.size(); ++i) {
    const auto c = coloring.colors[i];
    if (c == kUncolored || c < 0 || static_cast<std::size_t>(c) >= coloring.palette_size)
      return false;
    for (VertexId x : {coloring.edges[i].u, coloring.edges[i].v}) {
      if (!taken.insert((static_cast<std::uint64_t>(x) << 32) | static_cast<std::uint32_t>(c)).second)
        return false;
    }
  }
  return true;
}

KDisjointMatching select_k_heaviest(const EdgeColoring& coloring, std::size_t k, bool merge) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  if (coloring.palette_size > k + 1)
    throw std::logic_error("palette larger than k+1: input is not a k-matching");

  std::vector<Matching> classes(coloring.palette_size);
  for (std::size_t i = 0; i < coloring.edges.size(); ++i) {
    const auto c = coloring.colors[i];
    if (c == kUncolored) continue;
    classes.at(static_cast<std::size_t>(c)).edges.push_back(coloring.edges[i]);
  }
  std::erase_if(classes, [](const Matching& m) { return m.empty(); });

  KDisjointMatching out(k);
  if (classes.size() > k) {
    // Lightest class; ties go to the later color.
    const auto lightest_except = [&](std::size_t skip) {
      std::size_t best = classes.size();
      for (std::size_t i = 0; i < classes.size(); ++i) {
        if (i == skip) continue;
        if (best == classes.size() || classes[i].weight() <= classes[best].weight()) best = i;
      }
      return best;
    };
    const std::size_t lightest = lightest_except(classes.size());
    if (merge) {
      const std::size_t second = lightest_except(lightest);
      Matching merged = merge_matchings(classes[lightest], classes[second]);
      classes[std::min(lightest, second)] = std::move(merged);
      classes.erase(classes.begin() + static_cast<std::ptrdiff_t>(std::max(lightest, second)));
    } else {
      classes.erase(classes.begin() + static_cast<std::ptrdiff_t>(lightest));
    }
  }
  for (std::size_t i = 0; i < classes.size(); ++i) out.matchings[i] = std::move(classes[i]);
  return out;
}

StkbRun run_stkb(EdgeStream& stream, std::size_t k, double eps, StkbOptions opts) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  SsbmRun bm = run_ssbm(stream, Capacity(static_cast<std::uint32_t>(k)), eps / 2.0);

  StkbRun run;
  run.bmatching_size = bm.matching.edges.size();
  run.pushes = bm.pushes;
  run.stats = bm.stats;
  const auto simple = simplify_parallel(bm.matching.edges);
  run.parallel_dropped = bm.matching.edges.size() - simple.size();
  run.max_degree = max_degree(simple);

  const EdgeColoring coloring = color_graph(simple, opts.common_color);
  run.colors_used = coloring.colors_used();
  run.solution = select_k_heaviest(coloring, k, opts.merge);
  return run;
}

}  // namespace kdm
