#include <doctest.h>

#include <algorithm>

#include "kdm/dpmerge.hpp"
#include "support.hpp"

using namespace kdm;

namespace {

Matching m(std::vector<WeightedEdge> edges) { return Matching{std::move(edges)}; }

std::vector<WeightedEdge> both(const Matching& a, const Matching& b) {
  auto out = a.edges;
  out.insert(out.end(), b.edges.begin(), b.edges.end());
  return out;
}

}  // namespace

TEST_CASE("path 1,5,1 keeps the middle edge") {
  const auto r = merge_matchings(m({{0, 1, 1}, {2, 3, 1}}), m({{1, 2, 5}}));
  CHECK(r.edges == std::vector<WeightedEdge>{{1, 2, 5}});
  CHECK(r.weight() == 5);
}

TEST_CASE("empty second matching returns the first") {
  const auto m1 = m({{0, 1, 2}, {4, 5, 3}});
  const auto r = merge_matchings(m1, m({}));
  CHECK(r.weight() == 5);
  CHECK(r.edges.size() == 2);
  CHECK(merge_matchings(m({}), m({})).edges.empty());
}

TEST_CASE("4-cycle keeps the heavier perfect matching") {
  const auto m1 = m({{0, 1, 3}, {2, 3, 3}});
  const auto m2 = m({{1, 2, 2}, {3, 0, 2}});
  const auto comps = decompose_union(m1, m2);
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].cycle);
  CHECK(comps[0].edges.size() == 4);
  const auto r = merge_matchings(m1, m2);
  CHECK(r.weight() == 6);
  CHECK(test::brute_max_matching(both(m1, m2)) == 6);
}

TEST_CASE("ties go to fewer edges") {
  // Path with weights 2, 4, 2: {middle} and {both ends} tie at 4.
  const auto r = merge_matchings(m({{0, 1, 2}, {2, 3, 2}}), m({{1, 2, 4}}));
  CHECK(r.edges.size() == 1);
  CHECK(r.weight() == 4);
}

TEST_CASE("decomposition alternates and covers the union") {
  test::Rng rng(12);
  for (int it = 0; it < 200; ++it) {
    auto [e1, e2] = test::random_matching_pair(rng, test::pick(rng, 2, 16), 20);
    const auto comps = decompose_union(m(e1), m(e2));
    std::size_t total = 0;
    for (const auto& comp : comps) {
      total += comp.edges.size();
      if (comp.cycle) CHECK(comp.edges.size() % 2 == 0);
      for (std::size_t i = 0; i + 1 < comp.edges.size(); ++i) {
        const auto& x = comp.edges[i];
        const auto& y = comp.edges[i + 1];
        const bool x1 = std::count(e1.begin(), e1.end(), x) > 0;
        const bool y1 = std::count(e1.begin(), e1.end(), y) > 0;
        CHECK(x1 != y1);
        CHECK((x.u == y.u || x.u == y.v || x.v == y.u || x.v == y.v));
      }
    }
    CHECK(total == e1.size() + e2.size());
  }
}

TEST_CASE("contract violations") {
  CHECK_THROWS_AS(merge_matchings(m({{0, 1, 1}, {1, 2, 1}}), m({})), std::invalid_argument);
  CHECK_THROWS_AS(merge_matchings(m({{0, 1, 1}}), m({{1, 0, 1}})), std::invalid_argument);
}

TEST_CASE("merge equals brute force on fuzzed pairs") {
  test::Rng rng(55);
  for (int it = 0; it < 500; ++it) {
    auto [e1, e2] = test::random_matching_pair(rng, test::pick(rng, 2, 24), 20);
    const auto r = merge_matchings(m(e1), m(e2));
    CHECK(test::is_matching(r.edges));
    CHECK(r.weight() == test::brute_max_matching(both(m(e1), m(e2))));
    CHECK(r.weight() >= std::max(m(e1).weight(), m(e2).weight()));
  }
}
