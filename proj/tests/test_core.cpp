#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "kdm/coloring.hpp"
#include "kdm/core.hpp"
#include "kdm/oracle.hpp"
#include "kdm/stk.hpp"
#include "support.hpp"

using namespace kdm;

namespace {

EdgeStream from_text(const std::string& text) {
  return open_stream(std::make_unique<std::istringstream>(text));
}

bool mentions(const ValidationReport& r, const std::string& needle) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const std::string& v) { return v.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("edge list with header") {
  auto s = from_text("3 2\n0 1 2.5\n1 2 4.0");
  CHECK(s.declared_n() == 3);
  CHECK(s.declared_m() == 2);
  const auto edges = collect(s);
  REQUIRE(edges.size() == 2);
  CHECK(edges[0] == WeightedEdge{0, 1, 2.5});
  CHECK(edges[1] == WeightedEdge{1, 2, 4.0});
  CHECK(s.stats().n == 3);
  CHECK(s.stats().m == 2);
  CHECK(s.stats().weight_ratio() == doctest::Approx(1.6));
}

TEST_CASE("self-loops are skipped and counted") {
  auto s = from_text("0 1 1.0\n0 0 1.0\n1 2 3\n");
  const auto edges = collect(s);
  CHECK(edges.size() == 2);
  CHECK(s.self_loops_skipped() == 1);
}

TEST_CASE("non-positive weight aborts with the line number") {
  auto s = from_text("# comment\n0 1 -3\n");
  try {
    collect(s);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("non-positive weight") != std::string::npos);
  }
  auto zero = from_text("0 1 0\n");
  CHECK_THROWS_AS(collect(zero), ParseError);
}

TEST_CASE("parser rejects malformed input") {
  auto bad_id = from_text("2 1\n0 5 1.0\n");
  CHECK_THROWS_WITH_AS(collect(bad_id), doctest::Contains("exceeds declared n"), ParseError);
  auto junk = from_text("0 1 abc\n");
  CHECK_THROWS_AS(collect(junk), ParseError);
  auto short_line = from_text("0 1\n1 2\n0 2 5\n");
  CHECK_THROWS_AS(collect(short_line), ParseError);
  auto nan = from_text("0 1 nan\n");
  CHECK_THROWS_AS(collect(nan), ParseError);
}

TEST_CASE("CRLF, comments and blank lines") {
  auto s = from_text("# header next\r\n4 2\r\n\r\n0 1 1.5\r\n# mid\r\n2 3 2\r\n");
  const auto edges = collect(s);
  CHECK(edges.size() == 2);
  CHECK(s.declared_n() == 4);
}

TEST_CASE("n is discovered without a header") {
  auto s = from_text("0 7 1\n3 2 1\n");
  collect(s);
  CHECK(!s.declared_n());
  CHECK(s.stats().n == 8);
}

TEST_CASE("a consumed stream cannot be consumed again") {
  auto s = EdgeStream::from_edges({{0, 1, 1.0}});
  collect(s);
  CHECK(s.exhausted());
  CHECK_THROWS_AS(s.next(), StreamConsumedError);
  CHECK_THROWS_AS(collect(s), StreamConsumedError);
}

TEST_CASE("a stream consumed by an algorithm cannot be reused") {
  auto s = EdgeStream::from_edges({{0, 1, 1.0}, {1, 2, 2.0}});
  run_stk(s, 2, 0.0);
  CHECK_THROWS_AS(run_stk(s, 2, 0.0), StreamConsumedError);
}

TEST_CASE("open_stream reports missing files") {
  CHECK_THROWS(open_stream("/nonexistent/graph.txt"));
}

TEST_CASE("validate_kdm examples") {
  KDisjointMatching ok(2);
  ok.matchings[0].edges = {{0, 1, 1}};
  ok.matchings[1].edges = {{1, 2, 1}};
  CHECK(validate_kdm(ok).ok);

  KDisjointMatching twice(1);
  twice.matchings[0].edges = {{0, 1, 1}, {1, 2, 1}};
  const auto r1 = validate_kdm(twice);
  CHECK(!r1.ok);
  CHECK(mentions(r1, "vertex 1 twice in M1"));

  KDisjointMatching shared(2);
  shared.matchings[0].edges = {{0, 1, 1}};
  shared.matchings[1].edges = {{1, 0, 1}};
  const auto r2 = validate_kdm(shared);
  CHECK(!r2.ok);
  CHECK(mentions(r2, "edge (0,1) in two matchings"));
}

TEST_CASE("graph-aware validation") {
  const std::vector<WeightedEdge> graph{{0, 1, 2}, {1, 2, 3}};
  KDisjointMatching sol(1);
  sol.matchings[0].edges = {{0, 1, 2}};
  CHECK(validate_kdm(sol, graph).ok);
  sol.matchings[0].edges = {{0, 1, 5}};
  CHECK(!validate_kdm(sol, graph).ok);
  sol.matchings[0].edges = {{0, 2, 1}};
  CHECK(mentions(validate_kdm(sol, graph), "not in the graph"));

  // A multigraph may use each parallel copy once.
  const std::vector<WeightedEdge> multi{{0, 1, 2}, {0, 1, 2}};
  KDisjointMatching two(2);
  two.matchings[0].edges = {{0, 1, 2}};
  two.matchings[1].edges = {{0, 1, 2}};
  CHECK(validate_kdm(two, multi).ok);
  CHECK(!validate_kdm(two, graph).ok);
}

TEST_CASE("validate_bmatching") {
  BMatching f{{{0, 1, 1}, {0, 2, 1}, {0, 3, 1}}};
  CHECK(validate_bmatching(f, Capacity(3)).ok);
  CHECK(!validate_bmatching(f, Capacity(2)).ok);
  CHECK(validate_bmatching(f, Capacity::from_values({3, 1, 1, 1})).ok);
}

TEST_CASE("solution_weight examples") {
  CHECK(solution_weight(KDisjointMatching(3)) == 0.0);
  KDisjointMatching s(2);
  s.matchings[0].edges = {{0, 1, 2.5}};
  s.matchings[1].edges = {{1, 2, 4}};
  CHECK(solution_weight(s) == 6.5);
  CHECK(per_color_weights(s) == std::vector<Weight>{2.5, 4});

  // Triangle (a,b,3),(b,c,2) split across two colors.
  KDisjointMatching tri(2);
  tri.matchings[0].edges = {{0, 1, 3}};
  tri.matchings[1].edges = {{1, 2, 2}};
  CHECK(solution_weight(tri) == 5.0);
  CHECK(test::brute_kdm({{0, 1, 3}, {1, 2, 2}, {0, 2, 1}}, 2) == 5.0);
}

TEST_CASE("solution_weight is permutation invariant") {
  test::Rng rng(11);
  for (int it = 0; it < 200; ++it) {
    KDisjointMatching s(test::pick(rng, 1, 5));
    for (auto& m : s.matchings)
      for (std::size_t i = 0, cnt = test::pick(rng, 0, 6); i < cnt; ++i)
        m.edges.push_back({0, 1, static_cast<double>(test::pick(rng, 1, 1000))});
    const double w = solution_weight(s);
    std::shuffle(s.matchings.begin(), s.matchings.end(), rng);
    for (auto& m : s.matchings) std::shuffle(m.edges.begin(), m.edges.end(), rng);
    CHECK(solution_weight(s) == w);  // integral weights: exact in any order
  }
}

TEST_CASE("validate_kdm accepts every algorithm output on fuzzed instances") {
  test::Rng rng(2024);
  for (int it = 0; it < 150; ++it) {
    const std::size_t n = test::pick(rng, 2, 64);
    const std::size_t k = test::pick(rng, 1, 5);
    auto g = test::random_graph(rng, n, test::pick(rng, 0, 4 * n), 1, 1e6, false);
    const double eps = (it % 3 == 0) ? 0.0 : 0.001;
    auto check = [&](const KDisjointMatching& sol, const char* name) {
      INFO(name);
      CHECK(sol.k() == k);
      const auto r = validate_kdm(sol, g);
      CHECK_MESSAGE(r.ok, (r.violations.empty() ? "" : r.violations.front()));
    };
    {
      auto s = EdgeStream::from_edges(g);
      check(run_stk(s, k, eps).solution, "stk");
    }
    {
      auto s = EdgeStream::from_edges(g);
      check(run_stk_dp(s, k, eps).solution, "stk-dp");
    }
    for (int mask = 0; mask < 4; ++mask) {
      auto s = EdgeStream::from_edges(g);
      check(run_stkb(s, k, eps, {(mask & 1) != 0, (mask & 2) != 0}).solution, "stkb");
    }
    check(greedy_iterative_baseline(g, k), "greedy");
    if (g.size() <= 10) check(exact_kdm(g, k).solution, "exact");
  }
}
