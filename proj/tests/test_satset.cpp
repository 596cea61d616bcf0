#include "doctest.h"

#include <random>

#include "stlstar/satset.hpp"

using namespace stlstar;
using geom::Mode;
using geom::Region;

namespace {

Signal ramp10() {
  // x(t) = t - 5 on [0, 10]
  return Signal(SignalSchema({"x"}), {Rat(0), Rat(10)}, {{-5.0}, {5.0}});
}

Signal vee() {
  // x drops 4 -> 0 on [0,4] and climbs back to 6 on [4,10]
  return Signal(SignalSchema({"x"}), {Rat(0), Rat(4), Rat(10)},
                {{4.0}, {0.0}, {6.0}});
}

LinearPredicate pred(const Signal& s, const std::string& text) {
  FormulaPtr f = parse(text, s.schema());
  REQUIRE(f->kind == FormulaKind::Atomic);
  return f->pred;
}

}  // namespace

TEST_CASE("atomic satisfaction set: plain predicate gives vertical bands") {
  Signal s = ramp10();
  Region r = atomic_satset(s, pred(s, "x > 0"), 1e-8);
  // x(t) > 0 iff t > 5, for every t*
  CHECK(contains_point(r, 7, 0, Mode::Closed));
  CHECK(contains_point(r, 7, 9.5, Mode::Closed));
  CHECK(!contains_point(r, 3, 2, Mode::Closed));
  CHECK(!contains_point(r, 4.9, 4.9, Mode::Closed));
}

TEST_CASE("atomic satisfaction set: frozen predicate gives horizontal bands") {
  Signal s = ramp10();
  Region r = atomic_satset(s, pred(s, "x* > 0"), 1e-8);
  CHECK(contains_point(r, 0, 7, Mode::Closed));
  CHECK(contains_point(r, 9.5, 7, Mode::Closed));
  CHECK(!contains_point(r, 2, 3, Mode::Closed));
}

TEST_CASE("atomic satisfaction set: mixed predicate cuts diagonally") {
  Signal s = ramp10();
  // x(t) > x(t*) iff t > t*
  Region r = atomic_satset(s, pred(s, "x > x*"), 1e-8);
  CHECK(contains_point(r, 8, 2, Mode::Closed));
  CHECK(!contains_point(r, 2, 8, Mode::Closed));
}

TEST_CASE("atomic polygon count is bounded by the segment-pair grid") {
  Signal s = vee();
  size_t m = s.segment_count();
  Region r = atomic_satset(s, pred(s, "x > x*"), 1e-8);
  CHECK(r.polys.size() <= m * m);
}

TEST_CASE("degenerate predicate cells resolve by constant sign") {
  Signal s(SignalSchema({"x"}), {Rat(0), Rat(5)}, {{2.0}, {2.0}});  // constant 2
  Region pos = atomic_satset(s, pred(s, "x > 1"), 1e-8);
  CHECK(contains_point(pos, 2.5, 2.5, Mode::Closed));
  Region neg = atomic_satset(s, pred(s, "x > 3"), 1e-8);
  CHECK(neg.is_empty());
}

TEST_CASE("monitor on simple reachability") {
  Signal s = ramp10();
  CHECK(monitor(s, parse("F[0,8] x > 0", s.schema())).verdict == Verdict::SAT);
  CHECK(monitor(s, parse("F[0,3] x > 0", s.schema())).verdict == Verdict::UNSAT);
  CHECK(monitor(s, parse("G[0,4] x < 0", s.schema())).verdict == Verdict::SAT);
  CHECK(monitor(s, parse("G[0,6] x < 0", s.schema())).verdict == Verdict::UNSAT);
}

TEST_CASE("monitor until semantics requires the left operand throughout") {
  Signal s = vee();
  // x stays below 6 until it exceeds 5 (at t = 9); the witness instant must
  // satisfy both operands, so the thresholds need overlap
  CHECK(monitor(s, parse("x < 6 U[0,9.5] x > 5", s.schema())).verdict ==
        Verdict::SAT);
  // x < 3 breaks at t = 7 before x > 5 happens
  CHECK(monitor(s, parse("x < 3 U[0,9.5] x > 5", s.schema())).verdict ==
        Verdict::UNSAT);
}

TEST_CASE("freeze compares against values at the frozen instant") {
  Signal s = vee();
  // at t = 0 the frozen value is 4; x returns above it at t = 8
  CHECK(monitor(s, parse("*( F[0,9] x > x* )", s.schema())).verdict ==
        Verdict::SAT);
  CHECK(monitor(s, parse("*( F[0,3] x > x* )", s.schema())).verdict ==
        Verdict::UNSAT);
  // without a freeze operator the frozen time is 0, so x* means x(0) = 4
  CHECK(monitor(s, parse("F[0,9] x > x*", s.schema())).verdict == Verdict::SAT);
}

TEST_CASE("freeze regions are unions of vertical bands") {
  Signal s = vee();
  MonitorOptions opts;
  opts.keep_intermediate = true;
  auto rep = monitor(s, parse("*( F[0,3] x > x* )", s.schema()), opts);
  const Region& root = rep.nodes.back().region;
  for (const auto& p : root.polys) {
    auto bb = p.bbox();
    CHECK(bb.ymin == doctest::Approx(0.0));
    CHECK(bb.ymax == doctest::Approx(root.domain));
  }
}

TEST_CASE("verdict near the region boundary is flagged") {
  Signal s = ramp10();
  // S_{x > x*} = {t > t*}: its boundary is the diagonal through the origin
  CHECK(monitor(s, parse("x > x*", s.schema())).verdict == Verdict::BOUNDARY);
  // shifting the threshold moves the boundary away from the origin
  CHECK(monitor(s, parse("x > x* - 1", s.schema())).verdict == Verdict::SAT);
  CHECK(monitor(s, parse("x > x* + 1", s.schema())).verdict == Verdict::UNSAT);
}

TEST_CASE("membership cannot flip through the domain border") {
  // x(t) = t: 'x > 0' holds right of t = 0. Within the square no nearby
  // point is outside the set, so the verdict is a plain SAT rather than
  // BOUNDARY: the threshold crossing coincides with the domain edge.
  Signal s(SignalSchema({"x"}), {Rat(0), Rat(10)}, {{0.0}, {10.0}});
  CHECK(monitor(s, parse("x > 0", s.schema())).verdict == Verdict::SAT);
  CHECK(monitor(s, parse("x > 1", s.schema())).verdict == Verdict::UNSAT);
}

TEST_CASE("short signals are rejected unless explicitly allowed") {
  Signal s = ramp10();
  FormulaPtr f = parse("F[0,15] x > 0", s.schema());
  CHECK_THROWS_AS(monitor(s, f), ShortSignalError);
  MonitorOptions opts;
  opts.allow_short = true;
  CHECK(monitor(s, f, opts).verdict == Verdict::SAT);  // best effort
}

TEST_CASE("eventually shortcut matches the generic until construction") {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int iter = 0; iter < 30; ++iter) {
    Region r = Region::empty(10.0, 1e-9);
    std::uniform_int_distribution<int> np(1, 3);
    int n = np(rng);
    for (int i = 0; i < n; ++i) {
      std::vector<geom::Point> pts;
      for (int k = 0; k < 6; ++k) pts.push_back({u(rng), u(rng)});
      r.add(geom::convex_hull(std::move(pts), 1e-9));
    }
    double a = std::uniform_real_distribution<double>(0.0, 2.0)(rng);
    double b = a + std::uniform_real_distribution<double>(0.5, 3.0)(rng);

    Region ev = eventually_satset(r, a, b);
    Region un = until_satset(Region::full(10.0, 1e-9), r, a, b);
    for (int i = 0; i < 300; ++i) {
      geom::Point p{u(rng), u(rng)};
      if (boundary_distance(ev, p, false) < 1e-6) continue;
      if (boundary_distance(un, p, false) < 1e-6) continue;
      CAPTURE(p.x);
      CAPTURE(p.y);
      CHECK(contains_point(ev, p.x, p.y, Mode::Closed) ==
            contains_point(un, p.x, p.y, Mode::Closed));
    }
  }
}

TEST_CASE("monitor report carries stats and post-order nodes") {
  Signal s = vee();
  MonitorOptions opts;
  opts.keep_intermediate = true;
  auto rep = monitor(s, parse("F[0,5] x > 1 || x < 0", s.schema()), opts);
  CHECK(rep.nodes.size() >= 3);
  CHECK(rep.stats.polygons_peak > 0);
  CHECK(rep.stats.wall_ms >= 0.0);
  // root node last
  CHECK(verdict_at_origin(rep.nodes.back().region) == rep.verdict);
}

TEST_CASE("refining the signal does not flip the verdict") {
  Signal s = vee();
  const char* formulas[] = {
      "F[0,8] x > 5",
      "G[0,4] x < 5",
      "*( F[0,9] x > x* )",
      "x < 5 U[0,9.5] x > 5",
  };
  for (const char* text : formulas) {
    FormulaPtr f = parse(text, s.schema());
    Verdict v0 = monitor(s, f).verdict;
    Verdict v2 = monitor(s.refine(2), f).verdict;
    CAPTURE(text);
    CHECK(v0 == v2);
  }
}
