#include "doctest.h"

#include "stlstar/oracle.hpp"
#include "stlstar/satset.hpp"

using namespace stlstar;
using oracle::GridSpec;

namespace {

Signal vee() {
  return Signal(SignalSchema({"x"}), {Rat(0), Rat(4), Rat(10)},
                {{4.0}, {0.0}, {6.0}});
}

geom::Region root_region(const Signal& s, const FormulaPtr& f) {
  MonitorOptions opts;
  opts.keep_intermediate = true;
  return monitor(s, f, opts).nodes.back().region;
}

}  // namespace

TEST_CASE("constant-true predicate fills the whole lattice") {
  Signal s(SignalSchema({"x"}), {Rat(0), Rat(10)}, {{1.0}, {1.0}});
  auto g = oracle::grid_eval(s, parse("x > 0", s.schema()), GridSpec{Rat(1)});
  CHECK(g.defined_t_max == doctest::Approx(10.0));
  for (const auto& row : g.truth)
    for (oracle::Tri v : row) CHECK(v == oracle::Tri::True);
}

TEST_CASE("lattice contains signal breakpoints") {
  Signal s = vee();
  auto g = oracle::grid_eval(s, parse("x > 1", s.schema()), GridSpec{Rat(3)});
  bool has4 = false;
  for (double t : g.axis) has4 |= t == 4.0;
  CHECK(has4);
}

TEST_CASE("pointwise truth of a reachability formula") {
  Signal s = vee();
  // F[0,2] x > 4.5: x exceeds 4.5 after t = 8.5, so the formula holds at
  // lattice times in [6.5, 8] (within the defined horizon t <= 8)
  auto g = oracle::grid_eval(s, parse("F[0,2] x > 4.5", s.schema()),
                             GridSpec{Rat(1, 2)});
  CHECK(g.defined_t_max == doctest::Approx(8.0));
  for (size_t i = 0; i < g.axis.size(); ++i) {
    double t = g.axis[i];
    if (t > 8.0) break;
    bool expect = t >= 6.5 + 1e-12;
    CAPTURE(t);
    CHECK(g.truth[i][0] == (expect ? oracle::Tri::True : oracle::Tri::False));
  }
}

TEST_CASE("frozen coordinate follows the second index") {
  Signal s = vee();
  auto g = oracle::grid_eval(s, parse("x* > 3", s.schema()), GridSpec{Rat(1)});
  for (size_t i = 0; i < g.axis.size(); ++i)
    for (size_t j = 0; j < g.axis.size(); ++j) {
      double v = s.value_at(0, g.axis[j]);
      if (std::abs(v - 3.0) < 1e-9) continue;
      CHECK(g.truth[i][j] == (v > 3.0 ? oracle::Tri::True : oracle::Tri::False));
    }
}

TEST_CASE("short signals are rejected") {
  Signal s = vee();
  CHECK_THROWS_AS(
      oracle::grid_eval(s, parse("F[0,20] x > 0", s.schema()), GridSpec{Rat(1)}),
      ShortSignalError);
  CHECK_THROWS(
      oracle::grid_eval(s, parse("x > 0", s.schema()), GridSpec{Rat(0)}));
}

TEST_CASE("engine and reference agree on assorted formulas") {
  Signal s = vee();
  const char* formulas[] = {
      "x > 1",
      "x > x*",
      "!(x < 3)",
      "F[0,2] x > 4.5",
      "G[0,3] x < 5",
      "x < 6 U[1,4] x > 3",
      "*( F[0,5] x > x* + 1 )",
      "F[0,4] (x < 1 && x* < 5)",
  };
  for (const char* text : formulas) {
    CAPTURE(text);
    FormulaPtr f = parse(text, s.schema());
    auto diffs = oracle::compare(s, f, oracle::default_grid(s),
                                 root_region(s, f));
    CHECK(diffs.empty());
  }
}

TEST_CASE("a corrupted region is caught") {
  Signal s = vee();
  FormulaPtr f = parse("x > 1", s.schema());
  geom::Region region = root_region(s, f);
  region.polys.clear();
  region.add(geom::ConvexPolygon::rect(0, 0, 10, 10, region.eps));
  auto diffs = oracle::compare(s, f, oracle::default_grid(s), region);
  CHECK(!diffs.empty());
}

TEST_CASE("comparison is restricted to the defined horizon") {
  Signal s = vee();
  FormulaPtr f = parse("F[0,6] x > 5.5", s.schema());
  auto diffs = oracle::compare(s, f, oracle::default_grid(s),
                               root_region(s, f));
  for (const auto& d : diffs) CHECK(d.t <= 4.0 + 1e-9);
  CHECK(diffs.empty());
}
