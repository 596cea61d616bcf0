#include "doctest.h"

#include <random>
#include <sstream>

#include "stlstar/signal.hpp"

using namespace stlstar;

namespace {

Signal ramp() {
  // x(t) = t - 5 on [0, 10]
  return Signal(SignalSchema({"x"}), {Rat(0), Rat(10)}, {{-5.0}, {5.0}});
}

}  // namespace

TEST_CASE("construction invariants") {
  CHECK_THROWS(Signal(SignalSchema({"x"}), {Rat(0)}, {{1.0}}));  // one sample
  CHECK_THROWS(Signal(SignalSchema({"x"}), {Rat(0), Rat(0)}, {{1.0}, {2.0}}));
  CHECK_THROWS(Signal(SignalSchema({"x"}), {Rat(0), Rat(2), Rat(1)},
                      {{1.0}, {2.0}, {3.0}}));
  CHECK_THROWS(Signal(SignalSchema({"x", "x"}), {Rat(0), Rat(1)},
                      {{1.0, 2.0}, {2.0, 3.0}}));  // duplicate names
}

TEST_CASE("linear interpolation") {
  Signal s = ramp();
  CHECK(s.value_at(0, 0.0) == doctest::Approx(-5.0));
  CHECK(s.value_at(0, 5.0) == doctest::Approx(0.0));
  CHECK(s.value_at(0, 7.5) == doctest::Approx(2.5));
  CHECK(s.value_at(0, 10.0) == doctest::Approx(5.0));
  CHECK_THROWS_AS(s.value_at(0, -0.5), DomainError);
  CHECK_THROWS_AS(s.value_at(0, 10.5), DomainError);
}

TEST_CASE("csv loading shifts times to start at zero") {
  std::istringstream in("time,x,y\n2.5,1,4\n3.5,2,5\n5,3,6\n");
  Signal s = load_csv(in);
  CHECK(s.length() == Rat(5, 2));
  CHECK(s.time_offset() == Rat(5, 2));
  CHECK(s.times()[0] == 0);
  CHECK(s.times()[1] == 1);
  CHECK(s.value_at(1, 0.5) == doctest::Approx(4.5));
}

TEST_CASE("csv errors") {
  auto load = [](const char* text) {
    std::istringstream in(text);
    return load_csv(in);
  };
  CHECK_THROWS_AS(load("time,x\n0,1\n0,2\n"), SignalError);    // non-monotone
  CHECK_THROWS_AS(load("time,x\n1,1\n0,2\n"), SignalError);
  CHECK_THROWS_AS(load("time,x\n0,1\n1,2,3\n"), SignalError);  // ragged
  CHECK_THROWS_AS(load("time,x\n0,1\n"), SignalError);         // one sample
  CHECK_THROWS_AS(load("time,x\n0,a\n1,2\n"), SignalError);
  CHECK_THROWS_AS(load("t,x\n0,1\n1,2\n"), SignalError);       // bad header
}

TEST_CASE("csv round trip is exact") {
  Signal s(SignalSchema({"x", "y"}), {Rat(0), Rat(1, 3), Rat(2)},
           {{0.25, -1.0}, {1.5, 0.0}, {3.0, 7.5}});
  std::ostringstream out;
  save_csv(s, out);
  std::istringstream in(out.str());
  Signal t = load_csv(in);
  CHECK(t.times() == s.times());
  CHECK(t.values() == s.values());
  CHECK(t.schema().names == s.schema().names);
}

TEST_CASE("json round trip") {
  Signal s(SignalSchema({"x"}), {Rat(0), Rat(1, 4), Rat(1)},
           {{1.0}, {2.0}, {-3.0}});
  std::ostringstream out;
  signal_to_json(s, out);
  std::istringstream in(out.str());
  Signal t = signal_from_json(in);
  CHECK(t.times() == s.times());
  CHECK(t.values() == s.values());
}

TEST_CASE("refine preserves the interpolant") {
  Signal s(SignalSchema({"x"}), {Rat(0), Rat(1), Rat(3)},
           {{0.0}, {4.0}, {-2.0}});
  Signal fine = s.refine(3);
  CHECK(fine.segment_count() == s.segment_count() * 3);
  CHECK(fine.length() == s.length());
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    double t = u(rng);
    CHECK(fine.value_at(0, t) == doctest::Approx(s.value_at(0, t)).epsilon(1e-12));
  }
}

TEST_CASE("length check against a formula") {
  Signal s = ramp();  // length 10
  auto ok = check_length(s, parse("F[0,5] x > 0", s.schema()));
  CHECK(ok.ok);
  auto bad = check_length(s, parse("F[0,15] x > 0", s.schema()));
  CHECK(!bad.ok);
  CHECK(bad.needed == 15);
  CHECK(bad.have == 10);
}
