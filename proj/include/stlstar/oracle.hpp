#pragma once

#include <vector>

#include "stlstar/formula.hpp"
#include "stlstar/geometry.hpp"
#include "stlstar/signal.hpp"

namespace stlstar::oracle {

struct GridSpec {
  Rat step;  // lattice spacing delta > 0
};

GridSpec default_grid(const Signal& s);

// Three-valued truth: certainly false / undecided by the grid / certainly
// true. Quantifier scans walk both the sample points and the open gaps
// between adjacent samples; a gap where a predicate changes sign cannot be
// classified, so results that hinge on it come back Unknown instead of a
// possibly-wrong boolean.
enum class Tri : signed char { False = -1, Unknown = 0, True = 1 };

// Brute-force reference evaluation of the semantics on a lattice.
// Quantifiers are discretized to the sample axis, which contains the
// lattice, all signal breakpoints, and the exact shifted interval
// endpoints t+a / t+b of every temporal operator.
struct GridResult {
  std::vector<double> axis;      // lattice values (t and t* axes coincide)
  std::vector<std::vector<Tri>> truth;  // truth[i][j] at (axis[i], axis[j])
  double defined_t_max = 0;      // |s| - l(f): t beyond this is not evaluated
};

GridResult grid_eval(const Signal& s, const FormulaPtr& f, const GridSpec& g);

struct Disagreement {
  double t, tstar;
  bool engine, oracle;
};

// Lattice points where engine and oracle certainly differ, excluding points
// within 2*eps of any engine polygon boundary, points the grid cannot decide,
// and points past the sufficient-length horizon.
std::vector<Disagreement> compare(const Signal& s, const FormulaPtr& f,
                                  const GridSpec& g,
                                  const geom::Region& engine_region);

}  // namespace stlstar::oracle
