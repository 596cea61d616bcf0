#pragma once

#include <string>
#include <vector>

#include "stlstar/formula.hpp"
#include "stlstar/geometry.hpp"
#include "stlstar/signal.hpp"

namespace stlstar {

enum class Verdict { SAT, UNSAT, BOUNDARY };

const char* verdict_name(Verdict v);

struct ShortSignalError : std::runtime_error {
  Rat needed, have;
  ShortSignalError(Rat n, Rat h)
      : std::runtime_error("ShortSignal: formula needs length " +
                           rat_to_string(n) + " but signal has " +
                           rat_to_string(h)),
        needed(std::move(n)),
        have(std::move(h)) {}
};

struct NodeSet {
  std::string id;
  std::string formula;
  geom::Region region;
};

struct MonitorStats {
  size_t polygons_peak = 0;
  double wall_ms = 0;
};

struct MonitorReport {
  Verdict verdict = Verdict::UNSAT;
  std::vector<NodeSet> nodes;  // post-order, root last (when kept)
  MonitorStats stats;
};

struct MonitorOptions {
  bool keep_intermediate = false;
  bool allow_short = false;
  double eps_override = -1;  // < 0: default 1e-9 * |s|
};

geom::Region atomic_satset(const Signal& s, const LinearPredicate& mu, double eps);
geom::Region negate_satset(const geom::Region& r);
geom::Region or_satset(const geom::Region& a, const geom::Region& b);
geom::Region freeze_satset(const geom::Region& r);
geom::Region until_satset(const geom::Region& r1, const geom::Region& r2,
                          double a, double b);
geom::Region eventually_satset(const geom::Region& r, double a, double b);

Verdict verdict_at_origin(const geom::Region& r);

MonitorReport monitor(const Signal& s, const FormulaPtr& f,
                      const MonitorOptions& opts = {});

double default_eps(const Signal& s);

}  // namespace stlstar
