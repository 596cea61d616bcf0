// Acceptance gate: one self-contained check per shipped guarantee, each
// printing a single PASS/FAIL line. Exits nonzero if any check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "stlstar/oracle.hpp"
#include "stlstar/satset.hpp"
#include "stlstar/simulate.hpp"

using namespace stlstar;
using geom::ConvexPolygon;
using geom::Mode;
using geom::Point;
using geom::Region;

namespace {

bool g_all_ok = true;

void report(int id, const char* title, bool ok, const std::string& detail = "") {
  std::printf("%s: %d. %s%s%s\n", ok ? "PASS" : "FAIL", id, title,
              detail.empty() ? "" : " — ", detail.c_str());
  if (!ok) g_all_ok = false;
}

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

// ---- case-study material ---------------------------------------------------

const char* kOsc =
    "G[10,190] F[0,50] *( (F[1,50] m1* < m1) && (F[1,50] m1* > m1) )";
const char* kGrow = "G[10,200] *( F[1,50] m1* <= m1 )";
const char* kTrack = "G[0,270] *( F[0,30] (m1* + 1 > m3 && m1* - 1 < m3) )";

Signal case_study_signal(double alpha0, int samples) {
  sim::RepressilatorParams p;
  p.alpha0 = alpha0;
  p.samples = samples;
  return sim::integrate(p);
}

// ---- randomized suite ------------------------------------------------------

struct RandomCase {
  Signal signal;
  FormulaPtr formula;
};

FormulaPtr random_formula(std::mt19937& rng, int depth) {
  auto coin = [&](double p) {
    return std::uniform_real_distribution<double>(0, 1)(rng) < p;
  };
  auto rat4 = [&](int lo, int hi) {
    return Rat(std::uniform_int_distribution<int>(lo, hi)(rng), 4);
  };
  if (depth == 0 || coin(0.25)) {
    LinearPredicate mu;
    std::uniform_int_distribution<int> var(0, 1);
    std::uniform_int_distribution<int> coef(-2, 2);
    int terms = coin(0.5) ? 1 : 2;
    for (int k = 0; k < terms; ++k) {
      int c = coef(rng);
      if (c == 0) c = 1;
      if (coin(0.5))
        mu.plain_coeffs[var(rng)] += c;
      else
        mu.frozen_coeffs[var(rng)] += c;
    }
    if (mu.plain_coeffs.empty() && mu.frozen_coeffs.empty())
      mu.plain_coeffs[0] = 1;
    std::erase_if(mu.plain_coeffs, [](const auto& kv) { return kv.second == 0.0; });
    std::erase_if(mu.frozen_coeffs, [](const auto& kv) { return kv.second == 0.0; });
    if (mu.plain_coeffs.empty() && mu.frozen_coeffs.empty())
      mu.plain_coeffs[0] = 1;
    mu.bound = std::uniform_real_distribution<double>(-4, 4)(rng);
    mu.cmp = coin(0.5) ? Cmp::LT : Cmp::GT;
    return Formula::atomic(std::move(mu));
  }
  switch (std::uniform_int_distribution<int>(0, 6)(rng)) {
    case 0:
      return Formula::negate(random_formula(rng, depth - 1));
    case 1:
      return Formula::disjunction(random_formula(rng, depth - 1),
                                  random_formula(rng, depth - 1));
    case 2:
      return Formula::conjunction(random_formula(rng, depth - 1),
                                  random_formula(rng, depth - 1));
    case 3: {
      Rat a = rat4(0, 4);
      return Formula::until(a, a + rat4(2, 8), random_formula(rng, depth - 1),
                            random_formula(rng, depth - 1));
    }
    case 4: {
      Rat a = rat4(0, 4);
      return Formula::eventually(a, a + rat4(2, 8),
                                 random_formula(rng, depth - 1));
    }
    case 5: {
      Rat a = rat4(0, 4);
      return Formula::globally(a, a + rat4(2, 8),
                               random_formula(rng, depth - 1));
    }
    default:
      return Formula::freeze(random_formula(rng, depth - 1));
  }
}

Signal random_signal(std::mt19937& rng, const Rat& min_length) {
  int nseg = std::uniform_int_distribution<int>(3, 20)(rng);
  std::vector<int> weights(nseg);
  int total_w = 0;
  for (int& w : weights) {
    w = std::uniform_int_distribution<int>(1, 8)(rng);
    total_w += w;
  }
  Rat total = min_length + 1;
  std::vector<Rat> times{Rat(0)};
  int acc = 0;
  for (int w : weights) {
    acc += w;
    times.push_back(total * acc / total_w);
  }
  std::uniform_real_distribution<double> val(-5.0, 5.0);
  std::vector<std::vector<double>> values;
  for (int i = 0; i <= nseg; ++i) values.push_back({val(rng), val(rng)});
  return Signal(SignalSchema({"x", "y"}), std::move(times), std::move(values));
}

std::vector<RandomCase> make_suite(int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<RandomCase> suite;
  suite.reserve(count);
  while (static_cast<int>(suite.size()) < count) {
    std::uniform_int_distribution<int> depth(1, 4);
    FormulaPtr f = random_formula(rng, depth(rng));
    Rat l = required_length(f);
    if (l > 20) continue;  // keep lattices small
    suite.push_back({random_signal(rng, l), f});
  }
  return suite;
}

Region root_region(const Signal& s, const FormulaPtr& f) {
  MonitorOptions opts;
  opts.keep_intermediate = true;
  return monitor(s, f, opts).nodes.back().region;
}

void collect_atoms(const FormulaPtr& f, std::vector<LinearPredicate>* out) {
  if (f->kind == FormulaKind::Atomic) out->push_back(f->pred);
  if (f->left) collect_atoms(f->left, out);
  if (f->right) collect_atoms(f->right, out);
}

Region random_region(std::mt19937& rng, double domain, int max_polys) {
  std::uniform_real_distribution<double> u(0.0, domain);
  Region r = Region::empty(domain, 1e-9 * domain);
  int n = std::uniform_int_distribution<int>(1, max_polys)(rng);
  for (int i = 0; i < n; ++i) {
    std::vector<Point> pts;
    int m = std::uniform_int_distribution<int>(3, 8)(rng);
    for (int k = 0; k < m; ++k) pts.push_back({u(rng), u(rng)});
    r.add(geom::convex_hull(std::move(pts), r.eps));
  }
  return r;
}

// ---- criteria --------------------------------------------------------------

void criterion_case_study() {
  struct Run {
    double alpha0;
    const char* formula;
    Verdict expect;
  };
  std::string f78 = std::string("(") + kOsc + ") && (" + kGrow + ")";
  Run runs[] = {
      {0.2, kOsc, Verdict::SAT},    {0.2, f78.c_str(), Verdict::SAT},
      {0.2, kTrack, Verdict::SAT},  {2.0, kOsc, Verdict::SAT},
      {2.0, f78.c_str(), Verdict::UNSAT},
  };
  bool ok = true;
  std::string detail;
  Signal s02 = case_study_signal(0.2, 400);
  Signal s2 = case_study_signal(2.0, 400);
  for (const Run& run : runs) {
    const Signal& s = run.alpha0 == 0.2 ? s02 : s2;
    double t0 = now_ms();
    Verdict v = monitor(s, parse(run.formula, s.schema())).verdict;
    double ms = now_ms() - t0;
    if (v != run.expect || ms > 60000) {
      ok = false;
      detail += std::string(verdict_name(v)) + " (expected " +
                verdict_name(run.expect) + ") for alpha0=" +
                std::to_string(run.alpha0) + "; ";
    }
  }
  report(1, "oscillator case-study verdicts", ok, detail);
}

void criterion_performance() {
  Signal s = case_study_signal(0.2, 80);
  FormulaPtr f = parse(kOsc, s.schema());
  double t0 = now_ms();
  Verdict v = monitor(s, f).verdict;
  double ms = now_ms() - t0;
  (void)v;
  report(2, "80-sample oscillation formula monitored within 10 s", ms <= 10000,
         std::to_string(ms) + " ms");
}

std::vector<RandomCase> g_suite;

void criterion_oracle_suite() {
  g_suite = make_suite(200, 20250823);
  double t0 = now_ms();
  size_t disagreements = 0;
  int failed_case = -1;
  for (size_t i = 0; i < g_suite.size(); ++i) {
    const auto& c = g_suite[i];
    Region root = root_region(c.signal, c.formula);
    // lattice: ~96 steps across the signal plus its breakpoints
    oracle::GridSpec g{c.signal.length() / 96};
    auto diffs = oracle::compare(c.signal, c.formula, g, root);
    disagreements += diffs.size();
    if (!diffs.empty() && failed_case < 0) failed_case = static_cast<int>(i);
  }
  double ms = now_ms() - t0;
  bool ok = disagreements == 0 && ms <= 600000;
  std::string detail = std::to_string(disagreements) + " disagreements in " +
                       std::to_string(ms / 1000) + " s";
  if (failed_case >= 0)
    detail += " (first at case " + std::to_string(failed_case) + ")";
  report(3, "engine matches the lattice reference on 200 random cases", ok,
         detail);
}

void criterion_eventually_shortcut() {
  std::mt19937 rng(424242);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  size_t mismatches = 0;
  for (int iter = 0; iter < 100; ++iter) {
    Region r = random_region(rng, 10.0, 3);
    double a = std::uniform_real_distribution<double>(0.0, 2.0)(rng);
    double b = a + std::uniform_real_distribution<double>(0.5, 3.0)(rng);
    Region ev = eventually_satset(r, a, b);
    Region un = until_satset(Region::full(10.0, r.eps), r, a, b);
    for (int i = 0; i < 200; ++i) {
      Point p{u(rng), u(rng)};
      if (boundary_distance(ev, p, false) < 1e-6) continue;
      if (boundary_distance(un, p, false) < 1e-6) continue;
      if (contains_point(ev, p.x, p.y, Mode::Closed) !=
          contains_point(un, p.x, p.y, Mode::Closed))
        ++mismatches;
    }
  }
  report(4, "direct eventually construction matches until over full left set",
         mismatches == 0, std::to_string(mismatches) + " mismatches");
}

void criterion_polygon_bound() {
  size_t violations = 0;
  for (const auto& c : g_suite) {
    std::vector<LinearPredicate> atoms;
    collect_atoms(c.formula, &atoms);
    size_t m = c.signal.segment_count();
    for (const auto& mu : atoms) {
      Region r = atomic_satset(c.signal, mu, default_eps(c.signal));
      if (r.polys.size() > m * m) ++violations;
    }
  }
  report(5, "atomic satisfaction sets stay within the m^2 polygon bound",
         violations == 0, std::to_string(violations) + " violations");
}

void criterion_required_lengths() {
  SignalSchema rep({"m1", "m2", "m3", "p1", "p2", "p3"});
  // hand-derived: the nested F windows add their upper bounds onto the
  // enclosing G upper bound (50+50+190, 50+200, 30+270)
  bool ok = required_length(parse(kOsc, rep)) == 290 &&
            required_length(parse(kGrow, rep)) == 250 &&
            required_length(parse(kTrack, rep)) == 300;
  report(6, "required signal lengths are 290 / 250 / 300", ok);
}

void criterion_numerics() {
  // convergence order via step-halving triplets on the growing-oscillation run
  sim::RepressilatorParams p;
  p.t_end = 60;
  p.samples = 61;
  p.dt = 0.2;
  Signal coarse = sim::integrate(p);
  p.dt = 0.1;
  Signal mid = sim::integrate(p);
  p.dt = 0.05;
  Signal fine = sim::integrate(p);
  double e1 = 0, e2 = 0;
  for (size_t i = 0; i < coarse.sample_count(); ++i) {
    e1 = std::max(e1, std::abs(coarse.values()[i][0] - mid.values()[i][0]));
    e2 = std::max(e2, std::abs(mid.values()[i][0] - fine.values()[i][0]));
  }
  double order = std::log2(e1 / e2);
  bool order_ok = order >= 3.5 && order <= 4.5;

  sim::RepressilatorParams q;
  double v = sim::symmetric_fixed_point(q);
  q.init = {v, v, v, v, v, v};
  q.t_end = 10;
  q.samples = 101;
  q.dt = 0.01;
  Signal fp = sim::integrate(q);
  double residual = 0;
  for (const auto& row : fp.values())
    for (double x : row) residual = std::max(residual, std::abs(x - v));
  bool fp_ok = residual <= 1e-6;

  size_t flips = 0;
  for (const auto& c : g_suite) {
    Verdict v0 = monitor(c.signal, c.formula).verdict;
    Verdict v2 = monitor(c.signal.refine(2), c.formula).verdict;
    bool flip = (v0 == Verdict::SAT && v2 == Verdict::UNSAT) ||
                (v0 == Verdict::UNSAT && v2 == Verdict::SAT);
    if (flip) ++flips;
  }
  bool ok = order_ok && fp_ok && flips == 0;
  report(7, "integrator order, fixed-point residual, refinement stability", ok,
         "order=" + std::to_string(order) +
             ", residual=" + std::to_string(residual) +
             ", verdict flips=" + std::to_string(flips));
}

void criterion_geometry_properties() {
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  const double eps = 1e-8;
  size_t violations = 0;
  for (int iter = 0; iter < 10000; ++iter) {
    auto poly = [&] {
      std::vector<Point> pts;
      int m = std::uniform_int_distribution<int>(3, 7)(rng);
      for (int k = 0; k < m; ++k) pts.push_back({u(rng), u(rng)});
      return geom::convex_hull(std::move(pts), eps);
    };
    ConvexPolygon a = poly(), b = poly();
    ConvexPolygon ab = geom::intersect(a, b, eps);
    ConvexPolygon ba = geom::intersect(b, a, eps);

    Region ra = Region::empty(10.0, eps);
    ra.add(a);
    Region cc = geom::complement(geom::complement(ra));
    double lo = std::uniform_real_distribution<double>(0.0, 1.5)(rng);
    double hi = lo + std::uniform_real_distribution<double>(0.25, 2.0)(rng);
    Region er = geom::erode_shift(ra, lo, hi);

    for (int i = 0; i < 12; ++i) {
      Point p{u(rng), u(rng)};
      double guard = std::min({boundary_distance(ra, p, false),
                               geom::boundary_distance(cc, p, false)});
      // intersection commutativity (off both intersection boundaries)
      if (!ab.empty() || !ba.empty()) {
        bool near = (!ab.empty() && ab.contains(p, 1e-6) !=
                                        ab.contains_strict(p, 1e-6)) ||
                    (!ba.empty() && ba.contains(p, 1e-6) !=
                                        ba.contains_strict(p, 1e-6));
        if (!near && ab.contains(p, eps) != ba.contains(p, eps)) ++violations;
      }
      // complement involution
      if (guard > 1e-6 && contains_point(ra, p.x, p.y, Mode::Closed) !=
                              contains_point(cc, p.x, p.y, Mode::Closed))
        ++violations;
      // translate containment: every erode-shift member must have an exact
      // in-range shift landing inside the source polygon; the witness range
      // is the horizontal slice of the polygon at height p.y
      if (boundary_distance(er, p, false) > 1e-6 &&
          contains_point(er, p.x, p.y, Mode::Closed)) {
        double x0 = 1e30, x1 = -1e30;
        const auto& ring = a.ring();
        for (size_t k = 0; k < ring.size(); ++k) {
          Point v0 = ring[k], v1 = ring[(k + 1) % ring.size()];
          if ((v0.y - p.y) * (v1.y - p.y) > 0) continue;
          if (v0.y == v1.y) {
            x0 = std::min({x0, v0.x, v1.x});
            x1 = std::max({x1, v0.x, v1.x});
          } else {
            double x = v0.x + (p.y - v0.y) * (v1.x - v0.x) / (v1.y - v0.y);
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
          }
        }
        bool witness = x0 - 1e-6 <= p.x + hi && x1 + 1e-6 >= p.x + lo;
        if (!witness) ++violations;
      }
    }
  }
  report(8, "geometry kernel property sweep over 10000 polygon pairs",
         violations == 0, std::to_string(violations) + " violations");
}

}  // namespace

int main() {
  criterion_case_study();
  criterion_performance();
  criterion_oracle_suite();
  criterion_eventually_shortcut();
  criterion_polygon_bound();
  criterion_required_lengths();
  criterion_numerics();
  criterion_geometry_properties();
  return g_all_ok ? 0 : 1;
}
