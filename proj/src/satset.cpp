#include "stlstar/satset.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <unordered_map>

namespace stlstar {

using geom::ConvexPolygon;
using geom::Point;
using geom::Region;

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::SAT: return "SAT";
    case Verdict::UNSAT: return "UNSAT";
    case Verdict::BOUNDARY: return "BOUNDARY";
  }
  return "?";
}

double default_eps(const Signal& s) { return 1e-9 * s.length_d(); }

Region atomic_satset(const Signal& s, const LinearPredicate& mu, double eps) {
  const double D = s.length_d();
  const auto& ts = s.times_d();
  const auto& vals = s.values();
  const size_t m = s.segment_count();
  const int order = s.order();

  for (const auto& [k, c] : mu.plain_coeffs)
    if (k < 0 || k >= order) throw SignalError("predicate variable out of schema");
  for (const auto& [k, c] : mu.frozen_coeffs)
    if (k < 0 || k >= order) throw SignalError("predicate variable out of schema");

  // per-segment affine form of the plain and frozen parts:
  //   sum a_k s_k(t) = A_i * t + C_i on segment i, likewise B_j, E_j.
  std::vector<double> A(m, 0.0), C(m, 0.0), B(m, 0.0), E(m, 0.0);
  for (size_t i = 0; i < m; ++i) {
    double dt = ts[i + 1] - ts[i];
    for (const auto& [k, c] : mu.plain_coeffs) {
      double slope = (vals[i + 1][k] - vals[i][k]) / dt;
      A[i] += c * slope;
      C[i] += c * (vals[i][k] - slope * ts[i]);
    }
    for (const auto& [k, c] : mu.frozen_coeffs) {
      double slope = (vals[i + 1][k] - vals[i][k]) / dt;
      B[i] += c * slope;
      E[i] += c * (vals[i][k] - slope * ts[i]);
    }
  }

  const double sign = mu.cmp == Cmp::LT ? 1.0 : -1.0;
  Region out = Region::empty(D, eps);
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < m; ++j) {
      // alpha*t + beta*t* < gamma over the cell I_i x I_j
      double alpha = sign * A[i];
      double beta = sign * B[j];
      double gamma = sign * (mu.bound - C[i] - E[j]);
      ConvexPolygon rect =
          ConvexPolygon::rect(ts[i], ts[j], ts[i + 1], ts[j + 1], eps);
      if (alpha == 0.0 && beta == 0.0) {
        if (gamma > 0) out.add(std::move(rect));
        continue;
      }
      out.add(geom::clip_halfplane(rect, alpha, beta, gamma, eps));
    }
  }
  return out;
}

Region negate_satset(const Region& r) { return geom::complement(r); }

Region or_satset(const Region& a, const Region& b) {
  return geom::union_regions(a, b);
}

Region freeze_satset(const Region& r) {
  return geom::cylindrify(geom::diagonal_trace(r), r.domain, r.eps);
}

Region eventually_satset(const Region& r, double a, double b) {
  return geom::erode_shift(r, a, b);
}

// ---------------------------------------------------------------------------
// Until: per-polygon stripe procedure.
//
// For every convex P in S1 ∩ S2, the plane is cut into horizontal stripes at
// every vertex t* and every edge crossing, so that within a stripe every
// piece is a trapezoid with linear left/right boundaries and a constant
// overlap structure. The maximal S1-chain containing P's trapezoid plays the
// role of the merged rightmost polygon; intersecting it with P eroded by
// (a,b) yields the stripe solution.
// ---------------------------------------------------------------------------

namespace {

using geom::detail::Line;

// y where the two boundary lines cross, if any
bool line_crossing_y(const Line& u, const Line& v, double* y) {
  double su = (u.q.x - u.p.x) / (u.q.y - u.p.y);
  double sv = (v.q.x - v.p.x) / (v.q.y - v.p.y);
  double cu = u.p.x - su * u.p.y;
  double cv = v.p.x - sv * v.p.y;
  double ds = su - sv;
  if (std::fabs(ds) < 1e-15 * (std::fabs(su) + std::fabs(sv) + 1.0)) return false;
  *y = (cv - cu) / ds;
  return true;
}

struct Trap {
  double lx, rx;
  Line left, right;
};

}  // namespace

Region until_satset(const Region& r1, const Region& r2, double a, double b) {
  using namespace geom::detail;
  const double D = r1.domain;
  const double eps = r1.eps;
  if (!(a >= 0) || !(a < b)) throw std::invalid_argument("until: need 0 <= a < b");

  Region pieces = intersect_regions(r1, r2);
  if (pieces.is_empty()) return Region::empty(D, eps);

  std::vector<Edge> edges1 = collect_edges(r1);
  std::vector<double> ys1;
  for (const auto& p : r1.polys)
    for (const auto& v : p.ring()) ys1.push_back(v.y);
  std::sort(ys1.begin(), ys1.end());
  std::vector<double> self_cross = crossing_ys(edges1, eps, 0.0, D);
  std::sort(self_cross.begin(), self_cross.end());

  const Line x0_line{{0, 0}, {0, 1}};
  Region out = Region::empty(D, eps);

  for (const ConvexPolygon& P : pieces.polys) {
    geom::Bounds pb = P.bbox();
    std::vector<double> events{pb.ymin, pb.ymax};
    for (const auto& v : P.ring()) events.push_back(v.y);
    auto push_range = [&](const std::vector<double>& src) {
      auto lo = std::lower_bound(src.begin(), src.end(), pb.ymin);
      auto hi = std::upper_bound(src.begin(), src.end(), pb.ymax);
      events.insert(events.end(), lo, hi);
    };
    push_range(ys1);
    push_range(self_cross);
    // crossings between P's edges and S1 edges
    std::vector<Edge> mixed = edges1;
    const auto& pr_ring = P.ring();
    for (size_t k = 0; k < pr_ring.size(); ++k)
      mixed.push_back({pr_ring[k], pr_ring[(k + 1) % pr_ring.size()],
                       static_cast<int>(r1.polys.size()) + 1});
    for (double y : crossing_ys(mixed, eps, pb.ymin, pb.ymax)) events.push_back(y);
    events = dedupe_sorted(std::move(events), eps);

    std::vector<Trap> traps;
    for (size_t si = 0; si + 1 < events.size(); ++si) {
      double y0 = events[si], y1 = events[si + 1];
      if (y1 - y0 <= eps) continue;
      double ym = 0.5 * (y0 + y1);
      Line pl, prr;
      if (!stripe_trap(P, y0, y1, eps, &pl, &prr)) continue;
      double plx = pl.x_at(ym), prx = prr.x_at(ym);
      double pmid = 0.5 * (plx + prx);

      traps.clear();
      for (const auto& p1 : r1.polys) {
        Line l, rr;
        if (!stripe_trap(p1, y0, y1, eps, &l, &rr)) continue;
        traps.push_back({l.x_at(ym), rr.x_at(ym), l, rr});
      }
      std::sort(traps.begin(), traps.end(),
                [](const Trap& x, const Trap& y) { return x.lx < y.lx; });

      // maximal chain of overlapping S1 trapezoids containing P's slice
      Line chain_left = pl;
      bool found = false;
      double comp_lx = 0, cur_rx = 0;
      Line comp_left;
      bool open = false;
      for (const Trap& t : traps) {
        if (!open || t.lx > cur_rx + eps) {
          if (open && comp_lx - eps <= pmid && pmid <= cur_rx + eps) {
            chain_left = comp_left;
            found = true;
            break;
          }
          comp_lx = t.lx;
          comp_left = t.left;
          cur_rx = t.rx;
          open = true;
        } else if (t.rx > cur_rx) {
          cur_rx = t.rx;
        }
      }
      if (!found && open && comp_lx - eps <= pmid && pmid <= cur_rx + eps)
        chain_left = comp_left;

      // stripe solution: max(chain_left, pl - b, 0) <= t <= pr - a
      Line lowers[3] = {chain_left, pl.shifted(-b), x0_line};
      Line upper = prr.shifted(-a);

      std::vector<double> zs{y0, y1};
      double cy;
      for (int u = 0; u < 3; ++u) {
        for (int v = u + 1; v < 3; ++v)
          if (line_crossing_y(lowers[u], lowers[v], &cy) && cy > y0 && cy < y1)
            zs.push_back(cy);
        if (line_crossing_y(lowers[u], upper, &cy) && cy > y0 && cy < y1)
          zs.push_back(cy);
      }
      zs = dedupe_sorted(std::move(zs), eps * 0.25);
      for (size_t zi = 0; zi + 1 < zs.size(); ++zi) {
        double z0 = zs[zi], z1 = zs[zi + 1];
        double zm = 0.5 * (z0 + z1);
        int which = 0;
        double lo = lowers[0].x_at(zm);
        for (int u = 1; u < 3; ++u) {
          double x = lowers[u].x_at(zm);
          if (x > lo) {
            lo = x;
            which = u;
          }
        }
        double hi = upper.x_at(zm);
        if (hi <= lo) continue;
        const Line& L = lowers[which];
        auto cl = [&](double x) { return std::clamp(x, 0.0, D); };
        out.add(ConvexPolygon::from_ring({{cl(L.x_at(z0)), z0},
                                          {cl(upper.x_at(z0)), z0},
                                          {cl(upper.x_at(z1)), z1},
                                          {cl(L.x_at(z1)), z1}},
                                         eps));
      }
    }
  }
  return geom::merge_adjacent(std::move(out));
}

// ---------------------------------------------------------------------------
// monitor
// ---------------------------------------------------------------------------

namespace {

class Engine {
 public:
  Engine(const Signal& s, double eps, bool keep)
      : signal_(s), eps_(eps), keep_(keep) {}

  const Region& eval(const FormulaPtr& f) {
    std::string key = pretty_print(f, signal_.schema());
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    Region r = compute(f);
    peak_ = std::max(peak_, r.polys.size());
    auto [pos, ok] = memo_.emplace(std::move(key), std::move(r));
    if (keep_) {
      nodes_.push_back({"n" + std::to_string(nodes_.size()), pos->first,
                        pos->second});
    }
    return pos->second;
  }

  size_t peak() const { return peak_; }
  std::vector<NodeSet> take_nodes() { return std::move(nodes_); }

 private:
  Region compute(const FormulaPtr& f) {
    const double D = signal_.length_d();
    switch (f->kind) {
      case FormulaKind::True:
        return Region::full(D, eps_);
      case FormulaKind::False:
        return Region::empty(D, eps_);
      case FormulaKind::Atomic:
        return geom::merge_adjacent(atomic_satset(signal_, f->pred, eps_));
      case FormulaKind::Not:
        return negate_satset(eval(f->left));
      case FormulaKind::Or:
        return geom::merge_adjacent(or_satset(eval(f->left), eval(f->right)));
      case FormulaKind::Freeze:
        return freeze_satset(eval(f->left));
      case FormulaKind::Until: {
        double a = rat_to_double(f->lo), b = rat_to_double(f->hi);
        if (f->left->kind == FormulaKind::True)
          return geom::merge_adjacent(eventually_satset(eval(f->right), a, b));
        return until_satset(eval(f->left), eval(f->right), a, b);
      }
      default:
        throw std::logic_error("monitor: formula must be desugared");
    }
  }

  const Signal& signal_;
  double eps_;
  bool keep_;
  std::unordered_map<std::string, Region> memo_;
  std::vector<NodeSet> nodes_;
  size_t peak_ = 0;
};

}  // namespace

Verdict verdict_at_origin(const Region& r) {
  bool inside = contains_point(r, 0.0, 0.0, geom::Mode::Closed);
  double d = boundary_distance(r, Point{0.0, 0.0}, /*exclude_domain_edges=*/true);
  if (d > r.eps) return inside ? Verdict::SAT : Verdict::UNSAT;

  // A candidate boundary edge touches the origin, but at the domain corner
  // an edge can be fully covered by other polygons (no membership flip in
  // the quadrant). Probe a small arc inside the square: a unanimous answer
  // means the edge was spurious.
  constexpr int kArc = 64;
  const double rho = std::min(16 * r.eps, 0.25 * r.domain);
  int in_count = 0;
  for (int k = 0; k <= kArc; ++k) {
    double theta = 1.5707963267948966 * k / kArc;
    if (contains_point(r, rho * std::cos(theta), rho * std::sin(theta),
                       geom::Mode::Closed))
      ++in_count;
  }
  if (in_count == kArc + 1) return Verdict::SAT;
  if (in_count == 0) return Verdict::UNSAT;
  return Verdict::BOUNDARY;
}

MonitorReport monitor(const Signal& s, const FormulaPtr& f,
                      const MonitorOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  LengthStatus ls = check_length(s, f);
  if (!ls.ok && !opts.allow_short) throw ShortSignalError(ls.needed, ls.have);

  double eps = opts.eps_override > 0 ? opts.eps_override : default_eps(s);
  Engine eng(s, eps, opts.keep_intermediate);
  const Region& root = eng.eval(desugar(f));

  MonitorReport rep;
  rep.verdict = verdict_at_origin(root);
  rep.stats.polygons_peak = eng.peak();
  rep.nodes = eng.take_nodes();
  rep.stats.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
  return rep;
}

}  // namespace stlstar
