#include "stlstar/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace stlstar::geom {

namespace {

double cross3(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double dist(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

double signed_area(const std::vector<Point>& ring) {
  double s = 0;
  for (size_t i = 0; i < ring.size(); ++i) {
    const Point& a = ring[i];
    const Point& b = ring[(i + 1) % ring.size()];
    s += a.x * b.y - b.x * a.y;
  }
  return 0.5 * s;
}

double point_segment_distance(const Point& p, const Point& a, const Point& b) {
  double dx = b.x - a.x, dy = b.y - a.y;
  double len2 = dx * dx + dy * dy;
  if (len2 == 0) return dist(p, a);
  double t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

}  // namespace

ConvexPolygon ConvexPolygon::from_ring(std::vector<Point> ring, double eps) {
  // drop near-duplicate consecutive vertices
  std::vector<Point> v;
  for (const Point& p : ring) {
    if (v.empty() || dist(v.back(), p) > eps) v.push_back(p);
  }
  while (v.size() >= 2 && dist(v.front(), v.back()) <= eps) v.pop_back();

  // drop collinear vertices (within eps of the neighbour chord)
  bool changed = true;
  while (changed && v.size() >= 3) {
    changed = false;
    for (size_t i = 0; i < v.size() && v.size() >= 3; ++i) {
      const Point& a = v[(i + v.size() - 1) % v.size()];
      const Point& b = v[i];
      const Point& c = v[(i + 1) % v.size()];
      double chord = dist(a, c);
      if (chord == 0 || std::fabs(cross3(a, b, c)) <= eps * chord) {
        v.erase(v.begin() + i);
        changed = true;
        break;
      }
    }
  }
  if (v.size() < 3) return ConvexPolygon();
  double area = signed_area(v);
  if (std::fabs(area) < eps * eps) return ConvexPolygon();
  if (area < 0) std::reverse(v.begin(), v.end());
  ConvexPolygon p;
  p.ring_ = std::move(v);
  return p;
}

ConvexPolygon ConvexPolygon::rect(double x0, double y0, double x1, double y1,
                                  double eps) {
  return from_ring({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}, eps);
}

double ConvexPolygon::area() const {
  return ring_.empty() ? 0.0 : signed_area(ring_);
}

Bounds ConvexPolygon::bbox() const {
  Bounds b{std::numeric_limits<double>::infinity(),
           std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity()};
  for (const Point& p : ring_) {
    b.xmin = std::min(b.xmin, p.x);
    b.ymin = std::min(b.ymin, p.y);
    b.xmax = std::max(b.xmax, p.x);
    b.ymax = std::max(b.ymax, p.y);
  }
  return b;
}

bool ConvexPolygon::contains(Point p, double eps) const {
  if (ring_.empty()) return false;
  for (size_t i = 0; i < ring_.size(); ++i) {
    const Point& a = ring_[i];
    const Point& b = ring_[(i + 1) % ring_.size()];
    double len = dist(a, b);
    if (len == 0) continue;
    if (cross3(a, b, p) < -eps * len) return false;
  }
  return true;
}

bool ConvexPolygon::contains_strict(Point p, double eps) const {
  if (ring_.empty()) return false;
  for (size_t i = 0; i < ring_.size(); ++i) {
    const Point& a = ring_[i];
    const Point& b = ring_[(i + 1) % ring_.size()];
    double len = dist(a, b);
    if (len == 0) continue;
    if (cross3(a, b, p) <= eps * len) return false;
  }
  return true;
}

bool ConvexPolygon::is_convex(double eps) const {
  if (ring_.size() < 3) return ring_.empty();
  for (size_t i = 0; i < ring_.size(); ++i) {
    const Point& a = ring_[i];
    const Point& b = ring_[(i + 1) % ring_.size()];
    const Point& c = ring_[(i + 2) % ring_.size()];
    double scale = std::max(dist(a, b), dist(b, c));
    if (cross3(a, b, c) < -eps * scale) return false;
  }
  return true;
}

ConvexPolygon clip_halfplane(const ConvexPolygon& p, double a, double b, double c,
                             double eps) {
  if (p.empty()) return p;
  double norm = std::hypot(a, b);
  if (norm == 0) throw std::invalid_argument("clip_halfplane: (a,b) must be nonzero");
  const auto& ring = p.ring();
  std::vector<Point> out;
  out.reserve(ring.size() + 1);
  const size_t n = ring.size();
  std::vector<double> d(n);
  for (size_t i = 0; i < n; ++i)
    d[i] = (a * ring[i].x + b * ring[i].y - c) / norm;
  for (size_t i = 0; i < n; ++i) {
    size_t j = (i + 1) % n;
    if (d[i] <= eps) out.push_back(ring[i]);
    if ((d[i] < -eps && d[j] > eps) || (d[i] > eps && d[j] < -eps)) {
      double w = d[i] / (d[i] - d[j]);
      out.push_back({ring[i].x + w * (ring[j].x - ring[i].x),
                     ring[i].y + w * (ring[j].y - ring[i].y)});
    }
  }
  return ConvexPolygon::from_ring(std::move(out), eps);
}

ConvexPolygon intersect(const ConvexPolygon& p, const ConvexPolygon& q, double eps) {
  if (p.empty() || q.empty()) return ConvexPolygon();
  if (!p.bbox().overlaps(q.bbox(), eps)) return ConvexPolygon();
  ConvexPolygon cur = p;
  const auto& ring = q.ring();
  for (size_t i = 0; i < ring.size() && !cur.empty(); ++i) {
    const Point& u = ring[i];
    const Point& v = ring[(i + 1) % ring.size()];
    double a = v.y - u.y;
    double b = -(v.x - u.x);
    double c = a * u.x + b * u.y;
    cur = clip_halfplane(cur, a, b, c, eps);
  }
  return cur;
}

ConvexPolygon convex_hull(std::vector<Point> pts, double eps) {
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [&](const Point& a, const Point& b) {
                          return dist(a, b) <= eps * 0.5;
                        }),
            pts.end());
  if (pts.size() < 3) return ConvexPolygon();
  std::vector<Point> h(2 * pts.size());
  size_t k = 0;
  for (const Point& p : pts) {
    while (k >= 2 && cross3(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  size_t lower = k + 1;
  for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
    while (k >= lower && cross3(h[k - 2], h[k - 1], *it) <= 0) --k;
    h[k++] = *it;
  }
  h.resize(k - 1);
  return ConvexPolygon::from_ring(std::move(h), eps);
}

Region Region::empty(double domain, double eps) { return Region{domain, eps, {}}; }

Region Region::full(double domain, double eps) {
  Region r{domain, eps, {}};
  r.add(ConvexPolygon::rect(0, 0, domain, domain, eps));
  return r;
}

Region union_regions(const Region& a, const Region& b) {
  Region out{a.domain, a.eps, {}};
  out.polys = a.polys;
  for (const auto& p : b.polys) out.add(p);
  return out;
}

Region intersect_regions(const Region& a, const Region& b) {
  Region out{a.domain, a.eps, {}};
  std::vector<std::pair<Bounds, size_t>> bb;
  bb.reserve(b.polys.size());
  for (size_t j = 0; j < b.polys.size(); ++j) bb.emplace_back(b.polys[j].bbox(), j);
  for (const auto& p : a.polys) {
    Bounds pb = p.bbox();
    for (const auto& [qb, j] : bb) {
      if (!pb.overlaps(qb, a.eps)) continue;
      out.add(intersect(p, b.polys[j], a.eps));
    }
  }
  return out;
}

namespace detail {

std::vector<Edge> collect_edges(const Region& r) {
  std::vector<Edge> edges;
  for (size_t i = 0; i < r.polys.size(); ++i) {
    const auto& ring = r.polys[i].ring();
    for (size_t k = 0; k < ring.size(); ++k)
      edges.push_back({ring[k], ring[(k + 1) % ring.size()], static_cast<int>(i)});
  }
  return edges;
}

std::vector<double> dedupe_sorted(std::vector<double> ys, double eps) {
  std::sort(ys.begin(), ys.end());
  std::vector<double> out;
  for (double y : ys)
    if (out.empty() || y - out.back() > eps) out.push_back(y);
  return out;
}

std::vector<double> crossing_ys(const std::vector<Edge>& edges, double eps,
                                double ylo, double yhi) {
  struct E {
    const Edge* e;
    double ymin, ymax, xmin, xmax;
  };
  std::vector<E> es;
  es.reserve(edges.size());
  for (const auto& e : edges) {
    E x{&e, std::min(e.a.y, e.b.y), std::max(e.a.y, e.b.y),
        std::min(e.a.x, e.b.x), std::max(e.a.x, e.b.x)};
    if (x.ymax < ylo - eps || x.ymin > yhi + eps) continue;
    es.push_back(x);
  }
  std::sort(es.begin(), es.end(), [](const E& a, const E& b) { return a.ymin < b.ymin; });

  std::vector<double> out;
  std::vector<const E*> active;
  for (const E& e : es) {
    // purge edges that ended below the new edge
    std::erase_if(active, [&](const E* f) { return f->ymax < e.ymin - eps; });
    for (const E* f : active) {
      if (f->e->owner == e.e->owner) continue;
      if (f->xmax < e.xmin - eps || e.xmax < f->xmin - eps) continue;
      // segment intersection
      const Point &a = e.e->a, &b = e.e->b, &c = f->e->a, &d = f->e->b;
      double rx = b.x - a.x, ry = b.y - a.y;
      double sx = d.x - c.x, sy = d.y - c.y;
      double denom = rx * sy - ry * sx;
      double scale = std::max({std::fabs(rx), std::fabs(ry), std::fabs(sx),
                               std::fabs(sy), 1e-300});
      if (std::fabs(denom) < 1e-14 * scale * scale) continue;  // parallel
      double qpx = c.x - a.x, qpy = c.y - a.y;
      double t = (qpx * sy - qpy * sx) / denom;
      double u = (qpx * ry - qpy * rx) / denom;
      const double slack = 1e-9;
      if (t < -slack || t > 1 + slack || u < -slack || u > 1 + slack) continue;
      double y = a.y + t * ry;
      if (y >= ylo - eps && y <= yhi + eps) out.push_back(y);
    }
    active.push_back(&e);
  }
  return out;
}

bool stripe_trap(const ConvexPolygon& p, double y0, double y1, double eps,
                 Line* left, Line* right) {
  if (p.empty()) return false;
  const double tol = 2 * eps;
  Bounds bb = p.bbox();
  if (bb.ymin > y0 + tol || bb.ymax < y1 - tol) return false;
  const double ym = 0.5 * (y0 + y1);
  const auto& ring = p.ring();
  bool have = false;
  double lx = 0, rx = 0;
  Line lbest, rbest;
  for (size_t i = 0; i < ring.size(); ++i) {
    const Point& u = ring[i];
    const Point& v = ring[(i + 1) % ring.size()];
    double ey0 = std::min(u.y, v.y), ey1 = std::max(u.y, v.y);
    if (ey1 - ey0 <= eps) continue;
    if (ey0 > y0 + tol || ey1 < y1 - tol) continue;
    Line line{u, v};
    double x = line.x_at(ym);
    if (!have) {
      lx = rx = x;
      lbest = rbest = line;
      have = true;
    } else {
      if (x < lx) {
        lx = x;
        lbest = line;
      }
      if (x > rx) {
        rx = x;
        rbest = line;
      }
    }
  }
  if (!have) return false;
  *left = lbest;
  *right = rbest;
  return true;
}

}  // namespace detail

Region complement(const Region& r) {
  using namespace detail;
  const double D = r.domain;
  const double eps = r.eps;
  if (r.polys.empty()) return Region::full(D, eps);

  std::vector<Edge> edges = collect_edges(r);
  std::vector<double> ys{0.0, D};
  for (const auto& p : r.polys)
    for (const auto& v : p.ring()) ys.push_back(std::clamp(v.y, 0.0, D));
  for (double y : crossing_ys(edges, eps, 0.0, D)) ys.push_back(std::clamp(y, 0.0, D));
  ys = dedupe_sorted(std::move(ys), eps);

  struct Trap {
    double lx, rx;
    Line left, right;
  };
  Region out = Region::empty(D, eps);
  const Line x0_line{{0, 0}, {0, 1}};
  const Line xD_line{{D, 0}, {D, 1}};
  std::vector<Trap> traps;
  for (size_t si = 0; si + 1 < ys.size(); ++si) {
    double y0 = ys[si], y1 = ys[si + 1];
    if (y1 - y0 <= eps) continue;
    double ym = 0.5 * (y0 + y1);
    traps.clear();
    for (const auto& p : r.polys) {
      Line l, rt;
      if (!stripe_trap(p, y0, y1, eps, &l, &rt))
        continue;
      traps.push_back({l.x_at(ym), rt.x_at(ym), l, rt});
    }
    std::sort(traps.begin(), traps.end(),
              [](const Trap& a, const Trap& b) { return a.lx < b.lx; });

    Line cur_right = x0_line;
    double cur_rx = 0.0;
    auto emit_gap = [&](const Line& L, const Line& R) {
      auto cl = [&](double x) { return std::clamp(x, 0.0, D); };
      out.add(ConvexPolygon::from_ring({{cl(L.x_at(y0)), y0},
                                        {cl(R.x_at(y0)), y0},
                                        {cl(R.x_at(y1)), y1},
                                        {cl(L.x_at(y1)), y1}},
                                       eps));
    };
    for (const Trap& t : traps) {
      if (t.lx > cur_rx + eps) emit_gap(cur_right, t.left);
      if (t.rx > cur_rx) {
        cur_rx = t.rx;
        cur_right = t.right;
      }
    }
    if (cur_rx < D - eps) emit_gap(cur_right, xD_line);
  }
  return merge_adjacent(std::move(out));
}

Region erode_shift(const Region& r, double lo, double hi) {
  if (lo < 0 || hi < lo) throw std::invalid_argument("erode_shift: need 0 <= lo <= hi");
  Region out = Region::empty(r.domain, r.eps);
  for (const auto& p : r.polys) {
    ConvexPolygon moved;
    if (hi - lo <= r.eps) {
      std::vector<Point> pts;
      for (const Point& v : p.ring()) pts.push_back({v.x - lo, v.y});
      moved = ConvexPolygon::from_ring(std::move(pts), r.eps);
    } else {
      std::vector<Point> pts;
      for (const Point& v : p.ring()) {
        pts.push_back({v.x - lo, v.y});
        pts.push_back({v.x - hi, v.y});
      }
      moved = convex_hull(std::move(pts), r.eps);
    }
    // clip to the domain square
    moved = clip_halfplane(moved, -1, 0, 0, r.eps);
    moved = clip_halfplane(moved, 1, 0, r.domain, r.eps);
    out.add(std::move(moved));
  }
  return out;
}

std::vector<std::pair<double, double>> diagonal_trace(const Region& r) {
  // The diagonal must reach the strict interior of a polygon to count: a
  // diagonal running along a polygon's boundary is a don't-care tangency
  // (e.g. the closed triangle {t* <= t} contributes nothing). The strict
  // interval is then widened back by eps to recover closed-boundary reach.
  std::vector<std::pair<double, double>> raw;
  for (const auto& p : r.polys) {
    double lo = 0.0, hi = r.domain;
    bool feasible = true;
    const auto& ring = p.ring();
    for (size_t i = 0; i < ring.size() && feasible; ++i) {
      const Point& u = ring[i];
      const Point& v = ring[(i + 1) % ring.size()];
      // strict inside: a*x + b*y <= c - eps*scale
      double a = v.y - u.y;
      double b = -(v.x - u.x);
      double c = a * u.x + b * u.y - r.eps * std::hypot(a, b);
      double k = a + b;
      double scale = std::hypot(a, b);
      if (std::fabs(k) <= 1e-12 * scale) {
        if (c < 0) feasible = false;
      } else if (k > 0) {
        hi = std::min(hi, c / k);
      } else {
        lo = std::max(lo, c / k);
      }
    }
    if (feasible && hi - lo > r.eps)
      raw.emplace_back(std::max(0.0, lo - r.eps),
                       std::min(r.domain, hi + r.eps));
  }
  std::sort(raw.begin(), raw.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& iv : raw) {
    if (!merged.empty() && iv.first <= merged.back().second + r.eps) {
      merged.back().second = std::max(merged.back().second, iv.second);
    } else {
      merged.push_back(iv);
    }
  }
  return merged;
}

Region cylindrify(const std::vector<std::pair<double, double>>& intervals,
                  double domain, double eps) {
  Region out = Region::empty(domain, eps);
  for (const auto& [u, v] : intervals)
    out.add(ConvexPolygon::rect(u, 0, v, domain, eps));
  return out;
}

// ---------------------------------------------------------------------------
// merge_adjacent
// ---------------------------------------------------------------------------

namespace {

struct EdgeKey {
  int64_t ax, ay, bx, by;
  bool operator==(const EdgeKey&) const = default;
};

struct EdgeKeyHash {
  size_t operator()(const EdgeKey& k) const {
    size_t h = 1469598103934665603ull;
    auto mix = [&h](int64_t v) {
      h ^= static_cast<size_t>(v);
      h *= 1099511628211ull;
    };
    mix(k.ax);
    mix(k.ay);
    mix(k.bx);
    mix(k.by);
    return h;
  }
};

int64_t quant(double v, double q) { return llround(v / q); }

// canonical undirected key
EdgeKey edge_key(const Point& a, const Point& b, double q) {
  int64_t ax = quant(a.x, q), ay = quant(a.y, q);
  int64_t bx = quant(b.x, q), by = quant(b.y, q);
  if (std::tie(ax, ay) > std::tie(bx, by)) {
    std::swap(ax, bx);
    std::swap(ay, by);
  }
  return {ax, ay, bx, by};
}

// index of the edge (ring[i], ring[i+1]) matching key, or -1
int find_edge(const std::vector<Point>& ring, const EdgeKey& key, double q) {
  for (size_t i = 0; i < ring.size(); ++i) {
    if (edge_key(ring[i], ring[(i + 1) % ring.size()], q) == key)
      return static_cast<int>(i);
  }
  return -1;
}

// Two CCW polygons sit on opposite sides of a shared edge exactly when they
// traverse it in opposite directions; same-direction sharing means overlap,
// and splicing those would produce a doubly-wound ring.
bool opposite_traversal(const Point& ia, const Point& ib, const Point& ja,
                        const Point& jb, double q) {
  return quant(ia.x, q) == quant(jb.x, q) && quant(ia.y, q) == quant(jb.y, q) &&
         quant(ib.x, q) == quant(ja.x, q) && quant(ib.y, q) == quant(ja.y, q);
}

}  // namespace

Region merge_adjacent(Region r) {
  const double eps = r.eps;
  const double q = std::max(eps, 1e-12);
  std::vector<ConvexPolygon> polys;
  for (auto& p : r.polys)
    if (!p.empty()) polys.push_back(std::move(p));

  for (int pass = 0; pass < 64; ++pass) {
    std::unordered_map<EdgeKey, std::vector<int>, EdgeKeyHash> by_edge;
    for (size_t i = 0; i < polys.size(); ++i) {
      const auto& ring = polys[i].ring();
      for (size_t k = 0; k < ring.size(); ++k)
        by_edge[edge_key(ring[k], ring[(k + 1) % ring.size()], q)].push_back(
            static_cast<int>(i));
    }
    std::vector<bool> alive(polys.size(), true);
    bool merged_any = false;
    for (size_t i = 0; i < polys.size(); ++i) {
      if (!alive[i]) continue;
      bool extended = true;
      while (extended) {
        extended = false;
        const auto& ring = polys[i].ring();
        for (size_t k = 0; k < ring.size(); ++k) {
          EdgeKey key = edge_key(ring[k], ring[(k + 1) % ring.size()], q);
          auto it = by_edge.find(key);
          if (it == by_edge.end()) continue;
          for (int j : it->second) {
            if (j == static_cast<int>(i) || !alive[j]) continue;
            int ej = find_edge(polys[j].ring(), key, q);
            if (ej < 0) continue;
            // splice: all of i starting after the shared edge, then j's
            // vertices strictly between the shared endpoints
            const auto& ri = polys[i].ring();
            const auto& rj = polys[j].ring();
            int ei = find_edge(ri, key, q);
            if (ei < 0) continue;
            if (!opposite_traversal(ri[ei], ri[(ei + 1) % ri.size()], rj[ej],
                                    rj[(ej + 1) % rj.size()], q))
              continue;
            std::vector<Point> merged;
            merged.reserve(ri.size() + rj.size() - 2);
            for (size_t m = 0; m < ri.size(); ++m)
              merged.push_back(ri[(ei + 1 + m) % ri.size()]);
            for (size_t m = 2; m < rj.size(); ++m)
              merged.push_back(rj[(ej + m) % rj.size()]);
            ConvexPolygon cand = ConvexPolygon::from_ring(std::move(merged), eps);
            if (cand.empty() || !cand.is_convex(eps)) continue;
            polys[i] = std::move(cand);
            alive[j] = false;
            merged_any = true;
            extended = true;
            break;
          }
          if (extended) break;
        }
      }
    }
    std::vector<ConvexPolygon> next;
    next.reserve(polys.size());
    for (size_t i = 0; i < polys.size(); ++i)
      if (alive[i]) next.push_back(std::move(polys[i]));
    polys = std::move(next);
    if (!merged_any) break;
  }
  r.polys = std::move(polys);
  return r;
}

bool contains_point(const Region& r, double t, double tstar, Mode mode) {
  Point p{t, tstar};
  for (const auto& poly : r.polys) {
    if (mode == Mode::Closed ? poly.contains(p, r.eps)
                             : poly.contains_strict(p, r.eps))
      return true;
  }
  return false;
}

double boundary_distance(const Region& r, Point p, bool exclude_domain_edges) {
  // With exclude_domain_edges, only edges where region membership can
  // actually flip count: edges along the domain border are skipped (nothing
  // lies beyond them), and so are tiling edges whose far side is covered by
  // another polygon of the same region.
  double best = std::numeric_limits<double>::infinity();
  const double D = r.domain;
  const double eps = r.eps;
  const double probe = 16 * eps;
  auto on_border = [&](const Point& a, const Point& b) {
    return (std::fabs(a.x) <= eps && std::fabs(b.x) <= eps) ||
           (std::fabs(a.x - D) <= eps && std::fabs(b.x - D) <= eps) ||
           (std::fabs(a.y) <= eps && std::fabs(b.y) <= eps) ||
           (std::fabs(a.y - D) <= eps && std::fabs(b.y - D) <= eps);
  };
  for (const auto& poly : r.polys) {
    const auto& ring = poly.ring();
    for (size_t i = 0; i < ring.size(); ++i) {
      const Point& a = ring[i];
      const Point& b = ring[(i + 1) % ring.size()];
      if (exclude_domain_edges && on_border(a, b)) continue;
      double d = point_segment_distance(p, a, b);
      if (d >= best) continue;
      if (exclude_domain_edges) {
        // closest point on the segment, pushed past the edge along the
        // outward normal (ring is CCW, so outward is to the right)
        double dx = b.x - a.x, dy = b.y - a.y;
        double len = std::hypot(dx, dy);
        if (len <= eps) continue;
        double t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) /
                                  (len * len),
                              0.0, 1.0);
        Point q{a.x + t * dx + probe * dy / len,
                a.y + t * dy - probe * dx / len};
        if (contains_point(r, q.x, q.y, Mode::Closed)) continue;
      }
      best = d;
    }
  }
  return best;
}

size_t total_vertices(const Region& r) {
  size_t n = 0;
  for (const auto& p : r.polys) n += p.ring().size();
  return n;
}

}  // namespace stlstar::geom
