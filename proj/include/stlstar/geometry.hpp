#pragma once

#include <utility>
#include <vector>

namespace stlstar::geom {

struct Point {
  double x = 0;  // t
  double y = 0;  // t*
};

struct Bounds {
  double xmin = 0, ymin = 0, xmax = 0, ymax = 0;
  bool overlaps(const Bounds& o, double slack) const {
    return xmin <= o.xmax + slack && o.xmin <= xmax + slack &&
           ymin <= o.ymax + slack && o.ymin <= ymax + slack;
  }
};

// Closed convex region in the (t, t*) plane as a CCW vertex ring.
// The boundary itself is don't-care within eps; an empty ring is the
// canonical Empty polygon.
class ConvexPolygon {
 public:
  ConvexPolygon() = default;

  // Normalizes a ring: drops near-duplicate and collinear vertices, fixes
  // orientation, and maps anything with area < eps^2 to Empty.
  static ConvexPolygon from_ring(std::vector<Point> ring, double eps);
  static ConvexPolygon rect(double x0, double y0, double x1, double y1, double eps);

  bool empty() const { return ring_.empty(); }
  const std::vector<Point>& ring() const { return ring_; }
  double area() const;
  Bounds bbox() const;
  bool contains(Point p, double eps) const;         // within eps of the closed set
  bool contains_strict(Point p, double eps) const;  // interior with eps margin
  bool is_convex(double eps) const;

 private:
  std::vector<Point> ring_;
};

// Keeps the side a*t + b*tstar <= c (strict-inequality boundary is don't-care).
ConvexPolygon clip_halfplane(const ConvexPolygon& p, double a, double b, double c,
                             double eps);
ConvexPolygon intersect(const ConvexPolygon& p, const ConvexPolygon& q, double eps);
ConvexPolygon convex_hull(std::vector<Point> pts, double eps);

// Finite union of convex polygons inside the square [0, domain]^2.
// Members may overlap; membership is the union.
struct Region {
  double domain = 0;
  double eps = 1e-9;
  std::vector<ConvexPolygon> polys;

  static Region empty(double domain, double eps);
  static Region full(double domain, double eps);
  bool is_empty() const { return polys.empty(); }
  void add(ConvexPolygon p) {
    if (!p.empty()) polys.push_back(std::move(p));
  }
};

enum class Mode { Closed, Strict };

Region union_regions(const Region& a, const Region& b);
Region intersect_regions(const Region& a, const Region& b);

// Domain square minus r, as convex pieces (boundary don't-care).
Region complement(const Region& r);

// A "erode-shift": {(x,y) | exists c in (lo,hi): (x+c,y) in A}, clipped to
// the domain square.
Region erode_shift(const Region& r, double lo, double hi);

// Maximal t-intervals of {t | (t,t) in r}; sub-eps intersections dropped.
std::vector<std::pair<double, double>> diagonal_trace(const Region& r);

Region cylindrify(const std::vector<std::pair<double, double>>& intervals,
                  double domain, double eps);

// Same membership function; polygons sharing a full edge whose union is
// convex are fused until a fixpoint.
Region merge_adjacent(Region r);

bool contains_point(const Region& r, double t, double tstar, Mode mode);

// Distance from p to the nearest polygon boundary segment. Segments lying on
// the domain-square border can be skipped: those are clipping artifacts, not
// satisfaction-set boundaries.
double boundary_distance(const Region& r, Point p, bool exclude_domain_edges);

size_t total_vertices(const Region& r);

namespace detail {

// Line through two points, evaluated by y. Callers guarantee p.y != q.y.
struct Line {
  Point p, q;
  double x_at(double y) const {
    return p.x + (q.x - p.x) * (y - p.y) / (q.y - p.y);
  }
  Line shifted(double dx) const { return {{p.x + dx, p.y}, {q.x + dx, q.y}}; }
};

struct Edge {
  Point a, b;
  int owner = -1;
};

// y-coordinates of proper crossings between edges of distinct owners,
// restricted to [ylo, yhi].
std::vector<double> crossing_ys(const std::vector<Edge>& edges, double eps,
                                double ylo, double yhi);

// Supporting left/right lines of p within stripe [y0, y1]. The stripe must
// not contain vertices of p in its interior. Returns false if p does not
// span the stripe.
bool stripe_trap(const ConvexPolygon& p, double y0, double y1, double eps,
                 Line* left, Line* right);

std::vector<Edge> collect_edges(const Region& r);
std::vector<double> dedupe_sorted(std::vector<double> ys, double eps);

}  // namespace detail

}  // namespace stlstar::geom
