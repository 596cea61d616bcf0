#include "stlstar/oracle.hpp"

#include "stlstar/satset.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

namespace stlstar::oracle {

using geom::Point;

GridSpec default_grid(const Signal& s) {
  Rat min_seg = s.times()[1] - s.times()[0];
  for (size_t i = 1; i + 1 < s.times().size(); ++i)
    min_seg = std::min(min_seg, Rat(s.times()[i + 1] - s.times()[i]));
  return GridSpec{min_seg / 8};
}

namespace {

int until_nesting(const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::True:
    case FormulaKind::False:
    case FormulaKind::Atomic:
      return 0;
    case FormulaKind::Not:
    case FormulaKind::Freeze:
      return until_nesting(f->left);
    case FormulaKind::Or:
      return std::max(until_nesting(f->left), until_nesting(f->right));
    case FormulaKind::Until:
      return 1 + std::max(until_nesting(f->left), until_nesting(f->right));
    default:
      throw std::logic_error("oracle: formula must be desugared");
  }
}

void collect_until_intervals(const FormulaPtr& f,
                             std::set<std::pair<Rat, Rat>>* out) {
  switch (f->kind) {
    case FormulaKind::Until:
      out->insert({f->lo, f->hi});
      collect_until_intervals(f->left, out);
      collect_until_intervals(f->right, out);
      break;
    case FormulaKind::Not:
    case FormulaKind::Freeze:
      collect_until_intervals(f->left, out);
      break;
    case FormulaKind::Or:
      collect_until_intervals(f->left, out);
      collect_until_intervals(f->right, out);
      break;
    default:
      break;
  }
}

void collect_nodes(const Formula* f, std::vector<const Formula*>* nodes) {
  nodes->push_back(f);
  if (f->left) collect_nodes(f->left.get(), nodes);
  if (f->right) collect_nodes(f->right.get(), nodes);
}

Tri tri_not(Tri v) { return static_cast<Tri>(-static_cast<int>(v)); }
Tri tri_and(Tri a, Tri b) { return std::min(a, b); }
Tri tri_or(Tri a, Tri b) { return std::max(a, b); }

// Three-valued lazy evaluator of the semantics over a fixed sample axis.
// Evaluation runs over "items": item 2k is sample point k, item 2k+1 is the
// open gap between samples k and k+1. On a gap a value of True/False means
// the subformula holds/fails throughout the gap; Unknown means the gap
// cannot be classified (e.g. a predicate changes sign inside it).
class Evaluator {
 public:
  Evaluator(const Signal& s, const FormulaPtr& desugared, const GridSpec& g)
      : s_(s), root_(desugared) {
    if (!(g.step > 0)) throw std::invalid_argument("grid step must be positive");
    const Rat r = s.length();

    std::set<Rat> samples;
    for (Rat t = 0; t <= r; t += g.step) samples.insert(t);
    samples.insert(r);
    for (const Rat& t : s.times()) samples.insert(t);
    lattice_.assign(samples.begin(), samples.end());

    std::set<std::pair<Rat, Rat>> intervals;
    collect_until_intervals(root_, &intervals);
    int rounds = until_nesting(root_);
    for (int round = 0; round < rounds; ++round) {
      std::vector<Rat> snapshot(samples.begin(), samples.end());
      for (const auto& [a, b] : intervals) {
        for (const Rat& t : snapshot) {
          if (t + a <= r) samples.insert(t + a);
          if (t + b <= r) samples.insert(t + b);
        }
      }
    }
    ts_rat_.assign(samples.begin(), samples.end());
    ts_.reserve(ts_rat_.size());
    for (const Rat& t : ts_rat_) ts_.push_back(rat_to_double(t));

    collect_nodes(root_.get(), &nodes_);
    for (size_t i = 0; i < nodes_.size(); ++i) node_id_[nodes_[i]] = i;

    // exact index ranges for every Until node
    for (const Formula* f : nodes_) {
      if (f->kind != FormulaKind::Until) continue;
      UntilRange ur;
      ur.lo.resize(ts_rat_.size());
      ur.hi.resize(ts_rat_.size());
      size_t plo = 0, phi = 0;
      for (size_t i = 0; i < ts_rat_.size(); ++i) {
        Rat tlo = ts_rat_[i] + f->lo;
        Rat thi = ts_rat_[i] + f->hi;
        while (plo < ts_rat_.size() && ts_rat_[plo] < tlo) ++plo;
        ur.lo[i] = plo < ts_rat_.size() ? static_cast<int>(plo) : -1;
        while (phi + 1 < ts_rat_.size() && ts_rat_[phi + 1] <= thi) ++phi;
        ur.hi[i] = ts_rat_[phi] >= tlo ? static_cast<int>(phi) : -1;
        // reset phi monotonicity is fine: thi increases with i
      }
      until_ranges_[f] = std::move(ur);
    }

    // signal values at every sample, per variable
    var_vals_.assign(s.order(), std::vector<double>(ts_.size()));
    for (int v = 0; v < s.order(); ++v)
      for (size_t i = 0; i < ts_.size(); ++i)
        var_vals_[v][i] = s.value_at(v, ts_[i]);
  }

  const std::vector<Rat>& lattice() const { return lattice_; }
  const std::vector<Rat>& samples() const { return ts_rat_; }
  const std::vector<double>& samples_d() const { return ts_; }

  int sample_index(const Rat& t) const {
    auto it = std::lower_bound(ts_rat_.begin(), ts_rat_.end(), t);
    return it != ts_rat_.end() && *it == t ? static_cast<int>(it - ts_rat_.begin())
                                           : -1;
  }

  // i, j are item indices; diag marks that t* is tied to t on the same item
  // (directly under a freeze, before any temporal operator moves t).
  Tri eval(const Formula* f, int i, int j, bool diag) {
    uint64_t key = (static_cast<uint64_t>(node_id_.at(f)) << 47) |
                   (static_cast<uint64_t>(diag) << 46) |
                   (static_cast<uint64_t>(i) << 23) | static_cast<uint64_t>(j);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Tri v = compute(f, i, j, diag);
    memo_.emplace(key, v);
    return v;
  }

 private:
  struct UntilRange {
    std::vector<int> lo, hi;
  };

  // min/max of a variable over an item
  void var_range(int var, int item, double* lo, double* hi) const {
    const auto& vals = var_vals_[var];
    if (item % 2 == 0) {
      *lo = *hi = vals[item / 2];
    } else {
      double a = vals[item / 2], b = vals[item / 2 + 1];
      *lo = std::min(a, b);
      *hi = std::max(a, b);
    }
  }

  Tri atom(const LinearPredicate& mu, int i, int j, bool diag) const {
    double lo = 0, hi = 0;
    if (diag && i == j && i % 2 == 1) {
      // t* == t throughout the gap: the plain and frozen parts collapse to
      // one linear function, so the endpoint values bound it exactly
      std::map<int, double> combined = mu.plain_coeffs;
      for (const auto& [k, c] : mu.frozen_coeffs) combined[k] += c;
      double e0 = 0, e1 = 0;
      for (const auto& [k, c] : combined) {
        e0 += c * var_vals_[k][i / 2];
        e1 += c * var_vals_[k][i / 2 + 1];
      }
      lo = std::min(e0, e1);
      hi = std::max(e0, e1);
    } else {
      auto accumulate = [&](const std::map<int, double>& coeffs, int item) {
        for (const auto& [k, c] : coeffs) {
          double vlo, vhi;
          var_range(k, item, &vlo, &vhi);
          if (c >= 0) {
            lo += c * vlo;
            hi += c * vhi;
          } else {
            lo += c * vhi;
            hi += c * vlo;
          }
        }
      };
      accumulate(mu.plain_coeffs, i);
      accumulate(mu.frozen_coeffs, j);
    }
    if (mu.cmp == Cmp::GT) {
      if (lo > mu.bound) return Tri::True;
      if (hi <= mu.bound) return Tri::False;
    } else {
      if (hi < mu.bound) return Tri::True;
      if (lo >= mu.bound) return Tri::False;
    }
    return Tri::Unknown;
  }

  // Scan witnesses t' for left U right starting at item `start`, with the
  // certainly-valid window [cert_lo, cert_hi] and the possibly-valid window
  // [poss_lo, poss_hi] given as item ranges. For point items the two windows
  // coincide; for gap items the certain window shrinks to shifts valid for
  // every t in the gap while the possible window dilates to shifts valid for
  // some t in the gap.
  Tri until_scan(const Formula* f, int start, int cert_lo, int cert_hi,
                 int poss_lo, int poss_hi, int j) {
    if (poss_lo < 0 || poss_hi < poss_lo) return Tri::False;
    const Formula* l = f->left.get();
    const Formula* r = f->right.get();
    bool certain = false, possible = false;
    Tri prefix = Tri::True;  // left operand over items [start, m)
    for (int m = start; m <= poss_hi; ++m) {
      Tri p1 = eval(l, m, j, false);
      if (m >= poss_lo) {
        Tri w = tri_and(eval(r, m, j, false), tri_and(prefix, p1));
        if (w == Tri::True && m >= cert_lo && m <= cert_hi) certain = true;
        if (w != Tri::False) possible = true;
      }
      prefix = tri_and(prefix, p1);
      if (certain || prefix == Tri::False) break;
    }
    if (certain) return Tri::True;
    return possible ? Tri::Unknown : Tri::False;
  }

  Tri compute(const Formula* f, int i, int j, bool diag) {
    switch (f->kind) {
      case FormulaKind::True:
        return Tri::True;
      case FormulaKind::False:
        return Tri::False;
      case FormulaKind::Atomic:
        return atom(f->pred, i, j, diag);
      case FormulaKind::Not:
        return tri_not(eval(f->left.get(), i, j, diag));
      case FormulaKind::Or:
        return tri_or(eval(f->left.get(), i, j, diag),
                      eval(f->right.get(), i, j, diag));
      case FormulaKind::Freeze:
        return eval(f->left.get(), i, i, true);
      case FormulaKind::Until: {
        const UntilRange& ur = until_ranges_.at(f);
        if (i % 2 == 0) {
          int p = i / 2;
          int klo = ur.lo[p], khi = ur.hi[p];
          if (klo < 0 || khi < klo) return Tri::False;
          return until_scan(f, i, 2 * klo, 2 * khi, 2 * klo, 2 * khi, j);
        }
        int p = i / 2;  // gap between points p and p+1
        int clo = ur.lo[p + 1], chi = ur.hi[p];
        int plo = ur.lo[p], phi = ur.hi[p + 1];
        bool have_cert = clo >= 0 && chi >= clo;
        return until_scan(f, i, have_cert ? 2 * clo : 1, have_cert ? 2 * chi : 0,
                          plo >= 0 ? 2 * plo : -1, phi >= 0 ? 2 * phi : -1, j);
      }
      default:
        throw std::logic_error("oracle: formula must be desugared");
    }
  }

  const Signal& s_;
  FormulaPtr root_;
  std::vector<Rat> lattice_;
  std::vector<Rat> ts_rat_;
  std::vector<double> ts_;
  std::vector<const Formula*> nodes_;
  std::unordered_map<const Formula*, int> node_id_;
  std::unordered_map<const Formula*, UntilRange> until_ranges_;
  std::vector<std::vector<double>> var_vals_;
  std::unordered_map<uint64_t, Tri> memo_;
};

// coarse spatial index for nearest-boundary queries
class EdgeIndex {
 public:
  EdgeIndex(const geom::Region& r, double cutoff) : cutoff_(cutoff) {
    domain_ = std::max(r.domain, 1e-12);
    n_ = 128;
    cells_.resize(n_ * n_);
    for (const auto& poly : r.polys) {
      const auto& ring = poly.ring();
      for (size_t i = 0; i < ring.size(); ++i) {
        Point a = ring[i], b = ring[(i + 1) % ring.size()];
        int cx0 = cell_of(std::min(a.x, b.x) - cutoff);
        int cx1 = cell_of(std::max(a.x, b.x) + cutoff);
        int cy0 = cell_of(std::min(a.y, b.y) - cutoff);
        int cy1 = cell_of(std::max(a.y, b.y) + cutoff);
        for (int cx = cx0; cx <= cx1; ++cx)
          for (int cy = cy0; cy <= cy1; ++cy)
            cells_[cx * n_ + cy].emplace_back(a, b);
      }
    }
  }

  // true if some boundary segment is within cutoff of p
  bool near_boundary(Point p) const {
    const auto& bucket = cells_[cell_of(p.x) * n_ + cell_of(p.y)];
    for (const auto& [a, b] : bucket) {
      double dx = b.x - a.x, dy = b.y - a.y;
      double len2 = dx * dx + dy * dy;
      double t = len2 == 0 ? 0.0
                           : std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2,
                                        0.0, 1.0);
      double d = std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
      if (d <= cutoff_) return true;
    }
    return false;
  }

 private:
  int cell_of(double v) const {
    return std::clamp(static_cast<int>(v / domain_ * n_), 0, n_ - 1);
  }
  double domain_, cutoff_;
  int n_;
  std::vector<std::vector<std::pair<Point, Point>>> cells_;
};

}  // namespace

GridResult grid_eval(const Signal& s, const FormulaPtr& f, const GridSpec& g) {
  FormulaPtr d = desugar(f);
  LengthStatus ls = check_length(s, f);
  if (!ls.ok) throw ShortSignalError(ls.needed, ls.have);

  Evaluator ev(s, d, g);
  GridResult out;
  out.defined_t_max = rat_to_double(s.length() - required_length(f));
  const auto& lattice = ev.lattice();
  out.axis.reserve(lattice.size());
  std::vector<int> idx;
  for (const Rat& t : lattice) {
    out.axis.push_back(rat_to_double(t));
    idx.push_back(ev.sample_index(t));
  }
  out.truth.assign(lattice.size(),
                   std::vector<Tri>(lattice.size(), Tri::Unknown));
  for (size_t i = 0; i < lattice.size(); ++i)
    for (size_t j = 0; j < lattice.size(); ++j)
      out.truth[i][j] = ev.eval(d.get(), 2 * idx[i], 2 * idx[j], false);
  return out;
}

std::vector<Disagreement> compare(const Signal& s, const FormulaPtr& f,
                                  const GridSpec& g,
                                  const geom::Region& engine_region) {
  GridResult oracle = grid_eval(s, f, g);
  EdgeIndex index(engine_region, 2 * engine_region.eps);

  std::vector<Disagreement> out;
  for (size_t i = 0; i < oracle.axis.size(); ++i) {
    double t = oracle.axis[i];
    if (t > oracle.defined_t_max + engine_region.eps) break;
    for (size_t j = 0; j < oracle.axis.size(); ++j) {
      double tstar = oracle.axis[j];
      Point p{t, tstar};
      if (index.near_boundary(p)) continue;
      if (oracle.truth[i][j] == Tri::Unknown) continue;
      bool eng = contains_point(engine_region, t, tstar, geom::Mode::Closed);
      bool orc = oracle.truth[i][j] == Tri::True;
      if (eng != orc) out.push_back({t, tstar, eng, orc});
    }
  }
  return out;
}

}  // namespace stlstar::oracle
