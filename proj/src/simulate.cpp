#include "stlstar/simulate.hpp"

#include <chrono>
#include <cmath>
#include <ostream>

#include "stlstar/satset.hpp"

namespace stlstar::sim {

void RepressilatorParams::validate() const {
  if (!(alpha > 0)) throw std::invalid_argument("alpha must be > 0");
  if (!(alpha0 >= 0)) throw std::invalid_argument("alpha0 must be >= 0");
  if (!(beta > 0)) throw std::invalid_argument("beta must be > 0");
  if (!(n >= 1)) throw std::invalid_argument("n must be >= 1");
  if (!(t_end > 0)) throw std::invalid_argument("t_end must be > 0");
  if (!(dt > 0)) throw std::invalid_argument("dt must be > 0");
  if (samples < 2) throw std::invalid_argument("samples must be >= 2");
  for (double v : init)
    if (!(v >= 0)) throw std::invalid_argument("initial state must be >= 0");
}

State repressilator_rhs(const RepressilatorParams& p, const State& x) {
  auto hill = [&](double prot) { return p.alpha / (1.0 + std::pow(prot, p.n)); };
  State d;
  d[0] = -x[0] + hill(x[5]) + p.alpha0;  // m1 repressed by p3
  d[1] = -x[1] + hill(x[3]) + p.alpha0;  // m2 repressed by p1
  d[2] = -x[2] + hill(x[4]) + p.alpha0;  // m3 repressed by p2
  for (int i = 0; i < 3; ++i) d[3 + i] = -p.beta * (x[3 + i] - x[i]);
  return d;
}

namespace {

State rk4_step(const RepressilatorParams& p, const State& x, double h) {
  State k1 = repressilator_rhs(p, x);
  State tmp;
  for (int i = 0; i < 6; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
  State k2 = repressilator_rhs(p, tmp);
  for (int i = 0; i < 6; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
  State k3 = repressilator_rhs(p, tmp);
  for (int i = 0; i < 6; ++i) tmp[i] = x[i] + h * k3[i];
  State k4 = repressilator_rhs(p, tmp);
  State out;
  for (int i = 0; i < 6; ++i)
    out[i] = x[i] + h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  return out;
}

bool finite(const State& x) {
  for (double v : x)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace

Signal integrate(const RepressilatorParams& p) {
  p.validate();
  SignalSchema schema({"m1", "m2", "m3", "p1", "p2", "p3"});

  std::vector<Rat> times;
  std::vector<std::vector<double>> values;
  times.reserve(p.samples);
  values.reserve(p.samples);

  State x = p.init;
  Rat interval = p.t_end / (p.samples - 1);
  double interval_d = rat_to_double(interval);
  int nsub = std::max(1, static_cast<int>(std::ceil(interval_d / p.dt)));
  double h = interval_d / nsub;

  for (int i = 0; i < p.samples; ++i) {
    times.push_back(interval * i);
    values.emplace_back(x.begin(), x.end());
    if (i + 1 == p.samples) break;
    for (int k = 0; k < nsub; ++k) {
      x = rk4_step(p, x, h);
      if (!finite(x))
        throw IntegrationError(rat_to_double(times.back()) + (k + 1) * h);
    }
  }
  return Signal(std::move(schema), std::move(times), std::move(values));
}

double symmetric_fixed_point(const RepressilatorParams& p) {
  // g(v) = alpha/(1+v^n) + alpha0 - v decreases from alpha+alpha0 to < 0
  auto g = [&](double v) {
    return p.alpha / (1.0 + std::pow(v, p.n)) + p.alpha0 - v;
  };
  double lo = 0, hi = p.alpha + p.alpha0;
  while (hi - lo > 1e-12) {
    double mid = 0.5 * (lo + hi);
    (g(mid) > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<SweepRow> sweep(const std::vector<RepressilatorParams>& grid,
                            const std::vector<std::string>& formulas) {
  std::vector<SweepRow> rows;
  for (const auto& params : grid) {
    for (const auto& text : formulas) {
      SweepRow row;
      row.params = params;
      row.formula = text;
      auto t0 = std::chrono::steady_clock::now();
      try {
        Signal s = integrate(params);
        FormulaPtr f = parse(text, s.schema());
        MonitorReport rep = monitor(s, f);
        row.verdict = verdict_name(rep.verdict);
      } catch (const std::exception& e) {
        row.verdict = std::string("error:") + e.what();
      }
      row.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void sweep_to_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "alpha,alpha0,beta,n,formula,verdict,wall_ms\n";
  for (const auto& r : rows) {
    std::string formula = r.formula;
    for (char& c : formula)
      if (c == ',') c = ';';
    out << r.params.alpha << ',' << r.params.alpha0 << ',' << r.params.beta
        << ',' << r.params.n << ',' << '"' << formula << '"' << ','
        << r.verdict << ',' << r.wall_ms << '\n';
  }
}

}  // namespace stlstar::sim
