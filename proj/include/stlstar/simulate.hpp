#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "stlstar/formula.hpp"
#include "stlstar/signal.hpp"

namespace stlstar::sim {

using State = std::array<double, 6>;  // (m1, m2, m3, p1, p2, p3)

struct RepressilatorParams {
  double alpha = 400;
  double alpha0 = 0.2;
  double beta = 0.2;
  double n = 2;
  State init{0.1, 0.3, 0.2, 0.2, 0.1, 0.3};
  Rat t_end = 300;
  int samples = 80;
  double dt = 0.05;

  void validate() const;
};

struct IntegrationError : std::runtime_error {
  double time;
  IntegrationError(double t)
      : std::runtime_error("non-finite state at t=" + std::to_string(t)),
        time(t) {}
};

// Cyclic three-gene repression: mRNA decays at unit rate and is produced by
// a Hill repression term from the previous protein in the cycle
// (p3 -> m1, p1 -> m2, p2 -> m3); protein relaxes toward its mRNA at rate beta.
State repressilator_rhs(const RepressilatorParams& p, const State& x);

// Fixed-step classical Runge-Kutta trace with exact rational sample times
// i * t_end / (samples - 1); each inter-sample interval is integrated with
// enough equal substeps to keep the step at most dt.
Signal integrate(const RepressilatorParams& p);

// Symmetric steady state v = alpha / (1 + v^n) + alpha0, by bisection on
// [0, alpha + alpha0] to 1e-12.
double symmetric_fixed_point(const RepressilatorParams& p);

struct SweepRow {
  RepressilatorParams params;
  std::string formula;
  std::string verdict;  // SAT/UNSAT/BOUNDARY or error:<message>
  double wall_ms = 0;
};

std::vector<SweepRow> sweep(const std::vector<RepressilatorParams>& grid,
                            const std::vector<std::string>& formulas);

void sweep_to_csv(const std::vector<SweepRow>& rows, std::ostream& out);

}  // namespace stlstar::sim
