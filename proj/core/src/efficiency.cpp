// SPDX-License-Identifier: Apache-2.0

#include "pilotse/efficiency.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace pilotse {

namespace {

struct GoldenResult {
  double x;
  double lo;
  double hi;
  int iterations;
  bool converged;
};

// Golden-section maximization on [a, b].  The function is assumed unimodal
// inside the bracket; the caller supplies a bracket from a grid scan.
GoldenResult golden_max(const std::function<double(double)>& f, double a,
                        double b, double x_tol) {
  constexpr double kInvPhi = 0.61803398874989484820458683436563812;
  constexpr int kMaxIter = 200;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int it = 0;
  while (b - a > x_tol && it < kMaxIter) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
    ++it;
  }
  return GoldenResult{0.5 * (a + b), a, b, it, b - a <= x_tol};
}

// Grid argmax plus a golden-section refinement of the surrounding bracket.
// Returns the better of the refined point and the raw grid candidates, so
// a maximum sitting exactly on an endpoint is never lost.
GoldenResult grid_then_golden(const std::function<double(double)>& f,
                              const std::vector<double>& grid, double x_tol) {
  std::size_t best = 0;
  double best_val = f(grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double v = f(grid[i]);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  const double lo = grid[best > 0 ? best - 1 : 0];
  const double hi = grid[best + 1 < grid.size() ? best + 1 : grid.size() - 1];
  if (hi <= lo) {
    return GoldenResult{grid[best], lo, hi, 0, true};
  }
  GoldenResult r = golden_max(f, lo, hi, x_tol);
  if (f(r.x) < best_val) {
    r.x = grid[best];
  }
  return r;
}

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> g(points);
  const double llo = std::log(lo);
  const double lhi = std::log(hi);
  for (int i = 0; i < points; ++i) {
    g[i] = std::exp(llo + (lhi - llo) * i / static_cast<double>(points - 1));
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> linear_grid(double lo, double hi, int points) {
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) {
    g[i] = lo + (hi - lo) * i / static_cast<double>(points - 1);
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

// Effective SNR as a function of rho_d at fixed overhead, with rho_p taken
// from the power constraint.  This is the boosted inner objective.
double effective_snr_at(const FadingModel& model, SnrLinear snr, double alpha,
                        double rho_d) {
  const PowerAllocation alloc = PowerAllocation::from_rho_d(rho_d, alpha);
  const double m = mmse(model, snr, alpha, alloc.rho_p);
  return snr_eff(snr, m, rho_d).value();
}

OverheadSolution optimize_no_boost(const FadingModel& model, SnrLinear snr,
                                   const CapacityFamily& family) {
  const double amin = alpha_min(model);
  const auto objective = [&](double alpha) {
    return pilot_se(model, snr, alpha, PowerAllocation::unboosted(), family);
  };
  const GoldenResult r =
      grid_then_golden(objective, log_grid(amin, 1.0, 256), 1e-9);
  return OverheadSolution{r.x,    1.0,  1.0,  objective(r.x),
                          r.iterations, r.lo, r.hi, r.converged};
}

OverheadSolution optimize_boost(const FadingModel& model, SnrLinear snr,
                                const CapacityFamily& family) {
  const double amin = alpha_min(model);
  if (amin >= 1.0) {
    // Every symbol is a pilot; nothing is left to optimize.
    return OverheadSolution{1.0, 1.0, 1.0, 0.0, 0, 1.0, 1.0, true};
  }
  const double rho_d_max = 1.0 / (1.0 - amin);
  const auto objective = [&](double rho_d) {
    return effective_snr_at(model, snr, amin, rho_d);
  };
  const GoldenResult r = grid_then_golden(
      objective, linear_grid(1e-9, rho_d_max, 512), 1e-11);
  const PowerAllocation alloc = PowerAllocation::from_rho_d(r.x, amin);
  const double se =
      (1.0 - amin) * family.value(SnrLinear(objective(r.x)).value());
  return OverheadSolution{amin,         alloc.rho_p, alloc.rho_d, se,
                          r.iterations, r.lo,        r.hi,        r.converged};
}

}

double pilot_se(const FadingModel& model, SnrLinear snr, double alpha,
                const PowerAllocation& alloc) {
  return pilot_se(model, snr, alpha, alloc, scalar_capacity_family());
}

double pilot_se(const FadingModel& model, SnrLinear snr, double alpha,
                const PowerAllocation& alloc, const CapacityFamily& family) {
  if (std::abs(alloc.constraint_residual(alpha)) > 1e-9) {
    throw std::invalid_argument(
        "power allocation violates the average power constraint");
  }
  const double m = mmse(model, snr, alpha, alloc.rho_p);
  const double s_eff = snr_eff(snr, m, alloc.rho_d).value();
  return (1.0 - alpha) * family.value(s_eff);
}

OverheadSolution optimize_overhead(const FadingModel& model, SnrLinear snr,
                                   bool boost) {
  return optimize_overhead(model, snr, boost, scalar_capacity_family());
}

OverheadSolution optimize_overhead(const FadingModel& model, SnrLinear snr,
                                   bool boost, const CapacityFamily& family) {
  return boost ? optimize_boost(model, snr, family)
               : optimize_no_boost(model, snr, family);
}

double penalty(const FadingModel& model, SnrLinear snr, bool boost) {
  const OverheadSolution sol = optimize_overhead(model, snr, boost);
  return capacity_csi(snr) - sol.se_star;
}

JointAudit joint_boost_audit(const FadingModel& model, SnrLinear snr,
                             int alpha_points, int rho_points) {
  const double amin = alpha_min(model);
  JointAudit audit{amin, 1.0, 0.0, 0.0};
  double best = -1.0;
  for (double alpha : log_grid(amin, 1.0 - 1e-9, alpha_points)) {
    const double rho_d_max = 1.0 / (1.0 - alpha);
    const auto objective = [&](double rho_d) {
      return effective_snr_at(model, snr, alpha, rho_d);
    };
    const GoldenResult r = grid_then_golden(
        objective, linear_grid(1e-9, rho_d_max, rho_points), 1e-10);
    const double se = (1.0 - alpha) *
                      capacity_csi(SnrLinear(objective(r.x)));
    if (alpha == amin) {
      audit.se_at_alpha_min = se;
    }
    if (se > best) {
      best = se;
      audit.alpha_best = alpha;
      audit.rho_d_best = r.x;
      audit.se_best = se;
    }
  }
  return audit;
}

int count_local_maxima(const FadingModel& model, SnrLinear snr,
                       int grid_points) {
  const double amin = alpha_min(model);
  const std::vector<double> grid = linear_grid(amin, 1.0, grid_points);
  std::vector<double> se(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    se[i] = pilot_se(model, snr, grid[i], PowerAllocation::unboosted());
  }
  constexpr double kNoise = 1e-12;
  int count = 0;
  for (std::size_t i = 0; i < se.size(); ++i) {
    const bool rises = i == 0 || se[i] > se[i - 1] + kNoise;
    const bool falls = i + 1 == se.size() || se[i] > se[i + 1] + kNoise;
    if (rises && falls) {
      ++count;
    }
  }
  return count;
}

}
