// SPDX-License-Identifier: Apache-2.0
//
// Achievable spectral efficiency of pilot-based transmission and numerical
// optimization of the pilot overhead and pilot/data power split.

#ifndef PILOTSE_EFFICIENCY_H
#define PILOTSE_EFFICIENCY_H

#include "pilotse/estimation.h"
#include "pilotse/snr.h"
#include "pilotse/special_functions.h"

namespace pilotse {

// Lower bound on the achievable rate: the perfect-CSI capacity at the
// effective SNR, scaled by the fraction of symbols carrying data.  The
// allocation must satisfy the average power constraint for the given
// overhead to within 1e-9.
double pilot_se(const FadingModel& model, SnrLinear snr, double alpha,
                const PowerAllocation& alloc);
double pilot_se(const FadingModel& model, SnrLinear snr, double alpha,
                const PowerAllocation& alloc, const CapacityFamily& family);

struct OverheadSolution {
  double alpha_star;
  double rho_p_star;
  double rho_d_star;
  double se_star;
  int iterations;
  // Final golden-section bracket around the optimizing variable (alpha
  // without boosting, rho_d with boosting).
  double bracket_lo;
  double bracket_hi;
  bool converged;
};

// Maximizes pilot_se.  Without boosting the single variable is the
// overhead at rho_p = rho_d = 1.  With boosting the overhead sits at its
// minimum and the search runs over rho_d, with rho_p supplied by the power
// constraint; the inner objective is the effective SNR, which the capacity
// maps monotonically to spectral efficiency.
OverheadSolution optimize_overhead(const FadingModel& model, SnrLinear snr,
                                   bool boost);
OverheadSolution optimize_overhead(const FadingModel& model, SnrLinear snr,
                                   bool boost, const CapacityFamily& family);

// Gap to the perfect-CSI capacity at the optimum: C(SNR) - SE*.
double penalty(const FadingModel& model, SnrLinear snr, bool boost);

struct JointAudit {
  double alpha_best;
  double rho_d_best;
  double se_best;
  // Best value found with alpha pinned to its minimum, for comparison.
  double se_at_alpha_min;
};

// Exhaustive check that boosting drives the overhead to its minimum: scans
// a 2-D grid over (alpha, rho_d), refining rho_d at every alpha.
JointAudit joint_boost_audit(const FadingModel& model, SnrLinear snr,
                             int alpha_points, int rho_points);

// Number of strict local maxima of pilot_se over alpha at unit power
// ratios, sampled on a uniform grid.  Differences below the noise floor
// of 1e-12 do not count as a rise or fall.
int count_local_maxima(const FadingModel& model, SnrLinear snr,
                       int grid_points);

}

#endif
