// SPDX-License-Identifier: Apache-2.0
//
// Closed-form small-Doppler asymptotics: the optimal overhead and its
// spectral efficiency to leading orders in f_D, the optimal pilot power
// boost, and the Taylor coefficients of the estimation error and the
// effective SNR that those results rest on.

#ifndef PILOTSE_EXPANSIONS_H
#define PILOTSE_EXPANSIONS_H

#include "pilotse/estimation.h"
#include "pilotse/snr.h"
#include "pilotse/spectra.h"

namespace pilotse {

struct ClampInterval {
  double lo;
  double hi;
};

double clamp(double z, ClampInterval interval);

struct ExpansionResult {
  // Clamped value actually usable as an overhead.
  double value;
  // O(sqrt(f_D)) term of the raw expansion.
  double leading_term;
  // O(f_D) correction.
  double first_order_term;
  ClampInterval clamp;
  bool clamped;
};

// Optimal overhead without power boosting, small f_D:
//   alpha* ~ sqrt((1+SNR) (C'/C) 2 f_D)
//            - ((1+SNR) C''/C' + 2 + I_S/(2 SNR)) f_D,
// clamped to [2 f_D, 1].  I_S is the inverse shape integral.
ExpansionResult overhead_expansion(const SpectralShape& shape, SnrLinear snr,
                                   double f_D);

// Spectral efficiency at the expansion optimum.  On the unclamped branch
//   SE* ~ C(SNR) - sqrt(8 f_D (1+SNR) C C'),
// and when the raw alpha* falls at or below 2 f_D the overhead pins to
// 2 f_D and SE* ~ (1 - 2 f_D) C((SNR-1)/2), which requires SNR > 1.
double se_expansion_no_boost(const SpectralShape& shape, SnrLinear snr,
                             double f_D);

struct PenaltySplit {
  // Rate lost to pilot symbols: alpha C(SNR).
  double overhead_loss;
  // Rate lost to imperfect estimates: (1+SNR) C'(SNR) 2 f_D / alpha.
  double estimation_loss;
};

// Leading-order decomposition of C - SE at fixed overhead.  The split is
// shape independent at this order; the shape argument documents the model
// the decomposition belongs to.
PenaltySplit penalty_decomposition(const SpectralShape& shape, SnrLinear snr,
                                   double alpha, double f_D);

// Optimal power split at alpha = 2 f_D, small f_D:
//   rho_p* ~ sqrt((1 + 1/SNR) / (2 f_D)),
//   rho_d* ~ 1 - sqrt((1 + 1/SNR) 2 f_D).
// The pair satisfies the power constraint only up to O(f_D); use
// PowerAllocation::from_rho_d to make it exact.
PowerAllocation power_allocation_expansion(SnrLinear snr, double f_D);

// Spectral efficiency at the boosted optimum, small f_D:
//   SE* ~ C(SNR) - sqrt(8 f_D SNR (1+SNR)) C'(SNR).
double se_expansion_boost(SnrLinear snr, double f_D);

// Fraction of the total transmit energy spent on pilots at the respective
// optimum: alpha* rho_p* with the constraint, which collapses to
//   sqrt((1 + 1/SNR) 2 f_D)          with boosting,
//   sqrt((1+SNR) (C'/C) 2 f_D)       without.
double pilot_power_fraction(SnrLinear snr, double f_D, bool boost);

// Taylor coefficients at f_D -> 0 backing the expansions above.  All six
// are exact limits; finite differences of the corresponding exact
// quantities must reproduce them.
struct DerivativeOracles {
  // d MMSE / d f_D at fixed overhead and unit power ratios: 2/(alpha SNR).
  double mmse_slope;
  // d2 MMSE / d f_D^2 under the same conditions: -2 I_S / (alpha SNR)^2.
  double mmse_curvature;
  // d MMSE / d f_D with alpha = 2 f_D and rho_p from the constraint at the
  // given rho_d: 2 / (SNR (1 - rho_d)).
  double boosted_mmse_slope;
  // Second derivative under the same coupling:
  //   -(2 / (SNR (1-rho_d)^2)) (4 rho_d + I_S/SNR).
  double boosted_mmse_curvature;
  // d SNR_eff / d f_D with the boosted coupling:
  //   -2 rho_d (1 + rho_d SNR) / (1 - rho_d).
  double effective_snr_slope;
  // d2 SNR_eff / d f_D^2 with the boosted coupling:
  //   2 rho_d (1 + rho_d SNR) (8 rho_d + I_S/SNR) / (1 - rho_d)^2.
  double effective_snr_curvature;
};

DerivativeOracles appendix_derivative_oracles(const SpectralShape& shape,
                                              SnrLinear snr, double alpha,
                                              double rho_d);

// Quadratic small-Doppler model of the unboosted spectral efficiency at
// fixed overhead:
//   SE ~ (1-alpha)(1+SNR) [ C/(1+SNR) - C' 2 f_D/alpha
//        + (2 (1+SNR) C'' + C' (I_S/SNR + 4)) f_D^2/alpha^2 ].
double se_quadratic_model(const SpectralShape& shape, SnrLinear snr,
                          double alpha, double f_D);

// Quadratic small-Doppler model of the boosted effective SNR at
// alpha = 2 f_D and fixed rho_d:
//   SNR_eff ~ rho_d SNR + slope f_D + (curvature/2) f_D^2
// with the slope and curvature from appendix_derivative_oracles.
double effective_snr_quadratic_model(const SpectralShape& shape,
                                     SnrLinear snr, double rho_d, double f_D);

// Overhead expansion for n_T transmit antennas: the single-antenna formula
// with the multiantenna capacity family evaluated at n_T f_D, clamped to
// [2 n_T f_D, 1].
ExpansionResult mimo_overhead_expansion(const SpectralShape& shape,
                                        SnrLinear snr, double f_D, int n_T,
                                        int n_R);

}

#endif
