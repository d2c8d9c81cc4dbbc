// SPDX-License-Identifier: Apache-2.0
//
// Pilot-based channel estimation error (MMSE) for block and continuous
// fading, with optional pilot power boosting, and the effective SNR seen
// by a decoder that treats the channel estimate as exact.

#ifndef PILOTSE_ESTIMATION_H
#define PILOTSE_ESTIMATION_H

#include <variant>

#include "pilotse/snr.h"
#include "pilotse/spectra.h"

namespace pilotse {

// Pilot/data power ratios under the average-power constraint
// rho_p * alpha + rho_d * (1 - alpha) = 1.
struct PowerAllocation {
  double rho_p;
  double rho_d;

  static PowerAllocation unboosted() { return PowerAllocation{1.0, 1.0}; }

  // Derives rho_p from rho_d so the constraint holds exactly for the given
  // overhead.  Rejects pairs that would need negative pilot power.
  static PowerAllocation from_rho_d(double rho_d, double alpha);

  // rho_p * alpha + rho_d * (1 - alpha) - 1.
  double constraint_residual(double alpha) const {
    return rho_p * alpha + rho_d * (1.0 - alpha) - 1.0;
  }
};

// Piecewise-constant fading, IID across blocks of n_b symbols.
struct Block {
  int n_b;
};

// Continuous fading with a bandlimited Doppler spectrum.
struct Continuous {
  DopplerSpec spec;
};

using FadingModel = std::variant<Block, Continuous>;

// Smallest overhead that can track the fading: 1/n_b for block fading,
// 2 f_D for continuous fading.
double alpha_min(const FadingModel& model);

// Estimation error E[|H - Hhat|^2] of the pilot-based Wiener estimate.
// Block fading: 1 / (1 + alpha n_b rho_p SNR).  Continuous fading:
// 1 - integral S~^2(xi) / (f_D/(alpha rho_p SNR) + S~(xi)) dxi, evaluated
// by quadrature (Clarke-Jakes through the singularity-removing
// substitution xi = sin theta, tabulated shapes segment by segment,
// rectangular in closed form).  Decreasing in alpha, rho_p and SNR.
double mmse(const FadingModel& model, SnrLinear snr, double alpha, double rho_p);

// Closed-form Clarke-Jakes MMSE.  With x = alpha rho_p SNR / (pi f_D):
//   MMSE = 1 - (2/pi) R,  R = x arctanh(sqrt(1-x^2)) / sqrt(1-x^2),
// continued analytically to x > 1 via the arctan form and patched with a
// series around x = 1.  For x < 1 the arctanh is evaluated through the
// logarithm identity arctanh(sqrt(1-x^2)) = ln((1+sqrt(1-x^2))/x), which
// stays accurate when x is many orders of magnitude below one.
double mmse_clarke_jakes_closed(SnrLinear snr, double alpha, double f_D,
                                double rho_p);

// SNR of the equivalent perfect-CSI channel:
//   SNR_eff = SNR (1 - MMSE) / (1/rho_d + SNR * MMSE).
SnrLinear snr_eff(SnrLinear snr, double mmse, double rho_d);

}

#endif
