// SPDX-License-Identifier: Apache-2.0
//
// Exponential integrals E_q and the perfect-CSI ergodic capacity of a
// Rayleigh-faded scalar channel, together with its first two SNR
// derivatives.

#ifndef PILOTSE_SPECIAL_FUNCTIONS_H
#define PILOTSE_SPECIAL_FUNCTIONS_H

#include <functional>

#include "pilotse/snr.h"

namespace pilotse {

// E_q(zeta) = integral_1^inf t^{-q} e^{-zeta t} dt for integer q >= 1,
// zeta > 0.  Series expansion below zeta = 1, continued fraction above.
double exp_integral(int q, double zeta);

// e^{zeta} * E_q(zeta).  The continued fraction produces this scaled value
// directly, so it stays finite for arbitrarily small SNR = 1/zeta where
// e^{zeta} alone would overflow.
double exp_integral_scaled(int q, double zeta);

// C(SNR) = log2(e) e^{1/SNR} E_1(1/SNR), extended continuously by
// C(0) = 0.  Strictly increasing and concave.
double capacity_csi(SnrLinear snr);

// dC/dSNR = (1/SNR) (log2 e - C(SNR)/SNR), positive for all SNR > 0.
double capacity_csi_d1(SnrLinear snr);

// d2C/dSNR2 = -(1/SNR^2) (log2 e + dC/dSNR - 2 C(SNR)/SNR), negative for
// all SNR > 0.
double capacity_csi_d2(SnrLinear snr);

// A capacity function bundled with its first two derivatives, all taken as
// functions of linear SNR.  The overhead optimizer and the small-Doppler
// expansions are written against this interface so the single-antenna and
// multiantenna capacities are interchangeable.
struct CapacityFamily {
  std::function<double(double)> value;
  std::function<double(double)> d1;
  std::function<double(double)> d2;
};

// The scalar (single-antenna) capacity family.
CapacityFamily scalar_capacity_family();

}

#endif
