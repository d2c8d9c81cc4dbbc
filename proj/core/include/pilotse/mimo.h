// SPDX-License-Identifier: Apache-2.0
//
// Ergodic capacity of the IID Rayleigh MIMO channel with perfect CSI at
// the receiver, its SNR derivatives, a Monte Carlo cross-check, and the
// reduction of the multiantenna estimation problem to an equivalent
// single-antenna one at n_T times the Doppler spread.

#ifndef PILOTSE_MIMO_H
#define PILOTSE_MIMO_H

#include <cstdint>

#include "pilotse/estimation.h"
#include "pilotse/snr.h"
#include "pilotse/special_functions.h"
#include "pilotse/spectra.h"

namespace pilotse {

struct AntennaConfig {
  int n_T;
  int n_R;
};

// C_{nT,nR}(SNR) = E[log2 det(I + (SNR/n_T) H H*)] with H having IID unit
// Gaussian entries, computed from the Wishart eigenvalue density
//   g(x) = sum_{k<m} k!/(k+d)! [L_k^(d)(x)]^2,  m = min(n_T, n_R),
//   d = |n_T - n_R|,
// by generalized Gauss-Laguerre quadrature with 512 nodes.
double capacity_mimo(AntennaConfig cfg, SnrLinear snr);

// First and second SNR derivatives, integrating the differentiated
// integrand (x/n_T)/(1 + SNR x/n_T) and its square against the same
// density.  Analytic integrands keep these accurate enough to serve as
// references for finite-difference checks.
double capacity_mimo_d1(AntennaConfig cfg, SnrLinear snr);
double capacity_mimo_d2(AntennaConfig cfg, SnrLinear snr);

// The three functions above bundled for the generic optimizer/expansion
// interfaces.
CapacityFamily mimo_capacity_family(AntennaConfig cfg);

struct MonteCarloEstimate {
  double mean;
  double std_error;
  std::int64_t samples;
  std::uint64_t seed;
};

// Sample-mean estimate of capacity_mimo by direct log-det averaging over
// random channel draws.  Deterministic for a fixed seed.
MonteCarloEstimate capacity_mimo_mc(AntennaConfig cfg, SnrLinear snr,
                                    std::int64_t samples, std::uint64_t seed);

// Estimation error with n_T transmit antennas: identical to the scalar
// MMSE with the Doppler spread scaled to n_T f_D, because the pilot energy
// is shared across n_T per-antenna channels.
double mimo_mmse(AntennaConfig cfg, const DopplerSpec& spec, SnrLinear snr,
                 double alpha, double rho_p);

// Asymptotic optimal pilot power fraction with n_T antennas: the scalar
// expression at n_T f_D, i.e. exact sqrt(n_T) scaling.
double mimo_pilot_power_fraction(SnrLinear snr, double f_D, int n_T,
                                 bool boost);

}

#endif
