// SPDX-License-Identifier: Apache-2.0

#include "pilotse/expansions.h"

#include <cmath>
#include <stdexcept>

#include "pilotse/errors.h"
#include "pilotse/mimo.h"
#include "pilotse/special_functions.h"

namespace pilotse {

namespace {

double require_positive_snr(SnrLinear snr) {
  const double s = snr.value();
  if (s <= 0.0) {
    throw std::domain_error("SNR must be positive");
  }
  return s;
}

void check_doppler(double f_D) {
  if (!std::isfinite(f_D) || !(f_D > 0.0) || !(f_D < 0.5)) {
    throw std::domain_error("normalized Doppler spread must lie in (0, 1/2)");
  }
}

ExpansionResult overhead_expansion_family(const CapacityFamily& family,
                                          double shape_integral, double s,
                                          double f_D) {
  const double c = family.value(s);
  const double c1 = family.d1(s);
  const double c2 = family.d2(s);
  const double leading = std::sqrt((1.0 + s) * (c1 / c) * 2.0 * f_D);
  const double first =
      -((1.0 + s) * c2 / c1 + 2.0 + shape_integral / (2.0 * s)) * f_D;
  const ClampInterval interval{2.0 * f_D, 1.0};
  const double raw = leading + first;
  return ExpansionResult{clamp(raw, interval), leading, first, interval,
                         raw <= interval.lo || raw >= interval.hi};
}

}

double clamp(double z, ClampInterval interval) {
  if (!(interval.lo <= interval.hi)) {
    throw std::invalid_argument("clamp interval is empty");
  }
  return std::min(std::max(z, interval.lo), interval.hi);
}

ExpansionResult overhead_expansion(const SpectralShape& shape, SnrLinear snr,
                                   double f_D) {
  const double s = require_positive_snr(snr);
  check_doppler(f_D);
  return overhead_expansion_family(scalar_capacity_family(),
                                   inverse_shape_integral(shape), s, f_D);
}

double se_expansion_no_boost(const SpectralShape& shape, SnrLinear snr,
                             double f_D) {
  const double s = require_positive_snr(snr);
  check_doppler(f_D);
  const ExpansionResult alpha = overhead_expansion(shape, snr, f_D);
  const double raw = alpha.leading_term + alpha.first_order_term;
  if (raw > alpha.clamp.lo) {
    const double c = capacity_csi(snr);
    const double c1 = capacity_csi_d1(snr);
    return c - std::sqrt(8.0 * f_D * (1.0 + s) * c * c1);
  }
  // Overhead pinned at 2 f_D: every other symbol is a pilot and the data
  // symbols see SNR (SNR-1)/2, which only exists above 0 dB.
  if (s <= 1.0) {
    throw out_of_regime_error(
        "pinned-overhead spectral efficiency needs SNR > 1");
  }
  return (1.0 - 2.0 * f_D) * capacity_csi(SnrLinear(0.5 * (s - 1.0)));
}

PenaltySplit penalty_decomposition(const SpectralShape& shape, SnrLinear snr,
                                   double alpha, double f_D) {
  (void)shape;  // the split is shape independent at this order
  const double s = require_positive_snr(snr);
  check_doppler(f_D);
  if (!std::isfinite(alpha) || alpha < 2.0 * f_D || alpha > 1.0) {
    throw std::domain_error("pilot overhead must lie in [2 f_D, 1]");
  }
  return PenaltySplit{
      alpha * capacity_csi(snr),
      (1.0 + s) * capacity_csi_d1(snr) * 2.0 * f_D / alpha,
  };
}

PowerAllocation power_allocation_expansion(SnrLinear snr, double f_D) {
  const double s = require_positive_snr(snr);
  check_doppler(f_D);
  const double rho_d = 1.0 - std::sqrt((1.0 + 1.0 / s) * 2.0 * f_D);
  if (rho_d <= 0.0) {
    throw out_of_regime_error(
        "Doppler spread too large for the small-f_D power allocation");
  }
  const double rho_p = std::sqrt((1.0 + 1.0 / s) / (2.0 * f_D));
  return PowerAllocation{rho_p, rho_d};
}

double se_expansion_boost(SnrLinear snr, double f_D) {
  const double s = require_positive_snr(snr);
  check_doppler(f_D);
  return capacity_csi(snr) -
         std::sqrt(8.0 * f_D * s * (1.0 + s)) * capacity_csi_d1(snr);
}

double pilot_power_fraction(SnrLinear snr, double f_D, bool boost) {
  const double s = require_positive_snr(snr);
  check_doppler(f_D);
  if (boost) {
    return std::sqrt((1.0 + 1.0 / s) * 2.0 * f_D);
  }
  const double c = capacity_csi(snr);
  const double c1 = capacity_csi_d1(snr);
  return std::sqrt((1.0 + s) * (c1 / c) * 2.0 * f_D);
}

DerivativeOracles appendix_derivative_oracles(const SpectralShape& shape,
                                              SnrLinear snr, double alpha,
                                              double rho_d) {
  const double s = require_positive_snr(snr);
  if (!std::isfinite(alpha) || alpha <= 0.0 || alpha > 1.0) {
    throw std::domain_error("pilot overhead must lie in (0, 1]");
  }
  if (!std::isfinite(rho_d) || rho_d <= 0.0 || rho_d >= 1.0) {
    throw std::domain_error(
        "boosted coupling needs a data power ratio in (0, 1)");
  }
  const double is = inverse_shape_integral(shape);
  const double one_minus = 1.0 - rho_d;
  const double gain = rho_d * (1.0 + rho_d * s);
  return DerivativeOracles{
      2.0 / (alpha * s),
      -2.0 * is / ((alpha * s) * (alpha * s)),
      2.0 / (s * one_minus),
      -(2.0 / (s * one_minus * one_minus)) * (4.0 * rho_d + is / s),
      -2.0 * gain / one_minus,
      2.0 * gain * (8.0 * rho_d + is / s) / (one_minus * one_minus),
  };
}

double se_quadratic_model(const SpectralShape& shape, SnrLinear snr,
                          double alpha, double f_D) {
  const double s = require_positive_snr(snr);
  check_doppler(f_D);
  if (!std::isfinite(alpha) || alpha <= 0.0 || alpha > 1.0) {
    throw std::domain_error("pilot overhead must lie in (0, 1]");
  }
  const double is = inverse_shape_integral(shape);
  const double c = capacity_csi(snr);
  const double c1 = capacity_csi_d1(snr);
  const double c2 = capacity_csi_d2(snr);
  const double g = f_D / alpha;
  return (1.0 - alpha) * (1.0 + s) *
         (c / (1.0 + s) - c1 * 2.0 * g +
          (2.0 * (1.0 + s) * c2 + c1 * (is / s + 4.0)) * g * g);
}

double effective_snr_quadratic_model(const SpectralShape& shape,
                                     SnrLinear snr, double rho_d,
                                     double f_D) {
  const double s = require_positive_snr(snr);
  check_doppler(f_D);
  const DerivativeOracles oracles =
      appendix_derivative_oracles(shape, snr, 2.0 * f_D, rho_d);
  return rho_d * s + oracles.effective_snr_slope * f_D +
         0.5 * oracles.effective_snr_curvature * f_D * f_D;
}

ExpansionResult mimo_overhead_expansion(const SpectralShape& shape,
                                        SnrLinear snr, double f_D, int n_T,
                                        int n_R) {
  const double s = require_positive_snr(snr);
  check_doppler(f_D);
  if (n_T < 1 || n_R < 1) {
    throw std::invalid_argument("antenna counts must be at least 1");
  }
  const double f_eff = static_cast<double>(n_T) * f_D;
  if (!(f_eff < 0.5)) {
    throw aliasing_error(
        "equivalent Doppler spread n_T f_D reaches 1/2; the multiantenna "
        "channel cannot be tracked at any overhead");
  }
  return overhead_expansion_family(mimo_capacity_family({n_T, n_R}),
                                   inverse_shape_integral(shape), s, f_eff);
}

}
