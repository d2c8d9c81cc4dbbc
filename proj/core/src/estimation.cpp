// SPDX-License-Identifier: Apache-2.0

#include "pilotse/estimation.h"

#include <cmath>
#include <stdexcept>

#include "pilotse/errors.h"
#include "pilotse/quadrature.h"

namespace pilotse {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

void check_overhead(double alpha, double amin) {
  if (!std::isfinite(alpha) || alpha > 1.0) {
    throw std::domain_error("pilot overhead must lie in (0, 1]");
  }
  if (alpha < amin) {
    throw aliasing_error(
        "pilot overhead below the minimum needed to track the fading");
  }
}

void check_pilot_power(double rho_p) {
  if (!std::isfinite(rho_p) || rho_p < 0.0) {
    throw std::domain_error("pilot power ratio must be non-negative");
  }
}

double require_positive_snr(SnrLinear snr) {
  const double s = snr.value();
  if (s <= 0.0) {
    throw std::domain_error("SNR must be positive");
  }
  return s;
}

// MMSE for a continuous spectrum, written as
//   integral c S~(xi) / (c + S~(xi)) dxi,   c = f_D / (alpha rho_p SNR),
// which is algebraically 1 - integral S~^2/(c + S~) but avoids the
// cancellation of that form when c is small.
double mmse_continuous(const DopplerSpec& spec, double c) {
  const SpectralShape& shape = spec.shape;
  switch (shape.kind()) {
    case SpectralShape::Kind::ClarkeJakes: {
      // xi = sin theta removes the band-edge singularity: S~ dxi becomes
      // (1/pi) dtheta and the integrand is bounded and smooth.
      const auto integrand = [c](double theta) {
        const double u = c * kPi * std::cos(theta);
        return u / (1.0 + u) / kPi;
      };
      return integrate_adaptive(integrand, -0.5 * kPi, 0.5 * kPi, 1e-13,
                                1e-13);
    }
    case SpectralShape::Kind::Rectangular:
      // S~ = 1/2 on [-1, 1], so the integral collapses to c/(c + 1/2).
      return 2.0 * c / (2.0 * c + 1.0);
    case SpectralShape::Kind::Tabulated: {
      const auto& samples = shape.samples();
      const std::size_t segments = samples.size() - 1;
      const double seg_tol = 1e-12 / static_cast<double>(segments);
      double total = 0.0;
      const auto integrand = [&shape, c](double xi) {
        const double s_val = shape(xi);
        return c * s_val / (c + s_val);
      };
      for (std::size_t i = 0; i < segments; ++i) {
        total += integrate_adaptive(integrand, samples[i].first,
                                    samples[i + 1].first, seg_tol, 1e-12);
      }
      return total;
    }
  }
  throw std::logic_error("unreachable spectral shape kind");
}

}

PowerAllocation PowerAllocation::from_rho_d(double rho_d, double alpha) {
  if (!std::isfinite(rho_d) || rho_d < 0.0) {
    throw std::invalid_argument("data power ratio must be non-negative");
  }
  if (!std::isfinite(alpha) || alpha <= 0.0 || alpha > 1.0) {
    throw std::invalid_argument("pilot overhead must lie in (0, 1]");
  }
  double rho_p = (1.0 - rho_d * (1.0 - alpha)) / alpha;
  if (rho_p < -1e-12) {
    throw std::invalid_argument(
        "data power ratio exceeds the average power budget");
  }
  // Snap roundoff residues at the rho_p = 0 corner to an exact zero.  A
  // residue of either sign is cancellation noise from the budget identity;
  // leaving a positive sliver would send downstream quadrature chasing a
  // boundary layer of width ~1/rho_p for a point whose estimator output is
  // known exactly.
  if (std::abs(rho_p) < 1e-12) rho_p = 0.0;
  return PowerAllocation{rho_p, rho_d};
}

double alpha_min(const FadingModel& model) {
  return std::visit(
      [](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Block>) {
          if (m.n_b < 1) {
            throw std::invalid_argument("block length must be at least 1");
          }
          return 1.0 / static_cast<double>(m.n_b);
        } else {
          return 2.0 * m.spec.f_D;
        }
      },
      model);
}

double mmse(const FadingModel& model, SnrLinear snr, double alpha,
            double rho_p) {
  const double s = require_positive_snr(snr);
  check_overhead(alpha, alpha_min(model));
  check_pilot_power(rho_p);
  if (rho_p == 0.0) {
    // No pilot energy, no estimate: the error equals the channel power.
    return 1.0;
  }
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Block>) {
          return 1.0 / (1.0 + alpha * static_cast<double>(m.n_b) * rho_p * s);
        } else {
          const double c = m.spec.f_D / (alpha * rho_p * s);
          return mmse_continuous(m.spec, c);
        }
      },
      model);
}

double mmse_clarke_jakes_closed(SnrLinear snr, double alpha, double f_D,
                                double rho_p) {
  const double s = require_positive_snr(snr);
  // Reuse the DopplerSpec validation for the Doppler spread itself.
  if (!(f_D > 0.0) || !(f_D < 0.5) || !std::isfinite(f_D)) {
    throw std::domain_error("normalized Doppler spread must lie in (0, 1/2)");
  }
  check_overhead(alpha, 2.0 * f_D);
  check_pilot_power(rho_p);

  const double x = alpha * rho_p * s / (kPi * f_D);
  if (x == 0.0) {
    return 1.0;
  }

  const double u = (1.0 - x) * (1.0 + x);
  double r;
  if (std::abs(u) < 2e-4) {
    // arctanh(y)/y = 1 + u/3 + u^2/5 + ... with u = y^2 = 1 - x^2; five
    // terms leave a truncation error below 1e-19 on this interval.
    r = x * (1.0 + u * (1.0 / 3.0 +
                        u * (1.0 / 5.0 + u * (1.0 / 7.0 + u / 9.0))));
  } else if (x > 1.0) {
    const double y = std::sqrt((x - 1.0) * (x + 1.0));
    r = x * std::atan(y) / y;
  } else {
    const double y = std::sqrt(u);
    r = x * std::log((1.0 + y) / x) / y;
  }
  return 1.0 - (2.0 / kPi) * r;
}

SnrLinear snr_eff(SnrLinear snr, double mmse, double rho_d) {
  if (!std::isfinite(mmse) || mmse < 0.0 || mmse > 1.0) {
    throw std::domain_error("MMSE must lie in [0, 1]");
  }
  if (!std::isfinite(rho_d) || rho_d <= 0.0) {
    throw std::domain_error("data power ratio must be positive");
  }
  const double s = snr.value();
  return SnrLinear(s * (1.0 - mmse) / (1.0 / rho_d + s * mmse));
}

}
