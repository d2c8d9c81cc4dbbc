// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "pilotse/errors.h"
#include "pilotse/estimation.h"
#include "pilotse/quadrature.h"
#include "pilotse/snr.h"
#include "pilotse/spectra.h"

using namespace pilotse;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Reference MMSE straight from the definition: with c = f_D/(alpha rho_p
// SNR), integrate 1 - S~^2/(c + S~) over the band.  The Clarke-Jakes
// divergence at the band edges is removed with xi = sin(theta) before the
// quadrature sees it; bounded shapes integrate as they are.
double mmse_by_definition(const SpectralShape& shape, double snr,
                          double alpha, double f_D, double rho_p) {
  const double c = f_D / (alpha * rho_p * snr);
  if (shape.kind() == SpectralShape::Kind::ClarkeJakes) {
    const double second = integrate_adaptive(
        [&shape, c](double theta) {
          const double s = shape(std::sin(theta));
          return s * s / (c + s) * std::cos(theta);
        },
        -0.5 * kPi, 0.5 * kPi, 1e-13, 1e-13);
    return 1.0 - second;
  }
  const double second = integrate_adaptive(
      [&shape, c](double xi) {
        const double s = shape(xi);
        return s * s / (c + s);
      },
      -1.0, 1.0, 1e-13, 1e-13);
  return 1.0 - second;
}

}  // namespace

TEST_SUITE("estimation") {

TEST_CASE("power allocations satisfy the average power constraint") {
  CHECK(PowerAllocation::unboosted().constraint_residual(0.3) == 0.0);
  for (double alpha : {0.002, 0.1, 0.7, 1.0}) {
    for (double rho_d : {0.0, 0.5, 0.99}) {
      CAPTURE(alpha);
      CAPTURE(rho_d);
      const PowerAllocation alloc = PowerAllocation::from_rho_d(rho_d, alpha);
      CHECK(std::abs(alloc.constraint_residual(alpha)) < 1e-14);
      CHECK(alloc.rho_p >= 0.0);
    }
  }
}

TEST_CASE("power allocation snaps the zero-pilot corner exactly") {
  // rho_d at its ceiling 1/(1-alpha) leaves a cancellation residue in
  // rho_p; that residue must collapse to an exact zero, not a sliver that
  // downstream quadrature would chase.
  const double alpha = 0.002;
  const PowerAllocation corner =
      PowerAllocation::from_rho_d(1.0 / (1.0 - alpha), alpha);
  CHECK(corner.rho_p == 0.0);
}

TEST_CASE("power allocation rejects budget violations and bad overheads") {
  // rho_d may exceed 1 as long as the pilot share absorbs the difference;
  // 2.5 > 1/(1 - 0.5) is genuinely over budget.
  CHECK_THROWS_AS(PowerAllocation::from_rho_d(2.5, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(PowerAllocation::from_rho_d(-0.1, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(PowerAllocation::from_rho_d(0.5, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(PowerAllocation::from_rho_d(0.5, 1.5),
                  std::invalid_argument);
}

TEST_CASE("minimal overhead per fading model") {
  CHECK(alpha_min(Block{50}) == doctest::Approx(0.02));
  CHECK(alpha_min(Continuous{DopplerSpec(
            0.02, SpectralShape::clarke_jakes())}) == doctest::Approx(0.04));
}

TEST_CASE("block fading estimation error follows the closed form") {
  const SnrLinear snr(10.0);
  // 1 / (1 + alpha n_b rho_p SNR) at alpha = 0.02, n_b = 50, rho_p = 1.
  CHECK(mmse(Block{50}, snr, 0.02, 1.0) ==
        doctest::Approx(1.0 / 11.0).epsilon(1e-15));
  CHECK(mmse(Block{50}, snr, 0.02, 5.0) ==
        doctest::Approx(1.0 / 51.0).epsilon(1e-15));
}

TEST_CASE("continuous estimation error matches the defining integral") {
  const std::vector<SpectralShape> shapes = {
      SpectralShape::clarke_jakes(), SpectralShape::rectangular(),
      SpectralShape::tabulated({{-1.0, 0.1}, {-0.2, 0.8}, {0.4, 0.6}, {1.0, 0.2}})};
  for (const SpectralShape& shape : shapes) {
    for (double f_D : {0.001, 0.02}) {
      for (double alpha : {0.05, 0.4}) {
        for (double rho_p : {1.0, 5.0}) {
          CAPTURE(static_cast<int>(shape.kind()));
          CAPTURE(f_D);
          CAPTURE(alpha);
          CAPTURE(rho_p);
          const Continuous model{DopplerSpec(f_D, shape)};
          const double got = mmse(model, SnrLinear(10.0), alpha, rho_p);
          const double want =
              mmse_by_definition(shape, 10.0, alpha, f_D, rho_p);
          CHECK(got == doctest::Approx(want).epsilon(1e-10));
        }
      }
    }
  }
}

TEST_CASE("rectangular estimation error has the rational closed form") {
  const double f_D = 0.01;
  const double alpha = 0.1;
  const double snr = 4.0;
  const double c = f_D / (alpha * 1.0 * snr);
  const Continuous model{DopplerSpec(f_D, SpectralShape::rectangular())};
  CHECK(mmse(model, SnrLinear(snr), alpha, 1.0) ==
        doctest::Approx(2.0 * c / (2.0 * c + 1.0)).epsilon(1e-15));
}

TEST_CASE("closed-form Clarke-Jakes error agrees with the quadrature route") {
  const SpectralShape cj = SpectralShape::clarke_jakes();
  for (double f_D : {0.001, 0.02}) {
    for (double alpha : {2.0 * f_D, 0.1, 1.0}) {
      for (double snr : {0.1, 1.0, 10.0, 100.0}) {
        CAPTURE(f_D);
        CAPTURE(alpha);
        CAPTURE(snr);
        const Continuous model{DopplerSpec(f_D, cj)};
        const double quad = mmse(model, SnrLinear(snr), alpha, 1.0);
        const double closed =
            mmse_clarke_jakes_closed(SnrLinear(snr), alpha, f_D, 1.0);
        CHECK(std::abs(quad - closed) < 1e-10);
      }
    }
  }
}

TEST_CASE("closed-form branches join smoothly around x = 1") {
  // x = alpha rho_p SNR / (pi f_D).  The series patch covers roughly
  // |x - 1| < 1e-4, with the log branch below and the arctan branch above.
  // March a uniform grid across both junctions and bound the first and
  // second differences: the function is smooth with slope -2/(3 pi) at
  // x = 1, so a seam between branches would stand out as a jump or kink far
  // above the O(f'' dx^2) second-difference level.
  const double f_D = 0.01;
  const double alpha = 0.5;
  const double snr_at_x1 = kPi * f_D / (alpha * 1.0);
  const double half_width = 4e-4;
  const int n = 40;
  const double dx = half_width / n;
  std::vector<double> f(2 * n + 1);
  for (int i = 0; i <= 2 * n; ++i) {
    const double x = 1.0 - half_width + i * dx;
    f[i] = mmse_clarke_jakes_closed(SnrLinear(x * snr_at_x1), alpha, f_D, 1.0);
  }
  for (int i = 0; i < 2 * n; ++i) {
    CHECK(std::abs(f[i + 1] - f[i]) < 0.3 * dx);
  }
  for (int i = 1; i < 2 * n; ++i) {
    CHECK(std::abs(f[i + 1] - 2.0 * f[i] + f[i - 1]) < 5e-9);
  }
}

TEST_CASE("estimation error is monotone in overhead, power and SNR") {
  const Continuous model{DopplerSpec(0.02, SpectralShape::clarke_jakes())};
  const SnrLinear snr(10.0);
  double previous = 1.0;
  for (double alpha : {0.05, 0.1, 0.2, 0.5, 1.0}) {
    const double m = mmse(model, snr, alpha, 1.0);
    CHECK(m < previous);
    previous = m;
  }
  CHECK(mmse(model, snr, 0.1, 2.0) < mmse(model, snr, 0.1, 1.0));
  CHECK(mmse(model, SnrLinear(20.0), 0.1, 1.0) < mmse(model, snr, 0.1, 1.0));
  CHECK(mmse(Block{100}, snr, 0.05, 1.0) < mmse(Block{50}, snr, 0.05, 1.0));
}

TEST_CASE("zero pilot power means a useless estimate") {
  const Continuous model{DopplerSpec(0.02, SpectralShape::clarke_jakes())};
  CHECK(mmse(model, SnrLinear(10.0), 0.1, 0.0) == 1.0);
  CHECK(mmse(Block{50}, SnrLinear(10.0), 0.1, 0.0) == 1.0);
}

TEST_CASE("estimation rejects untrackable or malformed overheads") {
  const Continuous model{DopplerSpec(0.02, SpectralShape::clarke_jakes())};
  const SnrLinear snr(10.0);
  CHECK_THROWS_AS(mmse(model, snr, 0.039, 1.0), aliasing_error);
  CHECK_THROWS_AS(mmse(Block{50}, snr, 0.019, 1.0), aliasing_error);
  CHECK_THROWS_AS(mmse(model, snr, 1.1, 1.0), std::domain_error);
  CHECK_THROWS_AS(mmse(model, snr, 0.1, -1.0), std::domain_error);
}

TEST_CASE("effective SNR composes estimate quality and data power") {
  const SnrLinear snr(10.0);
  // SNR (1-m) / (1/rho_d + SNR m).
  CHECK(snr_eff(snr, 0.1, 1.0).value() ==
        doctest::Approx(10.0 * 0.9 / (1.0 + 1.0)).epsilon(1e-15));
  CHECK(snr_eff(snr, 0.0, 0.5).value() ==
        doctest::Approx(5.0).epsilon(1e-15));
  // A useless estimate yields a useless channel.
  CHECK(snr_eff(snr, 1.0, 1.0).value() == 0.0);
  CHECK(snr_eff(SnrLinear(0.0), 0.5, 1.0).value() == 0.0);
}

TEST_CASE("effective SNR rejects out-of-range inputs") {
  const SnrLinear snr(10.0);
  CHECK_THROWS_AS(snr_eff(snr, -0.1, 1.0), std::domain_error);
  CHECK_THROWS_AS(snr_eff(snr, 1.1, 1.0), std::domain_error);
  CHECK_THROWS_AS(snr_eff(snr, 0.5, 0.0), std::domain_error);
}

}
