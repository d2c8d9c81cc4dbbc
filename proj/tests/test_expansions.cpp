// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "pilotse/efficiency.h"
#include "pilotse/errors.h"
#include "pilotse/estimation.h"
#include "pilotse/expansions.h"
#include "pilotse/snr.h"
#include "pilotse/special_functions.h"
#include "pilotse/spectra.h"

using namespace pilotse;

namespace {

Continuous clarke_jakes_model(double f_D) {
  return Continuous{DopplerSpec(f_D, SpectralShape::clarke_jakes())};
}

// Exact boosted effective SNR at alpha = 2 f_D: estimate quality from the
// machine-precision rectangular closed form, composed with the power
// constraint at the given data power ratio.
double exact_boosted_effective_snr(double snr, double rho_d, double f_D) {
  const double alpha = 2.0 * f_D;
  const PowerAllocation alloc = PowerAllocation::from_rho_d(rho_d, alpha);
  const Continuous model{DopplerSpec(f_D, SpectralShape::rectangular())};
  const double m = mmse(model, SnrLinear(snr), alpha, alloc.rho_p);
  return snr_eff(SnrLinear(snr), m, rho_d).value();
}

}  // namespace

TEST_SUITE("expansions") {

TEST_CASE("clamp pins values to the interval") {
  const ClampInterval interval{0.2, 1.0};
  CHECK(clamp(0.5, interval) == 0.5);
  CHECK(clamp(0.1, interval) == 0.2);
  CHECK(clamp(1.7, interval) == 1.0);
}

TEST_CASE("expansion output is the clamped sum of its terms") {
  for (double snr : {1.0, 10.0}) {
    for (double f_D : {1e-4, 0.01, 0.05}) {
      CAPTURE(snr);
      CAPTURE(f_D);
      const ExpansionResult r = overhead_expansion(
          SpectralShape::clarke_jakes(), SnrLinear(snr), f_D);
      CHECK(r.clamp.lo == 2.0 * f_D);
      CHECK(r.clamp.hi == 1.0);
      const double raw = r.leading_term + r.first_order_term;
      CHECK(r.value == clamp(raw, r.clamp));
      CHECK(r.clamped == (raw <= r.clamp.lo || raw >= r.clamp.hi));
      CHECK(r.leading_term > 0.0);
    }
  }
}

TEST_CASE("expansion error shrinks at first order past the square root") {
  // The error left after the sqrt(f_D) term is O(f_D): shrinking f_D
  // sixteen-fold must shrink it at least four-fold.
  for (double snr : {1.0, 10.0}) {
    for (bool rectangular : {false, true}) {
      CAPTURE(snr);
      CAPTURE(rectangular);
      const SpectralShape shape = rectangular
                                      ? SpectralShape::rectangular()
                                      : SpectralShape::clarke_jakes();
      const SnrLinear s(snr);
      auto gap = [&shape, &s](double f_D) {
        const Continuous model{DopplerSpec(f_D, shape)};
        const double numeric = optimize_overhead(model, s, false).alpha_star;
        return std::abs(numeric - overhead_expansion(shape, s, f_D).value);
      };
      CHECK(gap(1e-5) <= 0.25 * gap(1.6e-4));
    }
  }
}

TEST_CASE("numeric capacity penalty scales as the square root of Doppler") {
  const SnrLinear snr(10.0);
  for (double f_D : {2.5e-4, 1e-3}) {
    CAPTURE(f_D);
    const double small = penalty(clarke_jakes_model(f_D / 4.0), snr, false);
    const double large = penalty(clarke_jakes_model(f_D), snr, false);
    CHECK(large / small > 1.8);
    CHECK(large / small < 2.2);
  }
}

TEST_CASE("the shape enters the overhead expansion only through one integral") {
  // A tabulated shape with the same inverse-shape integral as the
  // rectangular one (exactly 4) must give identical expansions.
  const SpectralShape flat =
      SpectralShape::tabulated({{-1.0, 0.5}, {1.0, 0.5}});
  for (double snr : {1.0, 10.0}) {
    for (double f_D : {1e-4, 0.01}) {
      CAPTURE(snr);
      CAPTURE(f_D);
      const ExpansionResult a =
          overhead_expansion(SpectralShape::rectangular(), SnrLinear(snr), f_D);
      const ExpansionResult b = overhead_expansion(flat, SnrLinear(snr), f_D);
      CHECK(a.value == b.value);
      CHECK(a.leading_term == b.leading_term);
      CHECK(a.first_order_term == b.first_order_term);
    }
  }
}

TEST_CASE("quadratic efficiency model tracks the exact rate at small Doppler") {
  const SpectralShape cj = SpectralShape::clarke_jakes();
  const SnrLinear snr(10.0);
  const double alpha = 0.02;
  const double f_D = 1e-4;
  const double model_value = se_quadratic_model(cj, snr, alpha, f_D);
  const double exact = pilot_se(Continuous{DopplerSpec(f_D, cj)}, snr, alpha,
                                PowerAllocation::unboosted());
  CHECK(model_value == doctest::Approx(exact).epsilon(1e-2));
}

TEST_CASE("quadratic effective-SNR model is cubically accurate") {
  const SpectralShape rect = SpectralShape::rectangular();
  const SnrLinear snr(10.0);
  const double rho_d = 0.9;
  auto err = [&](double f_D) {
    return std::abs(effective_snr_quadratic_model(rect, snr, rho_d, f_D) -
                    exact_boosted_effective_snr(10.0, rho_d, f_D));
  };
  // The remainder at f_D = 1e-4 is the cubic Taylor term, about 2.6e-7
  // (the quadratic model is exact through second order, no further).
  CHECK(err(1e-4) < 5e-7);
  // Cubic order: halving f_D divides the remainder by about eight.
  const double ratio = err(1e-4) / err(5e-5);
  CHECK(ratio > 6.0);
  CHECK(ratio < 10.0);
}

TEST_CASE("pinned-overhead efficiency needs capacity at a positive argument") {
  // Large Doppler pushes the raw expansion to the 2 f_D floor; the pinned
  // formula evaluates the capacity at (SNR-1)/2 and cannot be used at or
  // below unit SNR.
  const SpectralShape cj = SpectralShape::clarke_jakes();
  REQUIRE(overhead_expansion(cj, SnrLinear(0.9), 0.3).clamped);
  CHECK_THROWS_AS(se_expansion_no_boost(cj, SnrLinear(0.9), 0.3),
                  out_of_regime_error);
  // Same pinning above unit SNR stays on the documented formula.
  REQUIRE(overhead_expansion(cj, SnrLinear(10.0), 0.3).clamped);
  CHECK(se_expansion_no_boost(cj, SnrLinear(10.0), 0.3) ==
        doctest::Approx(0.4 * capacity_csi(SnrLinear(4.5))).epsilon(1e-13));
}

TEST_CASE("unpinned efficiency expansion follows the square-root penalty") {
  const SpectralShape cj = SpectralShape::clarke_jakes();
  const SnrLinear snr(10.0);
  const double f_D = 1e-3;
  const double c = capacity_csi(snr);
  const double d1 = capacity_csi_d1(snr);
  CHECK(se_expansion_no_boost(cj, snr, f_D) ==
        doctest::Approx(c - std::sqrt(8.0 * f_D * 11.0 * c * d1))
            .epsilon(1e-13));
}

TEST_CASE("penalty decomposition splits overhead and estimation losses") {
  const SnrLinear snr(10.0);
  const PenaltySplit split =
      penalty_decomposition(SpectralShape::clarke_jakes(), snr, 0.05, 1e-3);
  CHECK(split.overhead_loss ==
        doctest::Approx(0.05 * capacity_csi(snr)).epsilon(1e-13));
  CHECK(split.estimation_loss ==
        doctest::Approx(11.0 * capacity_csi_d1(snr) * 2e-3 / 0.05)
            .epsilon(1e-13));
  // Overheads below the trackability floor are out of the model's domain.
  CHECK_THROWS_AS(
      penalty_decomposition(SpectralShape::clarke_jakes(), snr, 1e-3, 1e-3),
      std::domain_error);
}

TEST_CASE("boosted allocation expansion matches its closed forms") {
  const SnrLinear snr(10.0);
  const double f_D = 1e-3;
  const PowerAllocation alloc = power_allocation_expansion(snr, f_D);
  CHECK(alloc.rho_p ==
        doctest::Approx(std::sqrt(1.1 / (2.0 * f_D))).epsilon(1e-14));
  CHECK(alloc.rho_d ==
        doctest::Approx(1.0 - std::sqrt(1.1 * 2.0 * f_D)).epsilon(1e-14));
  // Too much Doppler for the asymptotic allocation: rho_d would go
  // nonpositive.
  CHECK_THROWS_AS(power_allocation_expansion(SnrLinear(0.1), 0.05),
                  out_of_regime_error);
}

TEST_CASE("boosted allocation approaches the numeric optimum") {
  const SnrLinear snr(10.0);
  const double f_D = 1e-6;
  const PowerAllocation expansion = power_allocation_expansion(snr, f_D);
  const OverheadSolution numeric =
      optimize_overhead(clarke_jakes_model(f_D), snr, true);
  CHECK(expansion.rho_d ==
        doctest::Approx(numeric.rho_d_star).epsilon(1e-2));
  CHECK(expansion.rho_p ==
        doctest::Approx(numeric.rho_p_star).epsilon(1e-2));
}

TEST_CASE("boosting improves the expansion efficiency") {
  for (double snr : {4.0, 10.0, 100.0}) {
    for (double f_D : {1e-4, 1e-3}) {
      CAPTURE(snr);
      CAPTURE(f_D);
      CHECK(se_expansion_boost(SnrLinear(snr), f_D) >=
            se_expansion_no_boost(SpectralShape::clarke_jakes(),
                                  SnrLinear(snr), f_D));
    }
  }
}

TEST_CASE("pilot energy fractions collapse to the documented forms") {
  const SnrLinear snr(10.0);
  const double f_D = 1e-3;
  CHECK(pilot_power_fraction(snr, f_D, true) ==
        doctest::Approx(std::sqrt(1.1 * 2.0 * f_D)).epsilon(1e-14));
  CHECK(pilot_power_fraction(snr, f_D, false) ==
        doctest::Approx(overhead_expansion(SpectralShape::clarke_jakes(),
                                           snr, f_D)
                            .leading_term)
            .epsilon(1e-14));
}

TEST_CASE("derivative oracles match their defining limits") {
  const SpectralShape cj = SpectralShape::clarke_jakes();
  const SnrLinear snr(10.0);
  const DerivativeOracles oracles =
      appendix_derivative_oracles(cj, snr, 0.1, 0.9);
  CHECK(oracles.mmse_slope == doctest::Approx(2.0).epsilon(1e-14));
  const double inverse_integral = 4.9348022005446793;
  CHECK(oracles.mmse_curvature ==
        doctest::Approx(-2.0 * inverse_integral).epsilon(1e-13));
  // Slope of the fixed-overhead estimation error, finite-difference check
  // through the machine-precision closed form.
  const double f0 = 1e-6;
  const double h = 5e-7;
  const double fd_slope =
      (mmse_clarke_jakes_closed(snr, 0.1, f0 + h, 1.0) -
       mmse_clarke_jakes_closed(snr, 0.1, f0 - h, 1.0)) /
      (2.0 * h);
  CHECK(oracles.mmse_slope == doctest::Approx(fd_slope).epsilon(1e-3));
}

TEST_CASE("derivative oracles reject out-of-domain operating points") {
  const SpectralShape cj = SpectralShape::clarke_jakes();
  const SnrLinear snr(10.0);
  CHECK_THROWS_AS(appendix_derivative_oracles(cj, snr, 0.1, 1.0),
                  std::domain_error);
  CHECK_THROWS_AS(appendix_derivative_oracles(cj, snr, 0.1, -0.1),
                  std::domain_error);
  CHECK_THROWS_AS(appendix_derivative_oracles(cj, snr, 1.5, 0.9),
                  std::domain_error);
}

TEST_CASE("single-antenna reduction of the multiantenna expansion") {
  const SpectralShape cj = SpectralShape::clarke_jakes();
  const SnrLinear snr(10.0);
  const double f_D = 1e-3;
  const ExpansionResult scalar = overhead_expansion(cj, snr, f_D);
  const ExpansionResult reduced = mimo_overhead_expansion(cj, snr, f_D, 1, 1);
  CHECK(reduced.value == doctest::Approx(scalar.value).epsilon(1e-8));
  CHECK(reduced.leading_term ==
        doctest::Approx(scalar.leading_term).epsilon(1e-8));
}

TEST_CASE("multiantenna expansion widens the floor and checks aliasing") {
  const SpectralShape rect = SpectralShape::rectangular();
  const ExpansionResult r =
      mimo_overhead_expansion(rect, SnrLinear(10.0), 0.01, 4, 4);
  CHECK(r.clamp.lo == doctest::Approx(0.08));
  CHECK(r.clamp.hi == 1.0);
  CHECK_THROWS_AS(mimo_overhead_expansion(rect, SnrLinear(10.0), 0.3, 2, 2),
                  aliasing_error);
}

}
