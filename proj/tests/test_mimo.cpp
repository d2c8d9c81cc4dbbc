// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "pilotse/errors.h"
#include "pilotse/estimation.h"
#include "pilotse/mimo.h"
#include "pilotse/snr.h"
#include "pilotse/special_functions.h"
#include "pilotse/spectra.h"

using namespace pilotse;

namespace {

constexpr double kLog2e = 1.4426950408889634;

}  // namespace

TEST_SUITE("mimo") {

TEST_CASE("single-antenna capacity reduces to the scalar law") {
  // The quadrature integrand log2(1 + s x) has a branch point at x = -1/s,
  // so the fixed rule loses accuracy as s grows; the tolerance tracks that.
  for (double s : {0.5, 1.0, 10.0, 50.0}) {
    CAPTURE(s);
    const double eps = s <= 10.0 ? 1e-10 : 1e-5;
    CHECK(capacity_mimo({1, 1}, SnrLinear(s)) ==
          doctest::Approx(capacity_csi(SnrLinear(s))).epsilon(eps));
    CHECK(capacity_mimo_d1({1, 1}, SnrLinear(s)) ==
          doctest::Approx(capacity_csi_d1(SnrLinear(s))).epsilon(eps));
    CHECK(capacity_mimo_d2({1, 1}, SnrLinear(s)) ==
          doctest::Approx(capacity_csi_d2(SnrLinear(s))).epsilon(
              s <= 1.0 ? 1e-10 : s <= 10.0 ? 1e-9 : 1e-5));
  }
}

TEST_CASE("multiantenna capacity reference values at 10 dB") {
  const SnrLinear snr(10.0);
  CHECK(capacity_mimo({2, 2}, snr) == doctest::Approx(5.549228).epsilon(1e-6));
  CHECK(capacity_mimo({4, 4}, snr) == doctest::Approx(10.941422).epsilon(1e-6));
  CHECK(capacity_mimo({8, 8}, snr) == doctest::Approx(21.809687).epsilon(1e-6));
  CHECK(capacity_mimo({2, 4}, snr) == doctest::Approx(8.048515).epsilon(1e-6));
}

TEST_CASE("capacity is zero at zero SNR and grows with antennas") {
  CHECK(capacity_mimo({3, 3}, SnrLinear(0.0)) == 0.0);
  const SnrLinear snr(10.0);
  double previous = 0.0;
  for (int n : {1, 2, 3, 4, 6, 8}) {
    const double c = capacity_mimo({n, n}, snr);
    CHECK(c > previous);
    previous = c;
  }
  // Extra receive antennas help; extra transmit antennas split the power.
  CHECK(capacity_mimo({2, 4}, snr) > capacity_mimo({2, 2}, snr));
}

TEST_CASE("low-SNR capacity is linear with slope set by receive antennas") {
  // E[log2 det(I + (s/nT) H H*)] ~ log2(e) s nR as s -> 0.
  const double s = 1e-8;
  for (int n_r : {1, 2, 4}) {
    CAPTURE(n_r);
    CHECK(capacity_mimo({2, n_r}, SnrLinear(s)) ==
          doctest::Approx(kLog2e * s * n_r).epsilon(1e-6));
  }
}

TEST_CASE("capacity derivatives match finite differences") {
  const AntennaConfig cfg{3, 2};
  const double s = 5.0;
  const double h = 1e-4;
  const double up = capacity_mimo(cfg, SnrLinear(s + h));
  const double down = capacity_mimo(cfg, SnrLinear(s - h));
  const double mid = capacity_mimo(cfg, SnrLinear(s));
  CHECK(capacity_mimo_d1(cfg, SnrLinear(s)) ==
        doctest::Approx((up - down) / (2.0 * h)).epsilon(1e-7));
  CHECK(capacity_mimo_d2(cfg, SnrLinear(s)) ==
        doctest::Approx((up - 2.0 * mid + down) / (h * h)).epsilon(1e-4));
}

TEST_CASE("capacity family bundles the same three functions") {
  const AntennaConfig cfg{2, 3};
  const CapacityFamily family = mimo_capacity_family(cfg);
  const double s = 7.0;
  CHECK(family.value(s) == capacity_mimo(cfg, SnrLinear(s)));
  CHECK(family.d1(s) == capacity_mimo_d1(cfg, SnrLinear(s)));
  CHECK(family.d2(s) == capacity_mimo_d2(cfg, SnrLinear(s)));
}

TEST_CASE("antenna configurations are validated") {
  CHECK_THROWS_AS(capacity_mimo({0, 2}, SnrLinear(1.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(capacity_mimo({2, -1}, SnrLinear(1.0)),
                  std::invalid_argument);
}

TEST_CASE("Monte Carlo estimate is reproducible and tight") {
  const AntennaConfig cfg{2, 2};
  const SnrLinear snr(10.0);
  const MonteCarloEstimate first = capacity_mimo_mc(cfg, snr, 200000, 42);
  const MonteCarloEstimate again = capacity_mimo_mc(cfg, snr, 200000, 42);
  CHECK(first.mean == again.mean);
  CHECK(first.std_error == again.std_error);
  CHECK(first.samples == 200000);
  CHECK(first.seed == 42);

  const MonteCarloEstimate other = capacity_mimo_mc(cfg, snr, 200000, 43);
  CHECK(first.mean != other.mean);

  // z-test against the quadrature value; 4 sigma keeps the false-failure
  // odds negligible while still catching real bias.
  const double quad = capacity_mimo(cfg, snr);
  CHECK(std::abs(first.mean - quad) < 4.0 * first.std_error);
  CHECK(first.std_error < 0.01);
}

TEST_CASE("Monte Carlo covers asymmetric antenna counts") {
  const AntennaConfig cfg{3, 1};
  const SnrLinear snr(4.0);
  const MonteCarloEstimate mc = capacity_mimo_mc(cfg, snr, 200000, 7);
  CHECK(std::abs(mc.mean - capacity_mimo(cfg, snr)) < 4.0 * mc.std_error);
}

TEST_CASE("Monte Carlo validates the sample count") {
  CHECK_THROWS_AS(capacity_mimo_mc({2, 2}, SnrLinear(1.0), 0, 1),
                  std::invalid_argument);
}

TEST_CASE("multiantenna estimation error is the scalar one at scaled Doppler") {
  const DopplerSpec spec(0.005, SpectralShape::clarke_jakes());
  const SnrLinear snr(10.0);
  for (int n_t : {1, 2, 4}) {
    CAPTURE(n_t);
    const double got = mimo_mmse({n_t, 2}, spec, snr, 0.2, 1.0);
    const Continuous equivalent{
        DopplerSpec(n_t * 0.005, SpectralShape::clarke_jakes())};
    CHECK(got == mmse(equivalent, snr, 0.2, 1.0));
  }
}

TEST_CASE("multiantenna estimation refuses untrackable scaled Doppler") {
  const DopplerSpec spec(0.1, SpectralShape::clarke_jakes());
  CHECK_THROWS_AS(mimo_mmse({5, 2}, spec, SnrLinear(10.0), 0.9, 1.0),
                  aliasing_error);
}

TEST_CASE("pilot energy fraction scales as the square root of antennas") {
  const SnrLinear snr(10.0);
  const double f_D = 1e-3;
  for (bool boost : {false, true}) {
    CAPTURE(boost);
    const double one = mimo_pilot_power_fraction(snr, f_D, 1, boost);
    const double four = mimo_pilot_power_fraction(snr, f_D, 4, boost);
    CHECK(four == doctest::Approx(2.0 * one).epsilon(1e-12));
  }
}

}
