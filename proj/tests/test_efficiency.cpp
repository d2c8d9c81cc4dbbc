// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "pilotse/efficiency.h"
#include "pilotse/errors.h"
#include "pilotse/estimation.h"
#include "pilotse/snr.h"
#include "pilotse/spectra.h"

using namespace pilotse;

namespace {

Continuous clarke_jakes_model(double f_D) {
  return Continuous{DopplerSpec(f_D, SpectralShape::clarke_jakes())};
}

}  // namespace

TEST_SUITE("efficiency") {

TEST_CASE("spectral efficiency composes overhead, estimate and capacity") {
  // Block fading, alpha = 0.02, n_b = 50, unit powers: MMSE = 1/11,
  // SNR_eff = 10 (10/11) / (1 + 10/11) = 100/21, SE = 0.98 C(100/21).
  const double se =
      pilot_se(Block{50}, SnrLinear(10.0), 0.02, PowerAllocation::unboosted());
  CHECK(se == doctest::Approx(0.98 * 2.1053540553148182).epsilon(1e-13));
}

TEST_CASE("spectral efficiency rejects allocations off the power budget") {
  CHECK_THROWS_AS(pilot_se(Block{50}, SnrLinear(10.0), 0.02,
                           PowerAllocation{2.0, 1.5}),
                  std::invalid_argument);
}

TEST_CASE("unboosted optimum is a strict local maximum") {
  for (double f_D : {0.001, 0.02}) {
    for (double snr_db : {0.0, 10.0}) {
      CAPTURE(f_D);
      CAPTURE(snr_db);
      const Continuous model = clarke_jakes_model(f_D);
      const SnrLinear snr = SnrLinear::from_db(snr_db);
      const OverheadSolution sol = optimize_overhead(model, snr, false);
      CHECK(sol.converged);
      CHECK(sol.rho_p_star == 1.0);
      CHECK(sol.rho_d_star == 1.0);
      CHECK(sol.alpha_star >= 2.0 * f_D);
      CHECK(sol.alpha_star <= 1.0);
      CHECK(sol.bracket_lo <= sol.alpha_star);
      CHECK(sol.bracket_hi >= sol.alpha_star);
      const PowerAllocation unit = PowerAllocation::unboosted();
      const double up =
          pilot_se(model, snr, std::min(sol.alpha_star + 1e-4, 1.0), unit);
      const double down =
          pilot_se(model, snr, std::max(sol.alpha_star - 1e-4, 2.0 * f_D), unit);
      CHECK(sol.se_star >= up - 1e-12);
      CHECK(sol.se_star >= down - 1e-12);
    }
  }
}

TEST_CASE("overhead objective is single-peaked") {
  CHECK(count_local_maxima(clarke_jakes_model(0.02), SnrLinear(10.0), 400) == 1);
  CHECK(count_local_maxima(clarke_jakes_model(0.001), SnrLinear(1.0), 400) == 1);
  CHECK(count_local_maxima(FadingModel(Block{50}), SnrLinear(10.0), 400) == 1);
}

TEST_CASE("boosting pins the overhead to its minimum") {
  const Continuous model = clarke_jakes_model(0.001);
  const OverheadSolution sol = optimize_overhead(model, SnrLinear(10.0), true);
  CHECK(sol.converged);
  CHECK(sol.alpha_star == 0.002);
  // Reference optimum cross-checked against a dense brute-force scan.
  CHECK(sol.rho_d_star == doctest::Approx(0.9571214).epsilon(1e-6));
  CHECK(sol.rho_p_star == doctest::Approx(22.3964).epsilon(1e-5));
  CHECK(sol.se_star == doctest::Approx(2.7980588).epsilon(1e-7));
  // The reported allocation satisfies the power constraint.
  const PowerAllocation alloc{sol.rho_p_star, sol.rho_d_star};
  CHECK(std::abs(alloc.constraint_residual(sol.alpha_star)) < 1e-9);
}

TEST_CASE("boosting never loses to unit power ratios") {
  for (double f_D : {0.001, 0.02}) {
    for (double snr_db : {0.0, 10.0, 20.0}) {
      CAPTURE(f_D);
      CAPTURE(snr_db);
      const Continuous model = clarke_jakes_model(f_D);
      const SnrLinear snr = SnrLinear::from_db(snr_db);
      const double plain = optimize_overhead(model, snr, false).se_star;
      const double boosted = optimize_overhead(model, snr, true).se_star;
      CHECK(boosted >= plain - 1e-12);
    }
  }
}

TEST_CASE("joint scan confirms the minimum-overhead rule under boosting") {
  const Continuous model = clarke_jakes_model(0.02);
  const JointAudit audit = joint_boost_audit(model, SnrLinear(10.0), 24, 96);
  CHECK(audit.alpha_best == doctest::Approx(0.04).epsilon(1e-12));
  CHECK(audit.se_best <= audit.se_at_alpha_min + 1e-9);
}

TEST_CASE("block-fading optimum respects the block-length floor") {
  const OverheadSolution sol =
      optimize_overhead(Block{50}, SnrLinear(10.0), false);
  CHECK(sol.converged);
  CHECK(sol.alpha_star >= 0.02);
  CHECK(sol.se_star > 0.0);
}

TEST_CASE("penalty is positive and boosting shrinks it") {
  for (double snr_db : {0.0, 10.0}) {
    CAPTURE(snr_db);
    const Continuous model = clarke_jakes_model(0.01);
    const SnrLinear snr = SnrLinear::from_db(snr_db);
    const double plain = penalty(model, snr, false);
    const double boosted = penalty(model, snr, true);
    CHECK(plain > 0.0);
    CHECK(boosted > 0.0);
    CHECK(boosted <= plain + 1e-12);
  }
}

TEST_CASE("optimizer handles a nearly untrackable Doppler spread") {
  // alpha_min = 0.98 leaves almost no room; the optimum must stay inside
  // the shrunken bracket and produce a tiny but valid efficiency.
  const Continuous model = clarke_jakes_model(0.49);
  const OverheadSolution sol = optimize_overhead(model, SnrLinear(10.0), false);
  CHECK(sol.converged);
  CHECK(sol.alpha_star >= 0.98);
  CHECK(sol.alpha_star <= 1.0);
  CHECK(sol.se_star >= 0.0);
}

}
