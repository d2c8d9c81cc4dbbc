// SPDX-License-Identifier: Apache-2.0
//
// Self-verification suite: cross-validates the closed forms, expansions,
// optimizers and the multiantenna reduction against each other and against
// independent oracles (quadrature, finite differences, Monte Carlo), and
// reports each check with its tolerance and the observed error.

#ifndef PILOTSE_VERIFICATION_H
#define PILOTSE_VERIFICATION_H

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace pilotse {

// quick trims grids and Monte Carlo sample counts for fast iteration;
// full runs the complete acceptance configuration.
enum class VerifyLevel { quick, full };

struct CheckResult {
  // Criterion group 1..10; several checks may share a group.
  int criterion;
  std::string id;
  std::string description;
  // Pass iff observed <= tolerance.  The metric (absolute error, relative
  // error, ratio deviation, z-score, seconds) is named in the description.
  double tolerance;
  double observed;
  bool pass;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  double elapsed_seconds = 0.0;

  bool all_pass() const;
  // Worst observed/tolerance ratio among checks of one criterion, plus an
  // AND over their pass flags.
  bool criterion_passes(int criterion) const;
};

// The seed feeds the Monte Carlo capacity cross-check only; every other
// check is deterministic.
VerificationReport run_verification(VerifyLevel level);
VerificationReport run_verification(VerifyLevel level, std::uint64_t mc_seed);

// One line per check: status, id, observed vs tolerance, description.
void write_report(const VerificationReport& report, std::ostream& out);

}

#endif
