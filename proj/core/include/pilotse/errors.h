// SPDX-License-Identifier: Apache-2.0
//
// Error hierarchy shared by all modules.  std::invalid_argument and
// std::domain_error are reserved for malformed arguments (usage errors);
// everything deriving from numerical_error signals that a computation
// could not be completed inside its validity region.

#ifndef PILOTSE_ERRORS_H
#define PILOTSE_ERRORS_H

#include <stdexcept>
#include <string>

namespace pilotse {

class numerical_error : public std::runtime_error {
public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// Requested overhead cannot sample the fading process fast enough; the
// decimated spectrum would alias.
class aliasing_error : public numerical_error {
public:
  explicit aliasing_error(const std::string& what) : numerical_error(what) {}
};

// An integral required by the computation does not converge (for example
// the inverse-shape integral of a spectrum that vanishes at an interior
// point).
class divergence_error : public numerical_error {
public:
  explicit divergence_error(const std::string& what) : numerical_error(what) {}
};

// A closed-form expansion was evaluated outside the parameter region in
// which it is defined.
class out_of_regime_error : public numerical_error {
public:
  explicit out_of_regime_error(const std::string& what) : numerical_error(what) {}
};

// An iterative solver hit its iteration cap.  Carries the best iterate so
// callers can report diagnostics.
class convergence_error : public numerical_error {
public:
  convergence_error(const std::string& what, double best_x, double best_value)
      : numerical_error(what), best_x_(best_x), best_value_(best_value) {}
  double best_x() const { return best_x_; }
  double best_value() const { return best_value_; }

private:
  double best_x_;
  double best_value_;
};

}

#endif
