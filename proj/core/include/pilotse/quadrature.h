// SPDX-License-Identifier: Apache-2.0
//
// Deterministic quadrature building blocks: Gauss-Legendre rules,
// an adaptive Gauss-Kronrod 7/15 integrator, and generalized
// Gauss-Laguerre rules for integrals against e^{-x} x^d on [0, inf).

#ifndef PILOTSE_QUADRATURE_H
#define PILOTSE_QUADRATURE_H

#include <cstddef>
#include <functional>
#include <vector>

namespace pilotse {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [-1, 1].  Nodes are Newton-refined roots
// of the Legendre polynomial; rules are cached per n.
const QuadratureRule& gauss_legendre(int n);

// Fixed-order Gauss-Legendre integral of f over [a, b].
double integrate_gauss_legendre(const std::function<double(double)>& f,
                                double a, double b, int n);

// Adaptive Gauss-Kronrod 7/15 integration of f over [a, b].  Bisects until
// the Kronrod error estimate of every panel is below max(abs_tol,
// rel_tol*|I|) apportioned by panel width.  Throws convergence_error if the
// subdivision depth cap is hit before the tolerance is met.
double integrate_adaptive(const std::function<double(double)>& f,
                          double a, double b,
                          double abs_tol = 1e-12, double rel_tol = 1e-12,
                          int max_depth = 48);

// n-point generalized Gauss-Laguerre rule for weight e^{-x} x^d, d > -1,
// computed by the Golub-Welsch eigenvalue method.  Rules are cached per
// (n, d).
const QuadratureRule& gauss_laguerre(int n, double d);

}

#endif
