// SPDX-License-Identifier: Apache-2.0

#include "pilotse/quadrature.h"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

#include "pilotse/errors.h"

namespace pilotse {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15
// abscissae and weights).  xgk[1], xgk[3], ... are the Gauss nodes.
const double kXgk15[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

const double kWg7[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

const double kWgk15[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

struct PanelResult {
  double integral;
  double error;
};

PanelResult gk15_panel(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = kWgk15[7] * fc;
  double resg = kWg7[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk15[j];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    resk += kWgk15[j] * (f1 + f2);
    if (j % 2 == 1) resg += kWg7[j / 2] * (f1 + f2);
  }
  return PanelResult{resk * h, std::fabs((resk - resg) * h)};
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double abs_tol, double rel_tol, int depth, int max_depth) {
  const PanelResult r = gk15_panel(f, a, b);
  const double tol = std::max(abs_tol, rel_tol * std::fabs(r.integral));
  if (r.error <= tol) return r.integral;
  if (depth >= max_depth)
    throw convergence_error(
        "integrate_adaptive: subdivision depth cap reached before tolerance",
        0.5 * (a + b), r.integral);
  const double m = 0.5 * (a + b);
  return adapt(f, a, m, 0.5 * abs_tol, rel_tol, depth + 1, max_depth) +
         adapt(f, m, b, 0.5 * abs_tol, rel_tol, depth + 1, max_depth);
}

}  // namespace

const QuadratureRule& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  static std::mutex mu;
  static std::map<int, QuadratureRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-like initial guess, then Newton on P_n(x).
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * k + 1.0) * x * p2 - k * p3) / (k + 1.0);
      }
      pp = n * (x * p1 - p2) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  auto [pos, inserted] = cache.emplace(n, std::move(rule));
  return pos->second;
}

double integrate_gauss_legendre(const std::function<double(double)>& f,
                                double a, double b, int n) {
  const QuadratureRule& rule = gauss_legendre(n);
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += rule.weights[i] * f(c + h * rule.nodes[i]);
  return sum * h;
}

double integrate_adaptive(const std::function<double(double)>& f,
                          double a, double b,
                          double abs_tol, double rel_tol, int max_depth) {
  if (!(a < b)) {
    if (a == b) return 0.0;
    throw std::invalid_argument("integrate_adaptive: requires a <= b");
  }
  return adapt(f, a, b, abs_tol, rel_tol, 0, max_depth);
}

const QuadratureRule& gauss_laguerre(int n, double d) {
  if (n < 1) throw std::invalid_argument("gauss_laguerre: n must be >= 1");
  if (!(d > -1.0)) throw std::invalid_argument("gauss_laguerre: requires d > -1");
  static std::mutex mu;
  static std::map<std::pair<int, double>, QuadratureRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_pair(n, d);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  // Golub-Welsch nodes: eigenvalues of the symmetric Jacobi matrix of the
  // generalized Laguerre recurrence (diagonal 2k+1+d, off-diagonal
  // sqrt(k (k+d))).  The eigenvalues are accurate to machine precision, but
  // the first eigenvector components underflow for tail nodes (the true
  // values fall below the denormal range around x ~ 700), leaving the
  // squared-component weights dominated by solver noise there.  The weights
  // are therefore computed from the Christoffel function instead:
  // w_i = 1 / sum_{k<n} p_k(x_i)^2 with p_k the orthonormal polynomials of
  // the weight x^d e^{-x}.  The sum grows monotonically at tail nodes and
  // saturating it to infinity rounds those weights to an exact zero.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    jacobi(k, k) = 2.0 * k + 1.0 + d;
    if (k > 0) {
      const double off = std::sqrt(k * (k + d));
      jacobi(k, k - 1) = off;
      jacobi(k - 1, k) = off;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw numerical_error("gauss_laguerre: Jacobi eigen-decomposition failed");

  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double p0 = 1.0 / std::sqrt(std::tgamma(1.0 + d));
  for (int i = 0; i < n; ++i) {
    const double x = solver.eigenvalues()(i);
    rule.nodes[i] = x;
    double pkm1 = 0.0;
    double pk = p0;
    double sum = pk * pk;
    for (int k = 0; k + 1 < n; ++k) {
      // Orthonormal three-term recurrence; a_k = sqrt((k+1)(k+1+d)).
      const double ak = std::sqrt((k + 1.0) * (k + 1.0 + d));
      const double akm1 = k > 0 ? std::sqrt(k * (k + d)) : 0.0;
      const double pkp1 = ((x - (2.0 * k + 1.0 + d)) * pk - akm1 * pkm1) / ak;
      pkm1 = pk;
      pk = pkp1;
      sum += pk * pk;
      if (sum > 1e300) {
        sum = std::numeric_limits<double>::infinity();
        break;
      }
    }
    rule.weights[i] = 1.0 / sum;
  }
  auto [pos, inserted] = cache.emplace(key, std::move(rule));
  return pos->second;
}

}
