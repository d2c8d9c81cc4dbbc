// SPDX-License-Identifier: Apache-2.0

#include "pilotse/special_functions.h"

#include <cmath>
#include <stdexcept>

#include "pilotse/errors.h"

namespace pilotse {

namespace {

constexpr double kEuler = 0.57721566490153286060651209008240;
constexpr double kLog2e = 1.44269504088896340735992468100189;
constexpr int kMaxIter = 400;
constexpr double kEps = 1.0e-16;

// Power series about zeta = 0, valid (and rapidly convergent) for
// zeta <= 1:
//   E_n(z) = (-z)^{n-1}/(n-1)! [psi(n) - ln z] - sum_{m != n-1} (-z)^m / ((m-n+1) m!)
double series_unscaled(int n, double z) {
  const int nm1 = n - 1;
  double ans = (nm1 != 0) ? 1.0 / nm1 : -std::log(z) - kEuler;
  double fact = 1.0;
  for (int i = 1; i <= kMaxIter; ++i) {
    fact *= -z / i;
    double del;
    if (i != nm1) {
      del = -fact / (i - nm1);
    } else {
      double psi = -kEuler;
      for (int k = 1; k <= nm1; ++k) psi += 1.0 / k;
      del = fact * (psi - std::log(z));
    }
    ans += del;
    if (std::fabs(del) < std::fabs(ans) * kEps) return ans;
  }
  throw convergence_error("exp_integral: series did not converge", z, ans);
}

// Modified Lentz evaluation of the continued fraction
//   e^z E_n(z) = 1/(z+n- 1*n/(z+n+2- 2*(n+1)/(z+n+4- ...)))
// for z > 1.  Produces the scaled value directly, which is what keeps
// capacity evaluations finite for SNR below 1/709 where e^{1/SNR}
// overflows.
double lentz_scaled(int n, double z) {
  constexpr double kTiny = 1.0e-300;
  double b = z + n;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double a = -static_cast<double>(i) * (n - 1 + i);
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const double del = c * d;
    h *= del;
    if (std::fabs(del - 1.0) <= kEps) return h;
  }
  throw convergence_error("exp_integral: continued fraction did not converge", z, h);
}

void validate(int q, double zeta) {
  if (q < 1)
    throw std::domain_error("exp_integral: order q must be >= 1");
  if (!(zeta > 0.0))
    throw std::domain_error("exp_integral: zeta must be > 0");
}

}  // namespace

double exp_integral(int q, double zeta) {
  validate(q, zeta);
  if (zeta <= 1.0) return series_unscaled(q, zeta);
  return std::exp(-zeta) * lentz_scaled(q, zeta);
}

double exp_integral_scaled(int q, double zeta) {
  validate(q, zeta);
  if (zeta <= 1.0) return std::exp(zeta) * series_unscaled(q, zeta);
  return lentz_scaled(q, zeta);
}

double capacity_csi(SnrLinear snr) {
  const double s = snr.value();
  if (s == 0.0) return 0.0;
  return kLog2e * exp_integral_scaled(1, 1.0 / s);
}

double capacity_csi_d1(SnrLinear snr) {
  const double s = snr.value();
  if (s == 0.0)
    throw std::domain_error("capacity_csi_d1: SNR must be > 0");
  return (kLog2e - capacity_csi(snr) / s) / s;
}

double capacity_csi_d2(SnrLinear snr) {
  const double s = snr.value();
  if (s == 0.0)
    throw std::domain_error("capacity_csi_d2: SNR must be > 0");
  const double c = capacity_csi(snr);
  const double d1 = (kLog2e - c / s) / s;
  return -(kLog2e + d1 - 2.0 * c / s) / (s * s);
}

CapacityFamily scalar_capacity_family() {
  return CapacityFamily{
      [](double s) { return capacity_csi(SnrLinear(s)); },
      [](double s) { return capacity_csi_d1(SnrLinear(s)); },
      [](double s) { return capacity_csi_d2(SnrLinear(s)); },
  };
}

}
