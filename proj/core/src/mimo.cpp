// SPDX-License-Identifier: Apache-2.0

#include "pilotse/mimo.h"

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "pilotse/errors.h"
#include "pilotse/expansions.h"
#include "pilotse/quadrature.h"

namespace pilotse {

namespace {

constexpr int kNodes = 512;
constexpr double kLog2e = 1.44269504088896340735992468100189;

void check_config(AntennaConfig cfg) {
  if (cfg.n_T < 1 || cfg.n_R < 1) {
    throw std::invalid_argument("antenna counts must be at least 1");
  }
}

// Quadrature nodes paired with weights that already include the eigenvalue
// density, so every capacity-like integral is a plain weighted sum.
struct EigenvalueRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// sum_{k<m} k!/(k+d)! [L_k^(d)(x)]^2 via the three-term recurrence
// (k+1) L_{k+1} = (2k+1+d-x) L_k - (k+d) L_{k-1}.
double eigenvalue_density(double x, int m, int d) {
  double coeff = 1.0;
  for (int j = 1; j <= d; ++j) {
    coeff /= static_cast<double>(j);
  }
  double lkm1 = 0.0;
  double lk = 1.0;
  double sum = coeff * lk * lk;
  for (int k = 0; k + 1 < m; ++k) {
    const double lkp1 =
        ((2.0 * k + 1.0 + d - x) * lk - (k + d) * lkm1) / (k + 1.0);
    lkm1 = lk;
    lk = lkp1;
    // k!/(k+d)! -> (k+1)!/(k+1+d)! multiplies by (k+1)/(k+1+d).
    coeff *= (k + 1.0) / (k + 1.0 + d);
    sum += coeff * lk * lk;
  }
  return sum;
}

std::shared_ptr<const EigenvalueRule> eigenvalue_rule(AntennaConfig cfg) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const EigenvalueRule>>
      cache;
  const std::pair<int, int> key{cfg.n_T, cfg.n_R};
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(key);
  if (it != cache.end()) {
    return it->second;
  }
  const int m = std::min(cfg.n_T, cfg.n_R);
  const int d = std::abs(cfg.n_T - cfg.n_R);
  const QuadratureRule& gl = gauss_laguerre(kNodes, static_cast<double>(d));
  auto rule = std::make_shared<EigenvalueRule>();
  rule->nodes = gl.nodes;
  rule->weights.resize(gl.nodes.size());
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    rule->weights[i] = gl.weights[i] * eigenvalue_density(gl.nodes[i], m, d);
  }
  cache.emplace(key, rule);
  return rule;
}

double integrate_rule(const EigenvalueRule& rule,
                      const std::function<double(double)>& f) {
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(rule.nodes[i]);
  }
  return sum;
}

double require_positive_snr(SnrLinear snr) {
  const double s = snr.value();
  if (s <= 0.0) {
    throw std::domain_error("SNR must be positive");
  }
  return s;
}

}

double capacity_mimo(AntennaConfig cfg, SnrLinear snr) {
  check_config(cfg);
  const double s = snr.value();
  if (s == 0.0) {
    return 0.0;
  }
  const auto rule = eigenvalue_rule(cfg);
  const double inv_nt = 1.0 / static_cast<double>(cfg.n_T);
  return integrate_rule(*rule, [s, inv_nt](double x) {
    return kLog2e * std::log1p(s * x * inv_nt);
  });
}

double capacity_mimo_d1(AntennaConfig cfg, SnrLinear snr) {
  check_config(cfg);
  const double s = require_positive_snr(snr);
  const auto rule = eigenvalue_rule(cfg);
  const double inv_nt = 1.0 / static_cast<double>(cfg.n_T);
  return integrate_rule(*rule, [s, inv_nt](double x) {
    const double t = x * inv_nt;
    return kLog2e * t / (1.0 + s * t);
  });
}

double capacity_mimo_d2(AntennaConfig cfg, SnrLinear snr) {
  check_config(cfg);
  const double s = require_positive_snr(snr);
  const auto rule = eigenvalue_rule(cfg);
  const double inv_nt = 1.0 / static_cast<double>(cfg.n_T);
  return integrate_rule(*rule, [s, inv_nt](double x) {
    const double t = x * inv_nt;
    const double denom = 1.0 + s * t;
    return -kLog2e * t * t / (denom * denom);
  });
}

CapacityFamily mimo_capacity_family(AntennaConfig cfg) {
  check_config(cfg);
  // Materialize the rule once; the closures share it.
  eigenvalue_rule(cfg);
  return CapacityFamily{
      [cfg](double s) { return capacity_mimo(cfg, SnrLinear(s)); },
      [cfg](double s) { return capacity_mimo_d1(cfg, SnrLinear(s)); },
      [cfg](double s) { return capacity_mimo_d2(cfg, SnrLinear(s)); },
  };
}

MonteCarloEstimate capacity_mimo_mc(AntennaConfig cfg, SnrLinear snr,
                                    std::int64_t samples,
                                    std::uint64_t seed) {
  check_config(cfg);
  if (samples < 2) {
    throw std::invalid_argument("need at least 2 Monte Carlo samples");
  }
  const double s = snr.value();
  std::mt19937_64 rng(seed);
  // Unit-power complex entries: each real part has variance 1/2.
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));

  Eigen::MatrixXcd h(cfg.n_R, cfg.n_T);
  const Eigen::MatrixXcd eye =
      Eigen::MatrixXcd::Identity(cfg.n_R, cfg.n_R);
  const double scale = s / static_cast<double>(cfg.n_T);

  double mean = 0.0;
  double m2 = 0.0;
  for (std::int64_t n = 0; n < samples; ++n) {
    for (int c = 0; c < cfg.n_T; ++c) {
      for (int r = 0; r < cfg.n_R; ++r) {
        h(r, c) = std::complex<double>(gauss(rng), gauss(rng));
      }
    }
    const Eigen::MatrixXcd a = eye + scale * (h * h.adjoint());
    const Eigen::LLT<Eigen::MatrixXcd> llt(a);
    double log2det = 0.0;
    for (int i = 0; i < cfg.n_R; ++i) {
      log2det += std::log(llt.matrixLLT()(i, i).real());
    }
    log2det *= 2.0 * kLog2e;
    // Welford running mean and sum of squared deviations.
    const double delta = log2det - mean;
    mean += delta / static_cast<double>(n + 1);
    m2 += delta * (log2det - mean);
  }
  const double count = static_cast<double>(samples);
  const double std_error = std::sqrt(m2 / ((count - 1.0) * count));
  return MonteCarloEstimate{mean, std_error, samples, seed};
}

double mimo_mmse(AntennaConfig cfg, const DopplerSpec& spec, SnrLinear snr,
                 double alpha, double rho_p) {
  check_config(cfg);
  const double f_eff = static_cast<double>(cfg.n_T) * spec.f_D;
  if (!(f_eff < 0.5)) {
    throw aliasing_error(
        "equivalent Doppler spread n_T f_D reaches 1/2; the multiantenna "
        "channel cannot be tracked at any overhead");
  }
  return mmse(Continuous{DopplerSpec(f_eff, spec.shape)}, snr, alpha, rho_p);
}

double mimo_pilot_power_fraction(SnrLinear snr, double f_D, int n_T,
                                 bool boost) {
  if (n_T < 1) {
    throw std::invalid_argument("antenna counts must be at least 1");
  }
  return pilot_power_fraction(snr, static_cast<double>(n_T) * f_D, boost);
}

}
