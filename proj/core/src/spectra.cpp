// SPDX-License-Identifier: Apache-2.0

#include "pilotse/spectra.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pilotse/errors.h"
#include "pilotse/quadrature.h"

namespace pilotse {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

double tabulated_eval(const std::vector<std::pair<double, double>>& s, double xi) {
  if (xi < s.front().first || xi > s.back().first) return 0.0;
  // Binary search for the segment containing xi.
  size_t lo = 0, hi = s.size() - 1;
  while (hi - lo > 1) {
    const size_t mid = (lo + hi) / 2;
    if (s[mid].first <= xi)
      lo = mid;
    else
      hi = mid;
  }
  const auto [x0, y0] = s[lo];
  const auto [x1, y1] = s[hi];
  const double t = (xi - x0) / (x1 - x0);
  return y0 + t * (y1 - y0);
}

// Exact integral of the piecewise-linear shape (trapezoid on the knots).
double tabulated_integral(const std::vector<std::pair<double, double>>& s) {
  double sum = 0.0;
  for (size_t i = 1; i < s.size(); ++i)
    sum += 0.5 * (s[i].second + s[i - 1].second) * (s[i].first - s[i - 1].first);
  return sum;
}

}  // namespace

SpectralShape SpectralShape::clarke_jakes() {
  return SpectralShape(Kind::ClarkeJakes);
}

SpectralShape SpectralShape::rectangular() {
  return SpectralShape(Kind::Rectangular);
}

SpectralShape SpectralShape::tabulated(std::vector<std::pair<double, double>> samples) {
  if (samples.size() < 2)
    throw std::invalid_argument("tabulated shape: need at least two samples");
  for (const auto& [xi, value] : samples) {
    if (!std::isfinite(xi) || !std::isfinite(value))
      throw std::invalid_argument("tabulated shape: non-finite sample");
    if (value < 0.0)
      throw std::invalid_argument("tabulated shape: negative sample value");
  }
  for (size_t i = 1; i < samples.size(); ++i)
    if (!(samples[i].first > samples[i - 1].first))
      throw std::invalid_argument("tabulated shape: grid must be strictly increasing");
  if (samples.front().first != -1.0 || samples.back().first != 1.0)
    throw std::invalid_argument("tabulated shape: grid must span [-1, 1] exactly");
  for (size_t i = 1; i + 1 < samples.size(); ++i)
    if (!(samples[i].second > 0.0))
      throw std::invalid_argument(
          "tabulated shape: interior samples must be strictly positive");

  const double raw = tabulated_integral(samples);
  if (!(raw > 0.0))
    throw std::invalid_argument("tabulated shape: integral must be positive");
  for (auto& [xi, value] : samples) value /= raw;

  SpectralShape shape(Kind::Tabulated);
  shape.samples_ = std::move(samples);
  shape.raw_integral_ = raw;
  shape.rescaled_ = std::fabs(raw - 1.0) > 1e-3;
  return shape;
}

SpectralShape SpectralShape::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("tabulated shape: cannot open '" + path + "'");
  std::vector<std::pair<double, double>> samples;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r\n\f\v") == std::string::npos)
      continue;  // blank or comment-only line
    std::istringstream ss(line);
    double xi, value;
    if (!(ss >> xi >> value))
      throw std::invalid_argument("tabulated shape: " + path + ":" +
                                  std::to_string(lineno) + ": expected 'xi value' pair");
    std::string rest;
    if (ss >> rest)
      throw std::invalid_argument("tabulated shape: " + path + ":" +
                                  std::to_string(lineno) + ": trailing data '" + rest + "'");
    samples.emplace_back(xi, value);
  }
  return tabulated(std::move(samples));
}

double SpectralShape::operator()(double xi) const {
  switch (kind_) {
    case Kind::ClarkeJakes:
      if (std::fabs(xi) > 1.0) return 0.0;
      return 1.0 / (kPi * std::sqrt((1.0 - xi) * (1.0 + xi)));
    case Kind::Rectangular:
      return std::fabs(xi) <= 1.0 ? 0.5 : 0.0;
    case Kind::Tabulated:
      return tabulated_eval(samples_, xi);
  }
  return 0.0;
}

double eval_shape(const SpectralShape& shape, double xi) { return shape(xi); }

double inverse_shape_integral(const SpectralShape& shape) {
  switch (shape.kind()) {
    case SpectralShape::Kind::ClarkeJakes:
      // 1/S~ = pi sqrt(1-xi^2); with xi = sin(theta) the integrand becomes
      // pi cos^2(theta), which is analytic.
      return integrate_adaptive(
          [](double theta) {
            const double c = std::cos(theta);
            return kPi * c * c;
          },
          -0.5 * kPi, 0.5 * kPi, 1e-13, 1e-13);
    case SpectralShape::Kind::Rectangular:
      return 4.0;
    case SpectralShape::Kind::Tabulated: {
      // Per linear segment, integral dx / (y0 + (y1-y0) t) has the closed
      // form (x1-x0) ln(y1/y0) / (y1-y0).
      const auto& s = shape.samples();
      if (s.front().second <= 0.0 || s.back().second <= 0.0)
        throw divergence_error(
            "inverse_shape_integral: shape vanishes at a band edge; the "
            "integral of 1/S~ diverges");
      double sum = 0.0;
      for (size_t i = 1; i < s.size(); ++i) {
        const double dx = s[i].first - s[i - 1].first;
        const double y0 = s[i - 1].second;
        const double y1 = s[i].second;
        if (y0 == y1)
          sum += dx / y0;
        else
          sum += dx * std::log(y1 / y0) / (y1 - y0);
      }
      return sum;
    }
  }
  throw std::logic_error("inverse_shape_integral: unknown shape kind");
}

double integrate_shape(const SpectralShape& shape, double lo, double hi,
                       double abs_tol) {
  if (!(lo <= hi))
    throw std::invalid_argument("integrate_shape: requires lo <= hi");
  lo = std::max(lo, -1.0);
  hi = std::min(hi, 1.0);
  if (lo >= hi) return 0.0;
  switch (shape.kind()) {
    case SpectralShape::Kind::ClarkeJakes:
      // integral of 1/(pi sqrt(1-xi^2)) becomes 1/pi d(theta) after
      // xi = sin(theta); constant integrand, exact for the quadrature.
      return integrate_adaptive([](double) { return 1.0 / kPi; },
                                std::asin(lo), std::asin(hi), abs_tol, 1e-13);
    case SpectralShape::Kind::Rectangular:
      return 0.5 * (hi - lo);
    case SpectralShape::Kind::Tabulated:
      return integrate_adaptive([&shape](double xi) { return shape(xi); },
                                lo, hi, abs_tol, 1e-13);
  }
  throw std::logic_error("integrate_shape: unknown shape kind");
}

DopplerSpec::DopplerSpec(double f, SpectralShape s)
    : f_D(f), shape(std::move(s)) {
  if (!std::isfinite(f_D) || f_D <= 0.0 || f_D >= 0.5)
    throw std::domain_error("DopplerSpec: f_D must lie in (0, 1/2)");
}

double scaled_spectrum(const DopplerSpec& spec, double nu) {
  return spec.shape(nu / spec.f_D) / spec.f_D;
}

}
