// SPDX-License-Identifier: Apache-2.0
//
// Normalized Doppler spectral shapes bandlimited to [-1, 1]: the classical
// Clarke-Jakes U-shape, the rectangular (lowpass) shape, and tabulated
// shapes loaded from user data.  Shapes integrate to one over [-1, 1].

#ifndef PILOTSE_SPECTRA_H
#define PILOTSE_SPECTRA_H

#include <string>
#include <utility>
#include <vector>

namespace pilotse {

class SpectralShape {
public:
  enum class Kind { ClarkeJakes, Rectangular, Tabulated };

  static SpectralShape clarke_jakes();
  static SpectralShape rectangular();

  // Piecewise-linear shape through the given (xi, value) samples.  The grid
  // must be strictly increasing, start at -1 and end at +1, with positive
  // values at every interior knot (endpoint values may be zero).  Values
  // are rescaled so the shape integrates to one; if the raw integral
  // deviates from one by more than 1e-3 the shape is flagged as rescaled.
  static SpectralShape tabulated(std::vector<std::pair<double, double>> samples);

  // Parses a tabulated shape from a text file: one "xi value" pair per
  // line, whitespace separated, '#' starts a comment.
  static SpectralShape from_file(const std::string& path);

  Kind kind() const { return kind_; }

  // S~(xi); zero outside [-1, 1].  Clarke-Jakes diverges at xi = +-1 and
  // evaluates to +infinity there.
  double operator()(double xi) const;

  // Tabulated samples after rescaling; empty for the built-in shapes.
  const std::vector<std::pair<double, double>>& samples() const { return samples_; }

  bool rescaled() const { return rescaled_; }
  double raw_integral() const { return raw_integral_; }

private:
  explicit SpectralShape(Kind kind) : kind_(kind) {}

  Kind kind_;
  std::vector<std::pair<double, double>> samples_;
  bool rescaled_ = false;
  double raw_integral_ = 1.0;
};

// Free-function spelling of shape evaluation.
double eval_shape(const SpectralShape& shape, double xi);

// integral over [-1, 1] of 1/S~(xi).  Diverges (and throws
// divergence_error) when the shape vanishes at its band edges.
double inverse_shape_integral(const SpectralShape& shape);

// integral of S~ over [lo, hi] within [-1, 1]; used to verify
// normalization and endpoint integrability.  The Clarke-Jakes singularity
// is removed with the substitution xi = sin(theta).
double integrate_shape(const SpectralShape& shape, double lo, double hi,
                       double abs_tol = 1e-12);

// A concrete Doppler spectrum: maximum normalized frequency f_D paired
// with a spectral shape.  Feasible pilot overheads require f_D < 1/2.
struct DopplerSpec {
  DopplerSpec(double f_D, SpectralShape shape);

  double f_D;
  SpectralShape shape;
};

// S_H(nu) = (1/f_D) S~(nu / f_D); integrates to one over [-f_D, f_D].
double scaled_spectrum(const DopplerSpec& spec, double nu);

}

#endif
