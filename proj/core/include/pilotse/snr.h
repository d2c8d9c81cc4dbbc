// SPDX-License-Identifier: Apache-2.0

#ifndef PILOTSE_SNR_H
#define PILOTSE_SNR_H

#include <cmath>
#include <stdexcept>

namespace pilotse {

// Linear signal-to-noise ratio P/N0.  All library math runs on the linear
// scale; dB enters and leaves only through this type.  Zero is admitted as
// the degenerate no-signal value (it arises naturally as the effective SNR
// of a useless channel estimate); negative or non-finite values are not.
class SnrLinear {
public:
  explicit SnrLinear(double value) : value_(value) {
    if (!std::isfinite(value) || value < 0.0)
      throw std::domain_error("SnrLinear: value must be finite and >= 0");
  }

  static SnrLinear from_db(double db) {
    return SnrLinear(std::pow(10.0, db / 10.0));
  }

  double value() const { return value_; }

  double db() const {
    if (value_ <= 0.0)
      throw std::domain_error("SnrLinear: dB of zero SNR is undefined");
    return 10.0 * std::log10(value_);
  }

private:
  double value_;
};

}

#endif
