// SPDX-License-Identifier: Apache-2.0
//
// Parameter sweeps producing plot-ready tables: the nine stock figure
// configurations, a generic sweep engine over SNR/Doppler/overhead/antenna
// axes, CSV and JSON serialization, and the conversion from physical
// mobility parameters to normalized Doppler.

#ifndef PILOTSE_SWEEPS_H
#define PILOTSE_SWEEPS_H

#include <iosfwd>
#include <string>
#include <vector>

#include "pilotse/spectra.h"

namespace pilotse {

// What is plotted against what.  Each value corresponds to one of the
// stock figures 1..9, in order.
enum class Quantity {
  se_vs_alpha,            // fig 1: SE against overhead, fixed SNR and f_D
  alpha_star_vs_doppler,  // fig 2: optimal overhead against f_D
  alpha_star_vs_snr,      // fig 3: optimal overhead against SNR
  se_star_vs_doppler,     // fig 4: optimized SE against f_D
  se_star_vs_snr,         // fig 5: optimized SE against SNR, with capacity
  rho_p_vs_snr,           // fig 6: optimal pilot power boost against SNR
  se_boost_vs_doppler,    // fig 7: boosted optimized SE against f_D
  se_boost_vs_snr,        // fig 8: boosted optimized SE, with capacity
  alpha_star_vs_antennas  // fig 9: optimal overhead against n_T = n_R
};

enum class AxisScale { linear, log, db };

struct AxisSpec {
  double lo;
  double hi;
  int points;
  AxisScale scale;
};

// How a y-value is produced.  "numeric" runs the exact optimizer,
// "expansion" the closed-form small-Doppler formula, "equivalent_siso"
// the single-antenna reduction with the scalar capacity (antenna sweeps
// only), "capacity" the perfect-CSI reference curve (SNR sweeps only).
enum class Method { numeric, expansion, equivalent_siso, capacity };

struct SweepRequest {
  Quantity quantity;
  AxisSpec grid;
  SpectralShape shape = SpectralShape::clarke_jakes();
  // Values of the secondary parameter, one curve each: SNR in dB when the
  // x-axis is Doppler or overhead, f_D when the x-axis is SNR or antennas.
  std::vector<double> series;
  std::vector<Method> methods;
  // Doppler spread for overhead sweeps (the only quantity with neither
  // axis nor series in f_D).
  double fixed_doppler = 0.02;
  // SNR for antenna sweeps, in dB.
  double fixed_snr_db = 10.0;
};

struct SweepRow {
  double x;
  std::string series;   // secondary parameter value; empty for references
  std::string method;
  double y;
  std::string clamped;  // "true"/"false" for expansion overheads, else ""
};

// Evaluates the request, one row per (series, method, grid point), ordered
// by series, then method, then grid index.  Deterministic.  Invalid grids
// or parameters raise std::invalid_argument naming the offending field.
std::vector<SweepRow> run_sweep(const SweepRequest& req);

// The stock configuration behind `fig <1..9>`: axes and fixed parameter
// values match the corresponding published curves; ranges not stated
// there are documented defaults.
SweepRequest figure_request(int figure);

// Header line plus one line per row, floats printed to 12 significant
// digits.  Identical input produces byte-identical output.
void write_csv(const std::vector<SweepRow>& rows, std::ostream& out);

// The same rows as an array of records plus a metadata object describing
// the request and the library version.
void write_json(const SweepRequest& req, const std::vector<SweepRow>& rows,
                std::ostream& out);

// f_D = (velocity * carrier_freq / c) / symbol_rate with c the speed of
// light in m/s.  All inputs must be positive; a result at or above 1/2
// cannot be tracked by any pilot spacing and raises aliasing_error.
double doppler_from_physical(double velocity_mps, double carrier_freq_hz,
                             double symbol_rate_hz);

const char* quantity_name(Quantity q);
const char* method_name(Method m);
const char* axis_scale_name(AxisScale s);

}

#endif
