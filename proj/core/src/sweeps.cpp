// SPDX-License-Identifier: Apache-2.0

#include "pilotse/sweeps.h"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "pilotse/efficiency.h"
#include "pilotse/errors.h"
#include "pilotse/expansions.h"
#include "pilotse/mimo.h"
#include "pilotse/special_functions.h"
#include "pilotse/version.h"

namespace pilotse {

namespace {

std::string format_g(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string format_g12(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<double> axis_values(const AxisSpec& grid) {
  std::vector<double> xs(grid.points);
  const double span = grid.hi - grid.lo;
  for (int i = 0; i < grid.points; ++i) {
    const double t = i / static_cast<double>(grid.points - 1);
    xs[i] = grid.scale == AxisScale::log
                ? std::exp(std::log(grid.lo) + t * (std::log(grid.hi) -
                                                    std::log(grid.lo)))
                : grid.lo + t * span;
  }
  xs.front() = grid.lo;
  xs.back() = grid.hi;
  return xs;
}

bool x_axis_is_snr(Quantity q) {
  return q == Quantity::alpha_star_vs_snr || q == Quantity::se_star_vs_snr ||
         q == Quantity::rho_p_vs_snr || q == Quantity::se_boost_vs_snr;
}

bool x_axis_is_doppler(Quantity q) {
  return q == Quantity::alpha_star_vs_doppler ||
         q == Quantity::se_star_vs_doppler ||
         q == Quantity::se_boost_vs_doppler;
}

bool method_applies(Quantity q, Method m) {
  switch (m) {
    case Method::numeric:
    case Method::expansion:
      return true;
    case Method::equivalent_siso:
      return q == Quantity::alpha_star_vs_antennas;
    case Method::capacity:
      return q == Quantity::se_star_vs_snr || q == Quantity::se_boost_vs_snr;
  }
  return false;
}

void require_doppler(double f_D, const char* field) {
  if (!std::isfinite(f_D) || !(f_D > 0.0) || !(f_D < 0.5)) {
    throw std::invalid_argument(std::string(field) +
                                ": Doppler spread must lie in (0, 1/2)");
  }
}

void validate(const SweepRequest& req) {
  if (req.grid.points < 2) {
    throw std::invalid_argument("grid: need at least 2 points");
  }
  if (!std::isfinite(req.grid.lo) || !std::isfinite(req.grid.hi) ||
      !(req.grid.lo < req.grid.hi)) {
    throw std::invalid_argument("grid: lo must be finite and below hi");
  }
  if (req.grid.scale == AxisScale::log && !(req.grid.lo > 0.0)) {
    throw std::invalid_argument("grid: log scale needs lo > 0");
  }
  if (req.series.empty()) {
    throw std::invalid_argument("series: need at least one curve value");
  }
  if (req.methods.empty()) {
    throw std::invalid_argument("methods: need at least one method");
  }
  for (Method m : req.methods) {
    if (!method_applies(req.quantity, m)) {
      throw std::invalid_argument(std::string("methods: ") + method_name(m) +
                                  " does not apply to " +
                                  quantity_name(req.quantity));
    }
  }

  const Quantity q = req.quantity;
  if (x_axis_is_doppler(q)) {
    require_doppler(req.grid.lo, "grid");
    require_doppler(req.grid.hi, "grid");
  } else if (q == Quantity::se_vs_alpha) {
    require_doppler(req.fixed_doppler, "fixed_doppler");
    if (req.grid.lo < 2.0 * req.fixed_doppler || req.grid.hi > 1.0) {
      throw std::invalid_argument(
          "grid: overhead must lie within [2 f_D, 1]");
    }
  } else if (q == Quantity::alpha_star_vs_antennas) {
    if (req.grid.scale != AxisScale::linear) {
      throw std::invalid_argument("grid: antenna axis must be linear");
    }
    for (double x : axis_values(req.grid)) {
      if (std::abs(x - std::round(x)) > 1e-9 || x < 1.0) {
        throw std::invalid_argument(
            "grid: antenna counts must be positive integers");
      }
    }
  }

  if (x_axis_is_snr(q) || q == Quantity::alpha_star_vs_antennas) {
    for (double v : req.series) {
      require_doppler(v, "series");
    }
    if (q == Quantity::alpha_star_vs_antennas) {
      for (double v : req.series) {
        if (req.grid.hi * v >= 0.5) {
          throw std::invalid_argument(
              "series: n_T f_D reaches 1/2 at the top of the antenna axis");
        }
      }
    }
  } else {
    for (double v : req.series) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("series: SNR values must be finite");
      }
    }
  }
}

// One evaluated (x, y, clamped) triple.
struct Point {
  double y = 0.0;
  std::string clamped;
};

Point evaluate(Quantity q, Method m, const SpectralShape& shape, double x,
               double series_value, double fixed_doppler,
               double fixed_snr_db) {
  Point p;
  switch (q) {
    case Quantity::se_vs_alpha: {
      const SnrLinear snr = SnrLinear::from_db(series_value);
      const Continuous model{DopplerSpec(fixed_doppler, shape)};
      if (m == Method::numeric) {
        p.y = pilot_se(model, snr, x, PowerAllocation::unboosted());
      } else {
        p.y = se_quadratic_model(shape, snr, x, fixed_doppler);
      }
      break;
    }
    case Quantity::alpha_star_vs_doppler:
    case Quantity::alpha_star_vs_snr: {
      const bool x_is_snr = q == Quantity::alpha_star_vs_snr;
      const SnrLinear snr = SnrLinear::from_db(x_is_snr ? x : series_value);
      const double f_D = x_is_snr ? series_value : x;
      if (m == Method::numeric) {
        p.y = optimize_overhead(Continuous{DopplerSpec(f_D, shape)}, snr,
                                false)
                  .alpha_star;
      } else {
        const ExpansionResult r = overhead_expansion(shape, snr, f_D);
        p.y = r.value;
        p.clamped = r.clamped ? "true" : "false";
      }
      break;
    }
    case Quantity::se_star_vs_doppler:
    case Quantity::se_star_vs_snr: {
      const bool x_is_snr = q == Quantity::se_star_vs_snr;
      const SnrLinear snr = SnrLinear::from_db(x_is_snr ? x : series_value);
      const double f_D = x_is_snr ? series_value : x;
      if (m == Method::numeric) {
        p.y = optimize_overhead(Continuous{DopplerSpec(f_D, shape)}, snr,
                                false)
                  .se_star;
      } else {
        p.y = se_expansion_no_boost(shape, snr, f_D);
      }
      break;
    }
    case Quantity::rho_p_vs_snr: {
      const SnrLinear snr = SnrLinear::from_db(x);
      const double f_D = series_value;
      if (m == Method::numeric) {
        p.y = optimize_overhead(Continuous{DopplerSpec(f_D, shape)}, snr,
                                true)
                  .rho_p_star;
      } else {
        p.y = power_allocation_expansion(snr, f_D).rho_p;
      }
      break;
    }
    case Quantity::se_boost_vs_doppler:
    case Quantity::se_boost_vs_snr: {
      const bool x_is_snr = q == Quantity::se_boost_vs_snr;
      const SnrLinear snr = SnrLinear::from_db(x_is_snr ? x : series_value);
      const double f_D = x_is_snr ? series_value : x;
      if (m == Method::numeric) {
        p.y = optimize_overhead(Continuous{DopplerSpec(f_D, shape)}, snr,
                                true)
                  .se_star;
      } else {
        p.y = se_expansion_boost(snr, f_D);
      }
      break;
    }
    case Quantity::alpha_star_vs_antennas: {
      const SnrLinear snr = SnrLinear::from_db(fixed_snr_db);
      const double f_D = series_value;
      const int n = static_cast<int>(std::lround(x));
      const Continuous equivalent{
          DopplerSpec(static_cast<double>(n) * f_D, shape)};
      if (m == Method::numeric) {
        p.y = optimize_overhead(equivalent, snr, false,
                                mimo_capacity_family({n, n}))
                  .alpha_star;
      } else if (m == Method::equivalent_siso) {
        p.y = optimize_overhead(equivalent, snr, false).alpha_star;
      } else {
        const ExpansionResult r =
            mimo_overhead_expansion(shape, snr, f_D, n, n);
        p.y = r.value;
        p.clamped = r.clamped ? "true" : "false";
      }
      break;
    }
  }
  return p;
}

}

const char* quantity_name(Quantity q) {
  switch (q) {
    case Quantity::se_vs_alpha: return "se_vs_alpha";
    case Quantity::alpha_star_vs_doppler: return "alpha_star_vs_doppler";
    case Quantity::alpha_star_vs_snr: return "alpha_star_vs_snr";
    case Quantity::se_star_vs_doppler: return "se_star_vs_doppler";
    case Quantity::se_star_vs_snr: return "se_star_vs_snr";
    case Quantity::rho_p_vs_snr: return "rho_p_vs_snr";
    case Quantity::se_boost_vs_doppler: return "se_boost_vs_doppler";
    case Quantity::se_boost_vs_snr: return "se_boost_vs_snr";
    case Quantity::alpha_star_vs_antennas: return "alpha_star_vs_antennas";
  }
  return "unknown";
}

const char* method_name(Method m) {
  switch (m) {
    case Method::numeric: return "numeric";
    case Method::expansion: return "expansion";
    case Method::equivalent_siso: return "equivalent-siso";
    case Method::capacity: return "capacity";
  }
  return "unknown";
}

const char* axis_scale_name(AxisScale s) {
  switch (s) {
    case AxisScale::linear: return "linear";
    case AxisScale::log: return "log";
    case AxisScale::db: return "db";
  }
  return "unknown";
}

std::vector<SweepRow> run_sweep(const SweepRequest& req) {
  validate(req);
  const std::vector<double> xs = axis_values(req.grid);
  std::vector<SweepRow> rows;
  rows.reserve(req.series.size() * req.methods.size() * xs.size());

  for (double v : req.series) {
    const std::string series_label = format_g(v);
    for (Method m : req.methods) {
      if (m == Method::capacity) {
        continue;  // reference curve emitted once, below
      }
      for (double x : xs) {
        const Point p = evaluate(req.quantity, m, req.shape, x, v,
                                 req.fixed_doppler, req.fixed_snr_db);
        rows.push_back(SweepRow{x, series_label, method_name(m), p.y,
                                p.clamped});
      }
    }
  }
  for (Method m : req.methods) {
    if (m != Method::capacity) {
      continue;
    }
    for (double x : xs) {
      rows.push_back(SweepRow{
          x, "", method_name(m),
          capacity_csi(SnrLinear::from_db(x)), ""});
    }
  }
  return rows;
}

SweepRequest figure_request(int figure) {
  // Fixed parameters follow the published curves; axis ranges and point
  // counts not stated there are documented defaults.
  SweepRequest req;
  switch (figure) {
    case 1:
      req.quantity = Quantity::se_vs_alpha;
      req.grid = AxisSpec{0.04, 1.0, 193, AxisScale::linear};
      req.series = {10.0};
      req.methods = {Method::numeric};
      req.fixed_doppler = 0.02;
      break;
    case 2:
      req.quantity = Quantity::alpha_star_vs_doppler;
      req.grid = AxisSpec{1e-4, 0.05, 40, AxisScale::log};
      req.series = {0.0, 10.0};
      req.methods = {Method::numeric, Method::expansion};
      break;
    case 3:
      req.quantity = Quantity::alpha_star_vs_snr;
      req.grid = AxisSpec{0.0, 20.0, 41, AxisScale::db};
      req.series = {0.001, 0.02};
      req.methods = {Method::numeric, Method::expansion};
      break;
    case 4:
      req.quantity = Quantity::se_star_vs_doppler;
      req.grid = AxisSpec{1e-4, 0.05, 40, AxisScale::log};
      req.series = {10.0};
      req.methods = {Method::numeric, Method::expansion};
      break;
    case 5:
      req.quantity = Quantity::se_star_vs_snr;
      req.grid = AxisSpec{0.0, 20.0, 41, AxisScale::db};
      req.series = {0.001, 0.02};
      req.methods = {Method::numeric, Method::expansion, Method::capacity};
      break;
    case 6:
      req.quantity = Quantity::rho_p_vs_snr;
      req.grid = AxisSpec{0.0, 20.0, 41, AxisScale::db};
      req.series = {0.001, 0.02};
      req.methods = {Method::numeric, Method::expansion};
      break;
    case 7:
      req.quantity = Quantity::se_boost_vs_doppler;
      req.grid = AxisSpec{1e-4, 0.05, 40, AxisScale::log};
      req.series = {10.0};
      req.methods = {Method::numeric, Method::expansion};
      break;
    case 8:
      req.quantity = Quantity::se_boost_vs_snr;
      req.grid = AxisSpec{0.0, 20.0, 41, AxisScale::db};
      req.series = {0.001, 0.02};
      req.methods = {Method::numeric, Method::expansion, Method::capacity};
      break;
    case 9:
      req.quantity = Quantity::alpha_star_vs_antennas;
      req.grid = AxisSpec{1.0, 8.0, 8, AxisScale::linear};
      req.shape = SpectralShape::rectangular();
      req.series = {0.001, 0.01};
      req.methods = {Method::numeric, Method::equivalent_siso,
                     Method::expansion};
      req.fixed_snr_db = 10.0;
      break;
    default:
      throw std::invalid_argument("figure: must be between 1 and 9");
  }
  return req;
}

void write_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "x,series,method,y,clamped\n";
  for (const SweepRow& row : rows) {
    out << format_g12(row.x) << ',' << row.series << ',' << row.method << ','
        << format_g12(row.y) << ',' << row.clamped << '\n';
  }
}

void write_json(const SweepRequest& req, const std::vector<SweepRow>& rows,
                std::ostream& out) {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json meta;
  meta["quantity"] = quantity_name(req.quantity);
  meta["shape"] = req.shape.kind() == SpectralShape::Kind::ClarkeJakes
                      ? "clarke-jakes"
                      : req.shape.kind() == SpectralShape::Kind::Rectangular
                            ? "rectangular"
                            : "tabulated";
  meta["grid"] = {{"lo", req.grid.lo},
                  {"hi", req.grid.hi},
                  {"points", req.grid.points},
                  {"scale", axis_scale_name(req.grid.scale)}};
  meta["series"] = req.series;
  nlohmann::ordered_json methods = nlohmann::ordered_json::array();
  for (Method m : req.methods) {
    methods.push_back(method_name(m));
  }
  meta["methods"] = methods;
  meta["fixed_doppler"] = req.fixed_doppler;
  meta["fixed_snr_db"] = req.fixed_snr_db;
  meta["library_version"] = version();
  doc["metadata"] = meta;

  nlohmann::ordered_json out_rows = nlohmann::ordered_json::array();
  for (const SweepRow& row : rows) {
    nlohmann::ordered_json r;
    r["x"] = row.x;
    r["series"] = row.series;
    r["method"] = row.method;
    r["y"] = row.y;
    if (row.clamped.empty()) {
      r["clamped"] = nullptr;
    } else {
      r["clamped"] = row.clamped == "true";
    }
    out_rows.push_back(r);
  }
  doc["rows"] = out_rows;
  out << doc.dump(2) << '\n';
}

double doppler_from_physical(double velocity_mps, double carrier_freq_hz,
                             double symbol_rate_hz) {
  if (!std::isfinite(velocity_mps) || velocity_mps <= 0.0) {
    throw std::invalid_argument("velocity must be positive");
  }
  if (!std::isfinite(carrier_freq_hz) || carrier_freq_hz <= 0.0) {
    throw std::invalid_argument("carrier frequency must be positive");
  }
  if (!std::isfinite(symbol_rate_hz) || symbol_rate_hz <= 0.0) {
    throw std::invalid_argument("symbol rate must be positive");
  }
  constexpr double kSpeedOfLight = 299792458.0;
  const double f_D =
      velocity_mps * carrier_freq_hz / (kSpeedOfLight * symbol_rate_hz);
  if (f_D >= 0.5) {
    throw aliasing_error(
        "normalized Doppler reaches 1/2; the fading cannot be tracked at "
        "any pilot spacing");
  }
  return f_D;
}

}
