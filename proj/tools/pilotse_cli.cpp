// SPDX-License-Identifier: Apache-2.0
//
// pilotse command-line front end.  Subcommands:
//   sweep     generic parameter sweep producing a CSV or JSON table
//   fig       one of the nine stock figure tables
//   optimize  optimal overhead and power split for one operating point
//   verify    self-verification suite (cross-checks and oracles)
//   doppler   physical mobility parameters to normalized Doppler
//
// Exit codes: 0 success, 1 usage error, 2 numerical failure.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pilotse/efficiency.h"
#include "pilotse/errors.h"
#include "pilotse/estimation.h"
#include "pilotse/mimo.h"
#include "pilotse/spectra.h"
#include "pilotse/sweeps.h"
#include "pilotse/verification.h"

namespace {

using namespace pilotse;

std::string format_12g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

SpectralShape parse_shape(const std::string& name) {
  if (name == "clarke-jakes") return SpectralShape::clarke_jakes();
  if (name == "rectangular") return SpectralShape::rectangular();
  if (name.rfind("file:", 0) == 0) {
    SpectralShape shape = SpectralShape::from_file(name.substr(5));
    if (shape.rescaled()) {
      std::cerr << "warning: shape in " << name.substr(5)
                << " integrates to " << format_12g(shape.raw_integral())
                << "; rescaled to unit area\n";
    }
    return shape;
  }
  throw std::invalid_argument(
      "--shape must be clarke-jakes, rectangular or file:<path>");
}

AxisSpec parse_grid(const std::string& text) {
  std::istringstream in(text);
  std::string lo, hi, points, scale;
  if (!std::getline(in, lo, ':') || !std::getline(in, hi, ':') ||
      !std::getline(in, points, ':') || !std::getline(in, scale)) {
    throw std::invalid_argument("--grid must be lo:hi:points:scale");
  }
  AxisSpec spec{};
  try {
    spec.lo = std::stod(lo);
    spec.hi = std::stod(hi);
    spec.points = std::stoi(points);
  } catch (const std::exception&) {
    throw std::invalid_argument("--grid must be lo:hi:points:scale");
  }
  if (scale == "linear") {
    spec.scale = AxisScale::linear;
  } else if (scale == "log") {
    spec.scale = AxisScale::log;
  } else if (scale == "db") {
    spec.scale = AxisScale::db;
  } else {
    throw std::invalid_argument("--grid scale must be linear, log or db");
  }
  return spec;
}

Quantity parse_quantity(const std::string& name) {
  for (Quantity q :
       {Quantity::se_vs_alpha, Quantity::alpha_star_vs_doppler,
        Quantity::alpha_star_vs_snr, Quantity::se_star_vs_doppler,
        Quantity::se_star_vs_snr, Quantity::rho_p_vs_snr,
        Quantity::se_boost_vs_doppler, Quantity::se_boost_vs_snr,
        Quantity::alpha_star_vs_antennas}) {
    if (name == quantity_name(q)) return q;
  }
  throw std::invalid_argument("--quantity: unknown quantity '" + name + "'");
}

std::vector<Method> parse_methods(const std::string& name) {
  if (name == "numeric") return {Method::numeric};
  if (name == "expansion") return {Method::expansion};
  if (name == "both") return {Method::numeric, Method::expansion};
  throw std::invalid_argument("--method must be numeric, expansion or both");
}

// Opens --out for writing, or hands back stdout when no path was given.
std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty()) return std::cout;
  file.open(path, std::ios::binary);
  if (!file) {
    throw std::invalid_argument("--out: cannot open '" + path +
                                "' for writing");
  }
  return file;
}

void emit_table(const SweepRequest& req, const std::vector<SweepRow>& rows,
                const std::string& out_path, const std::string& format) {
  std::ofstream file;
  std::ostream& out = open_output(out_path, file);
  if (format == "csv") {
    write_csv(rows, out);
  } else if (format == "json") {
    write_json(req, rows, out);
  } else {
    throw std::invalid_argument("--format must be csv or json");
  }
}

struct SweepArgs {
  std::string quantity;
  std::string grid;
  std::vector<double> series;
  std::string method = "numeric";
  std::string shape = "clarke-jakes";
  double doppler = 0.02;
  double snr_db = 10.0;
  std::string out;
  std::string format = "csv";
};

int run_sweep_command(const SweepArgs& args) {
  SweepRequest req;
  req.quantity = parse_quantity(args.quantity);
  req.grid = parse_grid(args.grid);
  req.shape = parse_shape(args.shape);
  req.series = args.series;
  req.methods = parse_methods(args.method);
  req.fixed_doppler = args.doppler;
  req.fixed_snr_db = args.snr_db;
  emit_table(req, run_sweep(req), args.out, args.format);
  return 0;
}

struct FigArgs {
  int figure = 0;
  std::string out;
  std::string format = "csv";
};

int run_fig_command(const FigArgs& args) {
  const SweepRequest req = figure_request(args.figure);
  emit_table(req, run_sweep(req), args.out, args.format);
  return 0;
}

struct OptimizeArgs {
  double snr_db = 0.0;
  double doppler = 0.0;
  int block_length = 0;
  std::string shape = "clarke-jakes";
  bool boost = false;
  int n_t = 1;
  int n_r = 1;
  std::string out;
  std::string format = "csv";
};

int run_optimize_command(const OptimizeArgs& args) {
  const SnrLinear snr = SnrLinear::from_db(args.snr_db);
  OverheadSolution sol{};
  if (args.block_length > 0) {
    if (args.n_t != 1 || args.n_r != 1) {
      throw std::invalid_argument(
          "--nt/--nr require a continuous model (--doppler)");
    }
    sol = optimize_overhead(Block{args.block_length}, snr, args.boost);
  } else {
    if (args.n_t < 1 || args.n_r < 1) {
      throw std::invalid_argument("--nt and --nr must be >= 1");
    }
    // Pilots are spent per transmit antenna, so the n_T-antenna overhead
    // problem is the single-antenna one at n_T-fold Doppler with the
    // matching capacity curve.
    const SpectralShape shape = parse_shape(args.shape);
    const Continuous model{DopplerSpec(args.n_t * args.doppler, shape)};
    if (args.n_t == 1 && args.n_r == 1) {
      sol = optimize_overhead(model, snr, args.boost);
    } else {
      sol = optimize_overhead(model, snr, args.boost,
                              mimo_capacity_family({args.n_t, args.n_r}));
    }
  }

  std::ofstream file;
  std::ostream& out = open_output(args.out, file);
  if (args.format == "csv") {
    out << "alpha_star,rho_p_star,rho_d_star,se_star,iterations,converged\n"
        << format_12g(sol.alpha_star) << ',' << format_12g(sol.rho_p_star)
        << ',' << format_12g(sol.rho_d_star) << ',' << format_12g(sol.se_star)
        << ',' << sol.iterations << ','
        << (sol.converged ? "true" : "false") << '\n';
  } else if (args.format == "json") {
    out << "{\n"
        << "  \"alpha_star\": " << format_12g(sol.alpha_star) << ",\n"
        << "  \"rho_p_star\": " << format_12g(sol.rho_p_star) << ",\n"
        << "  \"rho_d_star\": " << format_12g(sol.rho_d_star) << ",\n"
        << "  \"se_star\": " << format_12g(sol.se_star) << ",\n"
        << "  \"iterations\": " << sol.iterations << ",\n"
        << "  \"converged\": " << (sol.converged ? "true" : "false") << "\n"
        << "}\n";
  } else {
    throw std::invalid_argument("--format must be csv or json");
  }
  return 0;
}

struct VerifyArgs {
  std::string level = "full";
  std::uint64_t seed = 0x9e3779b97f4a7c15ull;
  std::string out;
};

int run_verify_command(const VerifyArgs& args) {
  VerifyLevel level;
  if (args.level == "quick") {
    level = VerifyLevel::quick;
  } else if (args.level == "full") {
    level = VerifyLevel::full;
  } else {
    throw std::invalid_argument("--level must be quick or full");
  }
  const VerificationReport report = run_verification(level, args.seed);
  std::ofstream file;
  std::ostream& out = open_output(args.out, file);
  write_report(report, out);
  return report.all_pass() ? 0 : 2;
}

struct DopplerArgs {
  double velocity = 0.0;
  double carrier_hz = 0.0;
  double symbol_rate = 0.0;
};

int run_doppler_command(const DopplerArgs& args) {
  const double f_D =
      doppler_from_physical(args.velocity, args.carrier_hz, args.symbol_rate);
  std::cout << format_12g(f_D) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Pilot-assisted spectral efficiency for Rayleigh fading channels"};
  app.require_subcommand(1);

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Evaluate a quantity over a parameter grid");
  sweep->add_option("--quantity", sweep_args.quantity,
                    "One of: se_vs_alpha, alpha_star_vs_doppler, "
                    "alpha_star_vs_snr, se_star_vs_doppler, se_star_vs_snr, "
                    "rho_p_vs_snr, se_boost_vs_doppler, se_boost_vs_snr, "
                    "alpha_star_vs_antennas")
      ->required();
  sweep->add_option("--grid", sweep_args.grid,
                    "Axis as lo:hi:points:scale with scale linear, log or db")
      ->required();
  sweep->add_option("--series", sweep_args.series,
                    "Secondary parameter values, one curve each: SNR in dB "
                    "when the x-axis is Doppler or overhead, f_D otherwise")
      ->required();
  sweep->add_option("--method", sweep_args.method,
                    "numeric, expansion or both");
  sweep->add_option("--shape", sweep_args.shape,
                    "clarke-jakes, rectangular or file:<path>");
  sweep->add_option("--doppler", sweep_args.doppler,
                    "Normalized Doppler for overhead sweeps");
  sweep->add_option("--snr-db", sweep_args.snr_db,
                    "SNR in dB for antenna sweeps");
  sweep->add_option("--out", sweep_args.out, "Output path (default stdout)");
  sweep->add_option("--format", sweep_args.format, "csv or json");

  FigArgs fig_args;
  CLI::App* fig =
      app.add_subcommand("fig", "Emit the data behind one stock figure");
  fig->add_option("figure", fig_args.figure, "Figure number 1..9")
      ->required()
      ->check(CLI::Range(1, 9));
  fig->add_option("--out", fig_args.out, "Output path (default stdout)");
  fig->add_option("--format", fig_args.format, "csv or json");

  OptimizeArgs opt_args;
  CLI::App* optimize = app.add_subcommand(
      "optimize", "Optimal overhead and power split at one operating point");
  optimize->add_option("--snr-db", opt_args.snr_db, "SNR in dB")->required();
  CLI::Option* opt_doppler = optimize->add_option(
      "--doppler", opt_args.doppler, "Normalized Doppler (continuous model)");
  CLI::Option* opt_block = optimize->add_option(
      "--block-length", opt_args.block_length,
      "Coherence block length in symbols (block model)");
  opt_doppler->excludes(opt_block);
  opt_block->excludes(opt_doppler);
  optimize->add_option("--shape", opt_args.shape,
                       "clarke-jakes, rectangular or file:<path>");
  optimize->add_flag("--boost", opt_args.boost,
                     "Optimize the pilot power boost as well");
  optimize->add_option("--nt", opt_args.n_t, "Transmit antennas");
  optimize->add_option("--nr", opt_args.n_r, "Receive antennas");
  optimize->add_option("--out", opt_args.out, "Output path (default stdout)");
  optimize->add_option("--format", opt_args.format, "csv or json");

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand(
      "verify", "Run the self-verification suite and report each check");
  verify->add_option("--level", verify_args.level, "quick or full");
  verify->add_option("--seed", verify_args.seed,
                     "Monte Carlo seed for the capacity cross-check");
  verify->add_option("--out", verify_args.out, "Output path (default stdout)");

  DopplerArgs doppler_args;
  CLI::App* doppler = app.add_subcommand(
      "doppler", "Convert physical mobility parameters to normalized Doppler");
  doppler->add_option("--velocity", doppler_args.velocity, "Speed in m/s")
      ->required();
  doppler->add_option("--carrier-hz", doppler_args.carrier_hz,
                      "Carrier frequency in Hz")
      ->required();
  doppler->add_option("--symbol-rate", doppler_args.symbol_rate,
                      "Symbol rate in symbols/s")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (sweep->parsed()) return run_sweep_command(sweep_args);
    if (fig->parsed()) return run_fig_command(fig_args);
    if (optimize->parsed()) {
      if (opt_doppler->count() == 0 && opt_block->count() == 0) {
        throw std::invalid_argument(
            "optimize requires --doppler or --block-length");
      }
      return run_optimize_command(opt_args);
    }
    if (verify->parsed()) return run_verify_command(verify_args);
    if (doppler->parsed()) return run_doppler_command(doppler_args);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const numerical_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
