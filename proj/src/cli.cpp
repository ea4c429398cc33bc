#include "hcw/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "hcw/analytic.hpp"
#include "hcw/eigencheck.hpp"
#include "hcw/error.hpp"
#include "hcw/report_io.hpp"
#include "hcw/sepbound.hpp"
#include "hcw/thermo.hpp"
#include "hcw/witness.hpp"

namespace hcw {
namespace {

using nlohmann::json;

struct ModelOptions {
  std::string model = "ising";
  int n = 8;
  double J = 1.0;
  double B = 0.0;
  double spin = 0.5;

  ModelSpec spec() const { return {parse_model(model), n, J, B, spin}; }
};

struct GridOptions {
  double tmin = 0.1;
  double tmax = 5.0;
  int points = 0;  // 0: 200 points per decade

  std::vector<double> grid() const {
    if (points > 0) return geometric_grid(tmin, tmax, static_cast<std::size_t>(points));
    return default_grid(tmin, tmax);
  }
};

struct Common {
  std::string output;
  std::optional<long long> seed;
};

void add_model_options(CLI::App* cmd, ModelOptions& m) {
  cmd->add_option("--model", m.model, "ising, xxx or xx")->capture_default_str();
  cmd->add_option("--n", m.n, "number of sites on the ring")->capture_default_str();
  cmd->add_option("--J", m.J, "coupling")->capture_default_str();
  cmd->add_option("--B", m.B, "transverse field (ising only)")->capture_default_str();
  cmd->add_option("--spin", m.spin, "spin magnitude, 0.5 or 1 (xxx only)")->capture_default_str();
}

void add_grid_options(CLI::App* cmd, GridOptions& g) {
  cmd->add_option("--tmin", g.tmin, "lowest temperature")->capture_default_str();
  cmd->add_option("--tmax", g.tmax, "highest temperature")->capture_default_str();
  cmd->add_option("--points", g.points, "grid points (default: 200 per decade, geometric)");
}

/// "a:b:n" -> n evenly spaced values from a to b; "a" -> {a}.
std::vector<double> parse_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  try {
    if (parts.size() == 1) return {std::stod(parts[0])};
    if (parts.size() == 3) {
      const double a = std::stod(parts[0]);
      const double b = std::stod(parts[1]);
      const int n = std::stoi(parts[2]);
      require(n >= 1, "range needs at least one point");
      if (n == 1) return {a};
      std::vector<double> out(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
      return out;
    }
  } catch (const std::logic_error&) {
  }
  throw InvalidArgument("range '" + text + "' must be a number or start:stop:count");
}

std::vector<double> linear_points(double a, double b, int n) {
  require(n >= 1, "need at least one point");
  if (n == 1) return {a};
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
  return out;
}

void warn(std::ostream& err, const std::string& message) {
  err << json{{"warning", message}}.dump() << '\n';
}

// ---- subcommands -----------------------------------------------------------

void run_thermo(const ModelOptions& m, const GridOptions& g, double k_boltzmann, std::ostream& out) {
  require(k_boltzmann > 0.0, "--kB must be positive");
  const Spectrum spectrum = spectrum_of(m.spec());
  const auto grid = g.grid();
  // Temperatures are read in user units; the core works with k = 1.
  std::vector<double> internal(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) internal[i] = k_boltzmann * grid[i];
  const ThermoCurve curve = thermo_from_spectrum(spectrum, internal);
  CsvWriter csv(out, {"T", "U_per_site", "C_per_site", "logZ_per_site"});
  for (std::size_t i = 0; i < grid.size(); ++i) {
    csv.row({grid[i], curve.u_per_site[i], k_boltzmann * curve.c_per_site[i], curve.log_z_per_site[i]});
  }
}

void write_variance_rows(const std::vector<double>& fields, int period, int restarts, int n, std::ostream& out,
                         std::ostream& err) {
  std::vector<std::string> header{"B", "min_variance_per_site", "theta1", "theta2"};
  if (period == 4) {
    header.push_back("theta3");
    header.push_back("theta4");
  }
  CsvWriter csv(out, header);
  for (double B : fields) {
    const ModelSpec spec{Model::TransverseIsing, n, 1.0, B, 0.5};
    const SeparableBound bound = minimize_variance(spec, period, restarts);
    if (!bound.converged) warn(err, "optimizer hit the iteration cap at B=" + format_number(B));
    std::vector<double> row{B, bound.value_per_site};
    for (const auto& a : bound.arg_angles.angles) row.push_back(a.theta);
    csv.row(row);
  }
}

void run_sepbound(const ModelOptions& m, const std::string& b_text, const std::string& b_range, int b_points,
                  int period, int restarts, std::ostream& out, std::ostream& err) {
  const Model model = parse_model(m.model);
  if (model == Model::TransverseIsing) {
    std::vector<double> fields;
    if (!b_range.empty()) {
      const auto ends = parse_range(b_range + ":2");
      fields = linear_points(ends.front(), ends.back(), b_points);
    } else {
      fields = parse_range(b_text);
    }
    const int n = m.n % period == 0 ? m.n : 4;
    write_variance_rows(fields, period, restarts, n, out, err);
    return;
  }
  ModelSpec spec = m.spec();
  const SeparableBound bound = minimize_energy(spec, restarts);
  if (!bound.converged) warn(err, "optimizer hit the iteration cap");
  CsvWriter csv(out, {"model", "spin", "EB_per_site"});
  csv.row_text({std::string(model_name(model)), format_number(spec.spin), format_number(bound.value_per_site)});
}

void run_analytic(const std::string& which, double B, const GridOptions& g, const QuadratureOptions& quad,
                  std::ostream& out, std::ostream& err) {
  const auto grid = g.grid();
  CsvWriter csv(out, {"T", "value"});
  if (which == "katsura") {
    for (double t : grid) csv.row({t, katsura_heat_capacity({B, quad}, t)});
  } else if (which == "xx") {
    for (double t : grid) csv.row({t, xx_internal_energy(t, quad)});
  } else if (which == "xx-lowt") {
    if (!xx_low_t_in_window(grid.back())) {
      warn(err, "low-temperature xx energy used above T=" + format_number(kXxLowTWindow));
    }
    for (double t : grid) csv.row({t, xx_low_t_energy(t)});
  } else {
    throw InvalidArgument("--which must be katsura, xx or xx-lowt");
  }
}

struct WitnessOptions {
  std::string bound = "variance";
  std::string curve = "katsura";
  std::optional<double> bound_value;
  std::optional<double> e0;
  std::optional<double> eb;
  double gamma = 2.0;
  std::optional<double> gap;
  double window = kDefaultValidityTMax;
  std::string format = "json";
  std::string margins_path;
};

void write_margins(const WitnessReport& report, std::ostream& out) {
  CsvWriter csv(out, {"T", "C", "bound", "margin", "entangled"});
  for (const auto& s : report.region) {
    csv.row_text({format_number(s.temperature), format_number(s.heat_capacity), format_number(s.bound),
                  format_number(s.margin), s.entangled ? "1" : "0"});
  }
}

void run_witness(const ModelOptions& m, const GridOptions& g, const WitnessOptions& w, const Common& common,
                 std::ostream& out) {
  const ModelSpec spec = m.spec();
  const WitnessKind kind = parse_witness_kind(w.bound);
  require(w.format == "json" || w.format == "csv", "--format must be json or csv");

  std::optional<Spectrum> spectrum;
  HeatCapacityCurve curve;
  HeatCapacityFunction exact;
  CurveSource source = CurveSource::ExactDiag;
  std::vector<Measurement> data;
  if (w.curve == "ed") {
    spectrum = spectrum_of(spec);
    curve = heat_capacity_curve(thermo_from_spectrum(*spectrum, g.grid()));
    exact = [s = *spectrum](double t) { return thermo_at(s, t).c_per_site; };
  } else if (w.curve == "katsura") {
    require(spec.model == Model::TransverseIsing, "--curve katsura needs --model ising");
    source = CurveSource::Katsura;
    curve = katsura_curve(spec.B, g.grid());
    exact = [B = spec.B](double t) { return katsura_heat_capacity(B, t); };
  } else if (w.curve.rfind("file=", 0) == 0) {
    source = CurveSource::UserData;
    std::ifstream in(w.curve.substr(5));
    require(static_cast<bool>(in), "cannot open data file '" + w.curve.substr(5) + "'");
    data = read_measurements_csv(in);
  } else {
    throw InvalidArgument("--curve must be ed, katsura or file=PATH");
  }

  WitnessBound bound;
  std::optional<double> window;
  if (kind == WitnessKind::Variance) {
    double value = 0.0;
    if (w.bound_value) {
      value = *w.bound_value;
    } else {
      require(spec.model == Model::TransverseIsing, "variance bound without --bound-value needs --model ising");
      const ModelSpec ring{Model::TransverseIsing, 4, spec.J, spec.B, 0.5};
      value = minimize_variance(ring, 2).value_per_site;
    }
    bound = variance_bound(value);
  } else {
    double e0 = 0.0;
    if (w.e0) {
      e0 = *w.e0;
    } else {
      require(spectrum.has_value(), "--E0 is required unless --curve ed");
      e0 = spectrum->energies.front() / spectrum->n_sites;
    }
    double eb = 0.0;
    if (w.eb) {
      eb = *w.eb;
    } else {
      require(spec.model != Model::TransverseIsing, "--EB is required for the ising model");
      eb = minimize_energy(spec).value_per_site;
    }
    window = w.window;
    if (kind == WitnessKind::Gapless) {
      bound = gapless_bound(e0, eb, w.gamma);
    } else {
      require(w.gap.has_value(), "--gap is required for the gapped bound");
      bound = gapped_bound(e0, eb, *w.gap);
    }
  }

  const WitnessReport report = source == CurveSource::UserData
                                   ? witness_from_measurements(data, bound, window)
                                   : assess_witness(bound, curve, source, exact, window);
  if (w.format == "json") {
    out << to_json(report, common.seed).dump(2) << '\n';
  } else {
    write_margins(report, out);
  }
  if (!w.margins_path.empty()) {
    std::ofstream margins(w.margins_path);
    require(static_cast<bool>(margins), "cannot write '" + w.margins_path + "'");
    write_margins(report, margins);
  }
}

void write_region(const std::vector<double>& fields, const GridOptions& g, std::ostream& out) {
  const auto points = critical_temperature_curve(fields, g.grid());
  CsvWriter csv(out, {"B", "T_c"});
  for (const auto& p : points) {
    csv.row_text({format_number(p.B), p.critical_temperature ? format_number(*p.critical_temperature) : ""});
  }
}

void run_eigencheck(int n, double B, int restarts, std::optional<double> tol, const Common& common,
                    std::ostream& out) {
  OverlapOptions options;
  options.restarts = restarts;
  const EigencheckReport report = eigencheck_ising(n, B, tol, options);
  out << to_json(report, common.seed).dump(2) << '\n';
}

void run_repro(int figure, std::ostream& out, std::ostream& err) {
  switch (figure) {
    case 1:
      write_variance_rows(linear_points(0.0, 6.0, 121), 2, 8, 4, out, err);
      return;
    case 2: {
      GridOptions g{0.01, 20.0, 0};
      write_region(linear_points(0.1, 4.0, 40), g, out);
      return;
    }
    case 3: {
      const double bound = minimize_variance({Model::TransverseIsing, 4, 1.0, 2.0, 0.5}, 2).value_per_site;
      const auto grid = geometric_grid(0.1, 5.0, 200);
      const auto curve = katsura_curve(2.0, grid);
      CsvWriter csv(out, {"T", "C_per_site", "witness"});
      for (std::size_t i = 0; i < grid.size(); ++i) {
        csv.row({grid[i], curve.c_per_site[i], bound / (grid[i] * grid[i])});
      }
      return;
    }
    default:
      throw InvalidArgument("--figure must be 1, 2 or 3");
  }
}

void run_dump(const ModelOptions& m, std::ostream& out) {
  const OperatorMatrix h = build_hamiltonian(m.spec());
  for (Eigen::Index r = 0; r < h.rows(); ++r) {
    for (Eigen::Index c = 0; c < h.cols(); ++c) {
      if (c) out << ',';
      out << format_number(h(r, c));
    }
    out << '\n';
  }
}

void run_check_report(const std::string& path, std::ostream& out) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed JSON: ") + e.what());
  }
  const WitnessReport report = witness_report_from_json(doc);
  out << "valid witness report: " << report.region.size() << " samples, T_c="
      << (report.critical_temperature ? format_number(*report.critical_temperature) : "none") << '\n';
}

void print_error(std::ostream& err, const std::string& kind, const std::string& message, int code) {
  err << json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heat-capacity entanglement witnesses for spin chains", "hcw"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--output,-o", common.output, "write results to this file instead of stdout");
  app.add_option("--seed", common.seed, "recorded in JSON outputs; all computations are deterministic");

  ModelOptions thermo_model;
  GridOptions thermo_grid;
  double k_boltzmann = 1.0;
  auto* thermo = app.add_subcommand("thermo", "U, C, log Z per site from exact diagonalization");
  add_model_options(thermo, thermo_model);
  add_grid_options(thermo, thermo_grid);
  thermo->add_option("--kB", k_boltzmann, "Boltzmann constant in output units")->capture_default_str();

  ModelOptions sep_model;
  sep_model.n = 4;
  std::string sep_b = "2";
  std::string sep_b_range;
  int sep_b_points = 25;
  int sep_period = 2;
  int sep_restarts = 8;
  auto* sepbound = app.add_subcommand("sepbound", "separable variance (ising) or energy (xxx, xx) bounds");
  sepbound->add_option("--model", sep_model.model)->capture_default_str();
  sepbound->add_option("--n", sep_model.n, "sites (energy minimization; variance uses a 4-site ring)")
      ->capture_default_str();
  sepbound->add_option("--J", sep_model.J)->capture_default_str();
  sepbound->add_option("--spin", sep_model.spin)->capture_default_str();
  sepbound->add_option("--B", sep_b, "field value or start:stop:count")->capture_default_str();
  sepbound->add_option("--B-range", sep_b_range, "start:stop (with --B-points)");
  sepbound->add_option("--B-points", sep_b_points)->capture_default_str();
  sepbound->add_option("--period", sep_period, "2 or 4")->capture_default_str();
  sepbound->add_option("--restarts", sep_restarts)->capture_default_str();

  std::string which = "katsura";
  double analytic_b = 2.0;
  GridOptions analytic_grid;
  auto* analytic = app.add_subcommand("analytic", "infinite-chain closed forms");
  analytic->add_option("--which", which, "katsura, xx or xx-lowt")->capture_default_str();
  analytic->add_option("--B", analytic_b)->capture_default_str();
  add_grid_options(analytic, analytic_grid);
  QuadratureOptions analytic_quad;
  analytic->add_option("--abs-tol", analytic_quad.abs_tol)->capture_default_str();
  analytic->add_option("--rel-tol", analytic_quad.rel_tol)->capture_default_str();
  analytic->add_option("--max-subdivisions", analytic_quad.max_subdivisions)->capture_default_str();

  ModelOptions witness_model;
  GridOptions witness_grid{0.02, 20.0, 0};
  WitnessOptions wopt;
  auto* witness = app.add_subcommand("witness", "compare a heat-capacity curve with a separable bound");
  add_model_options(witness, witness_model);
  add_grid_options(witness, witness_grid);
  witness->add_option("--bound", wopt.bound, "variance, gapless or gapped")->capture_default_str();
  witness->add_option("--curve", wopt.curve, "ed, katsura or file=PATH (CSV T,C[,sigma_C])")->capture_default_str();
  witness->add_option("--bound-value", wopt.bound_value, "variance bound constant (default: minimized)");
  witness->add_option("--E0", wopt.e0, "ground energy per site");
  witness->add_option("--EB", wopt.eb, "separable energy bound per site");
  witness->add_option("--gamma", wopt.gamma, "low-T exponent of C ~ T^(gamma-1) (gapless bound)")->capture_default_str();
  witness->add_option("--gap", wopt.gap, "excitation gap (gapped bound)");
  witness->add_option("--window", wopt.window, "upper end of the low-T validity window")->capture_default_str();
  witness->add_option("--format", wopt.format, "json or csv")->capture_default_str();
  witness->add_option("--margins", wopt.margins_path, "also write the margin CSV here");

  std::string region_b;
  GridOptions region_grid{0.01, 20.0, 0};
  auto* region = app.add_subcommand("region", "critical temperature T_c(B) of the transverse Ising ring");
  region->add_option("--B", region_b, "start:stop:count")->required();
  add_grid_options(region, region_grid);

  int check_n = 6;
  double check_b = 1.0;
  int check_restarts = 64;
  std::optional<double> check_tol;
  auto* eigencheck = app.add_subcommand("eigencheck", "search every Ising eigenspace for product states");
  eigencheck->add_option("--n", check_n)->capture_default_str();
  eigencheck->add_option("--B", check_b)->capture_default_str();
  eigencheck->add_option("--restarts", check_restarts)->capture_default_str();
  eigencheck->add_option("--degeneracy-tol", check_tol);

  int figure = 1;
  auto* repro = app.add_subcommand("repro", "data behind the bound, T_c line and B=2 curves");
  repro->add_option("--figure", figure, "1: bound vs B, 2: T_c(B), 3: C and witness at B=2")->required();

  ModelOptions dump_model;
  dump_model.n = 2;
  auto* dump = app.add_subcommand("dump-hamiltonian", "row-major CSV of the dense Hamiltonian");
  add_model_options(dump, dump_model);

  std::string report_path;
  auto* check_report = app.add_subcommand("check-report", "validate a witness JSON report");
  check_report->add_option("--input", report_path)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitSuccess;
  } catch (const CLI::ParseError& e) {
    print_error(err, "invalid_argument", e.what(), kExitInvalidArguments);
    return kExitInvalidArguments;
  }

  std::ostringstream buffer;
  try {
    if (*thermo) run_thermo(thermo_model, thermo_grid, k_boltzmann, buffer);
    if (*sepbound) run_sepbound(sep_model, sep_b, sep_b_range, sep_b_points, sep_period, sep_restarts, buffer, err);
    if (*analytic) run_analytic(which, analytic_b, analytic_grid, analytic_quad, buffer, err);
    if (*witness) run_witness(witness_model, witness_grid, wopt, common, buffer);
    if (*region) write_region(parse_range(region_b), region_grid, buffer);
    if (*eigencheck) run_eigencheck(check_n, check_b, check_restarts, check_tol, common, buffer);
    if (*repro) run_repro(figure, buffer, err);
    if (*dump) run_dump(dump_model, buffer);
    if (*check_report) run_check_report(report_path, buffer);
  } catch (const InvalidArgument& e) {
    print_error(err, "invalid_argument", e.what(), kExitInvalidArguments);
    return kExitInvalidArguments;
  } catch (const NumericalFailure& e) {
    print_error(err, "numerical_failure", e.what(), kExitNumericalFailure);
    return kExitNumericalFailure;
  } catch (const std::exception& e) {
    print_error(err, "numerical_failure", e.what(), kExitNumericalFailure);
    return kExitNumericalFailure;
  }

  if (common.output.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(common.output, std::ios::binary);
    if (!file) {
      print_error(err, "invalid_argument", "cannot write '" + common.output + "'", kExitInvalidArguments);
      return kExitInvalidArguments;
    }
    file << buffer.str();
  }
  return kExitSuccess;
}

}  // namespace hcw
