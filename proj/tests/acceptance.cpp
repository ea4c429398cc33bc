// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "free_fermion.hpp"
#include "hcw/analytic.hpp"
#include "hcw/eigencheck.hpp"
#include "hcw/sepbound.hpp"
#include "hcw/thermo.hpp"
#include "hcw/witness.hpp"

using namespace hcw;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> notes;  // extra diagnostic lines

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("violated: " + what);
    }
  }
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

ModelSpec ising(int n, double B) { return {Model::TransverseIsing, n, 1.0, B, 0.5}; }

double variance_bound_at(double B, int period = 2) {
  return minimize_variance(ising(4, B), period).value_per_site;
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const double v = variance_bound_at(2.0);
  const double elapsed = seconds_since(start);
  o.require(std::abs(v - 0.4197) <= 5e-4, "|bound(B=2) - 0.4197| <= 5e-4");
  o.require(elapsed < 5.0, "runtime < 5 s");
  o.detail = fmt("bound(B=2) = %.10f, |diff| = %.2e, runtime %.3f s", v, std::abs(v - 0.4197), elapsed);
  return o;
}

Outcome criterion2() {
  Outcome o;
  const double zero = variance_bound_at(0.0);
  o.require(std::abs(zero) <= 1e-9, "|bound(B=0)| <= 1e-9");
  double worst_asymptote = 0;
  for (double B : {5.0, 6.0, 8.0, 10.0, 20.0}) worst_asymptote = std::max(worst_asymptote, std::abs(variance_bound_at(B) - 1.0));
  o.require(worst_asymptote <= 1e-3, "|bound(B>=5) - 1| <= 1e-3");
  const double ref = variance_bound_at(3.5);
  double worst_flat = 0;
  for (double B = 3.5; B <= 10.0 + 1e-12; B += 0.125) {
    worst_flat = std::max(worst_flat, std::abs(variance_bound_at(B) - ref) / ref);
  }
  o.require(worst_flat < 1e-3, "relative change < 1e-3 for B >= 3.5");
  o.detail = fmt("bound(0) = %.2e; max |bound-1| over B in {5,6,8,10,20} = %.2e; max rel. change on [3.5,10] = %.2e",
                 zero, worst_asymptote, worst_flat);
  return o;
}

Outcome criterion3() {
  Outcome o;
  double worst = 0;
  std::string values;
  for (double B : {0.5, 1.0, 2.0, 3.0}) {
    const double p2 = variance_bound_at(B, 2), p4 = variance_bound_at(B, 4);
    worst = std::max(worst, std::abs(p4 - p2));
    values += fmt(" B=%.1f: %.8f/%.8f", B, p2, p4);
  }
  o.require(worst <= 1e-4, "|period4 - period2| <= 1e-4");
  o.detail = fmt("max |p4 - p2| = %.2e;", worst) + values;
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const auto grid = geometric_grid(0.5, 5.0, 61);
  std::string summary;
  for (double B : {0.5, 1.0, 2.0}) {
    std::vector<double> katsura;
    for (double t : grid) katsura.push_back(katsura_heat_capacity(B, t));
    std::vector<double> errors;
    for (int n : {8, 10, 12}) {
      const ThermoCurve ed = thermo_from_spectrum(spectrum_of(ising(n, B)), grid);
      double worst = 0;
      for (std::size_t k = 0; k < grid.size(); ++k) {
        worst = std::max(worst, std::abs(ed.c_per_site[k] - katsura[k]) / katsura[k]);
      }
      errors.push_back(worst);
    }
    o.require(errors[2] < 0.02, fmt("B=%.1f: sup relative error at N=12 < 2%%", B));
    o.require(errors[1] < errors[0] && errors[2] < errors[1], fmt("B=%.1f: error shrinks over N=8,10,12", B));
    summary += fmt(" B=%.1f: %.4f/%.4f/%.4f;", B, errors[0], errors[1], errors[2]);
  }
  const double elapsed = seconds_since(start);
  o.require(elapsed < 60.0, "runtime < 60 s");
  o.detail = "sup rel. error vs squared-dispersion integral at N=8/10/12:" + summary + fmt(" runtime %.1f s", elapsed);

  // Diagnostics: the exact finite-ring solution shows the residual error is
  // finite-size, and the printed (un-squared) integrand does not converge.
  for (double B : {0.5, 1.0, 2.0}) {
    int needed = 0;
    for (int n = 12; n <= 512 && needed == 0; n += 2) {
      double worst = 0;
      for (double t : grid) {
        const double exact = testing::free_fermion_heat_capacity(n, B, t);
        worst = std::max(worst, std::abs(exact - katsura_heat_capacity(B, t)) / katsura_heat_capacity(B, t));
      }
      if (worst < 0.02) needed = n;
    }
    double printed = 0;
    for (double t : grid) {
      const double exact = testing::free_fermion_heat_capacity(400, B, t);
      printed = std::max(printed, std::abs(katsura_heat_capacity({B, {}}, t, KatsuraIntegrand::PrintedDispersion) - exact) / exact);
    }
    o.notes.push_back(fmt("note: B=%.1f exact ring solution first within 2%% at N=%d; printed integrand off by %.2f at N=400",
                          B, needed, printed));
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  const double xxx = gapless_bound(-0.443, -0.25, 2.0).constant;
  const double xx = gapless_bound(-4.0 / kPi, -1.0, 2.0).constant;
  const double gapped = gapped_bound(-1.401, -1.0, 0.411).constant;
  o.require(std::abs(xxx - 0.386) <= 5e-4, "0.386 within 5e-4");
  o.require(std::abs(xx - 0.5465) <= 5e-4, "0.5465 within 5e-4");
  o.require(std::abs(gapped - 0.165) <= 5e-4, "0.165 within 5e-4");
  o.detail = fmt("gapless xxx %.6f, gapless xx %.6f, gapped spin-1 %.6f", xxx, xx, gapped);
  return o;
}

Outcome criterion6() {
  Outcome o;
  double worst = 0, worst_t = 0;
  for (int i = 1; i <= 200; ++i) {
    const double t = 0.2 * i / 200;
    const double d = std::abs(xx_low_t_energy(t) - xx_internal_energy(t));
    if (d > worst) worst = d, worst_t = t;
  }
  o.require(worst < 1e-3, "|low-T form - quadrature| < 1e-3 for T <= 0.2");
  const double limit = -4.0 / kPi;
  const double quad0 = std::abs(xx_internal_energy(1e-4) - limit);
  const double form0 = std::abs(xx_low_t_energy(1e-4) - limit);
  o.require(quad0 < 1e-6 && form0 < 1e-6, "both within 1e-6 of -4/pi as T -> 0");
  o.detail = fmt("max difference %.4e at T=%.3f; at T=1e-4: quadrature %.1e, low-T form %.1e from -4/pi", worst,
                 worst_t, quad0, form0);
  if (worst >= 1e-3) {
    double edge = 0;
    for (int i = 1; i <= 2000; ++i) {
      const double t = 0.2 * i / 2000;
      if (std::abs(xx_low_t_energy(t) - xx_internal_energy(t)) < 1e-3) edge = t;
    }
    o.notes.push_back(fmt("note: the T^2/(3 pi) correction vs the true pi T^2/24 leaves 0.0248 T^2 + O(T^4); "
                          "the 1e-3 tolerance holds up to T = %.4f",
                          edge));
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  const double half = minimize_energy({Model::HeisenbergXXX, 4, 1.0, 0.0, 0.5}).value_per_site;
  const double one = minimize_energy({Model::HeisenbergXXX, 4, 1.0, 0.0, 1.0}).value_per_site;
  o.require(std::abs(half + 0.25) <= 1e-6, "s=1/2 product minimum -0.25 within 1e-6");
  o.require(std::abs(one + 1.0) <= 1e-6, "s=1 product minimum -1 within 1e-6");
  const double e0 = spectrum_of({Model::HeisenbergXXX, 12, 1.0, 0.0, 0.5}).energies.front() / 12;
  o.require(e0 >= -0.46 && e0 <= -0.43, "ED ground energy per site (N=12) in [-0.46, -0.43]");
  o.detail = fmt("E_B(s=1/2) = %.10f, E_B(s=1) = %.10f, E0/N(N=12) = %.6f", half, one, e0);
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::string summary;
  double n8_seconds = 0;
  for (int n : {4, 6, 8}) {
    const auto start = std::chrono::steady_clock::now();
    double worst = 0;
    for (double B : {0.5, 1.0, 2.0}) {
      const auto report = eigencheck_ising(n, B);
      for (const auto& level : report.levels) worst = std::max(worst, level.max_product_overlap);
    }
    if (n == 8) n8_seconds = seconds_since(start);
    o.require(worst < 1 - 1e-6, fmt("N=%d: all overlaps < 1 - 1e-6", n));
    const double zero_field = 1.0 - eigencheck_ising(n, 0.0).min_gap_to_product();
    o.require(zero_field >= 1 - 1e-9, fmt("N=%d, B=0: product eigenstate found", n));
    summary += fmt(" N=%d: max overlap %.6f, B=0 overlap %.12f;", n, worst, zero_field);
  }
  o.require(n8_seconds < 120.0, "runtime < 120 s at N=8");
  o.detail = summary.substr(1) + fmt(" N=8 runtime %.1f s", n8_seconds);
  return o;
}

Outcome criterion9() {
  Outcome o;
  std::vector<double> fields;
  for (int i = 0; i <= 25; ++i) fields.push_back(0.5 + 0.1 * i);
  const auto line = critical_temperature_curve(fields, geometric_grid(0.01, 20.0, 400));
  double previous = 0;
  bool positive = true, monotone = true;
  for (const auto& p : line) {
    if (!p.critical_temperature || *p.critical_temperature <= 0) {
      positive = false;
      continue;
    }
    if (*p.critical_temperature < previous) monotone = false;
    previous = *p.critical_temperature;
  }
  o.require(positive, "T_c(B) exists and is positive");
  o.require(monotone, "T_c(B) nondecreasing");
  const double bound2 = variance_bound_at(2.0);
  o.require(std::abs(bound2 - 0.4197) <= 5e-4, "bound value at B=2 (criterion 1)");
  o.detail = fmt("T_c(0.5) = %.5f, T_c(2) = %.5f, T_c(3) = %.5f over %zu fields",
                 line.front().critical_temperature.value_or(0.0), line[15].critical_temperature.value_or(0.0),
                 line.back().critical_temperature.value_or(0.0), line.size());
  return o;
}

Outcome criterion10() {
  Outcome o;
  // Convexity of the variance under mixing.
  std::mt19937 rng(20240601);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int held = 0;
  double tightest = 1e300;
  for (int draw = 0; draw < 1000; ++draw) {
    std::vector<ProductAnsatz> states;
    std::vector<double> w;
    for (int i = 0; i < 5; ++i) {
      ProductAnsatz a{2, {}, false};
      for (int k = 0; k < 2; ++k) a.angles.push_back({kPi * u(rng), 2 * kPi * u(rng)});
      states.push_back(a);
      w.push_back(u(rng) + 1e-3);
    }
    double total = 0;
    for (double x : w) total += x;
    for (double& x : w) x /= total;
    const auto r = convexity_check(states, w, ising(6, 1.3));
    held += r.holds ? 1 : 0;
    tightest = std::min(tightest, r.mixture_variance - r.weighted_state_variance);
  }
  o.require(held == 1000, "convexity on 1000 random mixtures");

  // Heat-capacity properties on every finite model.
  std::vector<ModelSpec> models;
  for (int n : {4, 6, 8}) {
    for (double B : {0.0, 0.5, 1.0, 2.0}) models.push_back(ising(n, B));
    models.push_back({Model::HeisenbergXXX, n, 1.0, 0.0, 0.5});
    models.push_back({Model::XX, n, 1.0, 0.0, 0.5});
  }
  for (int n : {4, 6}) models.push_back({Model::HeisenbergXXX, n, 1.0, 0.0, 1.0});

  bool nonneg = true, shift = true, low = true, high = true, routes = true;
  double worst_route = 0;
  for (const auto& spec : models) {
    const Spectrum s = spectrum_of(spec);
    const double width = s.energies.back() - s.energies.front();
    double gap = 0;
    for (double e : s.energies) {
      if (e - s.energies.front() > 1e-9 * width) {
        gap = e - s.energies.front();
        break;
      }
    }
    const auto grid = geometric_grid(gap / 20, 20 * width, 200);
    const ThermoCurve curve = thermo_from_spectrum(s, grid);
    std::vector<double> moved = s.energies;
    for (double& e : moved) e += 17.25;
    const ThermoCurve shifted = thermo_from_spectrum(Spectrum::from_energies(moved, s.n_sites), grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      nonneg = nonneg && curve.c_per_site[k] >= 0.0;
      shift = shift && std::abs(curve.c_per_site[k] - shifted.c_per_site[k]) <= 1e-10;
    }
    low = low && thermo_at(s, gap / 50).c_per_site < 1e-12;
    high = high && thermo_at(s, 1e3 * width).c_per_site < 1e-5;
    for (double t : geometric_grid(gap / 5, 5 * width, 15)) {
      const double h = 1e-4 * t;
      const double du = (thermo_at(s, t + h).u_per_site - thermo_at(s, t - h).u_per_site) / (2 * h);
      const double c = thermo_at(s, t).c_per_site;
      if (c < 1e-6) continue;  // relative comparison is meaningless deep in the tail
      const double rel = std::abs(du - c) / c;
      worst_route = std::max(worst_route, rel);
      routes = routes && rel <= 1e-6;
    }
  }
  o.require(nonneg, "C >= 0");
  o.require(shift, "shift invariance of C");
  o.require(low, "C -> 0 as T -> 0");
  o.require(high, "C -> 0 as T -> infinity");
  o.require(routes, "variance route vs dU/dT within 1e-6 relative");
  o.detail = fmt("convexity %d/1000 (smallest slack %.2e); %zu spectra; max route rel. diff %.2e", held, tightest,
                 models.size(), worst_route);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"separable variance bound at B=2", criterion1},
      {"bound limits and saturation", criterion2},
      {"period-4 vs period-2 bound", criterion3},
      {"Katsura integral vs exact diagonalization", criterion4},
      {"witness constants", criterion5},
      {"xx low-temperature expansion", criterion6},
      {"separable energy minimum and XXX ground energy", criterion7},
      {"no product eigenstates", criterion8},
      {"critical-temperature curve", criterion9},
      {"property suites", criterion10},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("criterion %zu [PRIMARY] %s: %s -- %s (%.1f s)\n", i + 1, criteria[i].first.c_str(),
                o.pass ? "PASS" : "FAIL", o.detail.c_str(), seconds_since(start));
    for (const auto& note : o.notes) std::printf("    %s\n", note.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
