#include "hcw/witness.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hcw/analytic.hpp"
#include "hcw/error.hpp"
#include "hcw/parallel.hpp"
#include "hcw/sepbound.hpp"

namespace hcw {
namespace {

void check_energies(double e0, double eb) {
  require(std::isfinite(e0) && std::isfinite(eb), "energies must be finite");
  if (eb < e0) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "invalid bound: separable energy " << eb << " lies below the ground energy " << e0;
    throw InvalidArgument(msg.str());
  }
}

void check_curve(const HeatCapacityCurve& curve) {
  const auto n = curve.temperatures.size();
  require(n >= 2, "heat capacity curve needs at least two samples");
  require(curve.c_per_site.size() == n, "heat capacity curve columns differ in length");
  require(curve.sigma.empty() || curve.sigma.size() == n, "sigma must be empty or one per sample");
  for (std::size_t i = 0; i < n; ++i) {
    require(std::isfinite(curve.temperatures[i]) && curve.temperatures[i] > 0.0,
            "temperatures must be positive");
    require(std::isfinite(curve.c_per_site[i]), "heat capacities must be finite");
    if (i > 0) require(curve.temperatures[i] > curve.temperatures[i - 1], "temperatures must be strictly increasing");
    if (!curve.sigma.empty()) require(curve.sigma[i] >= 0.0, "sigma must be nonnegative");
  }
}

double sigma_at(const HeatCapacityCurve& curve, std::size_t i) { return curve.sigma.empty() ? 0.0 : curve.sigma[i]; }

// Zero of margin(T) in [lo, hi], margin(lo) and margin(hi) of opposite sign.
double bisect(const std::function<double(double)>& margin, const std::function<double(double)>& scale, double lo,
              double hi) {
  double m_lo = margin(lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double m_mid = margin(mid);
    if (std::abs(m_mid) < 1e-11 * scale(mid) || hi - lo <= 1e-15 * hi) return mid;
    if ((m_mid > 0.0) == (m_lo > 0.0)) {
      lo = mid;
      m_lo = m_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double WitnessBound::value_at(double temperature) const {
  return constant / std::pow(temperature, exponent);
}

WitnessBound variance_bound(double min_variance_per_site) {
  require(std::isfinite(min_variance_per_site) && min_variance_per_site >= 0.0,
          "variance bound must be nonnegative");
  return {WitnessKind::Variance, min_variance_per_site, 2, {}};
}

WitnessBound gapless_bound(double e0, double eb, double gamma) {
  check_energies(e0, eb);
  require(std::isfinite(gamma) && gamma > 1.0, "gamma must exceed 1");
  return {WitnessKind::Gapless, gamma * (eb - e0), 1, {e0, eb, gamma, std::nullopt}};
}

WitnessBound gapped_bound(double e0, double eb, double gap, double k) {
  check_energies(e0, eb);
  require(std::isfinite(gap) && gap > 0.0, "gap must be positive");
  require(std::isfinite(k) && k > 0.0, "Boltzmann constant must be positive");
  return {WitnessKind::Gapped, gap * (eb - e0) / k, 2, {e0, eb, std::nullopt, gap}};
}

std::string_view witness_kind_name(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::Variance: return "variance";
    case WitnessKind::Gapless: return "gapless";
    case WitnessKind::Gapped: return "gapped";
  }
  return "unknown";
}

WitnessKind parse_witness_kind(std::string_view name) {
  if (name == "variance") return WitnessKind::Variance;
  if (name == "gapless") return WitnessKind::Gapless;
  if (name == "gapped") return WitnessKind::Gapped;
  throw InvalidArgument("unknown bound kind '" + std::string(name) + "'");
}

std::string_view curve_source_name(CurveSource source) {
  switch (source) {
    case CurveSource::ExactDiag: return "ed";
    case CurveSource::Katsura: return "katsura";
    case CurveSource::UserData: return "data";
  }
  return "unknown";
}

HeatCapacityCurve heat_capacity_curve(const ThermoCurve& curve) {
  return {curve.temperatures, curve.c_per_site, {}};
}

HeatCapacityCurve katsura_curve(double B, std::span<const double> temperatures) {
  HeatCapacityCurve out;
  out.temperatures.assign(temperatures.begin(), temperatures.end());
  out.c_per_site.resize(temperatures.size());
  parallel_for(temperatures.size(), [&](std::size_t i) { out.c_per_site[i] = katsura_heat_capacity(B, temperatures[i]); });
  return out;
}

std::vector<double> WitnessReport::entangled_temperatures() const {
  std::vector<double> out;
  for (const auto& s : region) {
    if (s.entangled) out.push_back(s.temperature);
  }
  return out;
}

WitnessReport assess_witness(const WitnessBound& bound, const HeatCapacityCurve& curve, CurveSource source,
                             const HeatCapacityFunction& exact, std::optional<double> validity_t_max) {
  check_curve(curve);
  require(bound.constant >= 0.0, "witness constant must be nonnegative");

  WitnessReport report;
  report.bound = bound;
  report.curve_source = source;
  report.validity_t_max = validity_t_max;

  const auto n = curve.temperatures.size();
  report.region.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = curve.temperatures[i];
    const double b = bound.value_at(t);
    const double upper = curve.c_per_site[i] + sigma_at(curve, i);
    report.region.push_back({t, curve.c_per_site[i], b, b - upper, b - upper > 0.0});
  }

  if (bound.vacuous()) {
    for (auto& s : report.region) s.entangled = false;
    report.warnings.push_back("vacuous bound: constant is zero, no temperature can be certified");
    report.approximation_limited = validity_t_max.has_value();
    return report;
  }

  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double m0 = report.region[i].margin;
    const double m1 = report.region[i + 1].margin;
    if ((m0 > 0.0) == (m1 > 0.0)) continue;
    const double t0 = curve.temperatures[i];
    const double t1 = curve.temperatures[i + 1];
    std::function<double(double)> heat;
    if (exact && curve.sigma.empty()) {
      heat = exact;
    } else {
      const double u0 = curve.c_per_site[i] + sigma_at(curve, i);
      const double u1 = curve.c_per_site[i + 1] + sigma_at(curve, i + 1);
      heat = [=](double t) { return u0 + (u1 - u0) * (t - t0) / (t1 - t0); };
    }
    const auto margin = [&](double t) { return bound.value_at(t) - heat(t); };
    const auto scale = [&](double t) { return std::max(std::abs(bound.value_at(t)), std::abs(heat(t))); };
    report.crossings.push_back(bisect(margin, scale, t0, t1));
  }

  if (!report.crossings.empty()) report.critical_temperature = report.crossings.back();
  if (report.region.back().margin > 0.0) {
    report.critical_temperature.reset();
    report.warnings.push_back("margin is still positive at the top of the temperature range; extend tmax");
  } else if (report.crossings.empty()) {
    report.warnings.push_back("no crossing of the bound inside the temperature range");
  }
  if (validity_t_max) {
    report.approximation_limited = !report.critical_temperature || *report.critical_temperature > *validity_t_max;
    if (report.approximation_limited) {
      report.warnings.push_back("critical temperature lies outside the validity window of the low-temperature bound");
    }
  }
  return report;
}

WitnessReport variance_witness(double bound_value, const HeatCapacityCurve& curve, CurveSource source,
                               const HeatCapacityFunction& exact) {
  return assess_witness(variance_bound(bound_value), curve, source, exact);
}

WitnessReport gapless_witness(double e0, double eb, double gamma, const HeatCapacityCurve& curve,
                              CurveSource source, const HeatCapacityFunction& exact, double validity_t_max) {
  return assess_witness(gapless_bound(e0, eb, gamma), curve, source, exact, validity_t_max);
}

WitnessReport gapped_witness(double e0, double eb, double gap, const HeatCapacityCurve& curve,
                             CurveSource source, const HeatCapacityFunction& exact, double validity_t_max) {
  return assess_witness(gapped_bound(e0, eb, gap), curve, source, exact, validity_t_max);
}

double gapped_low_t_heat_capacity(double c_prime, double delta_exp, double gap, double temperature) {
  require(temperature > 0.0 && gap > 0.0, "temperature and gap must be positive");
  return c_prime * std::pow(temperature, delta_exp) * std::exp(-gap / temperature);
}

GappedEnergy gapped_energy_consistency(double c_prime, double delta_exp, double gap, double temperature) {
  require(gap > 0.0 && std::isfinite(gap), "gap must be positive");
  require(temperature >= 0.0 && std::isfinite(temperature), "temperature must be nonnegative");
  if (temperature == 0.0) return {0.0, true};
  const double excess = c_prime * std::pow(temperature, delta_exp + 2.0) * std::exp(-gap / temperature) / gap;
  return {excess, temperature <= kGappedAsymptoticWindow * gap};
}

WitnessReport witness_from_measurements(std::span<const Measurement> data, const WitnessBound& bound,
                                        std::optional<double> validity_t_max) {
  require(data.size() >= 2, "need at least two measurements");
  HeatCapacityCurve curve;
  bool any_sigma = false;
  for (const auto& m : data) {
    require(m.temperature > 0.0, "measurement temperatures must be positive");
    curve.temperatures.push_back(m.temperature);
    curve.c_per_site.push_back(m.heat_capacity);
    curve.sigma.push_back(m.sigma);
    any_sigma = any_sigma || m.sigma != 0.0;
  }
  if (!any_sigma) curve.sigma.clear();
  return assess_witness(bound, curve, CurveSource::UserData, {}, validity_t_max);
}

std::vector<CriticalPoint> critical_temperature_curve(std::span<const double> fields,
                                                      std::span<const double> temperatures) {
  std::vector<CriticalPoint> out(fields.size());
  parallel_for(fields.size(), [&](std::size_t i) {
    const double B = fields[i];
    ModelSpec spec{Model::TransverseIsing, 4, 1.0, B, 0.5};
    const double bound = minimize_variance(spec, 2).value_per_site;
    const auto curve = katsura_curve(B, temperatures);
    const auto report = variance_witness(bound, curve, CurveSource::Katsura,
                                         [B](double t) { return katsura_heat_capacity(B, t); });
    out[i] = {B, bound, report.critical_temperature};
  });
  return out;
}

}  // namespace hcw
