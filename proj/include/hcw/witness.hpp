#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hcw/thermo.hpp"

namespace hcw {

enum class WitnessKind { Variance, Gapless, Gapped };

struct WitnessInputs {
  std::optional<double> e0_per_site;
  std::optional<double> eb_per_site;
  std::optional<double> gamma;
  std::optional<double> gap;
};

/// Separable lower bound on the heat capacity per site, constant / T^exponent.
/// Heat capacities below it certify entanglement.
struct WitnessBound {
  WitnessKind kind = WitnessKind::Variance;
  double constant = 0.0;
  int exponent = 2;
  WitnessInputs inputs;

  double value_at(double temperature) const;
  bool vacuous() const { return constant == 0.0; }
};

/// constant = minimal product-state variance per site, exponent 2.
WitnessBound variance_bound(double min_variance_per_site);
/// constant = gamma (E_B - E_0), exponent 1. Requires E_B >= E_0, gamma > 1.
WitnessBound gapless_bound(double e0, double eb, double gamma = 2.0);
/// constant = gap (E_B - E_0) / k, exponent 2. Requires E_B >= E_0, gap > 0.
WitnessBound gapped_bound(double e0, double eb, double gap, double k = 1.0);

std::string_view witness_kind_name(WitnessKind kind);
WitnessKind parse_witness_kind(std::string_view name);

/// Heat capacity per site sampled on strictly increasing temperatures, with
/// optional one-sigma uncertainties (empty, or one per sample).
struct HeatCapacityCurve {
  std::vector<double> temperatures;
  std::vector<double> c_per_site;
  std::vector<double> sigma;
};

HeatCapacityCurve heat_capacity_curve(const ThermoCurve& curve);
HeatCapacityCurve katsura_curve(double B, std::span<const double> temperatures);

enum class CurveSource { ExactDiag, Katsura, UserData };
std::string_view curve_source_name(CurveSource source);

struct RegionSample {
  double temperature = 0.0;
  double heat_capacity = 0.0;
  double bound = 0.0;
  double margin = 0.0;  // bound - (C + sigma)
  bool entangled = false;
};

struct WitnessReport {
  WitnessBound bound;
  std::optional<double> critical_temperature;  // largest zero of the margin
  std::vector<double> crossings;               // all zeros, ascending
  CurveSource curve_source = CurveSource::ExactDiag;
  std::vector<RegionSample> region;            // every grid sample
  std::optional<double> validity_t_max;        // low-T window of the bound
  bool approximation_limited = false;          // T_c missing or above the window
  std::vector<std::string> warnings;

  std::vector<double> entangled_temperatures() const;
};

/// Optional exact evaluator of C(T); when given, crossings are refined on it
/// instead of on the piecewise-linear interpolation of the samples.
using HeatCapacityFunction = std::function<double(double)>;

/// Shared crossing logic. Bisection stops once |margin| < 1e-8 * scale,
/// where scale is the larger of bound and heat capacity at the bracket.
WitnessReport assess_witness(const WitnessBound& bound, const HeatCapacityCurve& curve, CurveSource source,
                             const HeatCapacityFunction& exact = {},
                             std::optional<double> validity_t_max = std::nullopt);

WitnessReport variance_witness(double bound_value, const HeatCapacityCurve& curve, CurveSource source,
                               const HeatCapacityFunction& exact = {});

inline constexpr double kDefaultValidityTMax = 0.1;

WitnessReport gapless_witness(double e0, double eb, double gamma, const HeatCapacityCurve& curve,
                              CurveSource source, const HeatCapacityFunction& exact = {},
                              double validity_t_max = kDefaultValidityTMax);

WitnessReport gapped_witness(double e0, double eb, double gap, const HeatCapacityCurve& curve,
                             CurveSource source, const HeatCapacityFunction& exact = {},
                             double validity_t_max = kDefaultValidityTMax);

/// Low-temperature heat capacity of a gapped chain, c' T^delta exp(-gap/T).
double gapped_low_t_heat_capacity(double c_prime, double delta_exp, double gap, double temperature);

struct GappedEnergy {
  double excess = 0.0;  // U(T) - E_0
  bool in_window = true;
};
/// Fraction of the gap below which the asymptotic energy form is trusted.
inline constexpr double kGappedAsymptoticWindow = 0.2;
/// U(T) - E_0 ~ c' T^(delta+2) exp(-gap/T) / gap, the leading term of the
/// integral of the gapped heat capacity.
GappedEnergy gapped_energy_consistency(double c_prime, double delta_exp, double gap, double temperature);

struct Measurement {
  double temperature = 0.0;
  double heat_capacity = 0.0;
  double sigma = 0.0;
};

/// Applies `bound` to measured data. A sample counts as entangled only if
/// C + sigma stays below the bound. Temperatures must be positive and
/// strictly increasing; at least two points.
WitnessReport witness_from_measurements(std::span<const Measurement> data, const WitnessBound& bound,
                                        std::optional<double> validity_t_max = std::nullopt);

/// One point of the critical-temperature line of the transverse Ising ring.
struct CriticalPoint {
  double B = 0.0;
  double bound = 0.0;
  std::optional<double> critical_temperature;
};

/// For each field: separable variance bound (period-2 ansatz) against the
/// infinite-chain heat capacity, crossings refined on the exact integral.
std::vector<CriticalPoint> critical_temperature_curve(std::span<const double> fields,
                                                      std::span<const double> temperatures);

}  // namespace hcw
