#include "hcw/analytic.hpp"

#include <cmath>
#include <numbers>

#include "hcw/error.hpp"

namespace hcw {
namespace {

// sech^2(a) for a >= 0 without overflowing cosh.
double sech_squared(double a) {
  const double e = std::exp(-2.0 * std::abs(a));
  return 4.0 * e / ((1.0 + e) * (1.0 + e));
}

}  // namespace

double ising_dispersion(double B, double omega) {
  return std::sqrt(std::max(0.0, 1.0 - 2.0 * B * std::cos(omega) + B * B));
}

double katsura_heat_capacity(const DispersionParams& params, double temperature, KatsuraIntegrand integrand) {
  require(std::isfinite(temperature) && temperature > 0.0, "temperature must be positive");
  require(std::isfinite(params.B), "field must be finite");
  const double B = params.B;
  const bool squared = integrand == KatsuraIntegrand::SquaredDispersion;
  // Integrate the dimensionless (f/T)^p sech^2(f/T) so the tolerances act
  // on a quantity of order one at every temperature.
  const auto body = [&](double omega) {
    const double x = ising_dispersion(B, omega) / temperature;
    return (squared ? x * x : x) * sech_squared(x);
  };
  const double integral = integrate_or_throw(body, 0.0, std::numbers::pi, params.integration);
  const double scale = squared ? 1.0 : 1.0 / temperature;
  return integral * scale / std::numbers::pi;
}

double katsura_heat_capacity(double B, double temperature) {
  return katsura_heat_capacity(DispersionParams{B, {}}, temperature);
}

double xx_internal_energy(double temperature, const QuadratureOptions& options) {
  require(std::isfinite(temperature) && temperature > 0.0, "temperature must be positive");
  const auto body = [&](double omega) {
    const double s = std::sin(omega);
    return std::tanh(2.0 * s / temperature) * s;
  };
  return -4.0 / std::numbers::pi * integrate_or_throw(body, 0.0, 0.5 * std::numbers::pi, options);
}

double xx_low_t_energy(double temperature) {
  require(std::isfinite(temperature) && temperature >= 0.0, "temperature must be nonnegative");
  return -4.0 / std::numbers::pi + temperature * temperature / (3.0 * std::numbers::pi);
}

bool xx_low_t_in_window(double temperature) { return temperature <= kXxLowTWindow; }

}  // namespace hcw
