#pragma once

#include "hcw/quadrature.hpp"

namespace hcw {

/// Field and integration settings for the infinite transverse Ising ring.
struct DispersionParams {
  double B = 0.0;
  QuadratureOptions integration{};
};

/// Quasiparticle half-energy f(B, w) = sqrt(1 - 2 B cos w + B^2) (J = 1).
double ising_dispersion(double B, double omega);

/// Which power of f multiplies sech^2(f/T) in the heat-capacity integral.
/// Only SquaredDispersion reproduces C = Var(H)/T^2 of exact
/// diagonalization as N grows; PrintedDispersion is kept to document the
/// comparison (see README, "Katsura integrand").
enum class KatsuraIntegrand { SquaredDispersion, PrintedDispersion };

/// Heat capacity per spin of the infinite transverse Ising ring (J = k = 1),
///   C/N = 1/(pi T^2) int_0^pi f^2 / cosh^2(f/T) dw.
/// Throws NumericalFailure when the quadrature tolerance is not met.
double katsura_heat_capacity(const DispersionParams& params, double temperature,
                             KatsuraIntegrand integrand = KatsuraIntegrand::SquaredDispersion);
double katsura_heat_capacity(double B, double temperature);

/// Internal energy per spin of the infinite xx chain (J = k = 1),
///   U = -(4/pi) int_0^{pi/2} tanh((2/T) sin w) sin w dw.
double xx_internal_energy(double temperature, const QuadratureOptions& options = {});

/// Low-temperature form U ~ -4/pi + T^2/(3 pi). Intended for T well below
/// kXxLowTWindow; use xx_low_t_in_window to check.
double xx_low_t_energy(double temperature);
inline constexpr double kXxLowTWindow = 0.3;
bool xx_low_t_in_window(double temperature);

}  // namespace hcw
