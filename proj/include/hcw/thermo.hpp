#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hcw/spin_model.hpp"

namespace hcw {

/// Sorted eigenvalues of a Hamiltonian (units of J).
struct Spectrum {
  std::vector<double> energies;
  int n_sites = 1;

  /// Sorts `energies` ascending.
  static Spectrum from_energies(std::vector<double> energies, int n_sites);
};

/// Exact diagonalization of build_hamiltonian(spec).
Spectrum spectrum_of(const ModelSpec& spec, std::size_t dimension_cap = kDefaultDimensionCap);

/// Per-site thermodynamics on a temperature grid (k = 1).
struct ThermoCurve {
  std::vector<double> temperatures;
  std::vector<double> u_per_site;
  std::vector<double> c_per_site;
  std::vector<double> log_z_per_site;
};

struct ThermoPoint {
  double u_per_site = 0.0;
  double c_per_site = 0.0;
  double log_z_per_site = 0.0;
};

/// Gibbs weights exp(-E/T)/Z, shifted by the ground energy.
std::vector<double> gibbs_weights(const Spectrum& spectrum, double temperature);

/// <H^2> - <H>^2 in the Gibbs state (total, not per site).
double thermal_variance(const Spectrum& spectrum, double temperature);

ThermoPoint thermo_at(const Spectrum& spectrum, double temperature);

/// C is taken from the variance identity C = Var(H) / T^2.
ThermoCurve thermo_from_spectrum(const Spectrum& spectrum, std::span<const double> temperatures);

std::vector<double> geometric_grid(double t_min, double t_max, std::size_t points);

/// Geometric grid with 200 points per decade of [t_min, t_max].
std::vector<double> default_grid(double t_min, double t_max);

}  // namespace hcw
