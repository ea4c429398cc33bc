#include "hcw/thermo.hpp"

#include <algorithm>
#include <cmath>

#include "hcw/error.hpp"
#include "hcw/linalg.hpp"
#include "hcw/parallel.hpp"

namespace hcw {
namespace {

void check_spectrum(const Spectrum& spectrum) {
  require(!spectrum.energies.empty(), "spectrum is empty");
  require(spectrum.n_sites >= 1, "spectrum n_sites must be positive");
}

void check_temperature(double temperature) {
  require(std::isfinite(temperature) && temperature > 0.0, "temperature must be positive and finite");
}

// Moments of the ground-shifted energies, accumulated in index order.
struct Moments {
  double log_z;  // log sum exp(-(E - E0)/T)
  double mean;   // <E - E0>
  double variance;
};

Moments moments(const Spectrum& spectrum, double temperature) {
  const double e0 = spectrum.energies.front();
  double z = 0.0;
  double m1 = 0.0;
  for (double e : spectrum.energies) {
    const double de = e - e0;
    const double w = std::exp(-de / temperature);
    z += w;
    m1 += w * de;
  }
  const double mean = m1 / z;
  // Second central moment directly, avoiding <E^2> - <E>^2 cancellation.
  double m2 = 0.0;
  for (double e : spectrum.energies) {
    const double de = e - e0;
    const double dev = de - mean;
    m2 += std::exp(-de / temperature) * dev * dev;
  }
  return {std::log(z), mean, m2 / z};
}

}  // namespace

Spectrum Spectrum::from_energies(std::vector<double> energies, int n_sites) {
  std::sort(energies.begin(), energies.end());
  return Spectrum{std::move(energies), n_sites};
}

Spectrum spectrum_of(const ModelSpec& spec, std::size_t dimension_cap) {
  const Eigen::MatrixXd h = build_hamiltonian(spec, dimension_cap);
  if (spec.spin != 0.5) {
    const Eigen::VectorXd values = symmetric_eigenvalues(h);
    return Spectrum::from_energies({values.begin(), values.end()}, spec.n_sites);
  }
  // All models commute with the global spin flip, which maps basis index s
  // to dim-1-s. In the (|s> +- |dim-1-s>)/sqrt(2) basis, s < dim/2, the
  // Hamiltonian splits into two half-size blocks.
  const Eigen::Index half = h.rows() / 2;
  const Eigen::MatrixXd direct = h.topLeftCorner(half, half);
  const Eigen::MatrixXd flipped = h.topRightCorner(half, half).rowwise().reverse();
  const Eigen::VectorXd even = symmetric_eigenvalues(direct + flipped);
  const Eigen::VectorXd odd = symmetric_eigenvalues(direct - flipped);
  std::vector<double> energies(even.begin(), even.end());
  energies.insert(energies.end(), odd.begin(), odd.end());
  return Spectrum::from_energies(std::move(energies), spec.n_sites);
}

std::vector<double> gibbs_weights(const Spectrum& spectrum, double temperature) {
  check_spectrum(spectrum);
  check_temperature(temperature);
  const double e0 = spectrum.energies.front();
  std::vector<double> w(spectrum.energies.size());
  double z = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = std::exp(-(spectrum.energies[i] - e0) / temperature);
    z += w[i];
  }
  for (double& x : w) x /= z;
  return w;
}

double thermal_variance(const Spectrum& spectrum, double temperature) {
  check_spectrum(spectrum);
  check_temperature(temperature);
  return moments(spectrum, temperature).variance;
}

ThermoPoint thermo_at(const Spectrum& spectrum, double temperature) {
  check_spectrum(spectrum);
  check_temperature(temperature);
  const Moments m = moments(spectrum, temperature);
  const double n = spectrum.n_sites;
  const double e0 = spectrum.energies.front();
  return {(e0 + m.mean) / n, m.variance / (temperature * temperature) / n,
          (m.log_z - e0 / temperature) / n};
}

ThermoCurve thermo_from_spectrum(const Spectrum& spectrum, std::span<const double> temperatures) {
  check_spectrum(spectrum);
  require(!temperatures.empty(), "temperature grid is empty");
  for (double t : temperatures) check_temperature(t);

  const std::size_t n = temperatures.size();
  ThermoCurve curve;
  curve.temperatures.assign(temperatures.begin(), temperatures.end());
  curve.u_per_site.resize(n);
  curve.c_per_site.resize(n);
  curve.log_z_per_site.resize(n);
  parallel_for(n, [&](std::size_t i) {
    const ThermoPoint p = thermo_at(spectrum, temperatures[i]);
    curve.u_per_site[i] = p.u_per_site;
    curve.c_per_site[i] = p.c_per_site;
    curve.log_z_per_site[i] = p.log_z_per_site;
  });
  return curve;
}

std::vector<double> geometric_grid(double t_min, double t_max, std::size_t points) {
  require(t_min > 0.0 && std::isfinite(t_max) && t_max >= t_min, "grid needs 0 < tmin <= tmax");
  require(points >= 1, "grid needs at least one point");
  require(points == 1 || t_max > t_min, "grid with several points needs tmin < tmax");
  std::vector<double> grid(points);
  if (points == 1) {
    grid[0] = t_min;
    return grid;
  }
  const double lo = std::log(t_min);
  const double step = (std::log(t_max) - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = std::exp(lo + step * static_cast<double>(i));
  grid.front() = t_min;
  grid.back() = t_max;
  return grid;
}

std::vector<double> default_grid(double t_min, double t_max) {
  require(t_min > 0.0 && t_max > t_min, "grid needs 0 < tmin < tmax");
  const double decades = std::log10(t_max / t_min);
  const auto points = static_cast<std::size_t>(std::ceil(200.0 * decades)) + 1;
  return geometric_grid(t_min, t_max, points);
}

}  // namespace hcw
