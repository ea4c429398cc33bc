#pragma once

#include <span>
#include <vector>

#include "hcw/spin_model.hpp"

namespace hcw {

/// Product state repeating a pattern of `period` site states around the ring.
/// With restrict_xz the Bloch vectors lie in the xz-plane (phi ignored).
struct ProductAnsatz {
  int period = 2;
  std::vector<BlochAngles> angles;  // one entry per pattern site
  bool restrict_xz = true;
};

/// Angles of the pattern expanded to n_sites sites.
std::vector<BlochAngles> expand_ansatz(const ProductAnsatz& ansatz, int n_sites);

enum class SeparableBoundKind { VarianceMin, EnergyMin };

struct OptimizerStart {
  std::vector<double> start;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct SeparableBound {
  SeparableBoundKind kind = SeparableBoundKind::VarianceMin;
  double value_per_site = 0.0;
  ProductAnsatz arg_angles;
  std::vector<OptimizerStart> optimizer_trace;
  bool converged = true;  // false: best-so-far after hitting the iteration cap
};

// ---- transverse Ising variance over product states -------------------------

/// Two-site-periodic xz-plane closed form, per site:
///   J^2 (1 + z1^2 + z2^2 - 3 z1^2 z2^2) - 2 J B z1 z2 (x1 + x2)
///   + (B^2 / 2)(2 - x1^2 - x2^2),   x = sin(theta), z = cos(theta).
double ising_variance_two_site(double theta1, double theta2, double B, double J = 1.0);

/// Per-site variance of the Ising Hamiltonian for a product state whose
/// local Pauli expectations repeat `pattern` around a ring of at least
/// three sites:
///   sum_i [ J^2 (1 - z_i^2 z_{i+1}^2) + 2 J^2 (z_i z_{i+2} - z_i z_{i+1}^2 z_{i+2})
///          - 2 J B z_i z_{i+1} (x_i + x_{i+1}) + B^2 (1 - x_i^2) ] / period.
double ising_variance_periodic(std::span<const LocalExpectation> pattern, double B, double J = 1.0);

/// Var(H)/N for a product state, from the dense Hamiltonian. Any model.
double variance_product_state_dense(const ModelSpec& spec, std::span<const BlochAngles> site_angles);

/// Var(H)/N of the ansatz on the Ising ring `spec` using the closed forms
/// (two-site form for period-2 xz ansaetze, periodic form otherwise).
double variance_product_state(const ModelSpec& spec, const ProductAnsatz& ansatz);

/// Grid scan over the pattern angles (48 per axis for period 2, 24 for
/// period 4) seeding Nelder-Mead from the `restarts` best cells. Reports the
/// lexicographically smallest symmetry-equivalent angle tuple among optima.
SeparableBound minimize_variance(const ModelSpec& spec, int period, int restarts = 8);

// ---- energy over product states ---------------------------------------------

/// <psi|H|psi>/N for spin-coherent product states (xxx or xx models).
double product_energy_per_site(const ModelSpec& spec, std::span<const BlochAngles> site_angles);

/// Minimizes product_energy_per_site over independent per-site angles.
SeparableBound minimize_energy(const ModelSpec& spec, int restarts = 8);

// ---- mixing cannot lower the variance ---------------------------------------

struct ConvexityResult {
  bool holds = false;
  double mixture_variance = 0.0;        // Var(H) of sum_i w_i |psi_i><psi_i|
  double weighted_state_variance = 0.0; // sum_i w_i Var(H)_i
};

ConvexityResult convexity_check(std::span<const ProductAnsatz> states, std::span<const double> weights,
                                const ModelSpec& spec);

}  // namespace hcw
