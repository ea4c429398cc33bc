#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hcw {

enum class Model { TransverseIsing, HeisenbergXXX, XX };

/// Nearest-neighbour spin chain on a periodic ring of n_sites sites.
///
/// Energies are in units of J (k = hbar = 1 inside the numerical core).
/// TransverseIsing and XX are written with Pauli matrices,
///   H_Ising = J sum sz_i sz_{i+1} + B sum sx_i,
///   H_XX    = J sum (sx_i sx_{i+1} + sy_i sy_{i+1}),
/// HeisenbergXXX with spin operators of magnitude `spin`,
///   H_XXX   = J sum S_i . S_{i+1}.
/// On a 2-site ring both bonds (0,1) and (1,0) are present, so the bond
/// term appears twice.
struct ModelSpec {
  Model model = Model::TransverseIsing;
  int n_sites = 2;
  double J = 1.0;
  double B = 0.0;     // ignored unless model == TransverseIsing
  double spin = 0.5;  // 1/2 or 1; 1 is only meaningful for HeisenbergXXX
};

inline constexpr std::size_t kDefaultDimensionCap = std::size_t{1} << 14;

/// Dense real symmetric Hamiltonian. All supported models are real in the
/// S^z product basis, so amplitudes are stored as doubles.
using OperatorMatrix = Eigen::MatrixXd;

Model parse_model(std::string_view name);
std::string_view model_name(Model model);

int local_dimension(const ModelSpec& spec);
std::size_t hilbert_dimension(const ModelSpec& spec);
void validate(const ModelSpec& spec, std::size_t dimension_cap = kDefaultDimensionCap);

/// Basis index convention: site 0 is the most significant base-(2s+1)
/// digit; digit k corresponds to S^z = s - k (for spin 1/2, digit 0 is
/// the sz = +1 state |0>).
OperatorMatrix build_hamiltonian(const ModelSpec& spec,
                                 std::size_t dimension_cap = kDefaultDimensionCap);

/// Permutation T with T|k_0 k_1 ... k_{N-1}> = |k_{N-1} k_0 ... k_{N-2}>.
Eigen::MatrixXd cyclic_shift(int n_sites, int local_dim);

/// Bloch angles of one spin-1/2 (or spin-coherent) site state
/// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
struct BlochAngles {
  double theta = 0.0;
  double phi = 0.0;
};

/// Pauli expectation values (<sx>, <sy>, <sz>) of one site.
struct LocalExpectation {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

LocalExpectation local_expectation(BlochAngles angles);
std::vector<LocalExpectation> local_expectations(std::span<const BlochAngles> angles);

/// Full state vector of a spin-1/2 product state, one angle pair per site.
Eigen::VectorXcd product_state(std::span<const BlochAngles> angles);

}  // namespace hcw

namespace hcw {

/// Product of spin-coherent states, each site pointing along the Bloch
/// direction (theta, phi) with <S> = spin * n. For spin 1/2 this equals
/// product_state(angles).
Eigen::VectorXcd coherent_product_state(std::span<const BlochAngles> angles, double spin);

}  // namespace hcw
