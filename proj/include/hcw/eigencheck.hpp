#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <optional>
#include <vector>

namespace hcw {

struct OverlapOptions {
  int restarts = 64;
  int max_sweeps = 2000;
  double tolerance = 1e-14;  // stop when a sweep gains less than this
};

struct OverlapResult {
  double overlap = 0.0;
  std::vector<std::array<std::complex<double>, 2>> sites;  // maximizing product state
  std::vector<double> history;  // overlap after every site update of the best start
  bool monotone = true;         // no update of any start decreased the overlap
};

/// max <psi|P|psi> over spin-1/2 product states, P = basis basis^dagger.
/// `basis` holds orthonormal columns spanning the subspace. Each site update
/// solves the 2x2 eigenproblem of the operator obtained by contracting P
/// with all other sites; starts are deterministic quasi-random angles.
OverlapResult max_product_overlap_basis(const Eigen::MatrixXcd& basis, int n_sites,
                                        const OverlapOptions& options = {});

/// Same, for an explicit projector. Throws InvalidArgument unless the
/// projector is Hermitian and idempotent within 1e-10.
OverlapResult max_product_overlap(const Eigen::MatrixXcd& projector, int n_sites,
                                  const OverlapOptions& options = {});

struct LevelOverlap {
  double energy = 0.0;
  int degeneracy = 0;
  double max_product_overlap = 0.0;
};

struct EigencheckReport {
  int n_sites = 0;
  double B = 0.0;
  double degeneracy_tol = 0.0;
  double verdict_tol = 0.0;
  std::vector<LevelOverlap> levels;
  bool verdict = false;  // every eigenspace has overlap < 1 - verdict_tol

  double min_gap_to_product() const;  // min over levels of 1 - overlap
};

/// Groups sorted eigenvalues into clusters whose neighbours differ by at
/// most `tol`; returns (first index, size) pairs.
std::vector<std::pair<int, int>> group_levels(const Eigen::VectorXd& sorted_values, double tol);

/// Checks every eigenspace of the transverse Ising ring (J = 1) for product
/// states. Default degeneracy tolerance is 1e-9 * max|E|. A true verdict is
/// numerical evidence from a bounded number of starts, not a proof.
EigencheckReport eigencheck_ising(int n_sites, double B, std::optional<double> degeneracy_tol = std::nullopt,
                                  const OverlapOptions& options = {}, double verdict_tol = 1e-6);

}  // namespace hcw
