#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "hcw/eigencheck.hpp"
#include "hcw/error.hpp"
#include "hcw/linalg.hpp"
#include "hcw/spin_model.hpp"

using namespace hcw;

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// Brute-force max <psi|P|psi> on an angle grid, for checking small rings.
double grid_overlap(const Eigen::MatrixXcd& basis, int n, int steps) {
  const int params = 2 * n;
  std::vector<int> idx(static_cast<std::size_t>(params), 0);
  double best = 0;
  Eigen::VectorXcd psi(basis.rows());
  for (;;) {
    std::vector<BlochAngles> a(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) {
      a[s].theta = kPi * idx[2 * s] / (steps - 1);
      a[s].phi = 2 * kPi * idx[2 * s + 1] / steps;
    }
    psi = product_state(a);
    best = std::max(best, (basis.adjoint() * psi).squaredNorm());
    int k = 0;
    while (k < params && ++idx[k] == steps) idx[k++] = 0;
    if (k == params) break;
  }
  return best;
}

std::vector<Eigen::MatrixXcd> eigenspaces(int n, double B) {
  const auto eig = symmetric_eigen(build_hamiltonian({Model::TransverseIsing, n, 1.0, B, 0.5}));
  std::vector<Eigen::MatrixXcd> out;
  for (auto [first, size] : group_levels(eig.values, 1e-9 * eig.values.cwiseAbs().maxCoeff())) {
    out.push_back(eig.vectors.middleCols(first, size).cast<cd>());
  }
  return out;
}

}  // namespace

TEST_CASE("product and Bell projectors") {
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(8, 8);
  p(0, 0) = 1;
  const auto product = max_product_overlap(p, 3);
  CHECK(product.overlap == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(product.monotone);

  Eigen::VectorXcd bell = Eigen::VectorXcd::Zero(4);
  bell(0) = bell(3) = 1 / std::sqrt(2.0);
  const auto b = max_product_overlap(bell * bell.adjoint(), 2);
  CHECK(b.overlap == doctest::Approx(0.5).epsilon(1e-10));

  // The returned product state attains the reported overlap.
  Eigen::VectorXcd psi = Eigen::VectorXcd::Ones(1);
  for (const auto& site : b.sites) {
    Eigen::VectorXcd next(psi.size() * 2);
    for (Eigen::Index i = 0; i < psi.size(); ++i) {
      next(2 * i) = psi(i) * site[0];
      next(2 * i + 1) = psi(i) * site[1];
    }
    psi = next;
  }
  CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::norm(bell.dot(psi)) == doctest::Approx(b.overlap).epsilon(1e-10));
}

TEST_CASE("projector validation") {
  Eigen::MatrixXcd half = 0.5 * Eigen::MatrixXcd::Identity(4, 4);
  CHECK_THROWS_AS(max_product_overlap(half, 2), InvalidArgument);
  Eigen::MatrixXcd skew = Eigen::MatrixXcd::Zero(4, 4);
  skew(0, 1) = 1;
  CHECK_THROWS_AS(max_product_overlap(skew, 2), InvalidArgument);
  CHECK_THROWS_AS(max_product_overlap(Eigen::MatrixXcd::Identity(4, 4), 3), InvalidArgument);
  CHECK_THROWS_AS(eigencheck_ising(13, 1.0), InvalidArgument);
  CHECK_THROWS_AS(eigencheck_ising(1, 1.0), InvalidArgument);
}

TEST_CASE("alternating optimization agrees with a grid search on small rings") {
  for (int n : {2, 3}) {
    for (const auto& basis : eigenspaces(n, 0.8)) {
      const double fast = max_product_overlap_basis(basis, n).overlap;
      const double slow = grid_overlap(basis, n, n == 2 ? 25 : 11);
      CHECK(fast >= slow - 1e-12);
      CHECK(fast == doctest::Approx(slow).epsilon(n == 2 ? 5e-3 : 3e-2));
    }
  }
}

TEST_CASE("no transverse-Ising eigenspace contains a product state") {
  for (int n : {4, 6}) {
    const auto report = eigencheck_ising(n, 1.0);
    CHECK(report.verdict);
    int total = 0;
    for (const auto& level : report.levels) {
      CHECK(level.max_product_overlap < 1 - 1e-6);
      CHECK(level.max_product_overlap > 0.0);
      total += level.degeneracy;
    }
    CHECK(total == (1 << n));
  }
}

TEST_CASE("zero field has product eigenstates") {
  const auto report = eigencheck_ising(4, 0.0);
  CHECK_FALSE(report.verdict);
  CHECK(report.min_gap_to_product() < 1e-10);
}

TEST_CASE("overlap approaches one as the field vanishes") {
  // Resolved eigenspaces stay far from product states at small B (the field
  // picks GHZ-like combinations out of each zero-field multiplet); the gap
  // closes once the splitting drops below the degeneracy tolerance.
  for (int n : {2, 3, 4, 5, 6}) {
    CHECK(eigencheck_ising(n, 1.0).min_gap_to_product() > 1e-6);
    CHECK(eigencheck_ising(n, 1e-5).min_gap_to_product() < 1e-9);
  }
  // Grouping whole zero-field multiplets, the gap shrinks with the field.
  for (double B : {0.1, 0.03, 0.01, 0.003}) {
    CHECK(eigencheck_ising(6, B, 0.5).min_gap_to_product() < 1e-6);
  }
  CHECK(eigencheck_ising(6, 0.01, 0.5).min_gap_to_product() < eigencheck_ising(6, 0.1, 0.5).min_gap_to_product());
}

TEST_CASE("sweeps never decrease the overlap") {
  for (const auto& basis : eigenspaces(6, 1.0)) {
    const auto r = max_product_overlap_basis(basis, 6, {8, 2000, 1e-14});
    CHECK(r.monotone);
    for (std::size_t k = 1; k < r.history.size(); ++k) CHECK(r.history[k] >= r.history[k - 1] - 1e-12);
  }
}

TEST_CASE("eigenspace projectors resolve the identity") {
  for (double B : {0.0, 1.0}) {
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(64, 64);
    for (const auto& basis : eigenspaces(6, B)) sum += basis * basis.adjoint();
    CHECK((sum - Eigen::MatrixXcd::Identity(64, 64)).cwiseAbs().maxCoeff() < 1e-9);
  }
  Eigen::VectorXd v(5);
  v << -1.0, -1.0 + 1e-12, 0.5, 2.0, 2.0;
  const auto groups = group_levels(v, 1e-9);
  REQUIRE(groups.size() == 3);
  CHECK(groups[0] == std::pair{0, 2});
  CHECK(groups[1] == std::pair{2, 1});
  CHECK(groups[2] == std::pair{3, 2});
}

TEST_CASE("the product-eigenstate ratio equation has no admissible root") {
  // -B x^2 - 4x + B = 0: roots multiply to -1, and x = +-1 would need -+4 = 0.
  for (double B : {0.5, 1.0, 2.0}) {
    const double disc = std::sqrt(16 + 4 * B * B);
    const double x1 = (4 - disc) / (-2 * B), x2 = (4 + disc) / (-2 * B);
    CHECK(-B * x1 * x1 - 4 * x1 + B == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(x1 * x2 == doctest::Approx(-1.0).epsilon(1e-14));
    for (double x : {1.0, -1.0}) CHECK(std::abs(-B * x * x - 4 * x + B) == 4.0);
    CHECK(std::abs(std::abs(x1) - 1.0) > 1e-3);
  }
}
