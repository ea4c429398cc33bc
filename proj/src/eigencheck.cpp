#include "hcw/eigencheck.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hcw/error.hpp"
#include "hcw/linalg.hpp"
#include "hcw/parallel.hpp"
#include "hcw/spin_model.hpp"

namespace hcw {
namespace {

using Complex = std::complex<double>;
using Site = std::array<Complex, 2>;

constexpr double kMonotoneSlack = 1e-12;

std::size_t dimension_for(int n_sites) {
  require(n_sites >= 1 && n_sites <= 14, "n_sites must be in 1..14");
  return std::size_t{1} << n_sites;
}

// Leading eigenpair of the Hermitian 2x2 matrix [[a, c], [conj(c), d]].
std::pair<double, Site> top_eigenpair(double a, double d, Complex c) {
  const double mean = 0.5 * (a + d);
  const double half = 0.5 * (a - d);
  const double radius = std::hypot(half, std::abs(c));
  const double lambda = mean + radius;
  Site v;
  if (std::abs(c) <= 1e-300) {
    v = a >= d ? Site{1.0, 0.0} : Site{0.0, 1.0};
  } else if (half >= 0.0) {
    v = {lambda - d, std::conj(c)};
  } else {
    v = {c, lambda - a};
  }
  const double norm = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
  return {lambda, {v[0] / norm, v[1] / norm}};
}

struct Run {
  double overlap = 0.0;
  std::vector<Site> sites;
  std::vector<double> history;
  bool monotone = true;
};

// Contraction of one basis column with the current product state, arranged
// so that a left-to-right sweep costs O(2^n): right[j] holds
// sum_r conj(column(l, s, r)) * (sites j+1..n-1)(r) indexed by (l, s), i.e.
// 2^(j+1) entries. right[n-1] is the conjugated column itself.
void right_environments(const Eigen::VectorXcd& column, const std::vector<Site>& sites,
                        std::vector<Eigen::VectorXcd>& right) {
  const int n = static_cast<int>(sites.size());
  right.resize(static_cast<std::size_t>(n));
  right[static_cast<std::size_t>(n - 1)] = column.conjugate();
  for (int j = n - 2; j >= 0; --j) {
    const auto& next = right[static_cast<std::size_t>(j + 1)];
    const Site& f = sites[static_cast<std::size_t>(j + 1)];
    auto& out = right[static_cast<std::size_t>(j)];
    out.resize(next.size() / 2);
    for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = next(2 * i) * f[0] + next(2 * i + 1) * f[1];
  }
}

Run optimize_from(const Eigen::MatrixXcd& basis, int n_sites, std::vector<Site> sites, const OverlapOptions& options) {
  const Eigen::Index cols = basis.cols();
  const auto n = static_cast<std::size_t>(n_sites);
  Run run;
  std::vector<std::vector<Eigen::VectorXcd>> right(static_cast<std::size_t>(cols));
  // Left products of the already-updated sites, grown in place to 2^(j+1).
  Eigen::VectorXcd left(1 << n_sites);
  Eigen::Index left_size = 1;
  double previous_sweep = -1.0;
  double last = -1.0;
  for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
    for (Eigen::Index k = 0; k < cols; ++k) {
      right_environments(basis.col(k), sites, right[static_cast<std::size_t>(k)]);
    }
    left(0) = 1.0;
    left_size = 1;
    for (std::size_t j = 0; j < n; ++j) {
      // M = sum_k conj(b_k) b_k^T with b_k(s) = <column_k | rest (x) |s>>.
      double a = 0.0, d = 0.0;
      Complex c = 0.0;
      for (std::size_t k = 0; k < right.size(); ++k) {
        const auto& r = right[k][j];
        Complex b0 = 0.0, b1 = 0.0;
        for (Eigen::Index i = 0; i < left_size; ++i) {
          b0 += left(i) * r(2 * i);
          b1 += left(i) * r(2 * i + 1);
        }
        a += std::norm(b0);
        d += std::norm(b1);
        c += std::conj(b0) * b1;
      }
      auto [lambda, v] = top_eigenpair(a, d, c);
      sites[j] = v;
      for (Eigen::Index i = left_size - 1; i >= 0; --i) {
        left(2 * i + 1) = left(i) * v[1];
        left(2 * i) = left(i) * v[0];
      }
      left_size *= 2;
      if (lambda < last - kMonotoneSlack) run.monotone = false;
      last = lambda;
      run.history.push_back(lambda);
    }
    if (last - previous_sweep < options.tolerance) break;
    previous_sweep = last;
  }
  run.overlap = std::clamp(last, 0.0, 1.0);
  run.sites = std::move(sites);
  return run;
}

std::vector<Site> start_state(int n_sites, int restart) {
  // Additive recurrence in 2 n dimensions, as in the optimizer seeds.
  const std::size_t dim = 2 * static_cast<std::size_t>(n_sites);
  double g = 2.0;
  for (int it = 0; it < 64; ++it) g = std::pow(1.0 + g, 1.0 / static_cast<double>(dim + 1));
  std::vector<Site> sites(static_cast<std::size_t>(n_sites));
  double alpha = 1.0;
  std::vector<double> u(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    alpha /= g;
    u[k] = std::fmod(0.5 + alpha * static_cast<double>(restart + 1), 1.0);
  }
  for (std::size_t i = 0; i < sites.size(); ++i) {
    // Uniform on the sphere: cos(theta) uniform in [-1, 1].
    const double theta = std::acos(1.0 - 2.0 * u[2 * i]);
    const double phi = 2.0 * std::numbers::pi * u[2 * i + 1];
    sites[i] = {std::cos(0.5 * theta), std::polar(std::sin(0.5 * theta), phi)};
  }
  return sites;
}

}  // namespace

OverlapResult max_product_overlap_basis(const Eigen::MatrixXcd& basis, int n_sites, const OverlapOptions& options) {
  const auto dim = static_cast<Eigen::Index>(dimension_for(n_sites));
  require(basis.rows() == dim && basis.cols() >= 1, "basis must have 2^n_sites rows and at least one column");
  require(options.restarts >= 1 && options.max_sweeps >= 1, "restarts and max_sweeps must be positive");

  OverlapResult best;
  bool have = false;
  for (int r = 0; r < options.restarts; ++r) {
    Run run = optimize_from(basis, n_sites, start_state(n_sites, r), options);
    best.monotone = best.monotone && run.monotone;
    if (!have || run.overlap > best.overlap) {
      best.overlap = run.overlap;
      best.sites = std::move(run.sites);
      best.history = std::move(run.history);
      have = true;
    }
  }
  return best;
}

OverlapResult max_product_overlap(const Eigen::MatrixXcd& projector, int n_sites, const OverlapOptions& options) {
  const auto dim = static_cast<Eigen::Index>(dimension_for(n_sites));
  require(projector.rows() == dim && projector.cols() == dim, "projector must be 2^n_sites square");
  require((projector - projector.adjoint()).cwiseAbs().maxCoeff() <= 1e-10, "projector is not Hermitian");
  require((projector * projector - projector).cwiseAbs().maxCoeff() <= 1e-10, "non-idempotent projector");
  const HermitianDecomposition eig = hermitian_eigen(projector);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    if (eig.values(k) > 0.5) keep.push_back(k);
  }
  require(!keep.empty(), "projector is zero");
  Eigen::MatrixXcd basis(dim, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i) basis.col(static_cast<Eigen::Index>(i)) = eig.vectors.col(keep[i]);
  return max_product_overlap_basis(basis, n_sites, options);
}

std::vector<std::pair<int, int>> group_levels(const Eigen::VectorXd& sorted_values, double tol) {
  std::vector<std::pair<int, int>> groups;
  const auto n = static_cast<int>(sorted_values.size());
  int start = 0;
  for (int i = 1; i <= n; ++i) {
    if (i == n || sorted_values(i) - sorted_values(i - 1) > tol) {
      groups.emplace_back(start, i - start);
      start = i;
    }
  }
  return groups;
}

double EigencheckReport::min_gap_to_product() const {
  double gap = 1.0;
  for (const auto& level : levels) gap = std::min(gap, 1.0 - level.max_product_overlap);
  return gap;
}

EigencheckReport eigencheck_ising(int n_sites, double B, std::optional<double> degeneracy_tol,
                                  const OverlapOptions& options, double verdict_tol) {
  require(n_sites >= 2 && n_sites <= 12, "eigencheck supports 2..12 sites");
  const ModelSpec spec{Model::TransverseIsing, n_sites, 1.0, B, 0.5};
  const EigenDecomposition eig = symmetric_eigen(build_hamiltonian(spec));
  const double norm = eig.values.cwiseAbs().maxCoeff();
  const double tol = degeneracy_tol.value_or(1e-9 * std::max(norm, 1.0));
  require(tol >= 0.0, "degeneracy tolerance must be nonnegative");

  EigencheckReport report;
  report.n_sites = n_sites;
  report.B = B;
  report.degeneracy_tol = tol;
  report.verdict_tol = verdict_tol;
  const auto groups = group_levels(eig.values, tol);
  report.levels.resize(groups.size());
  parallel_for(groups.size(), [&](std::size_t g) {
    const auto [first, size] = groups[g];
    const Eigen::MatrixXcd basis = eig.vectors.middleCols(first, size).cast<std::complex<double>>();
    const OverlapResult r = max_product_overlap_basis(basis, n_sites, options);
    report.levels[g] = {eig.values.segment(first, size).mean(), size, r.overlap};
  });
  report.verdict = std::all_of(report.levels.begin(), report.levels.end(),
                               [&](const LevelOverlap& l) { return l.max_product_overlap < 1.0 - verdict_tol; });
  return report;
}

}  // namespace hcw
