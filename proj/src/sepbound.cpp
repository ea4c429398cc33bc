#include "hcw/sepbound.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hcw/error.hpp"
#include "hcw/nelder_mead.hpp"

namespace hcw {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kTieTolerance = 1e-12;

double wrap_angle(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

struct Moments {
  double mean;
  double second;
};

// <H> and <H^2> of a normalized state, with H real symmetric.
Moments dense_moments(const Eigen::MatrixXd& h, const Eigen::VectorXcd& psi) {
  const Eigen::VectorXd re = psi.real();
  const Eigen::VectorXd im = psi.imag();
  const Eigen::VectorXd h_re = h * re;
  const Eigen::VectorXd h_im = h * im;
  const double mean = re.dot(h_re) + im.dot(h_im);
  const double second = h_re.squaredNorm() + h_im.squaredNorm();
  return {mean, second};
}

void check_ansatz(const ProductAnsatz& ansatz, int n_sites) {
  require(ansatz.period == 1 || ansatz.period == 2 || ansatz.period == 4, "period must be 1, 2 or 4");
  require(static_cast<int>(ansatz.angles.size()) == ansatz.period, "ansatz needs one angle pair per period site");
  require(n_sites % ansatz.period == 0,
          "period " + std::to_string(ansatz.period) + " does not divide n_sites " + std::to_string(n_sites));
}

std::vector<LocalExpectation> pattern_expectations(const ProductAnsatz& ansatz) {
  std::vector<LocalExpectation> out;
  for (auto a : ansatz.angles) {
    if (ansatz.restrict_xz) a.phi = 0.0;
    out.push_back(local_expectation(a));
  }
  return out;
}

// Smallest tuple among the images of `thetas` under pattern rotations,
// reflections and the global z -> -z flip (theta -> pi - theta), all of
// which leave the Ising product-state variance unchanged.
std::vector<double> canonical_thetas(const std::vector<double>& thetas) {
  const auto p = thetas.size();
  std::vector<double> best;
  std::vector<double> image(p);
  for (std::size_t shift = 0; shift < p; ++shift) {
    for (int reflect = 0; reflect < 2; ++reflect) {
      for (int flip = 0; flip < 2; ++flip) {
        for (std::size_t i = 0; i < p; ++i) {
          const std::size_t src = reflect ? (shift + p - i) % p : (shift + i) % p;
          image[i] = wrap_angle(flip ? std::numbers::pi - thetas[src] : thetas[src]);
        }
        if (best.empty() || image < best) best = image;
      }
    }
  }
  return best;
}

// Additive-recurrence quasi-random point in [0, 2 pi)^dim.
std::vector<double> quasi_random_angles(std::size_t dim, int index) {
  // Root of x^(dim+1) = x + 1 gives well spread increments.
  double g = 2.0;
  for (int it = 0; it < 64; ++it) g = std::pow(1.0 + g, 1.0 / static_cast<double>(dim + 1));
  std::vector<double> out(dim);
  double alpha = 1.0;
  for (std::size_t k = 0; k < dim; ++k) {
    alpha /= g;
    out[k] = kTwoPi * std::fmod(0.5 + alpha * static_cast<double>(index + 1), 1.0);
  }
  return out;
}

}  // namespace

std::vector<BlochAngles> expand_ansatz(const ProductAnsatz& ansatz, int n_sites) {
  check_ansatz(ansatz, n_sites);
  std::vector<BlochAngles> sites(static_cast<std::size_t>(n_sites));
  for (int i = 0; i < n_sites; ++i) {
    sites[static_cast<std::size_t>(i)] = ansatz.angles[static_cast<std::size_t>(i % ansatz.period)];
    if (ansatz.restrict_xz) sites[static_cast<std::size_t>(i)].phi = 0.0;
  }
  return sites;
}

double ising_variance_two_site(double theta1, double theta2, double B, double J) {
  const double z1 = std::cos(theta1), z2 = std::cos(theta2);
  const double x1 = std::sin(theta1), x2 = std::sin(theta2);
  const double zz1 = z1 * z1, zz2 = z2 * z2;
  return J * J * (1.0 + zz1 + zz2 - 3.0 * zz1 * zz2) - 2.0 * J * B * z1 * z2 * (x1 + x2) +
         0.5 * B * B * (2.0 - x1 * x1 - x2 * x2);
}

double ising_variance_periodic(std::span<const LocalExpectation> pattern, double B, double J) {
  require(!pattern.empty(), "pattern is empty");
  const std::size_t p = pattern.size();
  double total = 0.0;
  for (std::size_t i = 0; i < p; ++i) {
    const auto& a = pattern[i];
    const auto& b = pattern[(i + 1) % p];
    const auto& c = pattern[(i + 2) % p];
    total += J * J * (1.0 - a.z * a.z * b.z * b.z);
    total += 2.0 * J * J * (a.z * c.z - a.z * b.z * b.z * c.z);
    total -= 2.0 * J * B * a.z * b.z * (a.x + b.x);
    total += B * B * (1.0 - a.x * a.x);
  }
  return total / static_cast<double>(p);
}

double variance_product_state_dense(const ModelSpec& spec, std::span<const BlochAngles> site_angles) {
  require(static_cast<int>(site_angles.size()) == spec.n_sites, "need one angle pair per site");
  const Eigen::MatrixXd h = build_hamiltonian(spec);
  const Moments m = dense_moments(h, coherent_product_state(site_angles, spec.spin));
  return (m.second - m.mean * m.mean) / spec.n_sites;
}

double variance_product_state(const ModelSpec& spec, const ProductAnsatz& ansatz) {
  require(spec.model == Model::TransverseIsing, "variance_product_state needs the transverse Ising model");
  validate(spec, ~std::size_t{0});
  require(spec.n_sites >= 3, "closed-form product variance needs at least 3 sites");
  check_ansatz(ansatz, spec.n_sites);
  if (ansatz.period == 2 && ansatz.restrict_xz) {
    return ising_variance_two_site(ansatz.angles[0].theta, ansatz.angles[1].theta, spec.B, spec.J);
  }
  const auto pattern = pattern_expectations(ansatz);
  return ising_variance_periodic(pattern, spec.B, spec.J);
}

SeparableBound minimize_variance(const ModelSpec& spec, int period, int restarts) {
  require(spec.model == Model::TransverseIsing, "minimize_variance needs the transverse Ising model");
  require(period == 2 || period == 4, "minimize_variance period must be 2 or 4");
  require(restarts >= 1, "restarts must be at least 1");
  require(spec.n_sites % period == 0, "period must divide n_sites");
  const double B = spec.B;
  const double J = spec.J;
  const auto p = static_cast<std::size_t>(period);

  std::vector<LocalExpectation> pattern(p);
  const auto objective = [&](std::span<const double> thetas) {
    for (std::size_t i = 0; i < p; ++i) pattern[i] = local_expectation({thetas[i], 0.0});
    return period == 2 ? ising_variance_two_site(thetas[0], thetas[1], B, J)
                       : ising_variance_periodic(pattern, B, J);
  };

  // Coarse grid. Cells are visited in index order; ties keep the earlier cell.
  const int per_axis = period == 2 ? 48 : 24;
  std::vector<double> axis(static_cast<std::size_t>(per_axis));
  std::vector<LocalExpectation> axis_local(axis.size());
  for (int k = 0; k < per_axis; ++k) {
    axis[static_cast<std::size_t>(k)] = kTwoPi * k / per_axis;
    axis_local[static_cast<std::size_t>(k)] = local_expectation({axis[static_cast<std::size_t>(k)], 0.0});
  }
  std::size_t cells = 1;
  for (std::size_t i = 0; i < p; ++i) cells *= axis.size();

  struct Cell {
    double value;
    std::size_t index;
  };
  std::vector<Cell> scored;
  scored.reserve(cells);
  std::vector<LocalExpectation> grid_pattern(p);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    std::size_t rest = cell;
    for (std::size_t i = p; i-- > 0;) {
      grid_pattern[i] = axis_local[rest % axis.size()];
      rest /= axis.size();
    }
    scored.push_back({ising_variance_periodic(grid_pattern, B, J), cell});
  }
  const auto seeds = std::min<std::size_t>(static_cast<std::size_t>(restarts), scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(seeds), scored.end(),
                    [](const Cell& a, const Cell& b) { return a.value < b.value || (a.value == b.value && a.index < b.index); });

  SeparableBound bound;
  bound.kind = SeparableBoundKind::VarianceMin;
  NelderMeadOptions options;
  options.f_tol = 1e-8;
  options.max_iterations = 2000;
  options.initial_step = kTwoPi / per_axis;

  std::vector<NelderMeadResult> results;
  for (std::size_t s = 0; s < seeds; ++s) {
    std::vector<double> start(p);
    std::size_t rest = scored[s].index;
    for (std::size_t i = p; i-- > 0;) {
      start[i] = axis[rest % axis.size()];
      rest /= axis.size();
    }
    results.push_back(nelder_mead(objective, start, options));
    const auto& r = results.back();
    bound.optimizer_trace.push_back({start, r.value, r.iterations, r.converged});
  }

  double best_value = results.front().value;
  for (const auto& r : results) best_value = std::min(best_value, r.value);
  std::vector<double> best_thetas;
  bool best_converged = true;
  for (const auto& r : results) {
    if (r.value > best_value + kTieTolerance) continue;
    auto thetas = canonical_thetas(r.x);
    if (best_thetas.empty() || thetas < best_thetas) {
      best_thetas = std::move(thetas);
      best_converged = r.converged;
    }
  }
  bound.value_per_site = best_value;
  // Variance is nonnegative; clip round-off below zero.
  bound.value_per_site = std::max(0.0, bound.value_per_site);
  bound.converged = best_converged;
  bound.arg_angles.period = period;
  bound.arg_angles.restrict_xz = true;
  for (double t : best_thetas) bound.arg_angles.angles.push_back({t, 0.0});
  return bound;
}

double product_energy_per_site(const ModelSpec& spec, std::span<const BlochAngles> site_angles) {
  require(spec.model == Model::HeisenbergXXX || spec.model == Model::XX,
          "product energy is defined here for the xxx and xx models");
  require(static_cast<int>(site_angles.size()) == spec.n_sites, "need one angle pair per site");
  const auto n = site_angles.size();
  const auto local = local_expectations(site_angles);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = local[i];
    const auto& b = local[(i + 1) % n];
    if (spec.model == Model::HeisenbergXXX) {
      total += spec.spin * spec.spin * (a.x * b.x + a.y * b.y + a.z * b.z);
    } else {
      total += a.x * b.x + a.y * b.y;
    }
  }
  return spec.J * total / static_cast<double>(n);
}

SeparableBound minimize_energy(const ModelSpec& spec, int restarts) {
  require(spec.model == Model::HeisenbergXXX || spec.model == Model::XX,
          "minimize_energy needs the xxx or xx model");
  validate(spec, ~std::size_t{0});
  require(restarts >= 1, "restarts must be at least 1");
  const auto n = static_cast<std::size_t>(spec.n_sites);

  std::vector<BlochAngles> sites(n);
  const auto objective = [&](std::span<const double> params) {
    for (std::size_t i = 0; i < n; ++i) sites[i] = {params[2 * i], params[2 * i + 1]};
    return product_energy_per_site(spec, sites);
  };

  SeparableBound bound;
  bound.kind = SeparableBoundKind::EnergyMin;
  NelderMeadOptions options;
  options.f_tol = 1e-12;
  options.max_iterations = 20000;
  options.initial_step = 0.5;
  bool have_best = false;
  std::vector<double> best_x;
  for (int r = 0; r < restarts; ++r) {
    auto start = quasi_random_angles(2 * n, r);
    const NelderMeadResult result = nelder_mead(objective, start, options);
    bound.optimizer_trace.push_back({start, result.value, result.iterations, result.converged});
    if (!have_best || result.value < bound.value_per_site) {
      bound.value_per_site = result.value;
      bound.converged = result.converged;
      best_x = result.x;
      have_best = true;
    }
  }
  bound.arg_angles.period = spec.n_sites;
  bound.arg_angles.restrict_xz = false;
  for (std::size_t i = 0; i < n; ++i) {
    bound.arg_angles.angles.push_back({wrap_angle(best_x[2 * i]), wrap_angle(best_x[2 * i + 1])});
  }
  return bound;
}

ConvexityResult convexity_check(std::span<const ProductAnsatz> states, std::span<const double> weights,
                                const ModelSpec& spec) {
  require(!states.empty() && states.size() == weights.size(), "need one weight per state");
  double sum = 0.0;
  for (double w : weights) {
    require(w >= 0.0 && std::isfinite(w), "weights must be nonnegative");
    sum += w;
  }
  require(std::abs(sum - 1.0) <= 1e-12, "weights must sum to 1");

  const Eigen::MatrixXd h = build_hamiltonian(spec);
  double mean = 0.0;
  double second = 0.0;
  double weighted_variance = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto sites = expand_ansatz(states[i], spec.n_sites);
    const Moments m = dense_moments(h, coherent_product_state(sites, spec.spin));
    mean += weights[i] * m.mean;
    second += weights[i] * m.second;
    weighted_variance += weights[i] * (m.second - m.mean * m.mean);
  }
  ConvexityResult out;
  out.mixture_variance = second - mean * mean;
  out.weighted_state_variance = weighted_variance;
  const double slack = 1e-12 * std::max(1.0, second);
  out.holds = out.mixture_variance >= out.weighted_state_variance - slack;
  return out;
}

}  // namespace hcw
