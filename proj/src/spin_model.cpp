#include "hcw/spin_model.hpp"

#include <cmath>
#include <string>

#include "hcw/error.hpp"

namespace hcw {
namespace {

// Digits of `index` in base `d`, site 0 most significant.
void decode(std::size_t index, int d, std::vector<int>& digits) {
  for (auto site = digits.size(); site-- > 0;) {
    digits[site] = static_cast<int>(index % static_cast<std::size_t>(d));
    index /= static_cast<std::size_t>(d);
  }
}

std::size_t encode(const std::vector<int>& digits, int d) {
  std::size_t index = 0;
  for (int digit : digits) index = index * static_cast<std::size_t>(d) + static_cast<std::size_t>(digit);
  return index;
}

// <m+1|S^+|m> with m = s - digit.
double raise_amplitude(double s, double m) { return std::sqrt(s * (s + 1.0) - m * (m + 1.0)); }

}  // namespace

Model parse_model(std::string_view name) {
  if (name == "ising") return Model::TransverseIsing;
  if (name == "xxx") return Model::HeisenbergXXX;
  if (name == "xx") return Model::XX;
  throw InvalidArgument("unknown model '" + std::string(name) + "' (expected ising, xxx or xx)");
}

std::string_view model_name(Model model) {
  switch (model) {
    case Model::TransverseIsing: return "ising";
    case Model::HeisenbergXXX: return "xxx";
    case Model::XX: return "xx";
  }
  return "unknown";
}

int local_dimension(const ModelSpec& spec) { return static_cast<int>(std::lround(2.0 * spec.spin)) + 1; }

std::size_t hilbert_dimension(const ModelSpec& spec) {
  std::size_t dim = 1;
  const auto d = static_cast<std::size_t>(local_dimension(spec));
  for (int i = 0; i < spec.n_sites; ++i) dim *= d;
  return dim;
}

void validate(const ModelSpec& spec, std::size_t dimension_cap) {
  require(spec.n_sites >= 2, "n_sites must be at least 2");
  require(spec.spin == 0.5 || spec.spin == 1.0, "spin must be 1/2 or 1");
  require(spec.spin == 0.5 || spec.model == Model::HeisenbergXXX,
          "spin 1 is only supported for the xxx model");
  require(std::isfinite(spec.J) && std::isfinite(spec.B), "couplings must be finite");
  // Checked incrementally so that large N cannot overflow the product.
  std::size_t dim = 1;
  const auto d = static_cast<std::size_t>(local_dimension(spec));
  for (int i = 0; i < spec.n_sites; ++i) {
    dim *= d;
    require(dim <= dimension_cap, "Hilbert dimension exceeds cap of " + std::to_string(dimension_cap));
  }
}

OperatorMatrix build_hamiltonian(const ModelSpec& spec, std::size_t dimension_cap) {
  validate(spec, dimension_cap);
  const int n = spec.n_sites;
  const int d = local_dimension(spec);
  const double s = spec.spin;
  const std::size_t dim = hilbert_dimension(spec);
  OperatorMatrix h = OperatorMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));

  std::vector<int> digits(static_cast<std::size_t>(n));
  std::vector<int> flipped(static_cast<std::size_t>(n));
  for (std::size_t col = 0; col < dim; ++col) {
    decode(col, d, digits);
    const auto c = static_cast<Eigen::Index>(col);
    for (int i = 0; i < n; ++i) {
      const auto a = static_cast<std::size_t>(i);
      const auto b = static_cast<std::size_t>((i + 1) % n);
      switch (spec.model) {
        case Model::TransverseIsing: {
          const double za = digits[a] == 0 ? 1.0 : -1.0;
          const double zb = digits[b] == 0 ? 1.0 : -1.0;
          h(c, c) += spec.J * za * zb;
          break;
        }
        case Model::XX: {
          // sx sx + sy sy = 2 (s+ s- + s- s+) on a Pauli pair.
          if (digits[a] != digits[b]) {
            flipped = digits;
            std::swap(flipped[a], flipped[b]);
            h(static_cast<Eigen::Index>(encode(flipped, d)), c) += 2.0 * spec.J;
          }
          break;
        }
        case Model::HeisenbergXXX: {
          const double ma = s - digits[a];
          const double mb = s - digits[b];
          h(c, c) += spec.J * ma * mb;
          // (S+_a S-_b + S-_a S+_b) / 2
          if (digits[a] > 0 && digits[b] < d - 1) {
            flipped = digits;
            --flipped[a];
            ++flipped[b];
            const double amp = 0.5 * spec.J * raise_amplitude(s, ma) * raise_amplitude(s, mb - 1.0);
            h(static_cast<Eigen::Index>(encode(flipped, d)), c) += amp;
          }
          if (digits[b] > 0 && digits[a] < d - 1) {
            flipped = digits;
            --flipped[b];
            ++flipped[a];
            const double amp = 0.5 * spec.J * raise_amplitude(s, mb) * raise_amplitude(s, ma - 1.0);
            h(static_cast<Eigen::Index>(encode(flipped, d)), c) += amp;
          }
          break;
        }
      }
    }
    if (spec.model == Model::TransverseIsing && spec.B != 0.0) {
      for (int i = 0; i < n; ++i) {
        flipped = digits;
        flipped[static_cast<std::size_t>(i)] ^= 1;
        h(static_cast<Eigen::Index>(encode(flipped, d)), c) += spec.B;
      }
    }
  }
  return h;
}

Eigen::MatrixXd cyclic_shift(int n_sites, int local_dim) {
  require(n_sites >= 1 && local_dim >= 2, "cyclic_shift needs n_sites >= 1 and local_dim >= 2");
  std::size_t dim = 1;
  for (int i = 0; i < n_sites; ++i) dim *= static_cast<std::size_t>(local_dim);
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  std::vector<int> digits(static_cast<std::size_t>(n_sites));
  std::vector<int> shifted(static_cast<std::size_t>(n_sites));
  for (std::size_t col = 0; col < dim; ++col) {
    decode(col, local_dim, digits);
    for (int i = 0; i < n_sites; ++i) {
      shifted[static_cast<std::size_t>((i + 1) % n_sites)] = digits[static_cast<std::size_t>(i)];
    }
    t(static_cast<Eigen::Index>(encode(shifted, local_dim)), static_cast<Eigen::Index>(col)) = 1.0;
  }
  return t;
}

LocalExpectation local_expectation(BlochAngles angles) {
  const double st = std::sin(angles.theta);
  return {st * std::cos(angles.phi), st * std::sin(angles.phi), std::cos(angles.theta)};
}

std::vector<LocalExpectation> local_expectations(std::span<const BlochAngles> angles) {
  std::vector<LocalExpectation> out;
  out.reserve(angles.size());
  for (const auto& a : angles) out.push_back(local_expectation(a));
  return out;
}

Eigen::VectorXcd product_state(std::span<const BlochAngles> angles) {
  require(!angles.empty() && angles.size() <= 24, "product_state needs 1..24 sites");
  Eigen::VectorXcd psi = Eigen::VectorXcd::Ones(1);
  for (const auto& a : angles) {
    const std::complex<double> up = std::cos(0.5 * a.theta);
    const std::complex<double> down = std::polar(std::sin(0.5 * a.theta), a.phi);
    Eigen::VectorXcd next(psi.size() * 2);
    for (Eigen::Index k = 0; k < psi.size(); ++k) {
      next(2 * k) = psi(k) * up;
      next(2 * k + 1) = psi(k) * down;
    }
    psi = std::move(next);
  }
  return psi;
}

}  // namespace hcw

namespace hcw {

Eigen::VectorXcd coherent_product_state(std::span<const BlochAngles> angles, double spin) {
  require(spin == 0.5 || spin == 1.0, "spin must be 1/2 or 1");
  if (spin == 0.5) return product_state(angles);
  require(!angles.empty() && angles.size() <= 15, "coherent_product_state needs 1..15 spin-1 sites");
  Eigen::VectorXcd psi = Eigen::VectorXcd::Ones(1);
  for (const auto& a : angles) {
    const double c = std::cos(0.5 * a.theta);
    const double s = std::sin(0.5 * a.theta);
    // Digits 0, 1, 2 are m = +1, 0, -1.
    const std::complex<double> amp[3] = {c * c, std::polar(std::sqrt(2.0) * c * s, a.phi),
                                         std::polar(s * s, 2.0 * a.phi)};
    Eigen::VectorXcd next(psi.size() * 3);
    for (Eigen::Index k = 0; k < psi.size(); ++k) {
      for (int m = 0; m < 3; ++m) next(3 * k + m) = psi(k) * amp[m];
    }
    psi = std::move(next);
  }
  return psi;
}

}  // namespace hcw
