#pragma once

#include <functional>
#include <span>
#include <vector>

namespace hcw {

struct NelderMeadOptions {
  double f_tol = 1e-8;        // stop when simplex values span less than this
  int max_iterations = 2000;  // per start
  double initial_step = 0.1;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Derivative-free simplex minimization (standard reflection / expansion /
/// contraction / shrink coefficients 1, 2, 1/2, 1/2). After the first
/// convergence the simplex is rebuilt around the best point once, which
/// guards against a collapsed simplex.
NelderMeadResult nelder_mead(const Objective& f, std::vector<double> start,
                             const NelderMeadOptions& options = {});

}  // namespace hcw
