#pragma once

#include <functional>

namespace hcw {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_subdivisions = 200;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  int subdivisions = 0;
  bool converged = false;
};

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over [a, b]; the
/// panel rule is Boost.Math's. The panel with the largest error estimate is
/// bisected until error <= max(abs_tol, rel_tol * |value|) or the subdivision
/// budget runs out.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& options = {});

/// Same, but throws NumericalFailure (carrying the estimate) when the
/// tolerance is not met.
double integrate_or_throw(const std::function<double(double)>& f, double a, double b,
                          const QuadratureOptions& options = {});

}  // namespace hcw
