#include "hcw/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hcw/error.hpp"

namespace hcw {
namespace {

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

// One 15-point Kronrod panel with its embedded 7-point Gauss error estimate.
Panel kronrod_panel(const std::function<double(double)>& f, double a, double b) {
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0, &error);
  return {a, b, value, error};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& options) {
  require(options.abs_tol > 0.0 && options.rel_tol > 0.0 && options.max_subdivisions >= 1,
          "quadrature tolerances must be positive");
  require(std::isfinite(a) && std::isfinite(b), "quadrature bounds must be finite");
  if (a == b) return {0.0, 0.0, 0, true};

  // Globally adaptive: always bisect the panel with the largest error.
  std::priority_queue<Panel> work;
  work.push(kronrod_panel(f, a, b));
  double total = work.top().value;
  double error = work.top().error;
  int subdivisions = 0;
  const auto tolerance = [&] { return std::max(options.abs_tol, options.rel_tol * std::abs(total)); };

  while (error > tolerance() && subdivisions < options.max_subdivisions) {
    const Panel worst = work.top();
    work.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = kronrod_panel(f, worst.a, mid);
    const Panel right = kronrod_panel(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    work.push(left);
    work.push(right);
    ++subdivisions;
  }
  // Re-sum to shed the drift of the running updates.
  total = 0.0;
  error = 0.0;
  while (!work.empty()) {
    total += work.top().value;
    error += work.top().error;
    work.pop();
  }
  if (!std::isfinite(total)) return {total, error, subdivisions, false};
  return {total, error, subdivisions, error <= tolerance()};
}

double integrate_or_throw(const std::function<double(double)>& f, double a, double b,
                          const QuadratureOptions& options) {
  const QuadratureResult r = integrate_adaptive(f, a, b, options);
  if (!r.converged) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "quadrature did not converge on [" << a << ", " << b << "]: estimate " << r.value << ", error "
        << r.error << " after " << r.subdivisions << " subdivisions";
    throw NumericalFailure(msg.str(), r.value);
  }
  return r.value;
}

}  // namespace hcw
