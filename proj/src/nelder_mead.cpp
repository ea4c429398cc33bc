#include "hcw/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hcw/error.hpp"

namespace hcw {
namespace {

struct Vertex {
  std::vector<double> x;
  double f;
};

struct RunResult {
  Vertex best;
  int iterations;
  bool converged;
};

RunResult run_simplex(const Objective& f, const std::vector<double>& start, double step, double f_tol,
                      int max_iterations) {
  const std::size_t n = start.size();
  std::vector<Vertex> simplex;
  simplex.reserve(n + 1);
  simplex.push_back({start, f(start)});
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> x = start;
    x[i] += step;
    const double fx = f(x);
    simplex.push_back({std::move(x), fx});
  }

  const auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
  std::vector<double> centroid(n), trial(n), trial2(n);
  const auto along = [&](double t, std::vector<double>& out) {
    const auto& worst = simplex.back().x;
    for (std::size_t i = 0; i < n; ++i) out[i] = centroid[i] + t * (worst[i] - centroid[i]);
  };

  int iter = 0;
  for (; iter < max_iterations; ++iter) {
    std::sort(simplex.begin(), simplex.end(), by_value);
    if (simplex.back().f - simplex.front().f <= f_tol) {
      return {simplex.front(), iter, true};
    }
    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[v].x[i] / static_cast<double>(n);
    }

    along(-1.0, trial);
    const double fr = f(trial);
    if (fr < simplex.front().f) {
      along(-2.0, trial2);
      const double fe = f(trial2);
      simplex.back() = fe < fr ? Vertex{trial2, fe} : Vertex{trial, fr};
      continue;
    }
    if (fr < simplex[n - 1].f) {
      simplex.back() = {trial, fr};
      continue;
    }
    // Outside contraction if the reflection beat the worst point, inside otherwise.
    const bool outside = fr < simplex.back().f;
    along(outside ? -0.5 : 0.5, trial2);
    const double fc = f(trial2);
    if (fc < (outside ? fr : simplex.back().f)) {
      simplex.back() = {trial2, fc};
      continue;
    }
    for (std::size_t v = 1; v <= n; ++v) {
      for (std::size_t i = 0; i < n; ++i) {
        simplex[v].x[i] = simplex[0].x[i] + 0.5 * (simplex[v].x[i] - simplex[0].x[i]);
      }
      simplex[v].f = f(simplex[v].x);
    }
  }
  std::sort(simplex.begin(), simplex.end(), by_value);
  return {simplex.front(), iter, false};
}

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> start, const NelderMeadOptions& options) {
  require(!start.empty(), "nelder_mead needs at least one parameter");
  require(options.f_tol > 0.0 && options.max_iterations > 0 && options.initial_step > 0.0,
          "nelder_mead options must be positive");

  RunResult first = run_simplex(f, start, options.initial_step, options.f_tol, options.max_iterations);
  int used = first.iterations;
  if (!first.converged) return {first.best.x, first.best.f, used, false};

  // Restart around the optimum with a smaller simplex.
  const int remaining = std::max(1, options.max_iterations - used);
  RunResult second = run_simplex(f, first.best.x, 0.1 * options.initial_step, options.f_tol, remaining);
  used += second.iterations;
  const Vertex& best = second.best.f <= first.best.f ? second.best : first.best;
  return {best.x, best.f, used, second.converged};
}

}  // namespace hcw
