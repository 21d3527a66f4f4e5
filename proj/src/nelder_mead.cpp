#include "absep/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace absep {

namespace {

struct Vertex {
  std::vector<double> x;
  double f;
};

double distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

NelderMeadResult nelder_mead_minimize(const std::function<double(std::span<const double>)>& objective,
                                      std::vector<double> start, const NelderMeadOptions& options) {
  const std::size_t n = start.size();
  int evaluations = 0;
  Vertex best{start, std::numeric_limits<double>::infinity()};

  auto eval = [&](const std::vector<double>& x) {
    const double f = objective(x);
    ++evaluations;
    // Strict improvement only: the first-found optimum is kept on ties.
    if (f < best.f) best = Vertex{x, f};
    return f;
  };
  auto budget_left = [&] { return evaluations < options.max_evaluations && best.f > options.stop_below; };

  std::vector<Vertex> simplex;
  simplex.reserve(n + 1);
  simplex.push_back({start, eval(start)});
  for (std::size_t i = 0; i < n && budget_left(); ++i) {
    std::vector<double> x = start;
    x[i] += options.initial_step;
    simplex.push_back({x, eval(x)});
  }
  if (simplex.size() < n + 1) return {best.x, best.f, evaluations, false};

  bool converged = false;
  while (budget_left()) {
    std::stable_sort(simplex.begin(), simplex.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    double diameter = 0.0;
    for (std::size_t i = 1; i <= n; ++i) diameter = std::max(diameter, distance(simplex[i].x, simplex[0].x));
    if (diameter < options.diameter_tolerance) {
      converged = true;
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i].x[k] / static_cast<double>(n);
    auto along = [&](double t) {
      std::vector<double> x(n);
      for (std::size_t k = 0; k < n; ++k) x[k] = centroid[k] + t * (simplex[n].x[k] - centroid[k]);
      return x;
    };

    Vertex& worst = simplex[n];
    const auto xr = along(-1.0);
    const double fr = eval(xr);
    if (fr < simplex[0].f) {
      if (!budget_left()) { worst = {xr, fr}; break; }
      const auto xe = along(-2.0);
      const double fe = eval(xe);
      worst = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
    } else if (fr < simplex[n - 1].f) {
      worst = {xr, fr};
    } else {
      if (!budget_left()) break;
      const bool outside = fr < worst.f;
      const auto xc = along(outside ? -0.5 : 0.5);
      const double fc = eval(xc);
      if (fc < (outside ? fr : worst.f)) {
        worst = {xc, fc};
      } else {
        for (std::size_t i = 1; i <= n && budget_left(); ++i) {
          for (std::size_t k = 0; k < n; ++k) simplex[i].x[k] = simplex[0].x[k] + 0.5 * (simplex[i].x[k] - simplex[0].x[k]);
          simplex[i].f = eval(simplex[i].x);
        }
      }
    }
  }
  return {best.x, best.f, evaluations, converged};
}

}  // namespace absep
