#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace absep {

struct NelderMeadOptions {
  int max_evaluations = 1000;
  double initial_step = 0.5;
  /// Converged when the simplex diameter (max vertex distance to the best
  /// vertex) drops below this.
  double diameter_tolerance = 1e-8;
  /// Optional early exit once the best value reaches this (minimization).
  double stop_below = -std::numeric_limits<double>::infinity();
};

struct NelderMeadResult {
  std::vector<double> best_point;
  double best_value;
  int evaluations;
  bool converged;
};

/// Derivative-free minimization with the standard reflection / expansion /
/// contraction / shrink coefficients (1, 2, 1/2, 1/2). The evaluation order is
/// deterministic, so a larger budget replays the same trajectory further.
NelderMeadResult nelder_mead_minimize(const std::function<double(std::span<const double>)>& objective,
                                      std::vector<double> start, const NelderMeadOptions& options);

}  // namespace absep
