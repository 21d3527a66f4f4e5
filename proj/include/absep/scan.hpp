#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "absep/detection.hpp"
#include "absep/positive_maps.hpp"
#include "absep/unitaries.hpp"

namespace absep {

enum class ScanFamily { Isotropic3, Rho4 };
ScanFamily scan_family_by_name(const std::string& name);
std::string to_string(ScanFamily family);

struct ScanConfig {
  ScanFamily family = ScanFamily::Isotropic3;
  std::string map = "transpose";
  double b = 1.5;
  /// Global unitary applied at every p. Defaults to U3 for isotropic3 and
  /// U4(phi1, phi2) for rho4.
  std::optional<GlobalUnitary> unitary;
  double phi1 = 0.17453292519943295;  // π/18
  double phi2 = 2.6179938779914944;   // 5π/6
  int points = 101;
  double tol = 1e-6;
};

struct ScanRow {
  double p;
  double thm1_margin;
  double det_h1;
  double det_h2;
  double pt_min_eig;  // λ_min of the partial transpose of U ρ(p) U†
  Verdict verdict;
};

struct ScanResult {
  std::string family;
  std::string map;
  GlobalUnitary unitary;
  std::vector<ScanRow> rows;
  /// Onsets of the final violated region, located by bisection.
  std::optional<double> hankel_threshold;
  std::optional<double> thm1_threshold;
  std::optional<double> npt_threshold;
};

/// Values that small are treated as rounding noise when deciding signs.
inline constexpr double kSignFloor = 1e-13;

ScanRow scan_point(const ScanConfig& config, const GlobalUnitary& u, double p);
ScanResult run_scan(const ScanConfig& config);

/// Given samples of a predicate on an increasing grid, bisects the boundary
/// of the trailing run of `true` values. Empty when the last sample is false
/// or every sample is true.
std::optional<double> trailing_onset(const std::vector<double>& grid, const std::vector<bool>& hits,
                                     const std::function<bool(double)>& predicate, double tol);

/// CSV with columns p, thm1_margin, detH1, detH2, verdict and '#' lines for
/// the thresholds.
std::string scan_csv(const ScanResult& result);

}  // namespace absep
