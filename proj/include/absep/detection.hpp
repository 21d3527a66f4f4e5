#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absep/linalg.hpp"
#include "absep/positive_maps.hpp"
#include "absep/states.hpp"
#include "absep/unitaries.hpp"

namespace absep {

/// Traces of powers of a normalized operator; values[k] holds the moment of
/// order k + 1, so `at(1)` is the trace (one for a normalized operator).
struct MomentVector {
  std::vector<double> values;

  int order() const { return static_cast<int>(values.size()); }
  double at(int n) const { return values.at(static_cast<std::size_t>(n - 1)); }
};

MomentVector moments(const NormalizedOutput& output, int n_max);
MomentVector moments(const CMatrix& normalized_op, int n_max);

struct Thm1Outcome {
  double margin;  // s₂² − s₃
  bool violated;  // margin > tol::strict
};

/// Needs order >= 3, else OrderTooLow.
Thm1Outcome thm1_test(const MomentVector& m);

/// (m+1)×(m+1) Hankel matrix with entry (i, j) = moment of order i + j + 1.
struct HankelMatrix {
  int m;
  RMatrix entries;

  double determinant() const;
  double min_eigenvalue() const;
};

/// Needs order >= 2m + 1, else OrderTooLow.
HankelMatrix hankel(int m_order, const MomentVector& moments);

enum class Verdict { NotAbsolutelySeparable, NotAbsolutelyPPT, AbsolutelyPPTSufficient, Inconclusive };
std::string to_string(Verdict v);

struct HankelOutcome {
  int m;
  double determinant;
  double min_eigenvalue;
  bool violated;    // determinant < −tol::strict
  Verdict verdict;  // NotAbsolutelyPPT for decomposable maps, NotAbsolutelySeparable otherwise
};

HankelOutcome hankel_outcome(const MomentVector& moments, int m_order, bool decomposable_map);

HankelOutcome hankel_test(const DensityMatrix& state, const PositiveMap& map, const GlobalUnitary& u, int m_order);

struct Thm9Outcome {
  double max_r2;  // largest Tr R² found by search and Haar probes
  double bound;   // 1 / (d − 1)
  int d;
  bool sufficient_appt;
  GlobalUnitary argmax;
};

/// Searches max over U of r₂ with the transpose (decomposable) map. This is a
/// heuristic certificate: the maximum is searched, not proven. Requires
/// dim_a == dim_b, or dim_a == 2 (then d = min local dimension).
Thm9Outcome thm9_test(const DensityMatrix& state, int samples, std::uint64_t seed,
                      const SearchOptions& search = {.budget = 400, .restarts = 4, .seed = 42, .initial_step = 0.5, .stop_above = std::nullopt});

struct BallOutcome {
  double purity;
  double radius;  // 1 / (d² − 1)
  bool inside;
};

/// Requires dim_a == dim_b.
BallOutcome ball_test(const DensityMatrix& state);

struct OracleOutcome {
  double value;  // λ₁ − λ_{2d−1} − 2√(λ_{2d−2} λ_{2d})
  bool absolutely_separable;
};

/// Necessary-and-sufficient test for C² ⊗ C^d; NotTwoByD otherwise.
OracleOutcome eigenvalue_oracle_2xd(const DensityMatrix& state);

enum class DetectionMode { AbsoluteSeparability, AbsolutePPT };

struct DetectionOptions {
  DetectionMode mode = DetectionMode::AbsoluteSeparability;
  int hankel_order = 2;
  int moment_order = 0;  // 0 → max(3, 2m + 1)
  int thm9_samples = 50;
  std::uint64_t seed = 42;
  SearchOptions thm9_search{.budget = 400, .restarts = 4, .seed = 42, .initial_step = 0.5, .stop_above = std::nullopt};
};

struct DetectionReport {
  std::string state_id;
  std::string map_name;
  DetectionMode mode;
  GlobalUnitary unitary;
  std::optional<UnitarySearchResult> search;
  double normalizer;
  double min_eig;
  MomentVector moments;
  Thm1Outcome thm1;
  std::vector<HankelOutcome> hankel;  // m = 1 .. hankel_order
  std::optional<Thm9Outcome> thm9;
  std::optional<BallOutcome> ball;
  std::optional<OracleOutcome> oracle;
  Verdict verdict;
  std::string certified_by;  // "oracle", "hankel", "thm1", "thm9-search", "ball", or ""
  std::vector<std::string> notes;
};

/// Evaluates every applicable criterion for the state under `u` and combines
/// them with the precedence oracle > Hankel > Thm1 > ball/Thm9.
DetectionReport detect(const DensityMatrix& state, const std::string& state_id, const PositiveMap& map,
                       const GlobalUnitary& u, const DetectionOptions& options,
                       std::optional<UnitarySearchResult> search = std::nullopt);

}  // namespace absep
