#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absep/linalg.hpp"
#include "absep/positive_maps.hpp"
#include "absep/states.hpp"

namespace absep {

/// A unitary on the full bipartite space, ‖U†U − I‖_F <= tol::unitarity.
class GlobalUnitary {
 public:
  /// Throws NotUnitary when `m` misses the unitarity tolerance.
  static GlobalUnitary checked(CMatrix m, std::string label);

  /// Accepts `m` verbatim when it is unitary within tol::polar_trigger,
  /// otherwise replaces it by its polar factor and records the correction.
  /// Throws NotUnitary if the corrected matrix is still off by more than that.
  static GlobalUnitary with_polar_fallback(const CMatrix& m, std::string label);

  static GlobalUnitary identity(int dim);

  const CMatrix& matrix() const { return matrix_; }
  const std::string& label() const { return label_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }
  bool polar_corrected() const { return polar_corrected_; }
  /// Unitarity residual of the matrix as supplied, before any correction.
  double input_residual() const { return input_residual_; }

 private:
  GlobalUnitary(CMatrix m, std::string label, bool corrected, double residual)
      : matrix_(std::move(m)), label_(std::move(label)), polar_corrected_(corrected), input_residual_(residual) {}

  CMatrix matrix_;
  std::string label_;
  bool polar_corrected_ = false;
  double input_residual_ = 0.0;
};

enum class NamedUnitary { U1, U2, U3, U4 };

/// The named reference unitaries. U4 takes the two angles of its Pauli
/// combination; they are ignored for the others.
GlobalUnitary named_unitary(NamedUnitary id, double phi1 = 0.0, double phi2 = 0.0);

/// The 8×8 U2 table verbatim, with the two stray entries that break unitarity.
CMatrix u2_raw();

/// Haar-random unitary from the QR decomposition of a complex Ginibre matrix,
/// with the phases of R's diagonal pushed into Q.
GlobalUnitary haar_random(int dim, std::uint64_t seed);

/// exp(iH), H Hermitian assembled from `params` (length dim²): the first dim
/// entries are the diagonal, then (re, im) pairs of the upper triangle in
/// row-major order.
GlobalUnitary parameterized(std::span<const double> params, int dim);
CMatrix hermitian_from_params(std::span<const double> params, int dim);

struct SearchObjective {
  enum class Kind { ThmOne, HankelDet, R2 };
  Kind kind = Kind::ThmOne;
  int hankel_order = 2;

  static SearchObjective thm_one() { return {Kind::ThmOne, 2}; }
  static SearchObjective hankel_det(int m) { return {Kind::HankelDet, m}; }
  static SearchObjective r2() { return {Kind::R2, 2}; }
};

std::string to_string(const SearchObjective& objective);

/// Score of one candidate: s₂² − s₃, −det H_m, or Tr S². Larger means more
/// violating. A vanishing normalizer scores −∞.
double unitary_score(const DensityMatrix& state, const PositiveMap& map, const CMatrix& u,
                     const SearchObjective& objective);

struct SearchOptions {
  int budget = 2000;    // objective evaluations per restart
  int restarts = 20;
  std::uint64_t seed = 42;
  double initial_step = 0.5;
  /// Stop a restart once its score exceeds this value.
  std::optional<double> stop_above;
};

struct UnitarySearchResult {
  GlobalUnitary best_unitary;
  double best_score;
  int evaluations;
  bool converged;
  int best_restart;
};

/// Nelder–Mead over U = U₀ · exp(iH(params)). Restart 0 starts from the
/// identity, restart r > 0 from a Haar-random U₀ with a seed derived from
/// (seed, r). Restarts run in parallel; the merge keeps the maximum score and
/// breaks ties toward the lower restart index.
UnitarySearchResult search_violating_unitary(const DensityMatrix& state, const PositiveMap& map,
                                             const SearchObjective& objective, const SearchOptions& options);

/// splitmix64 step, used to derive independent per-task seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace absep
