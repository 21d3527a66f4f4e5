#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absep/linalg.hpp"
#include "absep/positive_maps.hpp"
#include "absep/states.hpp"

namespace absep {

/// CPTP map stored as a Kraus set, with its Choi matrix Σ E_ij ⊗ E(E_ij).
class QuantumChannel {
 public:
  /// Throws TraceNotOne when Σ K†K misses I by more than
  /// tol::trace_preservation, DimensionMismatch on ragged shapes.
  static QuantumChannel from_kraus(std::vector<CMatrix> kraus, std::string label, bool covariant = false);
  /// Kraus operators from the eigendecomposition of a PSD Choi matrix;
  /// NotPositive when the Choi matrix is not PSD.
  static QuantumChannel from_choi(const CMatrix& choi, int input_dim, int output_dim, std::string label);

  int input_dim() const { return input_dim_; }
  int output_dim() const { return output_dim_; }
  const std::vector<CMatrix>& kraus() const { return kraus_; }
  const CMatrix& choi() const { return choi_; }
  const std::string& label() const { return label_; }
  /// Known to commute with unitary conjugation by construction.
  bool covariant() const { return covariant_; }

  CMatrix operator()(const CMatrix& rho) const;

  /// ‖Σ K†K − I‖_F
  double trace_preservation_residual() const;
  double choi_min_eigenvalue() const;

 private:
  QuantumChannel(std::vector<CMatrix> kraus, CMatrix choi, int in, int out, std::string label, bool covariant)
      : kraus_(std::move(kraus)), choi_(std::move(choi)), input_dim_(in), output_dim_(out),
        label_(std::move(label)), covariant_(covariant) {}

  std::vector<CMatrix> kraus_;
  CMatrix choi_;
  int input_dim_;
  int output_dim_;
  std::string label_;
  bool covariant_;
};

/// Global depolarizing channel p ρ + (1 − p) Tr(ρ) I / D on D = local_dim²,
/// local_dim ∈ {2, 3}. Kraus set {√p I} ∪ {√(1 − p) / D · W_a ⊗ W_b} over
/// the local Weyl operators.
QuantumChannel depolarizing(int local_dim, double p);

QuantumChannel identity_channel(int dim);

/// Amplitude damping with decay `gamma` on the first qubit of two, identity
/// on the second. Not covariant.
QuantumChannel amplitude_damping_first_qubit(double gamma);

/// Σ K ρ K†, revalidated with the input's bipartition.
DensityMatrix apply(const QuantumChannel& channel, const DensityMatrix& state);

/// (id_A ⊗ E)(X) for X on C^{dim_a} ⊗ C^{input_dim}.
CMatrix apply_local(const QuantumChannel& channel, const CMatrix& x, int dim_a);

struct CovarianceOutcome {
  double max_residual;  // max ‖U E(ρ) U† − E(U ρ U†)‖_F over the probes
  bool plausibly_covariant;
};

/// Sampling-based (heuristic) covariance check.
CovarianceOutcome covariance_check(const QuantumChannel& channel, int samples, std::uint64_t seed);

enum class ChannelVerdict { NotAbsolutelySeparating, Inconclusive };
std::string to_string(ChannelVerdict v);

struct SweepOptions {
  /// Grid resolution. d = 2: number of points on q₀ ∈ [0, 1] (default 101).
  /// d = 3: divisions per simplex edge (default 9, i.e. 55 points including
  /// the barycenter). 0 selects the default.
  int grid = 0;
  /// Haar local-basis pairs per grid point for channels not known covariant.
  int local_basis_samples = 20;
  std::uint64_t seed = 42;
};

struct ChannelCriterionReport {
  std::string channel;
  std::optional<double> p;
  std::vector<double> worst_input;  // Schmidt coefficients of the worst grid point
  std::vector<double> q_moments;    // q₁, q₂, q₃ at the worst point
  double worst_margin;              // max q₂² − q₃
  int grid_points;
  int skipped;  // grid points with a vanishing normalizer
  bool max_entangled_is_worst;
  ChannelVerdict verdict;
};

/// Sweeps Schmidt-parameterized pure inputs through the channel, applies
/// id ⊗ Λ to the output and records the worst q₂² − q₃.
ChannelCriterionReport annihilation_sweep(const QuantumChannel& channel, const PositiveMap& map,
                                          const SweepOptions& options = {});

enum class ChannelFamily { Dep2, Dep3 };
ChannelFamily channel_family_by_name(const std::string& name);
int local_dim(ChannelFamily family);
QuantumChannel family_channel(ChannelFamily family, double p);

struct ThresholdOutcome {
  double p_star;
  double lower;  // last p with no violation
  double upper;  // first p with a violation
  int bisection_steps;
  std::vector<std::pair<double, double>> prescan;  // (p, worst margin)
};

/// Bisection on p for the sweep verdict boundary, after a 21-point pre-scan
/// that must show a single Inconclusive → NotAbsolutelySeparating switch
/// (NoSignChange otherwise). Needs tol >= 1e-9.
ThresholdOutcome threshold_scan(ChannelFamily family, const PositiveMap& map, double tol,
                                const SweepOptions& options = {});

}  // namespace absep
