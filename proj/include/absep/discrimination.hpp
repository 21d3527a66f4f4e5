#pragma once

#include <optional>

#include "absep/channels.hpp"
#include "absep/linalg.hpp"
#include "absep/positive_maps.hpp"
#include "absep/states.hpp"
#include "absep/unitaries.hpp"

namespace absep {

/// Λ_TP(ρ) = Λ'(ρ) + [Tr ρ − Tr Λ'(ρ)] |0⟩⟨0| with Λ' = Λ / μ(Λ),
/// μ(Λ) = max_ρ Tr Λ(ρ) = λ_max(Λ†(I)).
///
/// Output layout: indices [0, d) carry Λ'(ρ). When Λ' is already trace
/// preserving the correction vanishes and only the flag |f⟩ is appended
/// (output dimension d + 1). Otherwise the correction direction |0⟩ gets its
/// own index d and |f⟩ sits at d + 1, so the two never overlap.
class TracePreservingMap {
 public:
  const PositiveMap& base() const { return base_; }
  double mu() const { return mu_; }
  int input_dim() const { return base_.input_dim(); }
  /// Dimension of the space Λ_TA maps into (includes |f⟩).
  int extended_output_dim() const { return extended_dim_; }
  /// Index of the flag direction |f⟩ used by the trace-annihilating map.
  int flag_index() const { return extended_dim_ - 1; }
  bool has_correction() const { return has_correction_; }

  /// Λ_TP(X), embedded in the extended output space.
  CMatrix operator()(const CMatrix& x) const;

  friend TracePreservingMap make_trace_preserving(const PositiveMap& map);

 private:
  TracePreservingMap(PositiveMap base, double mu, bool correction)
      : base_(std::move(base)), mu_(mu), has_correction_(correction),
        extended_dim_(base_.output_dim() + (correction ? 2 : 1)) {}

  PositiveMap base_;
  double mu_;
  bool has_correction_;
  int extended_dim_;
};

/// NotPositive if the positivity probes fail, DegenerateMap when μ(Λ) vanishes.
TracePreservingMap make_trace_preserving(const PositiveMap& map);

/// Λ_TA(ρ) = Λ_TP(ρ) − Tr(ρ) |f⟩⟨f|, stored by its images of the matrix units.
class TraceAnnihilatingMap {
 public:
  explicit TraceAnnihilatingMap(TracePreservingMap tp);

  const TracePreservingMap& trace_preserving() const { return tp_; }
  int input_dim() const { return tp_.input_dim(); }
  int output_dim() const { return tp_.extended_output_dim(); }
  const CMatrix& unit_image(int i, int j) const { return images_[static_cast<std::size_t>(i * input_dim() + j)]; }

  CMatrix operator()(const CMatrix& x) const;
  /// Σ_ij E_ij ⊗ Λ_TA(E_ij)
  CMatrix choi() const;

 private:
  TracePreservingMap tp_;
  std::vector<CMatrix> images_;
};

TraceAnnihilatingMap trace_annihilating(const TracePreservingMap& tp);

/// Two channels with E₁ − E₂ = k Λ_TA.
///
/// With J = Choi(Λ_TA) = J⁺ − J⁻ (Jordan split) and M = Tr_out J⁺ = Tr_out J⁻,
/// the channels are Choi(E_±) = (J^± + (c I − M) ⊗ σ₀) / c for the completion
/// constant c = λ_max(M); hence k = 1 / c.
struct ChannelPair {
  QuantumChannel e1;
  QuantumChannel e2;
  double k;
  double completion;  // c = λ_max(M)
  TraceAnnihilatingMap ta;
};

/// `sigma0` defaults to the flag state |f⟩⟨f|. DegenerateMap when c <= 1e-12.
ChannelPair channel_pair(const TraceAnnihilatingMap& ta, const std::optional<CMatrix>& sigma0 = std::nullopt);

struct AdvantageReport {
  double distance;           // ‖(id ⊗ E₁)(UσU†) − (id ⊗ E₂)(UσU†)‖₁
  double baseline;           // 2k, the value every absolutely separable input attains
  double advantage;          // distance − 2k
  double identity_rhs;       // k (‖(id ⊗ Λ_TP)(UσU†)‖₁ + 1)
  double identity_residual;  // |distance − identity_rhs|
  double tp_min_eig;         // λ_min((id ⊗ Λ_TP)(UσU†))
  bool tp_output_negative;   // tp_min_eig < −tol::strict
  bool consistent;           // (advantage > k·tol::strict) == tp_output_negative
  double p_success;          // ½ (1 + distance / 2)
  double p_success_baseline; // ½ (1 + k)
};

/// DimensionMismatch unless the pair's input dimension equals state.dim_b().
AdvantageReport advantage_test(const DensityMatrix& state, const GlobalUnitary& u, const ChannelPair& pair);

}  // namespace absep
