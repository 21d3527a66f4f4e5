#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "absep/linalg.hpp"
#include "absep/states.hpp"

namespace absep {

enum class MapKind { Transpose, Reduction, Custom };

/// A linear map M_in → M_out stored by its action on the matrix units E_ij.
/// Applying it is a weighted sum of the stored images.
class PositiveMap {
 public:
  static PositiveMap transpose(int dim);
  /// X ↦ Tr(X) I − X
  static PositiveMap reduction(int dim);
  /// `unit_images[i * input_dim + j]` is Λ(E_ij). Positivity is witnessed on
  /// seeded random PSD probes; throws NotPositive when a probe fails.
  static PositiveMap custom(std::string name, int input_dim, int output_dim,
                            std::vector<CMatrix> unit_images, bool decomposable);

  int input_dim() const { return input_dim_; }
  int output_dim() const { return output_dim_; }
  MapKind kind() const { return kind_; }
  bool decomposable() const { return decomposable_; }
  const std::string& name() const { return name_; }
  const CMatrix& unit_image(int i, int j) const { return unit_images_[static_cast<std::size_t>(i * input_dim_ + j)]; }

  CMatrix operator()(const CMatrix& x) const;

  /// factor · Λ; same kind flag, name prefixed.
  PositiveMap scaled(double factor) const;

  /// Λ†(I), the operator with Tr Λ(ρ) = Tr(ρ Λ†(I)).
  CMatrix dual_of_identity() const;

  /// Choi matrix Σ_ij E_ij ⊗ Λ(E_ij).
  CMatrix choi() const;

 private:
  PositiveMap(std::string name, MapKind kind, int input_dim, int output_dim,
              std::vector<CMatrix> images, bool decomposable);

  std::string name_;
  MapKind kind_;
  int input_dim_;
  int output_dim_;
  std::vector<CMatrix> unit_images_;
  bool decomposable_;
};

/// Resolves "transpose" / "reduction" (case-sensitive) for the given dimension.
PositiveMap map_by_name(const std::string& name, int dim);

/// Smallest eigenvalue of Λ(ρ) over `samples` seeded random PSD inputs.
double positivity_witness(const PositiveMap& map, int samples = 200, std::uint64_t seed = 7);

/// (id_A ⊗ Λ)(X) for X on C^{dim_a} ⊗ C^{input_dim}: Λ applied to each
/// input_dim × input_dim block.
CMatrix apply_one_sided(const PositiveMap& map, const CMatrix& x, int dim_a);
CMatrix apply_one_sided(const PositiveMap& map, const DensityMatrix& state);

struct NormalizedOutput {
  CMatrix op;         // S_Λ, R_Λ̃ or Q_Λ
  double normalizer;  // Tr[(id ⊗ Λ)(·)]
  bool is_psd;
  double min_eig;
};

/// (id ⊗ Λ)(X) / Tr[(id ⊗ Λ)(X)]; ZeroNormalizer when |Tr| <= tol::zero_normalizer.
NormalizedOutput normalized_output(const PositiveMap& map, const CMatrix& x, int dim_a);

/// Same with X = U ρ U†.
NormalizedOutput normalized_output(const PositiveMap& map, const DensityMatrix& state, const CMatrix& u);

}  // namespace absep
