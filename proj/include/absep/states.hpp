#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "absep/linalg.hpp"

namespace absep {

/// A validated bipartite density matrix on C^{dim_a} ⊗ C^{dim_b}.
///
/// Instances only come out of `validate` (or constructors that call it), so
/// holding one means: Hermitian within tol::hermiticity, smallest eigenvalue
/// at least tol::psd_floor, unit trace within tol::trace.
class DensityMatrix {
 public:
  int dim_a() const { return dim_a_; }
  int dim_b() const { return dim_b_; }
  int dim() const { return dim_a_ * dim_b_; }
  const CMatrix& matrix() const { return matrix_; }

  double purity() const { return std::real((matrix_ * matrix_).trace()); }

  /// U ρ U†, revalidated. `u` must act on the full space.
  DensityMatrix conjugated(const CMatrix& u) const;

  friend DensityMatrix validate(const CMatrix& raw, int dim_a, int dim_b);

 private:
  DensityMatrix(CMatrix m, int dim_a, int dim_b) : dim_a_(dim_a), dim_b_(dim_b), matrix_(std::move(m)) {}

  int dim_a_;
  int dim_b_;
  CMatrix matrix_;
};

/// Checks `raw` against the density-matrix invariants. Errors: DimensionMismatch,
/// NotHermitian (ErrorKind::NonHermitian), NotPSD (NotPsdError, carries the
/// minimum eigenvalue), TraceNotOne.
DensityMatrix validate(const CMatrix& raw, int dim_a, int dim_b);

struct SchmidtPureState {
  std::vector<double> coefficients;  // q_j
  CMatrix basis_a;                   // columns |φ_j⟩
  CMatrix basis_b;                   // columns |φ̃_j⟩

  /// |ψ⟩ = Σ_j √q_j |φ_j⟩ ⊗ |φ̃_j⟩
  CVector ket() const;
  DensityMatrix density() const;
};

/// Builds a Schmidt state with explicit local bases; NotNormalized when the
/// coefficients are negative or do not sum to one within tol::trace.
SchmidtPureState make_schmidt(std::vector<double> coefficients, CMatrix basis_a, CMatrix basis_b);

/// Pure state Σ √q_j |jj⟩ in the computational bases.
DensityMatrix schmidt_state(const std::vector<double>& coefficients);

/// p |φ⁺⟩⟨φ⁺| + (1 − p) I / d², with |φ⁺⟩ = Σ_j |jj⟩ / √d.
DensityMatrix isotropic(int d, double p);

DensityMatrix maximally_mixed(int dim_a, int dim_b);
DensityMatrix bell_state();
/// |i j⟩⟨i j| on C^{dim_a} ⊗ C^{dim_b}.
DensityMatrix product_basis_state(int dim_a, int dim_b, int i, int j);

/// G G† / Tr(G G†) for a seeded complex Ginibre G. Deterministic per seed.
DensityMatrix random_density(int dim_a, int dim_b, std::uint64_t seed);

/// Random pure state (Haar-distributed ket), deterministic per seed.
DensityMatrix random_pure(int dim_a, int dim_b, std::uint64_t seed);

enum class NamedState { Rho1, Rho2, Rho3, Rho4 };

struct NamedStateParams {
  double p = 1.0;
  double b = 1.5;
};

// Named reference states: rho1 (2⊗2), rho2 (2⊗4), rho3(p) isotropic 3⊗3,
// rho4(p, b) = p ρ_b + (1 − p) I/9 with ρ_b PPT for b in [1, 4].
DensityMatrix named_state(NamedState id, const NamedStateParams& params = {});
DensityMatrix rho1();
DensityMatrix rho2();
DensityMatrix rho3(double p);
DensityMatrix rho4(double p, double b);

/// ρ_b = 2/7 |φ⁺⟩⟨φ⁺| + b/7 σ₊ + (5 − b)/7 σ₋ on 3⊗3.
CMatrix rho_b_matrix(double b);

}  // namespace absep
