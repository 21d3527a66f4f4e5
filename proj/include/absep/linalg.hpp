#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <limits>
#include <vector>

#include "absep/error.hpp"

namespace absep {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Eigen-decomposition of a Hermitian matrix. Eigenvalues are sorted
/// non-increasing; column k of `eigenvectors` belongs to `eigenvalues(k)`.
struct Spectrum {
  RVector eigenvalues;
  CMatrix eigenvectors;

  double max() const { return eigenvalues(0); }
  double min() const { return eigenvalues(eigenvalues.size() - 1); }
};

/// max_ij |M_ij - conj(M_ji)|
template <typename Derived>
double hermiticity_residual(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol) {
  return hermiticity_residual(m) <= tol;
}

template <typename Derived>
DenseMatrix<typename Derived::Scalar> hermitian_part(const Eigen::MatrixBase<Derived>& m) {
  return (m + m.adjoint()) / typename Derived::RealScalar(2);
}

/// Kronecker product a ⊗ b.
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename Eigen::ScalarBinaryOpTraits<typename DerivedA::Scalar,
                                                      typename DerivedB::Scalar>::ReturnType;
  DenseMatrix<Scalar> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
          Scalar(a(i, j)) * b.template cast<Scalar>();
    }
  }
  return out;
}

/// Tr(m^1), ..., Tr(m^n_max) by iterated multiplication. Imaginary parts are
/// discarded; for Hermitian input they are below tol::imaginary_residue.
template <typename Derived>
std::vector<double> matrix_power_traces(const Eigen::MatrixBase<Derived>& m, int n_max) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::NonSquare, "matrix_power_traces");
  std::vector<double> traces;
  traces.reserve(static_cast<std::size_t>(std::max(n_max, 0)));
  DenseMatrix<typename Derived::Scalar> power = m;
  for (int n = 1; n <= n_max; ++n) {
    if (n > 1) power = (power * m).eval();
    traces.push_back(std::real(power.trace()));
  }
  return traces;
}

/// Cyclic complex Jacobi eigensolver. Throws NonHermitian beyond
/// tol::hermiticity and NoConvergence after tol::jacobi_max_sweeps sweeps.
Spectrum eig_hermitian(const CMatrix& m);

/// Same as eig_hermitian but symmetrizes first; for operators that are
/// Hermitian only up to accumulated rounding.
Spectrum eig_hermitian_relaxed(const CMatrix& m);

RVector eigenvalues_hermitian(const CMatrix& m);

/// Schatten-1 norm, sum of |eigenvalues|.
double trace_norm(const CMatrix& m);

/// Schatten-p norm of a Hermitian matrix, p >= 1.
double schatten_norm(const CMatrix& m, double p);

/// exp(i t h) via the eigendecomposition of h.
CMatrix expm_hermitian_generator(const CMatrix& h, double t);

/// Determinant by LU with partial pivoting; dimension at most 6.
template <typename Derived>
typename Derived::Scalar det_small(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::NonSquare, "det_small");
  if (m.rows() > 6) throw Error(ErrorKind::DimensionMismatch, "det_small supports dimension <= 6");
  if (m.rows() == 0) return typename Derived::Scalar(1);
  return m.eval().partialPivLu().determinant();
}

/// Nearest unitary in Frobenius norm (polar factor U V† of the SVD).
CMatrix polar_unitary(const CMatrix& m);

/// ‖U†U − I‖_F
double unitarity_residual(const CMatrix& u);

/// Tr_B of an operator on C^{dim_a} ⊗ C^{dim_b}.
CMatrix partial_trace_b(const CMatrix& m, int dim_a, int dim_b);

/// Tr_A of an operator on C^{dim_a} ⊗ C^{dim_b}.
CMatrix partial_trace_a(const CMatrix& m, int dim_a, int dim_b);

/// Transpose of the B factor.
CMatrix partial_transpose_b(const CMatrix& m, int dim_a, int dim_b);

/// Matrix unit E_ij of size rows × cols.
CMatrix matrix_unit(int rows, int cols, int i, int j);

/// Pauli matrices.
CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();

}  // namespace absep
