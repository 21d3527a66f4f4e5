#include "absep/linalg.hpp"

#include <cmath>
#include <numeric>

#include "absep/tolerances.hpp"

namespace absep {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonHermitian: return "NonHermitian";
    case ErrorKind::NonSquare: return "NonSquare";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::TraceNotOne: return "TraceNotOne";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::ZeroNormalizer: return "ZeroNormalizer";
    case ErrorKind::OrderTooLow: return "OrderTooLow";
    case ErrorKind::NotTwoByD: return "NotTwoByD";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::NoSignChange: return "NoSignChange";
    case ErrorKind::DegenerateMap: return "DegenerateMap";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

namespace {

double off_diagonal_norm2(const CMatrix& a) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) sum += std::norm(a(i, j));
  return sum;
}

Spectrum jacobi(CMatrix a) {
  const Eigen::Index n = a.rows();
  CMatrix v = CMatrix::Identity(n, n);
  const double scale2 = std::max(a.squaredNorm(), std::numeric_limits<double>::min());
  const double eps2 = std::pow(static_cast<double>(n) * std::numeric_limits<double>::epsilon(), 2);

  int sweep = 0;
  while (off_diagonal_norm2(a) > eps2 * scale2) {
    if (sweep++ >= tol::jacobi_max_sweeps)
      throw Error(ErrorKind::NoConvergence, "Jacobi sweep cap reached");
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        // A_pq = |A_pq| e^{iφ}: the phase is absorbed into the p coordinate,
        // leaving a real symmetric 2×2 rotation.
        const Complex phase = apq / mag;
        const double app = std::real(a(p, p));
        const double aqq = std::real(a(q, q));
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // G = diag(e^{iφ}, 1) · [[c, s], [-s, c]]
        const Complex g00 = phase * c, g01 = phase * s, g10 = -s, g11 = c;

        const CVector col_p = a.col(p), col_q = a.col(q);
        a.col(p) = col_p * g00 + col_q * g10;
        a.col(q) = col_p * g01 + col_q * g11;
        const Eigen::RowVectorXcd row_p = a.row(p), row_q = a.row(q);
        a.row(p) = std::conj(g00) * row_p + std::conj(g10) * row_q;
        a.row(q) = std::conj(g01) * row_p + std::conj(g11) * row_q;
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = std::real(a(p, p));
        a(q, q) = std::real(a(q, q));

        const CVector vp = v.col(p), vq = v.col(q);
        v.col(p) = vp * g00 + vq * g10;
        v.col(q) = vp * g01 + vq * g11;
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    return std::real(a(x, x)) > std::real(a(y, y));
  });
  Spectrum out{RVector(n), CMatrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = std::real(a(order[k], order[k]));
    out.eigenvectors.col(k) = v.col(order[k]);
  }
  return out;
}

}  // namespace

Spectrum eig_hermitian(const CMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::NonSquare, "eig_hermitian");
  const double residual = hermiticity_residual(m);
  if (residual > tol::hermiticity)
    throw Error(ErrorKind::NonHermitian, "symmetry residual " + std::to_string(residual));
  return jacobi(hermitian_part(m));
}

Spectrum eig_hermitian_relaxed(const CMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::NonSquare, "eig_hermitian");
  return jacobi(hermitian_part(m));
}

RVector eigenvalues_hermitian(const CMatrix& m) { return eig_hermitian_relaxed(m).eigenvalues; }

double trace_norm(const CMatrix& m) { return eig_hermitian_relaxed(m).eigenvalues.cwiseAbs().sum(); }

double schatten_norm(const CMatrix& m, double p) {
  const RVector ev = eig_hermitian_relaxed(m).eigenvalues;
  return std::pow(ev.cwiseAbs().array().pow(p).sum(), 1.0 / p);
}

CMatrix expm_hermitian_generator(const CMatrix& h, double t) {
  const Spectrum spec = eig_hermitian(h);
  CVector phases(spec.eigenvalues.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k)
    phases(k) = std::exp(Complex(0.0, t * spec.eigenvalues(k)));
  return spec.eigenvectors * phases.asDiagonal() * spec.eigenvectors.adjoint();
}

CMatrix polar_unitary(const CMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::NonSquare, "polar_unitary");
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

double unitarity_residual(const CMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  return (u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())).norm();
}

CMatrix partial_trace_b(const CMatrix& m, int dim_a, int dim_b) {
  if (m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b)
    throw Error(ErrorKind::DimensionMismatch, "partial_trace_b");
  CMatrix out = CMatrix::Zero(dim_a, dim_a);
  for (int i = 0; i < dim_a; ++i)
    for (int j = 0; j < dim_a; ++j) out(i, j) = m.block(i * dim_b, j * dim_b, dim_b, dim_b).trace();
  return out;
}

CMatrix partial_trace_a(const CMatrix& m, int dim_a, int dim_b) {
  if (m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b)
    throw Error(ErrorKind::DimensionMismatch, "partial_trace_a");
  CMatrix out = CMatrix::Zero(dim_b, dim_b);
  for (int i = 0; i < dim_a; ++i) out += m.block(i * dim_b, i * dim_b, dim_b, dim_b);
  return out;
}

CMatrix partial_transpose_b(const CMatrix& m, int dim_a, int dim_b) {
  if (m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b)
    throw Error(ErrorKind::DimensionMismatch, "partial_transpose_b");
  CMatrix out(m.rows(), m.cols());
  for (int i = 0; i < dim_a; ++i)
    for (int j = 0; j < dim_a; ++j)
      out.block(i * dim_b, j * dim_b, dim_b, dim_b) = m.block(i * dim_b, j * dim_b, dim_b, dim_b).transpose();
  return out;
}

CMatrix matrix_unit(int rows, int cols, int i, int j) {
  CMatrix e = CMatrix::Zero(rows, cols);
  e(i, j) = 1.0;
  return e;
}

CMatrix pauli_x() { return (CMatrix(2, 2) << 0.0, 1.0, 1.0, 0.0).finished(); }
CMatrix pauli_y() { return (CMatrix(2, 2) << 0.0, Complex(0, -1), Complex(0, 1), 0.0).finished(); }
CMatrix pauli_z() { return (CMatrix(2, 2) << 1.0, 0.0, 0.0, -1.0).finished(); }

}  // namespace absep
