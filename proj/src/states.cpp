#include "absep/states.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "absep/tolerances.hpp"

namespace absep {

namespace {

void require_unit_interval(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0))
    throw Error(ErrorKind::ParamOutOfRange, std::string(name) + " must lie in [0, 1]");
}

CVector basis_ket(int dim, int k) {
  CVector v = CVector::Zero(dim);
  v(k) = 1.0;
  return v;
}

CMatrix ginibre(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

}  // namespace

DensityMatrix validate(const CMatrix& raw, int dim_a, int dim_b) {
  if (dim_a < 1 || dim_b < 1 || raw.rows() != raw.cols() || raw.rows() != dim_a * dim_b) {
    std::ostringstream msg;
    msg << raw.rows() << "x" << raw.cols() << " matrix does not match " << dim_a << "⊗" << dim_b;
    throw Error(ErrorKind::DimensionMismatch, msg.str());
  }
  const double residual = hermiticity_residual(raw);
  if (residual > tol::hermiticity)
    throw Error(ErrorKind::NonHermitian, "hermiticity residual " + std::to_string(residual));
  const CMatrix m = hermitian_part(raw);
  const double min_eig = eig_hermitian(m).min();
  if (min_eig < tol::psd_floor) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "minimum eigenvalue " << min_eig;
    throw NotPsdError(min_eig, msg.str());
  }
  const double tr = std::real(m.trace());
  if (std::abs(tr - 1.0) > tol::trace) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "trace " << tr;
    throw Error(ErrorKind::TraceNotOne, msg.str());
  }
  return DensityMatrix(m, dim_a, dim_b);
}

DensityMatrix DensityMatrix::conjugated(const CMatrix& u) const {
  if (u.rows() != dim() || u.cols() != dim())
    throw Error(ErrorKind::DimensionMismatch, "unitary does not act on the full space");
  CMatrix out = u * matrix_ * u.adjoint();
  // Renormalize rounding in the trace; the unitary itself is checked elsewhere.
  out = hermitian_part(out);
  out /= std::real(out.trace());
  return validate(out, dim_a_, dim_b_);
}

CVector SchmidtPureState::ket() const {
  const int da = static_cast<int>(basis_a.rows());
  const int db = static_cast<int>(basis_b.rows());
  CVector psi = CVector::Zero(da * db);
  for (std::size_t j = 0; j < coefficients.size(); ++j) {
    const auto col = static_cast<Eigen::Index>(j);
    psi += std::sqrt(coefficients[j]) * kron(basis_a.col(col), basis_b.col(col));
  }
  return psi;
}

DensityMatrix SchmidtPureState::density() const {
  const CVector psi = ket();
  return validate(psi * psi.adjoint(), static_cast<int>(basis_a.rows()), static_cast<int>(basis_b.rows()));
}

SchmidtPureState make_schmidt(std::vector<double> coefficients, CMatrix basis_a, CMatrix basis_b) {
  double sum = 0.0;
  for (double q : coefficients) {
    if (q < 0.0) throw Error(ErrorKind::NotNormalized, "negative Schmidt coefficient");
    sum += q;
  }
  if (coefficients.empty() || std::abs(sum - 1.0) > tol::trace)
    throw Error(ErrorKind::NotNormalized, "Schmidt coefficients sum to " + std::to_string(sum));
  const auto k = static_cast<Eigen::Index>(coefficients.size());
  if (basis_a.cols() < k || basis_b.cols() < k)
    throw Error(ErrorKind::DimensionMismatch, "local bases shorter than coefficient list");
  return SchmidtPureState{std::move(coefficients), std::move(basis_a), std::move(basis_b)};
}

DensityMatrix schmidt_state(const std::vector<double>& coefficients) {
  const int d = static_cast<int>(coefficients.size());
  if (d < 1) throw Error(ErrorKind::NotNormalized, "empty Schmidt coefficient list");
  return make_schmidt(coefficients, CMatrix::Identity(d, d), CMatrix::Identity(d, d)).density();
}

DensityMatrix isotropic(int d, double p) {
  if (d < 2) throw Error(ErrorKind::ParamOutOfRange, "isotropic state needs d >= 2");
  require_unit_interval(p, "p");
  CVector phi = CVector::Zero(d * d);
  for (int j = 0; j < d; ++j) phi(j * d + j) = 1.0 / std::sqrt(static_cast<double>(d));
  const CMatrix m = p * (phi * phi.adjoint()) + (1.0 - p) / (d * d) * CMatrix::Identity(d * d, d * d);
  return validate(m, d, d);
}

DensityMatrix maximally_mixed(int dim_a, int dim_b) {
  const int n = dim_a * dim_b;
  return validate(CMatrix::Identity(n, n) / static_cast<double>(n), dim_a, dim_b);
}

DensityMatrix bell_state() { return schmidt_state({0.5, 0.5}); }

DensityMatrix product_basis_state(int dim_a, int dim_b, int i, int j) {
  if (i < 0 || i >= dim_a || j < 0 || j >= dim_b) throw Error(ErrorKind::ParamOutOfRange, "basis index");
  const CVector psi = kron(basis_ket(dim_a, i), basis_ket(dim_b, j));
  return validate(psi * psi.adjoint(), dim_a, dim_b);
}

DensityMatrix random_density(int dim_a, int dim_b, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = dim_a * dim_b;
  const CMatrix g = ginibre(n, n, rng);
  CMatrix m = g * g.adjoint();
  m = hermitian_part(m);
  m /= std::real(m.trace());
  return validate(m, dim_a, dim_b);
}

DensityMatrix random_pure(int dim_a, int dim_b, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = dim_a * dim_b;
  CVector psi = ginibre(n, 1, rng).col(0);
  psi.normalize();
  return validate(psi * psi.adjoint(), dim_a, dim_b);
}

DensityMatrix rho1() {
  CMatrix m(4, 4);
  m << 1, 0, 0, 1,
       0, 1, 1, 0,
       0, 1, 1, 0,
       1, 0, 0, 1;
  return validate(m / 4.0, 2, 2);
}

DensityMatrix rho2() {
  CMatrix m = CMatrix::Zero(8, 8);
  for (auto [i, j] : {std::pair{0, 0}, {0, 2}, {2, 0}, {2, 2}, {5, 5}, {5, 7}, {7, 5}, {7, 7}}) m(i, j) = 0.25;
  return validate(m, 2, 4);
}

DensityMatrix rho3(double p) { return isotropic(3, p); }

CMatrix rho_b_matrix(double b) {
  auto proj = [](int i, int j) {
    const CVector v = kron(basis_ket(3, i), basis_ket(3, j));
    return CMatrix(v * v.adjoint());
  };
  CVector phi = CVector::Zero(9);
  for (int j = 0; j < 3; ++j) phi(j * 3 + j) = 1.0 / std::sqrt(3.0);
  const CMatrix sigma_plus = (proj(0, 1) + proj(1, 2) + proj(2, 0)) / 3.0;
  const CMatrix sigma_minus = (proj(1, 0) + proj(2, 1) + proj(0, 2)) / 3.0;
  return 2.0 / 7.0 * (phi * phi.adjoint()) + b / 7.0 * sigma_plus + (5.0 - b) / 7.0 * sigma_minus;
}

DensityMatrix rho4(double p, double b) {
  require_unit_interval(p, "p");
  if (!(b >= 1.0 && b <= 4.0)) throw Error(ErrorKind::ParamOutOfRange, "b must lie in [1, 4]");
  const CMatrix m = p * rho_b_matrix(b) + (1.0 - p) / 9.0 * CMatrix::Identity(9, 9);
  return validate(m, 3, 3);
}

DensityMatrix named_state(NamedState id, const NamedStateParams& params) {
  switch (id) {
    case NamedState::Rho1: return rho1();
    case NamedState::Rho2: return rho2();
    case NamedState::Rho3: return rho3(params.p);
    case NamedState::Rho4: return rho4(params.p, params.b);
  }
  throw Error(ErrorKind::ParamOutOfRange, "unknown named state");
}

}  // namespace absep
