#include <doctest.h>

#include "absep/states.hpp"
#include "absep/tolerances.hpp"
#include "oracles.hpp"

using namespace absep;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an absep::Error");
  return ErrorKind::Parse;
}

CMatrix phi_plus(int d) {
  CVector v = CVector::Zero(d * d);
  for (int j = 0; j < d; ++j) v(j * d + j) = 1.0 / std::sqrt(static_cast<double>(d));
  return v * v.adjoint();
}

}  // namespace

TEST_CASE("validate accepts and rejects") {
  CHECK_NOTHROW(validate(CMatrix::Identity(4, 4) / 4.0, 2, 2));
  CHECK(kind_of([] { validate(CMatrix::Identity(2, 2) / 2.0, 2, 2); }) == ErrorKind::DimensionMismatch);

  CMatrix skew = CMatrix::Identity(4, 4) / 4.0;
  skew(0, 1) = Complex(0, 0.1);
  CHECK(kind_of([&] { validate(skew, 2, 2); }) == ErrorKind::NonHermitian);

  const CMatrix shifted = phi_plus(2) - 0.1 * CMatrix::Identity(4, 4);
  try {
    validate(shifted, 2, 2);
    FAIL("expected NotPSD");
  } catch (const NotPsdError& e) {
    CHECK(e.kind() == ErrorKind::NotPSD);
    CHECK(e.min_eigenvalue() == doctest::Approx(-0.1));
  }
  CHECK(kind_of([] { validate(CMatrix::Identity(4, 4) / 2.0, 2, 2); }) == ErrorKind::TraceNotOne);
}

TEST_CASE("named states") {
  CMatrix r1(4, 4);
  r1 << 1, 0, 0, 1, 0, 1, 1, 0, 0, 1, 1, 0, 1, 0, 0, 1;
  CHECK((rho1().matrix() - r1 / 4.0).norm() < 1e-15);

  const DensityMatrix r2 = rho2();
  CHECK(r2.dim_a() == 2);
  CHECK(r2.dim_b() == 4);
  const oracle::RVector ev = oracle::eigenvalues(r2.matrix()).reverse();
  CHECK(ev(0) == doctest::Approx(0.5));
  CHECK(ev(1) == doctest::Approx(0.5));
  CHECK(std::abs(ev(2)) < 1e-14);

  CHECK((rho3(0.0).matrix() - CMatrix::Identity(9, 9) / 9.0).norm() < 1e-15);
  CHECK_THROWS_AS(rho4(0.5, 0.5), Error);

  // p = 1 leaves ρ_b: weights 2/7 on φ⁺ and b/7, (5 − b)/7 on σ±
  const DensityMatrix r4 = rho4(1.0, 1.5);
  const CMatrix pp = phi_plus(3);
  CHECK((pp * r4.matrix()).trace().real() == doctest::Approx(2.0 / 7.0));
  CVector k01 = CVector::Zero(9), k10 = CVector::Zero(9);
  k01(1) = 1.0;  // |01⟩ belongs to σ₊
  k10(3) = 1.0;  // |10⟩ belongs to σ₋
  CHECK((k01.adjoint() * r4.matrix() * k01)(0).real() == doctest::Approx(1.5 / 21.0));
  CHECK((k10.adjoint() * r4.matrix() * k10)(0).real() == doctest::Approx(3.5 / 21.0));
  CHECK((named_state(NamedState::Rho4, {1.0, 1.5}).matrix() - r4.matrix()).norm() < 1e-15);
}

TEST_CASE("isotropic") {
  CHECK((isotropic(3, 1.0).matrix() - phi_plus(3)).norm() < 1e-14);
  CHECK((isotropic(2, 0.0).matrix() - CMatrix::Identity(4, 4) / 4.0).norm() < 1e-15);
  // p = 1/4 sits on the separability boundary: its partial transpose is PSD and singular.
  const CMatrix pt = oracle::partial_transpose_b(isotropic(3, 0.25).matrix(), 3, 3);
  CHECK(std::abs(oracle::eigenvalues(pt)(0)) < 1e-14);
  CHECK(oracle::eigenvalues(oracle::partial_transpose_b(isotropic(3, 0.3).matrix(), 3, 3))(0) < -1e-3);
  for (double p : {0.0, 0.2, 0.5, 1.0}) CHECK(isotropic(3, p).purity() == doctest::Approx(oracle::isotropic_purity(3, p)));
  CHECK(kind_of([] { isotropic(3, 1.5); }) == ErrorKind::ParamOutOfRange);
}

TEST_CASE("schmidt states") {
  CMatrix zz = CMatrix::Zero(4, 4);
  zz(0, 0) = 1.0;
  CHECK((schmidt_state({1.0, 0.0}).matrix() - zz).norm() < 1e-15);
  CHECK((schmidt_state({0.5, 0.5}).matrix() - phi_plus(2)).norm() < 1e-15);
  CHECK((schmidt_state({1.0 / 3, 1.0 / 3, 1.0 / 3}).matrix() - phi_plus(3)).norm() < 1e-14);
  CHECK(kind_of([] { schmidt_state({0.7, 0.7}); }) == ErrorKind::NotNormalized);
  CHECK(kind_of([] { schmidt_state({1.2, -0.2}); }) == ErrorKind::NotNormalized);

  oracle::Rng rng(2);
  const SchmidtPureState s = make_schmidt({0.6, 0.4}, rng.unitary(2), rng.unitary(2));
  const CMatrix reduced = oracle::partial_trace_b(s.density().matrix(), 2, 2);
  const oracle::RVector ev = oracle::eigenvalues(reduced);
  CHECK(ev(0) == doctest::Approx(0.4));
  CHECK(ev(1) == doctest::Approx(0.6));
}

TEST_CASE("random states are valid and seed-determined") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const DensityMatrix r = random_density(2, 3, seed);
    CHECK(oracle::eigenvalues(r.matrix())(0) > -1e-12);
    CHECK(r.matrix().trace().real() == doctest::Approx(1.0));
  }
  CHECK((random_density(2, 2, 17).matrix() - random_density(2, 2, 17).matrix()).norm() == 0.0);
  CHECK((random_density(2, 2, 17).matrix() - random_density(2, 2, 18).matrix()).norm() > 1e-6);
  const DensityMatrix pure = random_pure(3, 3, 4);
  CHECK(pure.purity() == doctest::Approx(1.0));
}

TEST_CASE("conjugated keeps the invariants") {
  oracle::Rng rng(14);
  const DensityMatrix r = random_density(2, 2, 1);
  const CMatrix u = rng.unitary(4);
  const DensityMatrix c = r.conjugated(u);
  CHECK((c.matrix() - u * r.matrix() * u.adjoint()).norm() < 1e-13);
  CHECK(c.purity() == doctest::Approx(r.purity()));
  CHECK_THROWS_AS(r.conjugated(CMatrix::Identity(3, 3)), Error);
}
