#include <doctest.h>

#include <numbers>

#include "absep/linalg.hpp"
#include "absep/tolerances.hpp"
#include "oracles.hpp"

using namespace absep;

namespace {

CMatrix bell_pt() {
  CMatrix bell = CMatrix::Zero(4, 4);
  bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
  return oracle::partial_transpose_b(bell, 2, 2);
}

}  // namespace

TEST_CASE("eig_hermitian on fixed inputs") {
  const Spectrum id = eig_hermitian(CMatrix::Identity(4, 4));
  CHECK((id.eigenvalues - RVector::Ones(4)).cwiseAbs().maxCoeff() < 1e-14);

  CMatrix diag = CMatrix::Zero(4, 4);
  diag.diagonal() << 0.5, -0.5, 0.5, 0.5;
  const Spectrum d = eig_hermitian(diag);
  CHECK(d.eigenvalues(0) == doctest::Approx(0.5));
  CHECK(d.eigenvalues(3) == doctest::Approx(-0.5));

  const Spectrum pt = eig_hermitian(bell_pt());
  RVector expected(4);
  expected << 0.5, 0.5, 0.5, -0.5;
  CHECK((pt.eigenvalues - expected).cwiseAbs().maxCoeff() < 1e-12);
  // 2×2 block closed form: the {|01⟩, |10⟩} block is [[0, ½], [½, 0]].
  const auto [lo, hi] = oracle::eigenvalues_2x2(bell_pt().block(1, 1, 2, 2));
  CHECK(lo == doctest::Approx(-0.5));
  CHECK(hi == doctest::Approx(0.5));
}

TEST_CASE("eig_hermitian rejects non-Hermitian input") {
  CMatrix m = CMatrix::Identity(3, 3);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(eig_hermitian(m), Error);
  try {
    eig_hermitian(m);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonHermitian);
  }
  CHECK_THROWS_AS(eig_hermitian(CMatrix::Zero(2, 3)), Error);
}

TEST_CASE("eig_hermitian agrees with an independent solver on random matrices") {
  oracle::Rng rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 16;
    const CMatrix h = rng.hermitian(n);
    const Spectrum s = eig_hermitian(h);
    const RVector ref = oracle::eigenvalues(h).reverse();
    REQUIRE((s.eigenvalues - ref).cwiseAbs().maxCoeff() < 1e-10 * (1.0 + ref.cwiseAbs().maxCoeff()));
    for (int k = 1; k < n; ++k) CHECK(s.eigenvalues(k - 1) >= s.eigenvalues(k));
    const CMatrix v = s.eigenvectors;
    CHECK((v.adjoint() * v - CMatrix::Identity(n, n)).norm() < 1e-10);
    CHECK((v * s.eigenvalues.cast<Complex>().asDiagonal() * v.adjoint() - h).cwiseAbs().maxCoeff() <
          tol::reconstruction * (1.0 + h.norm()));
  }
}

TEST_CASE("eig_hermitian handles degenerate spectra") {
  oracle::Rng rng(5);
  const CMatrix u = rng.unitary(6);
  RVector ev(6);
  ev << 1, 1, 1, -2, -2, 0;
  const CMatrix h = u * ev.cast<Complex>().asDiagonal() * u.adjoint();
  const Spectrum s = eig_hermitian(0.5 * (h + h.adjoint()));
  CHECK(s.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(s.eigenvalues(5) == doctest::Approx(-2.0));
}

TEST_CASE("kron") {
  CHECK((kron(CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)) - CMatrix::Identity(4, 4)).norm() == 0.0);
  const CMatrix xx = kron(pauli_x(), pauli_x());
  CMatrix anti = CMatrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) anti(i, 3 - i) = 1.0;
  CHECK((xx - anti).norm() == 0.0);

  oracle::Rng rng(3);
  const CMatrix m = rng.ginibre(3, 3);
  const CMatrix k = kron(matrix_unit(2, 2, 0, 0), m);
  CHECK((k.topLeftCorner(3, 3) - m).norm() == 0.0);
  CHECK(k.bottomRightCorner(3, 3).norm() == 0.0);
  CHECK(k.topRightCorner(3, 3).norm() == 0.0);
}

TEST_CASE("trace_norm") {
  CHECK(trace_norm(CMatrix::Identity(4, 4) / 4.0) == doctest::Approx(1.0));
  CHECK(trace_norm(bell_pt()) == doctest::Approx(2.0));
  CHECK(trace_norm(CMatrix::Zero(3, 3)) == 0.0);
  oracle::Rng rng(8);
  for (int i = 0; i < 50; ++i) {
    const CMatrix h = rng.hermitian(5);
    CHECK(trace_norm(h) == doctest::Approx(oracle::trace_norm(h)).epsilon(1e-10));
  }
}

TEST_CASE("matrix_power_traces") {
  const auto id = matrix_power_traces(CMatrix::Identity(4, 4), 3);
  CHECK(id == std::vector<double>{4, 4, 4});
  CMatrix proj = CMatrix::Zero(4, 4);
  proj(0, 0) = 1.0;
  CHECK(matrix_power_traces(proj, 5) == std::vector<double>{1, 1, 1, 1, 1});
  const auto mm = matrix_power_traces(CMatrix(CMatrix::Identity(4, 4) / 4.0), 3);
  CHECK(mm[0] == doctest::Approx(1.0));
  CHECK(mm[1] == doctest::Approx(0.25));
  CHECK(mm[2] == doctest::Approx(0.0625));
  CHECK_THROWS_AS(matrix_power_traces(CMatrix::Zero(2, 3), 2), Error);

  oracle::Rng rng(21);
  for (int i = 0; i < 50; ++i) {
    const CMatrix h = rng.hermitian(6) / 3.0;
    const auto got = matrix_power_traces(h, 6);
    const auto ref = oracle::power_sums(oracle::eigenvalues(h), 6);
    for (int n = 0; n < 6; ++n) CHECK(got[n] == doctest::Approx(ref[n]).epsilon(1e-9));
  }
}

TEST_CASE("expm_hermitian_generator") {
  CHECK((expm_hermitian_generator(CMatrix::Zero(3, 3), 1.0) - CMatrix::Identity(3, 3)).norm() < 1e-14);
  const CMatrix u = expm_hermitian_generator(pauli_z(), std::numbers::pi);
  CHECK((u + CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
  oracle::Rng rng(9);
  for (int i = 0; i < 100; ++i) {
    const CMatrix v = expm_hermitian_generator(rng.hermitian(1 + i % 9), 0.7);
    CHECK(unitarity_residual(v) <= tol::unitarity);
  }
  // exp(iθσ_x) = cos θ I + i sin θ σ_x
  const CMatrix r = expm_hermitian_generator(pauli_x(), 0.3);
  const CMatrix closed = std::cos(0.3) * CMatrix::Identity(2, 2) + Complex(0, std::sin(0.3)) * pauli_x();
  CHECK((r - closed).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("det_small") {
  CHECK(det_small(RMatrix::Identity(3, 3)) == doctest::Approx(1.0));
  RMatrix d = RMatrix::Zero(2, 2);
  d.diagonal() << 2, 3;
  CHECK(det_small(d) == doctest::Approx(6.0));
  // Moment Hankel matrix of the maximally mixed 2⊗2 output is rank one.
  RMatrix h(3, 3);
  const double s[] = {1.0, 0.25, 0.0625, 0.015625, 0.00390625};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) h(i, j) = s[i + j];
  CHECK(std::abs(det_small(h)) < 1e-15);
  CHECK_THROWS_AS(det_small(RMatrix::Identity(7, 7)), Error);

  oracle::Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    const RMatrix m = rng.hermitian(3).real();
    CHECK(det_small(m) == doctest::Approx(oracle::det_cofactor(m)).epsilon(1e-10));
  }
}

TEST_CASE("polar_unitary and unitarity_residual") {
  oracle::Rng rng(12);
  const CMatrix u = rng.unitary(5);
  CHECK(unitarity_residual(u) < 1e-12);
  CHECK((polar_unitary(u) - u).cwiseAbs().maxCoeff() < 1e-12);
  const CMatrix perturbed = u + 1e-3 * rng.ginibre(5, 5);
  CHECK(unitarity_residual(perturbed) > 1e-5);
  CHECK(unitarity_residual(polar_unitary(perturbed)) < 1e-12);
}

TEST_CASE("partial trace and partial transpose match index-loop references") {
  oracle::Rng rng(30);
  for (int trial = 0; trial < 50; ++trial) {
    const int da = 2 + trial % 2, db = 2 + trial % 3;
    const CMatrix rho = rng.density(da * db);
    CHECK((partial_transpose_b(rho, da, db) - oracle::partial_transpose_b(rho, da, db)).norm() < 1e-15);
    CHECK((partial_trace_b(rho, da, db) - oracle::partial_trace_b(rho, da, db)).norm() < 1e-14);
    CHECK(partial_trace_a(rho, da, db).trace().real() == doctest::Approx(1.0));
  }
  const CMatrix a = rng.density(2), b = rng.density(3);
  CHECK((partial_trace_a(kron(a, b), 2, 3) - b).norm() < 1e-14);
  CHECK((partial_trace_b(kron(a, b), 2, 3) - a).norm() < 1e-14);
  CHECK_THROWS_AS(partial_trace_b(CMatrix::Identity(5, 5), 2, 2), Error);
}

TEST_CASE("property: ‖M‖₂ ≤ ‖M‖₁ ≤ √d ‖M‖₂") {
  oracle::Rng rng(77);
  for (int i = 0; i < 1000; ++i) {
    const int d = 2 + i % 8;
    const CMatrix m = rng.hermitian(d);
    const double one = trace_norm(m), two = schatten_norm(m, 2.0);
    CHECK(two <= one * (1 + 1e-12));
    CHECK(one <= std::sqrt(static_cast<double>(d)) * two * (1 + 1e-12));
  }
}
