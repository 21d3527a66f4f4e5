#include <doctest.h>

#include <numbers>

#include "absep/detection.hpp"
#include "absep/nelder_mead.hpp"
#include "absep/tolerances.hpp"
#include "absep/unitaries.hpp"
#include "oracles.hpp"

using namespace absep;

TEST_CASE("named unitaries") {
  const GlobalUnitary u1 = named_unitary(NamedUnitary::U1);
  CHECK(u1.dim() == 4);
  CHECK(u1.matrix()(0, 0).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(u1.matrix()(3, 0).real() == doctest::Approx(-1.0 / std::sqrt(2.0)));
  CHECK(u1.matrix()(1, 1).real() == doctest::Approx(1.0));

  for (NamedUnitary id : {NamedUnitary::U1, NamedUnitary::U2, NamedUnitary::U3, NamedUnitary::U4}) {
    const GlobalUnitary u = named_unitary(id, std::numbers::pi / 18, 5 * std::numbers::pi / 6);
    CHECK(unitarity_residual(u.matrix()) <= tol::unitarity);
    CHECK_FALSE(u.polar_corrected());
  }
  CHECK(named_unitary(NamedUnitary::U3).dim() == 9);

  // U3 only mixes |00⟩ and |22⟩.
  const CMatrix u3 = named_unitary(NamedUnitary::U3).matrix();
  CMatrix rest = u3;
  rest(0, 0) = rest(0, 8) = rest(8, 0) = rest(8, 8) = 0.0;
  CMatrix id_rest = CMatrix::Identity(9, 9);
  id_rest(0, 0) = id_rest(8, 8) = 0.0;
  CHECK((rest - id_rest).norm() < 1e-15);

  // U4 is block diagonal 8 ⊕ 1.
  const CMatrix u4 = named_unitary(NamedUnitary::U4, 0.3, 1.1).matrix();
  CHECK(u4.row(8).head(8).norm() == 0.0);
  CHECK(std::abs(u4(8, 8) - Complex(1.0)) < 1e-15);
  CHECK((u4 - named_unitary(NamedUnitary::U4, 0.3, 1.2).matrix()).norm() > 1e-3);
}

TEST_CASE("raw U2 table is not unitary and projects to the cleaned matrix") {
  const CMatrix raw = u2_raw();
  CHECK(unitarity_residual(raw) > 0.1);
  CHECK_THROWS_AS(GlobalUnitary::checked(raw, "raw"), Error);
  const GlobalUnitary fixed = GlobalUnitary::with_polar_fallback(raw, "raw");
  CHECK(fixed.polar_corrected());
  CHECK(unitarity_residual(fixed.matrix()) <= tol::unitarity);

  // Both repairs give the same s₂² − s₃ margin on rho2.
  const PositiveMap t = PositiveMap::transpose(4);
  const double cleaned = unitary_score(rho2(), t, named_unitary(NamedUnitary::U2).matrix(), SearchObjective::thm_one());
  const double polar = unitary_score(rho2(), t, fixed.matrix(), SearchObjective::thm_one());
  CHECK(cleaned == doctest::Approx(0.09375));
  CHECK(polar == doctest::Approx(cleaned).epsilon(1e-9));
}

TEST_CASE("haar_random") {
  const GlobalUnitary one = haar_random(1, 3);
  CHECK(std::abs(std::abs(one.matrix()(0, 0)) - 1.0) < 1e-14);
  for (std::uint64_t s = 0; s < 50; ++s) CHECK(unitarity_residual(haar_random(6, s).matrix()) <= tol::unitarity);
  CHECK((haar_random(4, 1).matrix() - haar_random(4, 2).matrix()).norm() > 1e-6);
  CHECK((haar_random(4, 1).matrix() - haar_random(4, 1).matrix()).norm() == 0.0);

  // First and second moments: E|U_ij|² = 1/d, E|U_ij|⁴ = 2/(d(d+1)).
  const int d = 3, n = 4000;
  double m2 = 0.0, m4 = 0.0;
  for (int s = 0; s < n; ++s) {
    const double a = std::norm(haar_random(d, 1000 + s).matrix()(1, 2));
    m2 += a;
    m4 += a * a;
  }
  CHECK(m2 / n == doctest::Approx(1.0 / d).epsilon(0.05));
  CHECK(m4 / n == doctest::Approx(2.0 / (d * (d + 1))).epsilon(0.1));
}

TEST_CASE("parameterized") {
  std::vector<double> zeros(16, 0.0);
  CHECK((parameterized(zeros, 4).matrix() - CMatrix::Identity(4, 4)).norm() < 1e-15);
  const std::vector<double> z_pi{std::numbers::pi, -std::numbers::pi, 0.0, 0.0};
  CHECK((parameterized(z_pi, 2).matrix() + CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK_THROWS_AS(parameterized(std::vector<double>(5, 0.0), 2), Error);

  oracle::Rng rng(31);
  for (int i = 0; i < 50; ++i) {
    std::vector<double> p(36);
    for (double& x : p) x = rng.normal();
    CHECK(unitarity_residual(parameterized(p, 6).matrix()) <= tol::unitarity);
    const CMatrix h = hermitian_from_params(p, 6);
    CHECK(hermiticity_residual(h) == 0.0);
  }
}

TEST_CASE("nelder_mead minimizes a quadratic") {
  auto f = [](std::span<const double> x) { return (x[0] - 1) * (x[0] - 1) + 3 * (x[1] + 2) * (x[1] + 2); };
  NelderMeadOptions opts;
  opts.max_evaluations = 2000;
  const NelderMeadResult r = nelder_mead_minimize(f, {0.0, 0.0}, opts);
  CHECK(r.best_point[0] == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(r.best_point[1] == doctest::Approx(-2.0).epsilon(1e-4));
  CHECK(r.evaluations <= 2000);
}

TEST_CASE("unitary search") {
  SearchOptions opts;
  opts.budget = 300;
  opts.restarts = 3;
  const SearchObjective thm1 = SearchObjective::thm_one();
  const UnitarySearchResult mm = search_violating_unitary(maximally_mixed(2, 2), PositiveMap::transpose(2), thm1, opts);
  CHECK(mm.best_score <= 1e-12);

  const UnitarySearchResult bell = search_violating_unitary(bell_state(), PositiveMap::transpose(2), thm1, opts);
  CHECK(bell.best_score >= 0.75 - 1e-12);

  SearchOptions wide;
  wide.budget = 2000;
  wide.restarts = 4;
  const UnitarySearchResult r1 =
      search_violating_unitary(rho1(), PositiveMap::transpose(2), SearchObjective::hankel_det(2), wide);
  CHECK(r1.best_score > 0.0);
  CHECK(unitarity_residual(r1.best_unitary.matrix()) <= tol::unitarity);
  // The reported score is reproducible from the returned unitary alone.
  CHECK(unitary_score(rho1(), PositiveMap::transpose(2), r1.best_unitary.matrix(), SearchObjective::hankel_det(2)) ==
        doctest::Approx(r1.best_score));

  const UnitarySearchResult again =
      search_violating_unitary(rho1(), PositiveMap::transpose(2), SearchObjective::hankel_det(2), wide);
  CHECK(again.best_score == r1.best_score);
  CHECK((again.best_unitary.matrix() - r1.best_unitary.matrix()).norm() == 0.0);
}

TEST_CASE("search result does not depend on the thread count") {
  SearchOptions opts;
  opts.budget = 200;
  opts.restarts = 5;
  setenv("ABSEP_THREADS", "1", 1);
  const auto a = search_violating_unitary(random_density(2, 2, 3), PositiveMap::transpose(2), SearchObjective::thm_one(), opts);
  setenv("ABSEP_THREADS", "4", 1);
  const auto b = search_violating_unitary(random_density(2, 2, 3), PositiveMap::transpose(2), SearchObjective::thm_one(), opts);
  unsetenv("ABSEP_THREADS");
  CHECK(a.best_score == b.best_score);
  CHECK(a.best_restart == b.best_restart);
  CHECK((a.best_unitary.matrix() - b.best_unitary.matrix()).norm() == 0.0);
}
