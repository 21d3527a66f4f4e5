#include <doctest.h>

#include "absep/detection.hpp"
#include "absep/discrimination.hpp"
#include "absep/tolerances.hpp"
#include "oracles.hpp"

using namespace absep;

namespace {

PositiveMap damped_conjugation() {
  // X ↦ A X A† with A = diag(1, 1/2): completely positive, not trace preserving.
  CMatrix a = CMatrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 0.5;
  std::vector<CMatrix> images;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) images.push_back(a * matrix_unit(2, 2, i, j) * a.adjoint());
  return PositiveMap::custom("damped", 2, 2, images, true);
}

double reconstruction_error(const ChannelPair& pair) {
  const int d = pair.ta.input_dim();
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const CMatrix e = matrix_unit(d, d, i, j);
      const CMatrix diff = pair.e1(e) - pair.e2(e) - pair.k * pair.ta(e);
      worst = std::max(worst, diff.cwiseAbs().maxCoeff());
    }
  return worst;
}

}  // namespace

TEST_CASE("trace-preserving extension") {
  const TracePreservingMap t = make_trace_preserving(PositiveMap::transpose(2));
  CHECK(t.mu() == doctest::Approx(1.0));
  CHECK_FALSE(t.has_correction());
  CHECK(t.extended_output_dim() == 3);
  oracle::Rng rng(60);
  const CMatrix rho = rng.density(2);
  const CMatrix out = t(rho);
  CHECK((out.topLeftCorner(2, 2) - rho.transpose()).norm() < 1e-15);
  CHECK(out.row(2).norm() == 0.0);

  CHECK(make_trace_preserving(PositiveMap::reduction(2)).mu() == doctest::Approx(1.0));
  const TracePreservingMap scaled = make_trace_preserving(PositiveMap::transpose(2).scaled(2.0));
  CHECK(scaled.mu() == doctest::Approx(2.0));
  CHECK((scaled(rho).topLeftCorner(2, 2) - rho.transpose()).norm() < 1e-14);

  const TracePreservingMap damped = make_trace_preserving(damped_conjugation());
  CHECK(damped.has_correction());
  CHECK(damped.extended_output_dim() == 4);
  for (int i = 0; i < 20; ++i) {
    const CMatrix r = rng.density(2);
    const CMatrix o = damped(r);
    CHECK(o.trace().real() == doctest::Approx(1.0));
    CHECK(oracle::eigenvalues(o)(0) >= -1e-14);
  }

  std::vector<CMatrix> zero(4, CMatrix::Zero(2, 2));
  try {
    make_trace_preserving(PositiveMap::custom("zero", 2, 2, zero, true));
    FAIL("expected DegenerateMap");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateMap);
  }
}

TEST_CASE("trace-annihilating map") {
  oracle::Rng rng(61);
  for (const PositiveMap& m : {PositiveMap::transpose(2), PositiveMap::reduction(3), damped_conjugation()}) {
    const TraceAnnihilatingMap ta = trace_annihilating(make_trace_preserving(m));
    for (int i = 0; i < 20; ++i) CHECK(std::abs(ta(rng.density(m.input_dim())).trace()) < 1e-14);
  }
  const TracePreservingMap tp = make_trace_preserving(PositiveMap::transpose(3));
  const TraceAnnihilatingMap ta(tp);
  const CMatrix out = ta(CMatrix::Identity(3, 3) / 3.0);
  CHECK(hermiticity_residual(out) < 1e-15);
  CHECK(trace_norm(out) == doctest::Approx(2.0));
  const CMatrix e01 = matrix_unit(3, 3, 0, 1);
  CHECK((ta(e01) - tp(e01)).norm() == 0.0);
}

TEST_CASE("channel pair reproduces k Λ_TA") {
  for (const PositiveMap& m : {PositiveMap::transpose(2), PositiveMap::transpose(3), PositiveMap::reduction(2),
                               PositiveMap::reduction(3), damped_conjugation()}) {
    const ChannelPair pair = channel_pair(trace_annihilating(make_trace_preserving(m)));
    CAPTURE(m.name());
    CHECK(reconstruction_error(pair) <= 1e-9);
    for (const QuantumChannel* c : {&pair.e1, &pair.e2}) {
      CHECK(c->trace_preservation_residual() <= tol::trace_preservation);
      CHECK(c->choi_min_eigenvalue() >= tol::psd_floor);
    }
    CHECK(pair.k == doctest::Approx(1.0 / pair.completion));
  }

  // The completion constant is the largest eigenvalue of Tr_out J⁺.
  const ChannelPair p3 = channel_pair(trace_annihilating(make_trace_preserving(PositiveMap::transpose(3))));
  const CMatrix j = p3.ta.choi();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(j);
  CMatrix j_plus = CMatrix::Zero(j.rows(), j.cols());
  for (Eigen::Index i = 0; i < j.rows(); ++i)
    if (es.eigenvalues()(i) > 0) j_plus += es.eigenvalues()(i) * es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  const CMatrix m = oracle::partial_trace_b(j_plus, 3, p3.ta.output_dim());
  CHECK(p3.completion == doctest::Approx(oracle::eigenvalues(m).maxCoeff()).epsilon(1e-10));

  // A custom completion state works as long as it is a state.
  CMatrix sigma = CMatrix::Identity(3, 3) / 3.0;
  const ChannelPair mixed = channel_pair(trace_annihilating(make_trace_preserving(PositiveMap::transpose(2))), sigma);
  CHECK(reconstruction_error(mixed) <= 1e-9);
  CHECK_THROWS_AS(channel_pair(mixed.ta, CMatrix(CMatrix::Identity(3, 3))), Error);
}

TEST_CASE("advantage on fixed states") {
  const ChannelPair pair = channel_pair(trace_annihilating(make_trace_preserving(PositiveMap::transpose(2))));
  const AdvantageReport bell = advantage_test(bell_state(), GlobalUnitary::identity(4), pair);
  CHECK(bell.distance == doctest::Approx(3.0 * pair.k));
  CHECK(bell.advantage == doctest::Approx(pair.k));
  CHECK(bell.tp_output_negative);
  CHECK(bell.consistent);

  const AdvantageReport ex1 = advantage_test(rho1(), named_unitary(NamedUnitary::U1), pair);
  CHECK(ex1.distance > 2.0 * pair.k + 1e-6);
  CHECK(ex1.consistent);

  const AdvantageReport mm = advantage_test(maximally_mixed(2, 2), haar_random(4, 5), pair);
  CHECK(mm.distance == doctest::Approx(2.0 * pair.k));
  CHECK_FALSE(mm.tp_output_negative);

  CHECK_THROWS_AS(advantage_test(random_density(2, 3, 1), GlobalUnitary::identity(6), pair), Error);
}

TEST_CASE("property: distance identity and the 2k baseline") {
  oracle::Rng rng(62);
  const ChannelPair t2 = channel_pair(trace_annihilating(make_trace_preserving(PositiveMap::transpose(2))));
  const ChannelPair t3 = channel_pair(trace_annihilating(make_trace_preserving(PositiveMap::transpose(3))));
  const ChannelPair damped = channel_pair(trace_annihilating(make_trace_preserving(damped_conjugation())));
  int as_probes = 0;
  for (int i = 0; i < 1000; ++i) {
    const bool qutrit = i % 3 == 1;
    const ChannelPair& pair = qutrit ? t3 : (i % 3 == 0 ? t2 : damped);
    const int db = qutrit ? 3 : 2;
    const DensityMatrix sigma = random_density(2, db, 5000 + static_cast<std::uint64_t>(i));
    const GlobalUnitary u = haar_random(2 * db, 9000 + static_cast<std::uint64_t>(i));
    const AdvantageReport r = advantage_test(sigma, u, pair);
    CHECK(r.identity_residual <= 1e-8);
    CHECK(r.consistent);

    // Mixing toward I/D until the 2⊗d oracle certifies absolute separability.
    CMatrix mixed = sigma.matrix();
    const CMatrix flat = CMatrix::Identity(2 * db, 2 * db) / (2.0 * db);
    while (oracle::two_by_d_value(mixed, db) > 0) mixed = 0.5 * (mixed + flat);
    const DensityMatrix as_state = validate(0.5 * (mixed + mixed.adjoint()), 2, db);
    REQUIRE(eigenvalue_oracle_2xd(as_state).absolutely_separable);
    const AdvantageReport a = advantage_test(as_state, u, pair);
    CHECK(std::abs(a.distance - 2.0 * pair.k) <= 1e-8);
    ++as_probes;
  }
  CHECK(as_probes == 1000);
}
