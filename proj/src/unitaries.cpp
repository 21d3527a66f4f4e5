#include "absep/unitaries.hpp"

#include <cmath>
#include <random>

#include "absep/detection.hpp"
#include "absep/nelder_mead.hpp"
#include "absep/parallel.hpp"
#include "absep/tolerances.hpp"

namespace absep {

GlobalUnitary GlobalUnitary::checked(CMatrix m, std::string label) {
  const double residual = unitarity_residual(m);
  if (!(residual <= tol::unitarity))
    throw Error(ErrorKind::NotUnitary, label + ": ‖U†U − I‖_F = " + std::to_string(residual));
  return GlobalUnitary(std::move(m), std::move(label), false, residual);
}

GlobalUnitary GlobalUnitary::with_polar_fallback(const CMatrix& m, std::string label) {
  const double residual = unitarity_residual(m);
  if (residual <= tol::polar_trigger) return GlobalUnitary(m, std::move(label), false, residual);
  CMatrix corrected = polar_unitary(m);
  if (unitarity_residual(corrected) > tol::polar_trigger)
    throw Error(ErrorKind::NotUnitary, label + ": polar correction did not converge");
  return GlobalUnitary(std::move(corrected), std::move(label), true, residual);
}

GlobalUnitary GlobalUnitary::identity(int dim) { return GlobalUnitary(CMatrix::Identity(dim, dim), "identity", false, 0.0); }

CMatrix u2_raw() {
  const double r2 = std::sqrt(2.0);
  CMatrix m = CMatrix::Zero(8, 8);
  m(0, 0) = 1.0;
  m(0, 2) = 0.25;
  m(0, 7) = 1.0;
  for (int k = 1; k <= 6; ++k) m(k, k) = r2;
  m(7, 0) = -1.0;
  m(7, 5) = 1.0;
  m(7, 7) = 1.0;
  return m / r2;
}

GlobalUnitary named_unitary(NamedUnitary id, double phi1, double phi2) {
  const double r2 = std::sqrt(2.0);
  switch (id) {
    case NamedUnitary::U1: {
      CMatrix m(4, 4);
      m << 1, 0, 0, 1,
           0, r2, 0, 0,
           0, 0, r2, 0,
           -1, 0, 0, 1;
      return GlobalUnitary::checked(m / r2, "U1");
    }
    case NamedUnitary::U2: {
      // The raw table carries a stray 1/4 at (0, 2) and a stray 1 at
      // (7, 5); without them it is the U1 pattern on |000⟩, |111⟩.
      CMatrix m = u2_raw();
      m(0, 2) = 0.0;
      m(7, 5) = 0.0;
      return GlobalUnitary::checked(m, "U2");
    }
    case NamedUnitary::U3: {
      CMatrix m = CMatrix::Identity(9, 9);
      const double shrink = (r2 - 1.0) / r2;
      m(0, 0) -= shrink;
      m(8, 8) -= shrink;
      m(0, 8) += 1.0 / r2;
      m(8, 0) -= 1.0 / r2;
      return GlobalUnitary::checked(m, "U3");
    }
    case NamedUnitary::U4: {
      const CMatrix x = pauli_x(), y = pauli_y(), z = pauli_z();
      const CMatrix block = std::cos(phi1) * kron(kron(x, y), z) +
                            std::sin(phi1) * std::sin(phi2) * kron(kron(y, z), x) +
                            std::sin(phi1) * std::cos(phi2) * kron(kron(z, x), y);
      CMatrix m = CMatrix::Zero(9, 9);
      m.topLeftCorner(8, 8) = block;
      m(8, 8) = 1.0;
      return GlobalUnitary::with_polar_fallback(m, "U4");
    }
  }
  throw Error(ErrorKind::ParamOutOfRange, "unknown named unitary");
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

GlobalUnitary haar_random(int dim, std::uint64_t seed) {
  if (dim < 1) throw Error(ErrorKind::ParamOutOfRange, "dimension");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < dim; ++k) {
    const Complex d = r(k, k);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(k) *= d / mag;
  }
  return GlobalUnitary::checked(q, "haar:" + std::to_string(seed));
}

CMatrix hermitian_from_params(std::span<const double> params, int dim) {
  if (static_cast<int>(params.size()) != dim * dim)
    throw Error(ErrorKind::LengthMismatch, "expected dim² parameters");
  CMatrix h = CMatrix::Zero(dim, dim);
  std::size_t k = 0;
  for (int i = 0; i < dim; ++i) h(i, i) = params[k++];
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      const Complex v(params[k], params[k + 1]);
      k += 2;
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  return h;
}

GlobalUnitary parameterized(std::span<const double> params, int dim) {
  return GlobalUnitary::checked(expm_hermitian_generator(hermitian_from_params(params, dim), 1.0), "parameterized");
}

std::string to_string(const SearchObjective& objective) {
  switch (objective.kind) {
    case SearchObjective::Kind::ThmOne: return "thm1";
    case SearchObjective::Kind::HankelDet: return "hankel" + std::to_string(objective.hankel_order);
    case SearchObjective::Kind::R2: return "r2";
  }
  return "unknown";
}

double unitary_score(const DensityMatrix& state, const PositiveMap& map, const CMatrix& u,
                     const SearchObjective& objective) {
  CMatrix op;
  try {
    op = normalized_output(map, state, u).op;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ZeroNormalizer) return -std::numeric_limits<double>::infinity();
    throw;
  }
  switch (objective.kind) {
    case SearchObjective::Kind::ThmOne: return thm1_test(moments(op, 3)).margin;
    case SearchObjective::Kind::HankelDet: {
      const int m = objective.hankel_order;
      return -hankel(m, moments(op, 2 * m + 1)).determinant();
    }
    case SearchObjective::Kind::R2: return moments(op, 2).at(2);
  }
  return -std::numeric_limits<double>::infinity();
}

UnitarySearchResult search_violating_unitary(const DensityMatrix& state, const PositiveMap& map,
                                             const SearchObjective& objective, const SearchOptions& options) {
  if (options.budget < 1) throw Error(ErrorKind::ParamOutOfRange, "search budget must be >= 1");
  if (options.restarts < 1) throw Error(ErrorKind::ParamOutOfRange, "restarts must be >= 1");
  if (map.input_dim() != state.dim_b()) throw Error(ErrorKind::DimensionMismatch, "map does not act on subsystem B");
  const int dim = state.dim();

  struct RestartOutcome {
    CMatrix u;
    double score;
    int evaluations;
    bool converged;
  };
  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(options.restarts));

  parallel_for(outcomes.size(), [&](std::size_t r) {
    const CMatrix base = r == 0 ? CMatrix::Identity(dim, dim) : haar_random(dim, derive_seed(options.seed, r)).matrix();
    auto candidate = [&](std::span<const double> params) -> CMatrix {
      return base * expm_hermitian_generator(hermitian_from_params(params, dim), 1.0);
    };
    NelderMeadOptions nm;
    nm.max_evaluations = options.budget;
    nm.initial_step = options.initial_step;
    if (options.stop_above) nm.stop_below = -*options.stop_above;
    const auto result = nelder_mead_minimize(
        [&](std::span<const double> params) {
          const double s = unitary_score(state, map, candidate(params), objective);
          return std::isnan(s) ? std::numeric_limits<double>::infinity() : -s;
        },
        std::vector<double>(static_cast<std::size_t>(dim * dim), 0.0), nm);
    outcomes[r] = RestartOutcome{candidate(result.best_point), -result.best_value, result.evaluations, result.converged};
  });

  std::size_t best = 0;
  int evaluations = 0;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    evaluations += outcomes[r].evaluations;
    if (outcomes[r].score > outcomes[best].score) best = r;
  }
  CMatrix u = outcomes[best].u;
  return UnitarySearchResult{GlobalUnitary::with_polar_fallback(u, "search:" + to_string(objective)),
                             outcomes[best].score, evaluations, outcomes[best].converged, static_cast<int>(best)};
}

}  // namespace absep
