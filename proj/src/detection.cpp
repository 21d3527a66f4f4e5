#include "absep/detection.hpp"

#include <algorithm>
#include <cmath>

#include "absep/parallel.hpp"
#include "absep/tolerances.hpp"

namespace absep {

MomentVector moments(const CMatrix& normalized_op, int n_max) {
  if (n_max < 1) throw Error(ErrorKind::OrderTooLow, "moment order must be >= 1");
  return MomentVector{matrix_power_traces(normalized_op, n_max)};
}

MomentVector moments(const NormalizedOutput& output, int n_max) { return moments(output.op, n_max); }

Thm1Outcome thm1_test(const MomentVector& m) {
  if (m.order() < 3) throw Error(ErrorKind::OrderTooLow, "the s2^2 - s3 test needs moments up to order 3");
  const double margin = m.at(2) * m.at(2) - m.at(3);
  return {margin, margin > tol::strict};
}

HankelMatrix hankel(int m_order, const MomentVector& moments) {
  if (m_order < 0) throw Error(ErrorKind::ParamOutOfRange, "Hankel order");
  if (moments.order() < 2 * m_order + 1)
    throw Error(ErrorKind::OrderTooLow, "H_" + std::to_string(m_order) + " needs moments up to order " +
                                            std::to_string(2 * m_order + 1));
  RMatrix h(m_order + 1, m_order + 1);
  for (int i = 0; i <= m_order; ++i)
    for (int j = 0; j <= m_order; ++j) h(i, j) = moments.at(i + j + 1);
  return HankelMatrix{m_order, std::move(h)};
}

double HankelMatrix::determinant() const { return det_small(entries); }

double HankelMatrix::min_eigenvalue() const { return eig_hermitian(entries.cast<Complex>()).min(); }

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::NotAbsolutelySeparable: return "NotAbsolutelySeparable";
    case Verdict::NotAbsolutelyPPT: return "NotAbsolutelyPPT";
    case Verdict::AbsolutelyPPTSufficient: return "AbsolutelyPPT_Sufficient";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

HankelOutcome hankel_outcome(const MomentVector& moments, int m_order, bool decomposable_map) {
  const HankelMatrix h = hankel(m_order, moments);
  const double det = h.determinant();
  const bool violated = det < -tol::strict;
  Verdict verdict = Verdict::Inconclusive;
  if (violated) verdict = decomposable_map ? Verdict::NotAbsolutelyPPT : Verdict::NotAbsolutelySeparable;
  return HankelOutcome{m_order, det, h.min_eigenvalue(), violated, verdict};
}

HankelOutcome hankel_test(const DensityMatrix& state, const PositiveMap& map, const GlobalUnitary& u, int m_order) {
  const NormalizedOutput out = normalized_output(map, state, u.matrix());
  return hankel_outcome(moments(out, 2 * m_order + 1), m_order, map.decomposable());
}

Thm9Outcome thm9_test(const DensityMatrix& state, int samples, std::uint64_t seed, const SearchOptions& search) {
  int d = 0;
  if (state.dim_a() == state.dim_b()) {
    d = state.dim_a();
  } else if (state.dim_a() == 2) {
    d = std::min(state.dim_a(), state.dim_b());
  } else {
    throw Error(ErrorKind::DimensionMismatch, "r₂ sufficiency test needs equal local dimensions or a qubit A side");
  }
  const PositiveMap map = PositiveMap::transpose(state.dim_b());
  const SearchObjective objective = SearchObjective::r2();

  SearchOptions opts = search;
  opts.seed = seed;
  UnitarySearchResult found = search_violating_unitary(state, map, objective, opts);
  double best = found.best_score;
  GlobalUnitary argmax = found.best_unitary;

  std::vector<double> probe(static_cast<std::size_t>(std::max(samples, 0)));
  parallel_for(probe.size(), [&](std::size_t k) {
    const GlobalUnitary u = haar_random(state.dim(), derive_seed(seed ^ 0x5A5A5A5AULL, k));
    probe[k] = unitary_score(state, map, u.matrix(), objective);
  });
  for (std::size_t k = 0; k < probe.size(); ++k) {
    if (probe[k] > best) {
      best = probe[k];
      argmax = haar_random(state.dim(), derive_seed(seed ^ 0x5A5A5A5AULL, k));
    }
  }
  const double bound = 1.0 / (d - 1);
  return Thm9Outcome{best, bound, d, best <= bound - tol::strict, argmax};
}

BallOutcome ball_test(const DensityMatrix& state) {
  if (state.dim_a() != state.dim_b())
    throw Error(ErrorKind::DimensionMismatch, "maximal-ball test needs equal local dimensions");
  const double d = state.dim_a();
  const double radius = 1.0 / (d * d - 1.0);
  const double purity = state.purity();
  return BallOutcome{purity, radius, purity <= radius + tol::trace};
}

OracleOutcome eigenvalue_oracle_2xd(const DensityMatrix& state) {
  if (state.dim_a() != 2 || state.dim_b() < 2) throw Error(ErrorKind::NotTwoByD, "eigenvalue oracle needs C² ⊗ C^d");
  const RVector ev = eig_hermitian(state.matrix()).eigenvalues;
  const int d = state.dim_b();
  // 1-based λ_k↓ is ev(k - 1)
  auto lambda = [&](int k) { return ev(k - 1); };
  const double value = lambda(1) - lambda(2 * d - 1) - 2.0 * std::sqrt(std::max(0.0, lambda(2 * d - 2) * lambda(2 * d)));
  return OracleOutcome{value, value <= tol::trace};
}

DetectionReport detect(const DensityMatrix& state, const std::string& state_id, const PositiveMap& map,
                       const GlobalUnitary& u, const DetectionOptions& options,
                       std::optional<UnitarySearchResult> search) {
  const int m_max = options.hankel_order;
  if (m_max < 1) throw Error(ErrorKind::ParamOutOfRange, "Hankel order must be >= 1");
  const int order = std::max({3, 2 * m_max + 1, options.moment_order});

  const NormalizedOutput out = normalized_output(map, state, u.matrix());
  const MomentVector mv = moments(out, order);

  DetectionReport report{state_id, map.name(), options.mode, u, std::move(search), out.normalizer, out.min_eig, mv,
                         thm1_test(mv), {}, std::nullopt, std::nullopt, std::nullopt, Verdict::Inconclusive, "", {}};
  for (int m = 1; m <= m_max; ++m) report.hankel.push_back(hankel_outcome(mv, m, map.decomposable()));

  if (state.dim_a() == 2 && state.dim_b() >= 2) report.oracle = eigenvalue_oracle_2xd(state);
  if (state.dim_a() == state.dim_b()) report.ball = ball_test(state);
  if (options.mode == DetectionMode::AbsolutePPT && (state.dim_a() == state.dim_b() || state.dim_a() == 2)) {
    report.thm9 = thm9_test(state, options.thm9_samples, options.seed, options.thm9_search);
    report.notes.push_back("r2 sufficiency is a heuristic certificate: the maximum over unitaries is searched");
  }

  const bool hankel_hit = std::any_of(report.hankel.begin(), report.hankel.end(), [](const auto& h) { return h.violated; });
  const bool moment_hit = hankel_hit || report.thm1.violated;
  const bool ppt_mode = options.mode == DetectionMode::AbsolutePPT;
  // A decomposable-map violation rules out APPT, hence AS as well.
  const Verdict moment_verdict = ppt_mode && map.decomposable() ? Verdict::NotAbsolutelyPPT : Verdict::NotAbsolutelySeparable;
  if (ppt_mode && !map.decomposable())
    report.notes.push_back("map is not decomposable: a violation only rules out absolute separability");

  if (report.oracle) {
    if (!report.oracle->absolutely_separable) {
      // On C² ⊗ C^d absolute separability and absolute PPT coincide.
      report.verdict = ppt_mode ? Verdict::NotAbsolutelyPPT : Verdict::NotAbsolutelySeparable;
      report.certified_by = hankel_hit ? "hankel" : report.thm1.violated ? "thm1" : "oracle";
    } else {
      report.verdict = ppt_mode ? Verdict::AbsolutelyPPTSufficient : Verdict::Inconclusive;
      report.certified_by = "oracle";
      report.notes.push_back("eigenvalue oracle certifies the state absolutely separable");
      if (moment_hit) report.notes.push_back("moment criterion violated on an oracle-certified state: numerical inconsistency");
    }
    return report;
  }

  if (hankel_hit) {
    report.verdict = moment_verdict;
    report.certified_by = "hankel";
  } else if (report.thm1.violated) {
    report.verdict = moment_verdict;
    report.certified_by = "thm1";
  } else if (ppt_mode && report.ball && report.ball->inside) {
    report.verdict = Verdict::AbsolutelyPPTSufficient;
    report.certified_by = "ball";
  } else if (ppt_mode && report.thm9 && report.thm9->sufficient_appt) {
    report.verdict = Verdict::AbsolutelyPPTSufficient;
    report.certified_by = "thm9-search";
  }
  return report;
}

}  // namespace absep
