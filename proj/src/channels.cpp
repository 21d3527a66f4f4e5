#include "absep/channels.hpp"

#include <cmath>
#include <numbers>

#include "absep/detection.hpp"
#include "absep/parallel.hpp"
#include "absep/tolerances.hpp"
#include "absep/unitaries.hpp"

namespace absep {

namespace {

CMatrix choi_from_kraus(const std::vector<CMatrix>& kraus) {
  const auto out = kraus.front().rows(), in = kraus.front().cols();
  CMatrix j = CMatrix::Zero(in * out, in * out);
  for (const auto& k : kraus) {
    // v[(i, o)] = K(o, i), so v v† has block (i, i') = K E_ii' K†.
    CVector v(in * out);
    for (Eigen::Index i = 0; i < in; ++i) v.segment(i * out, out) = k.col(i);
    j += v * v.adjoint();
  }
  return j;
}

CMatrix weyl(int d, int a, int b) {
  CMatrix x = CMatrix::Zero(d, d), z = CMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    x((j + 1) % d, j) = 1.0;
    z(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * j / d);
  }
  CMatrix w = CMatrix::Identity(d, d);
  for (int k = 0; k < a; ++k) w = x * w;
  for (int k = 0; k < b; ++k) w = w * z;
  return w;
}

struct GridPoint {
  std::vector<double> coefficients;
};

std::vector<GridPoint> schmidt_grid(int d, int grid) {
  std::vector<GridPoint> points;
  if (d == 2) {
    const int n = grid > 0 ? grid : 101;
    if (n < 2) throw Error(ErrorKind::ParamOutOfRange, "grid needs at least two points");
    for (int i = 0; i < n; ++i) {
      const double q0 = static_cast<double>(i) / (n - 1);
      points.push_back({{q0, 1.0 - q0}});
    }
  } else {
    const int n = grid > 0 ? grid : 9;
    for (int i = 0; i <= n; ++i)
      for (int j = 0; i + j <= n; ++j)
        points.push_back({{static_cast<double>(i) / n, static_cast<double>(j) / n, static_cast<double>(n - i - j) / n}});
  }
  return points;
}

struct PointResult {
  double margin = -std::numeric_limits<double>::infinity();
  std::vector<double> q;
  bool skipped = false;
};

PointResult evaluate_input(const QuantumChannel& channel, const PositiveMap& map, const DensityMatrix& input, int d) {
  PointResult r;
  try {
    const NormalizedOutput q_op = normalized_output(map, channel(input.matrix()), d);
    const MomentVector mv = moments(q_op, 3);
    r.margin = thm1_test(mv).margin;
    r.q = mv.values;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ZeroNormalizer) throw;
    r.skipped = true;
  }
  return r;
}

}  // namespace

QuantumChannel QuantumChannel::from_kraus(std::vector<CMatrix> kraus, std::string label, bool covariant) {
  if (kraus.empty()) throw Error(ErrorKind::LengthMismatch, "empty Kraus set");
  const auto out = kraus.front().rows(), in = kraus.front().cols();
  CMatrix completeness = CMatrix::Zero(in, in);
  for (const auto& k : kraus) {
    if (k.rows() != out || k.cols() != in) throw Error(ErrorKind::DimensionMismatch, "Kraus operator shapes differ");
    completeness += k.adjoint() * k;
  }
  const double residual = (completeness - CMatrix::Identity(in, in)).norm();
  if (residual > tol::trace_preservation)
    throw Error(ErrorKind::TraceNotOne, label + ": Σ K†K deviates from I by " + std::to_string(residual));
  CMatrix choi = choi_from_kraus(kraus);
  return QuantumChannel(std::move(kraus), std::move(choi), static_cast<int>(in), static_cast<int>(out),
                        std::move(label), covariant);
}

QuantumChannel QuantumChannel::from_choi(const CMatrix& choi, int input_dim, int output_dim, std::string label) {
  if (choi.rows() != input_dim * output_dim || choi.cols() != input_dim * output_dim)
    throw Error(ErrorKind::DimensionMismatch, "Choi matrix shape");
  const Spectrum spec = eig_hermitian_relaxed(choi);
  if (spec.min() < tol::psd_floor)
    throw Error(ErrorKind::NotPositive, label + ": Choi matrix has eigenvalue " + std::to_string(spec.min()));
  std::vector<CMatrix> kraus;
  for (Eigen::Index k = 0; k < spec.eigenvalues.size(); ++k) {
    const double lambda = spec.eigenvalues(k);
    if (lambda <= tol::jordan_dead_zone) continue;
    const CVector v = std::sqrt(lambda) * spec.eigenvectors.col(k);
    CMatrix op(output_dim, input_dim);
    for (int i = 0; i < input_dim; ++i) op.col(i) = v.segment(i * output_dim, output_dim);
    kraus.push_back(std::move(op));
  }
  if (kraus.empty()) throw Error(ErrorKind::DegenerateMap, label + ": zero Choi matrix");
  return from_kraus(std::move(kraus), std::move(label));
}

CMatrix QuantumChannel::operator()(const CMatrix& rho) const {
  if (rho.rows() != input_dim_ || rho.cols() != input_dim_)
    throw Error(ErrorKind::DimensionMismatch, label_ + ": input dimension");
  CMatrix out = CMatrix::Zero(output_dim_, output_dim_);
  for (const auto& k : kraus_) out += k * rho * k.adjoint();
  return out;
}

double QuantumChannel::trace_preservation_residual() const {
  CMatrix completeness = CMatrix::Zero(input_dim_, input_dim_);
  for (const auto& k : kraus_) completeness += k.adjoint() * k;
  return (completeness - CMatrix::Identity(input_dim_, input_dim_)).norm();
}

double QuantumChannel::choi_min_eigenvalue() const { return eig_hermitian_relaxed(choi_).min(); }

QuantumChannel depolarizing(int local_dim, double p) {
  if (local_dim != 2 && local_dim != 3) throw Error(ErrorKind::ParamOutOfRange, "local dimension must be 2 or 3");
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::ParamOutOfRange, "p must lie in [0, 1]");
  const int dim = local_dim * local_dim;
  std::vector<CMatrix> kraus;
  if (p > 0.0) kraus.push_back(std::sqrt(p) * CMatrix::Identity(dim, dim));
  if (p < 1.0) {
    const double w = std::sqrt(1.0 - p) / dim;
    for (int a1 = 0; a1 < local_dim; ++a1)
      for (int b1 = 0; b1 < local_dim; ++b1)
        for (int a2 = 0; a2 < local_dim; ++a2)
          for (int b2 = 0; b2 < local_dim; ++b2)
            kraus.push_back(w * kron(weyl(local_dim, a1, b1), weyl(local_dim, a2, b2)));
  }
  return QuantumChannel::from_kraus(std::move(kraus), "dep" + std::to_string(local_dim), true);
}

QuantumChannel identity_channel(int dim) {
  return QuantumChannel::from_kraus({CMatrix::Identity(dim, dim)}, "identity", true);
}

QuantumChannel amplitude_damping_first_qubit(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw Error(ErrorKind::ParamOutOfRange, "gamma must lie in [0, 1]");
  CMatrix k0(2, 2), k1(2, 2);
  k0 << 1.0, 0.0, 0.0, std::sqrt(1.0 - gamma);
  k1 << 0.0, std::sqrt(gamma), 0.0, 0.0;
  const CMatrix id = CMatrix::Identity(2, 2);
  return QuantumChannel::from_kraus({kron(k0, id), kron(k1, id)}, "amplitude-damping⊗id");
}

DensityMatrix apply(const QuantumChannel& channel, const DensityMatrix& state) {
  if (channel.input_dim() != state.dim() || channel.output_dim() != state.dim())
    throw Error(ErrorKind::DimensionMismatch, "channel does not act on the state's space");
  CMatrix out = hermitian_part(channel(state.matrix()));
  out /= std::real(out.trace());
  return validate(out, state.dim_a(), state.dim_b());
}

CMatrix apply_local(const QuantumChannel& channel, const CMatrix& x, int dim_a) {
  const int din = channel.input_dim();
  if (x.rows() != dim_a * din || x.cols() != dim_a * din)
    throw Error(ErrorKind::DimensionMismatch, "channel does not act on subsystem B");
  const int dout = channel.output_dim();
  CMatrix out = CMatrix::Zero(dim_a * dout, dim_a * dout);
  const CMatrix id = CMatrix::Identity(dim_a, dim_a);
  for (const auto& k : channel.kraus()) {
    const CMatrix big = kron(id, k);
    out += big * x * big.adjoint();
  }
  return out;
}

CovarianceOutcome covariance_check(const QuantumChannel& channel, int samples, std::uint64_t seed) {
  if (channel.input_dim() != channel.output_dim())
    throw Error(ErrorKind::DimensionMismatch, "covariance needs equal input and output dimension");
  const int dim = channel.input_dim();
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const CMatrix u = haar_random(dim, derive_seed(seed, static_cast<std::uint64_t>(2 * s))).matrix();
    const CMatrix rho = random_density(1, dim, derive_seed(seed, static_cast<std::uint64_t>(2 * s + 1))).matrix();
    const double r = (u * channel(rho) * u.adjoint() - channel(u * rho * u.adjoint())).norm();
    worst = std::max(worst, r);
  }
  return {worst, worst <= tol::polar_trigger};
}

std::string to_string(ChannelVerdict v) {
  return v == ChannelVerdict::NotAbsolutelySeparating ? "NotAbsolutelySeparating" : "Inconclusive";
}

ChannelCriterionReport annihilation_sweep(const QuantumChannel& channel, const PositiveMap& map,
                                          const SweepOptions& options) {
  const int dim = channel.input_dim();
  const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(dim))));
  if (d * d != dim || (d != 2 && d != 3) || channel.output_dim() != dim)
    throw Error(ErrorKind::DimensionMismatch, "sweep needs a channel on C^d ⊗ C^d with d in {2, 3}");
  if (map.input_dim() != d) throw Error(ErrorKind::DimensionMismatch, "map does not act on the second factor");

  const std::vector<GridPoint> grid = schmidt_grid(d, options.grid);
  const int bases = channel.covariant() ? 1 : 1 + std::max(options.local_basis_samples, 0);
  std::vector<PointResult> results(grid.size());

  parallel_for(grid.size(), [&](std::size_t g) {
    PointResult best;
    bool any = false;
    for (int b = 0; b < bases; ++b) {
      CMatrix basis_a = CMatrix::Identity(d, d), basis_b = CMatrix::Identity(d, d);
      if (b > 0) {
        const std::uint64_t s = derive_seed(options.seed, g * 1000 + static_cast<std::uint64_t>(b));
        basis_a = haar_random(d, s).matrix();
        basis_b = haar_random(d, derive_seed(s, 1)).matrix();
      }
      const DensityMatrix input = make_schmidt(grid[g].coefficients, basis_a, basis_b).density();
      PointResult r = evaluate_input(channel, map, input, d);
      if (!r.skipped && (!any || r.margin > best.margin)) {
        best = std::move(r);
        any = true;
      }
    }
    if (!any) best.skipped = true;
    results[g] = std::move(best);
  });

  ChannelCriterionReport report{channel.label(), std::nullopt, {}, {}, -std::numeric_limits<double>::infinity(),
                                static_cast<int>(grid.size()), 0, false, ChannelVerdict::Inconclusive};
  for (std::size_t g = 0; g < results.size(); ++g) {
    if (results[g].skipped) {
      ++report.skipped;
      continue;
    }
    if (results[g].margin > report.worst_margin) {
      report.worst_margin = results[g].margin;
      report.worst_input = grid[g].coefficients;
      report.q_moments = results[g].q;
    }
  }

  const PointResult me = evaluate_input(channel, map, schmidt_state(std::vector<double>(static_cast<std::size_t>(d), 1.0 / d)), d);
  report.max_entangled_is_worst = !me.skipped && me.margin >= report.worst_margin - 1e-12;
  if (report.worst_margin > tol::strict) report.verdict = ChannelVerdict::NotAbsolutelySeparating;
  return report;
}

ChannelFamily channel_family_by_name(const std::string& name) {
  if (name == "dep2") return ChannelFamily::Dep2;
  if (name == "dep3") return ChannelFamily::Dep3;
  throw Error(ErrorKind::Parse, "unknown channel family '" + name + "' (expected dep2|dep3)");
}

int local_dim(ChannelFamily family) { return family == ChannelFamily::Dep2 ? 2 : 3; }

QuantumChannel family_channel(ChannelFamily family, double p) { return depolarizing(local_dim(family), p); }

ThresholdOutcome threshold_scan(ChannelFamily family, const PositiveMap& map, double tol, const SweepOptions& options) {
  if (!(tol >= 1e-9)) throw Error(ErrorKind::ParamOutOfRange, "tolerance must be >= 1e-9");
  auto violated_at = [&](double p, double* margin) {
    ChannelCriterionReport r = annihilation_sweep(family_channel(family, p), map, options);
    if (margin) *margin = r.worst_margin;
    return r.verdict == ChannelVerdict::NotAbsolutelySeparating;
  };

  ThresholdOutcome out{};
  constexpr int kPrescan = 21;
  std::vector<bool> verdicts;
  for (int i = 0; i < kPrescan; ++i) {
    const double p = static_cast<double>(i) / (kPrescan - 1);
    double margin = 0.0;
    verdicts.push_back(violated_at(p, &margin));
    out.prescan.emplace_back(p, margin);
  }
  int switches = 0;
  for (int i = 1; i < kPrescan; ++i)
    if (verdicts[static_cast<std::size_t>(i)] != verdicts[static_cast<std::size_t>(i - 1)]) ++switches;
  if (switches != 1 || verdicts.front() || !verdicts.back()) {
    std::string diag;
    for (const auto& [p, m] : out.prescan) diag += " (" + std::to_string(p) + ", " + std::to_string(m) + ")";
    throw Error(ErrorKind::NoSignChange, "verdict is not a single Inconclusive→violated switch on [0, 1]:" + diag);
  }

  double lo = 0.0, hi = 1.0;
  for (int i = 1; i < kPrescan; ++i)
    if (verdicts[static_cast<std::size_t>(i)]) {
      lo = out.prescan[static_cast<std::size_t>(i - 1)].first;
      hi = out.prescan[static_cast<std::size_t>(i)].first;
      break;
    }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (violated_at(mid, nullptr) ? hi : lo) = mid;
    ++out.bisection_steps;
  }
  out.lower = lo;
  out.upper = hi;
  out.p_star = 0.5 * (lo + hi);
  return out;
}

}  // namespace absep
