#include "absep/discrimination.hpp"

#include <cmath>

#include "absep/tolerances.hpp"

namespace absep {

namespace {

template <typename Map>
CMatrix apply_blockwise(const Map& map, int din, int dout, const CMatrix& x, int dim_a) {
  CMatrix out(dim_a * dout, dim_a * dout);
  for (int i = 0; i < dim_a; ++i)
    for (int j = 0; j < dim_a; ++j) out.block(i * dout, j * dout, dout, dout) = map(x.block(i * din, j * din, din, din));
  return out;
}

}  // namespace

TracePreservingMap make_trace_preserving(const PositiveMap& map) {
  const double witness = positivity_witness(map);
  if (witness < tol::psd_floor)
    throw Error(ErrorKind::NotPositive, map.name() + ": probe eigenvalue " + std::to_string(witness));
  const CMatrix dual = map.dual_of_identity();
  const double mu = eig_hermitian_relaxed(dual).max();
  if (!(mu > tol::zero_normalizer)) throw Error(ErrorKind::DegenerateMap, map.name() + ": μ(Λ) vanishes");
  const double tp_residual = (dual / mu - CMatrix::Identity(dual.rows(), dual.cols())).cwiseAbs().maxCoeff();
  return TracePreservingMap(map, mu, tp_residual > tol::trace_preservation);
}

CMatrix TracePreservingMap::operator()(const CMatrix& x) const {
  const int d = base_.output_dim();
  CMatrix out = CMatrix::Zero(extended_dim_, extended_dim_);
  const CMatrix image = base_(x) / mu_;
  out.topLeftCorner(d, d) = image;
  if (has_correction_) out(d, d) = x.trace() - image.trace();
  return out;
}

TraceAnnihilatingMap::TraceAnnihilatingMap(TracePreservingMap tp) : tp_(std::move(tp)) {
  const int d = tp_.input_dim();
  const int f = tp_.flag_index();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      CMatrix img = tp_(matrix_unit(d, d, i, j));
      if (i == j) img(f, f) -= 1.0;
      images_.push_back(std::move(img));
    }
}

CMatrix TraceAnnihilatingMap::operator()(const CMatrix& x) const {
  if (x.rows() != input_dim() || x.cols() != input_dim()) throw Error(ErrorKind::DimensionMismatch, "Λ_TA input");
  CMatrix out = CMatrix::Zero(output_dim(), output_dim());
  for (int i = 0; i < input_dim(); ++i)
    for (int j = 0; j < input_dim(); ++j) out += x(i, j) * unit_image(i, j);
  return out;
}

CMatrix TraceAnnihilatingMap::choi() const {
  const int din = input_dim(), dout = output_dim();
  CMatrix j(din * dout, din * dout);
  for (int a = 0; a < din; ++a)
    for (int b = 0; b < din; ++b) j.block(a * dout, b * dout, dout, dout) = unit_image(a, b);
  return j;
}

TraceAnnihilatingMap trace_annihilating(const TracePreservingMap& tp) { return TraceAnnihilatingMap(tp); }

ChannelPair channel_pair(const TraceAnnihilatingMap& ta, const std::optional<CMatrix>& sigma0) {
  const int din = ta.input_dim(), dout = ta.output_dim();
  CMatrix flag = CMatrix::Zero(dout, dout);
  flag(ta.trace_preserving().flag_index(), ta.trace_preserving().flag_index()) = 1.0;
  const CMatrix sigma = validate(sigma0.value_or(flag), 1, dout).matrix();

  const Spectrum spec = eig_hermitian_relaxed(ta.choi());
  CMatrix j_plus = CMatrix::Zero(din * dout, din * dout), j_minus = j_plus;
  for (Eigen::Index k = 0; k < spec.eigenvalues.size(); ++k) {
    const double lambda = spec.eigenvalues(k);
    const CMatrix proj = spec.eigenvectors.col(k) * spec.eigenvectors.col(k).adjoint();
    if (lambda > -tol::jordan_dead_zone) j_plus += lambda * proj;
    else j_minus -= lambda * proj;
  }
  const CMatrix m_plus = partial_trace_b(j_plus, din, dout);
  const CMatrix m_minus = partial_trace_b(j_minus, din, dout);
  const double mismatch = (m_plus - m_minus).cwiseAbs().maxCoeff();
  if (mismatch > tol::strict)
    throw Error(ErrorKind::TraceNotOne, "Tr_out J⁺ and Tr_out J⁻ differ by " + std::to_string(mismatch));
  const CMatrix m = hermitian_part(CMatrix(0.5 * (m_plus + m_minus)));
  const double c = eig_hermitian_relaxed(m).max();
  if (!(c > tol::zero_normalizer)) throw Error(ErrorKind::DegenerateMap, "Λ_TA vanishes");

  const CMatrix fill = kron(CMatrix(c * CMatrix::Identity(din, din) - m), sigma);
  QuantumChannel e1 = QuantumChannel::from_choi((j_plus + fill) / c, din, dout, "E1");
  QuantumChannel e2 = QuantumChannel::from_choi((j_minus + fill) / c, din, dout, "E2");
  return ChannelPair{std::move(e1), std::move(e2), 1.0 / c, c, ta};
}

AdvantageReport advantage_test(const DensityMatrix& state, const GlobalUnitary& u, const ChannelPair& pair) {
  if (pair.e1.input_dim() != state.dim_b())
    throw Error(ErrorKind::DimensionMismatch, "channel pair does not act on subsystem B");
  if (u.dim() != state.dim()) throw Error(ErrorKind::DimensionMismatch, "unitary does not act on the full space");
  const CMatrix x = u.matrix() * state.matrix() * u.matrix().adjoint();
  const int da = state.dim_a();

  const double distance = trace_norm(CMatrix(apply_local(pair.e1, x, da) - apply_local(pair.e2, x, da)));
  const TracePreservingMap& tp = pair.ta.trace_preserving();
  const CMatrix tp_out = apply_blockwise(tp, tp.input_dim(), tp.extended_output_dim(), x, da);
  const Spectrum tp_spec = eig_hermitian_relaxed(tp_out);
  const double tp_norm = tp_spec.eigenvalues.cwiseAbs().sum();

  AdvantageReport r{};
  r.distance = distance;
  r.baseline = 2.0 * pair.k;
  r.advantage = distance - r.baseline;
  r.identity_rhs = pair.k * (tp_norm + 1.0);
  r.identity_residual = std::abs(distance - r.identity_rhs);
  r.tp_min_eig = tp_spec.min();
  r.tp_output_negative = r.tp_min_eig < -tol::strict;
  r.consistent = (r.advantage > pair.k * tol::strict) == r.tp_output_negative;
  r.p_success = 0.5 * (1.0 + 0.5 * distance);
  r.p_success_baseline = 0.5 * (1.0 + pair.k);
  return r;
}

}  // namespace absep
