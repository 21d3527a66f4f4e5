#include "absep/positive_maps.hpp"

#include <cmath>

#include "absep/tolerances.hpp"

namespace absep {

PositiveMap::PositiveMap(std::string name, MapKind kind, int input_dim, int output_dim,
                         std::vector<CMatrix> images, bool decomposable)
    : name_(std::move(name)),
      kind_(kind),
      input_dim_(input_dim),
      output_dim_(output_dim),
      unit_images_(std::move(images)),
      decomposable_(decomposable) {}

PositiveMap PositiveMap::transpose(int dim) {
  if (dim < 1) throw Error(ErrorKind::ParamOutOfRange, "map dimension");
  std::vector<CMatrix> images;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) images.push_back(matrix_unit(dim, dim, j, i));
  return PositiveMap("transpose", MapKind::Transpose, dim, dim, std::move(images), true);
}

PositiveMap PositiveMap::reduction(int dim) {
  if (dim < 1) throw Error(ErrorKind::ParamOutOfRange, "map dimension");
  std::vector<CMatrix> images;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      CMatrix img = -matrix_unit(dim, dim, i, j);
      if (i == j) img += CMatrix::Identity(dim, dim);
      images.push_back(std::move(img));
    }
  return PositiveMap("reduction", MapKind::Reduction, dim, dim, std::move(images), true);
}

PositiveMap PositiveMap::custom(std::string name, int input_dim, int output_dim,
                                std::vector<CMatrix> unit_images, bool decomposable) {
  if (static_cast<int>(unit_images.size()) != input_dim * input_dim)
    throw Error(ErrorKind::LengthMismatch, "custom map needs input_dim² unit images");
  for (const auto& img : unit_images)
    if (img.rows() != output_dim || img.cols() != output_dim)
      throw Error(ErrorKind::DimensionMismatch, "unit image shape");
  PositiveMap map(std::move(name), MapKind::Custom, input_dim, output_dim, std::move(unit_images), decomposable);
  const double witness = positivity_witness(map);
  if (witness < tol::psd_floor)
    throw Error(ErrorKind::NotPositive, "probe produced eigenvalue " + std::to_string(witness));
  return map;
}

CMatrix PositiveMap::operator()(const CMatrix& x) const {
  if (x.rows() != input_dim_ || x.cols() != input_dim_)
    throw Error(ErrorKind::DimensionMismatch, "map input shape");
  CMatrix out = CMatrix::Zero(output_dim_, output_dim_);
  for (int i = 0; i < input_dim_; ++i)
    for (int j = 0; j < input_dim_; ++j)
      if (x(i, j) != Complex(0.0)) out += x(i, j) * unit_image(i, j);
  return out;
}

PositiveMap PositiveMap::scaled(double factor) const {
  std::vector<CMatrix> images = unit_images_;
  for (auto& img : images) img *= factor;
  PositiveMap out = *this;
  out.name_ = std::to_string(factor) + "*" + name_;
  out.unit_images_ = std::move(images);
  return out;
}

CMatrix PositiveMap::dual_of_identity() const {
  // Tr Λ(ρ) = Σ_ij ρ_ij Tr Λ(E_ij) = Tr(ρ A) with A_ji = Tr Λ(E_ij).
  CMatrix a(input_dim_, input_dim_);
  for (int i = 0; i < input_dim_; ++i)
    for (int j = 0; j < input_dim_; ++j) a(j, i) = unit_image(i, j).trace();
  return a;
}

CMatrix PositiveMap::choi() const {
  CMatrix j = CMatrix::Zero(input_dim_ * output_dim_, input_dim_ * output_dim_);
  for (int a = 0; a < input_dim_; ++a)
    for (int b = 0; b < input_dim_; ++b) j.block(a * output_dim_, b * output_dim_, output_dim_, output_dim_) = unit_image(a, b);
  return j;
}

PositiveMap map_by_name(const std::string& name, int dim) {
  if (name == "transpose") return PositiveMap::transpose(dim);
  if (name == "reduction") return PositiveMap::reduction(dim);
  throw Error(ErrorKind::Parse, "unknown map '" + name + "' (expected transpose|reduction)");
}

double positivity_witness(const PositiveMap& map, int samples, std::uint64_t seed) {
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 0; k < samples; ++k) {
    // Alternate pure and full-rank probes; pure inputs are the extreme points.
    const DensityMatrix probe = (k % 2 == 0) ? random_pure(1, map.input_dim(), seed + static_cast<std::uint64_t>(k))
                                             : random_density(1, map.input_dim(), seed + static_cast<std::uint64_t>(k));
    worst = std::min(worst, eig_hermitian_relaxed(map(probe.matrix())).min());
  }
  return worst;
}

CMatrix apply_one_sided(const PositiveMap& map, const CMatrix& x, int dim_a) {
  const int db = map.input_dim();
  if (x.rows() != dim_a * db || x.cols() != dim_a * db)
    throw Error(ErrorKind::DimensionMismatch, "map input dimension does not match subsystem B");
  const int dout = map.output_dim();
  CMatrix out(dim_a * dout, dim_a * dout);
  for (int i = 0; i < dim_a; ++i)
    for (int j = 0; j < dim_a; ++j)
      out.block(i * dout, j * dout, dout, dout) = map(x.block(i * db, j * db, db, db));
  return out;
}

CMatrix apply_one_sided(const PositiveMap& map, const DensityMatrix& state) {
  if (map.input_dim() != state.dim_b())
    throw Error(ErrorKind::DimensionMismatch, "map input dimension does not match subsystem B");
  return apply_one_sided(map, state.matrix(), state.dim_a());
}

NormalizedOutput normalized_output(const PositiveMap& map, const CMatrix& x, int dim_a) {
  const CMatrix raw = apply_one_sided(map, x, dim_a);
  const double normalizer = std::real(raw.trace());
  if (std::abs(normalizer) <= tol::zero_normalizer)
    throw Error(ErrorKind::ZeroNormalizer, "Tr[(id ⊗ Λ)(X)] vanishes");
  CMatrix op = hermitian_part(raw) / normalizer;
  const double min_eig = eig_hermitian_relaxed(op).min();
  return NormalizedOutput{std::move(op), normalizer, min_eig >= tol::psd_floor, min_eig};
}

NormalizedOutput normalized_output(const PositiveMap& map, const DensityMatrix& state, const CMatrix& u) {
  if (map.input_dim() != state.dim_b())
    throw Error(ErrorKind::DimensionMismatch, "map input dimension does not match subsystem B");
  if (u.rows() != state.dim() || u.cols() != state.dim())
    throw Error(ErrorKind::DimensionMismatch, "unitary does not act on the full space");
  return normalized_output(map, CMatrix(u * state.matrix() * u.adjoint()), state.dim_a());
}

}  // namespace absep
