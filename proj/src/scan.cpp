#include "absep/scan.hpp"

#include <cstdio>
#include <sstream>

#include "absep/error.hpp"

namespace absep {

ScanFamily scan_family_by_name(const std::string& name) {
  if (name == "isotropic3") return ScanFamily::Isotropic3;
  if (name == "rho4") return ScanFamily::Rho4;
  throw Error(ErrorKind::Parse, "unknown scan family '" + name + "' (expected isotropic3 or rho4)");
}

std::string to_string(ScanFamily family) { return family == ScanFamily::Isotropic3 ? "isotropic3" : "rho4"; }

namespace {

DensityMatrix family_state(const ScanConfig& config, double p) {
  return config.family == ScanFamily::Isotropic3 ? rho3(p) : rho4(p, config.b);
}

GlobalUnitary default_unitary(const ScanConfig& config) {
  if (config.unitary) return *config.unitary;
  return config.family == ScanFamily::Isotropic3 ? named_unitary(NamedUnitary::U3)
                                                 : named_unitary(NamedUnitary::U4, config.phi1, config.phi2);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace

ScanRow scan_point(const ScanConfig& config, const GlobalUnitary& u, double p) {
  const DensityMatrix state = family_state(config, p);
  const PositiveMap map = map_by_name(config.map, state.dim_b());
  const NormalizedOutput out = normalized_output(map, state, u.matrix());
  const MomentVector mv = moments(out, 5);
  const HankelOutcome h1 = hankel_outcome(mv, 1, map.decomposable());
  const HankelOutcome h2 = hankel_outcome(mv, 2, map.decomposable());
  const Thm1Outcome t1 = thm1_test(mv);

  const CMatrix rotated = u.matrix() * state.matrix() * u.matrix().adjoint();
  const double pt_min = eig_hermitian_relaxed(partial_transpose_b(rotated, state.dim_a(), state.dim_b())).min();

  Verdict verdict = Verdict::Inconclusive;
  if (h1.violated || h2.violated || t1.violated) verdict = Verdict::NotAbsolutelySeparable;
  return ScanRow{p, t1.margin, h1.determinant, h2.determinant, pt_min, verdict};
}

std::optional<double> trailing_onset(const std::vector<double>& grid, const std::vector<bool>& hits,
                                     const std::function<bool(double)>& predicate, double tol) {
  if (grid.empty() || !hits.back()) return std::nullopt;
  std::size_t first = hits.size() - 1;
  while (first > 0 && hits[first - 1]) --first;
  if (first == 0) return std::nullopt;
  double lo = grid[first - 1], hi = grid[first];
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (predicate(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

ScanResult run_scan(const ScanConfig& config) {
  if (config.points < 2) throw Error(ErrorKind::ParamOutOfRange, "scan needs at least two grid points");
  if (!(config.tol > 0.0)) throw Error(ErrorKind::ParamOutOfRange, "scan tolerance must be positive");
  const GlobalUnitary u = default_unitary(config);
  ScanResult result{to_string(config.family), config.map, u, {}, std::nullopt, std::nullopt, std::nullopt};

  std::vector<double> grid;
  std::vector<bool> hankel_hits, thm1_hits, npt_hits;
  for (int i = 0; i < config.points; ++i) {
    const double p = static_cast<double>(i) / (config.points - 1);
    const ScanRow row = scan_point(config, u, p);
    grid.push_back(p);
    hankel_hits.push_back(row.det_h2 < -kSignFloor);
    thm1_hits.push_back(row.thm1_margin > kSignFloor);
    npt_hits.push_back(row.pt_min_eig < -kSignFloor);
    result.rows.push_back(row);
  }

  result.hankel_threshold = trailing_onset(
      grid, hankel_hits, [&](double p) { return scan_point(config, u, p).det_h2 < -kSignFloor; }, config.tol);
  result.thm1_threshold = trailing_onset(
      grid, thm1_hits, [&](double p) { return scan_point(config, u, p).thm1_margin > kSignFloor; }, config.tol);
  result.npt_threshold = trailing_onset(
      grid, npt_hits, [&](double p) { return scan_point(config, u, p).pt_min_eig < -kSignFloor; }, config.tol);
  return result;
}

std::string scan_csv(const ScanResult& result) {
  std::ostringstream os;
  os << "# family=" << result.family << " map=" << result.map << " unitary=" << result.unitary.label() << '\n';
  os << "p,thm1_margin,detH1,detH2,verdict\n";
  for (const ScanRow& r : result.rows)
    os << fmt(r.p) << ',' << fmt(r.thm1_margin) << ',' << fmt(r.det_h1) << ',' << fmt(r.det_h2) << ','
       << to_string(r.verdict) << '\n';
  auto line = [&](const char* name, const std::optional<double>& t) {
    os << "# " << name << '=' << (t ? fmt(*t) : std::string("none")) << '\n';
  };
  line("detH2_threshold", result.hankel_threshold);
  line("thm1_threshold", result.thm1_threshold);
  line("npt_threshold", result.npt_threshold);
  return os.str();
}

}  // namespace absep
