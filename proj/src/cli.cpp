#include "absep/cli.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "absep/channels.hpp"
#include "absep/detection.hpp"
#include "absep/discrimination.hpp"
#include "absep/error.hpp"
#include "absep/scan.hpp"
#include "absep/serialization.hpp"
#include "absep/tolerances.hpp"

namespace absep::cli {

namespace {

constexpr double kPhi1Default = std::numbers::pi / 18.0;
constexpr double kPhi2Default = 5.0 * std::numbers::pi / 6.0;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream is(s);
  while (std::getline(is, part, sep)) parts.push_back(part);
  return parts;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::Parse, "cannot read " + what + " from '" + s + "'");
}

SearchObjective parse_objective(const std::string& name) {
  if (name == "thm1") return SearchObjective::thm_one();
  if (name == "r2") return SearchObjective::r2();
  if (name.rfind("hankel", 0) == 0 && name.size() > 6) {
    const int m = static_cast<int>(parse_double(name.substr(6), "Hankel order"));
    if (m < 1) throw Error(ErrorKind::ParamOutOfRange, "Hankel objective order must be >= 1");
    return SearchObjective::hankel_det(m);
  }
  throw Error(ErrorKind::Parse, "unknown objective '" + name + "' (expected thm1, hankelN or r2)");
}

struct UnitaryOptions {
  std::string source = "identity";
  std::string objective = "thm1";
  int budget = 2000;
  int restarts = 20;
  std::uint64_t seed = 42;
  std::optional<double> phi1, phi2;
};

void add_unitary_options(CLI::App* cmd, UnitaryOptions& o) {
  cmd->add_option("--unitary", o.source, "paper:U1..U4[:phi1,phi2] | identity | search | haar:SEED | file:PATH");
  cmd->add_option("--objective", o.objective, "search objective: thm1, hankelN or r2");
  cmd->add_option("--budget", o.budget, "objective evaluations per restart");
  cmd->add_option("--restarts", o.restarts, "independent search restarts");
  cmd->add_option("--seed", o.seed, "seed for searches and random probes");
  cmd->add_option("--phi1", o.phi1, "first angle of U4");
  cmd->add_option("--phi2", o.phi2, "second angle of U4");
}

struct ResolvedUnitary {
  GlobalUnitary unitary;
  std::optional<UnitarySearchResult> search;
};

ResolvedUnitary resolve_unitary(const UnitaryOptions& o, const DensityMatrix& state, const PositiveMap& map) {
  const UnitarySpec spec = parse_unitary_spec(o.source);
  switch (spec.kind) {
    case UnitarySpec::Kind::Identity: return {GlobalUnitary::identity(state.dim()), std::nullopt};
    case UnitarySpec::Kind::Haar: return {haar_random(state.dim(), spec.seed), std::nullopt};
    case UnitarySpec::Kind::File: return {read_unitary_file(spec.path), std::nullopt};
    case UnitarySpec::Kind::Named: {
      const double phi1 = o.phi1.value_or(spec.phi1.value_or(kPhi1Default));
      const double phi2 = o.phi2.value_or(spec.phi2.value_or(kPhi2Default));
      return {named_unitary(spec.named, phi1, phi2), std::nullopt};
    }
    case UnitarySpec::Kind::Search: {
      SearchOptions opts;
      opts.budget = o.budget;
      opts.restarts = o.restarts;
      opts.seed = o.seed;
      UnitarySearchResult r = search_violating_unitary(state, map, parse_objective(o.objective), opts);
      GlobalUnitary u = r.best_unitary;
      return {std::move(u), std::move(r)};
    }
  }
  throw Error(ErrorKind::Parse, "unitary source");
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error(ErrorKind::Parse, "cannot write " + path);
  file << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace

UnitarySpec parse_unitary_spec(const std::string& text) {
  UnitarySpec spec;
  if (text == "identity") return spec;
  if (text == "search") {
    spec.kind = UnitarySpec::Kind::Search;
    return spec;
  }
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "haar" && !rest.empty()) {
    spec.kind = UnitarySpec::Kind::Haar;
    try {
      spec.seed = std::stoull(rest);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "haar seed must be an unsigned integer: '" + rest + "'");
    }
    return spec;
  }
  if (head == "file" && !rest.empty()) {
    spec.kind = UnitarySpec::Kind::File;
    spec.path = rest;
    return spec;
  }
  if (head == "paper") {
    const auto parts = split(rest, ':');
    static const std::vector<std::string> names{"U1", "U2", "U3", "U4"};
    std::size_t idx = 0;
    while (idx < names.size() && (parts.empty() || parts[0] != names[idx])) ++idx;
    if (idx == names.size() || parts.size() > 2) throw Error(ErrorKind::Parse, "unknown named unitary '" + text + "'");
    spec.kind = UnitarySpec::Kind::Named;
    spec.named = static_cast<NamedUnitary>(idx);
    if (parts.size() == 2) {
      const auto angles = split(parts[1], ',');
      if (angles.size() != 2) throw Error(ErrorKind::Parse, "expected two angles in '" + text + "'");
      spec.phi1 = parse_double(angles[0], "phi1");
      spec.phi2 = parse_double(angles[1], "phi2");
    }
    return spec;
  }
  throw Error(ErrorKind::Parse, "unknown unitary source '" + text + "'");
}

DensityMatrix generate_state(const StateRequest& r) {
  const std::string& n = r.name;
  if (n == "rho1") return rho1();
  if (n == "rho2") return rho2();
  if (n == "rho3") return rho3(r.p);
  if (n == "rho4") return rho4(r.p, r.b);
  if (n == "bell") return bell_state();
  if (n == "maxmix4") return maximally_mixed(2, 2);
  if (n == "maxmix") return maximally_mixed(r.dim_a, r.dim_b);
  if (n == "isotropic") {
    if (r.dim_a != r.dim_b) throw Error(ErrorKind::DimensionMismatch, "isotropic states need dim_a == dim_b");
    return isotropic(r.dim_a, r.p);
  }
  if (n == "random") return random_density(r.dim_a, r.dim_b, r.seed);
  if (n == "random-pure") return random_pure(r.dim_a, r.dim_b, r.seed);
  throw Error(ErrorKind::Parse, "unknown state name '" + n + "'");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Absolute-separability and absolute-PPT detection from moments of one-sided positive-map outputs"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  // detect / detect-ppt
  struct {
    std::string state, map = "transpose", out;
    int hankel = 2, order = 0, thm9_samples = 50;
    UnitaryOptions u;
  } d;
  CLI::App* detect_cmd = app.add_subcommand("detect", "moment criteria for absolute separability");
  CLI::App* detect_ppt_cmd = app.add_subcommand("detect-ppt", "moment criteria and sufficient tests for absolute PPT");
  for (CLI::App* cmd : {detect_cmd, detect_ppt_cmd}) {
    cmd->add_option("--state", d.state, "input .dm.json")->required()->check(CLI::ExistingFile);
    cmd->add_option("--map", d.map, "transpose | reduction");
    cmd->add_option("--hankel", d.hankel, "largest Hankel order m");
    cmd->add_option("--order", d.order, "moment order (0 selects max(3, 2m + 1))");
    cmd->add_option("--out", d.out, "write the JSON report here instead of stdout");
    add_unitary_options(cmd, d.u);
  }
  detect_ppt_cmd->add_option("--thm9-samples", d.thm9_samples, "Haar probes for the r2 sufficiency search");

  // scan
  struct {
    std::string family, map = "transpose", unitary, out;
    double b = 1.5, tol = 1e-6;
    std::optional<double> phi1, phi2;
    int points = 101;
  } s;
  CLI::App* scan_cmd = app.add_subcommand("scan", "p-sweep of a state family with bisected thresholds (CSV)");
  scan_cmd->add_option("--family", s.family, "isotropic3 | rho4")->required();
  scan_cmd->add_option("--map", s.map, "transpose | reduction");
  scan_cmd->add_option("--b", s.b, "rho4 parameter b in [1, 4]");
  scan_cmd->add_option("--phi1", s.phi1, "first angle of U4");
  scan_cmd->add_option("--phi2", s.phi2, "second angle of U4");
  scan_cmd->add_option("--unitary", s.unitary, "override the family's default unitary (not search)");
  scan_cmd->add_option("--points", s.points, "grid points on [0, 1]");
  scan_cmd->add_option("--tol", s.tol, "bisection tolerance");
  scan_cmd->add_option("--out", s.out, "write CSV here instead of stdout");

  // channel-detect / channel-threshold
  struct {
    std::string family, map = "transpose", out;
    std::optional<double> p;
    int grid = 0, samples = 20, points = 0;
    std::uint64_t seed = 42;
    double tol = 1e-6;
  } c;
  CLI::App* channel_cmd = app.add_subcommand("channel-detect", "moment criterion on outputs of a depolarizing channel");
  CLI::App* threshold_cmd = app.add_subcommand("channel-threshold", "bisected absolutely-separating threshold");
  for (CLI::App* cmd : {channel_cmd, threshold_cmd}) {
    cmd->add_option("--family", c.family, "dep2 | dep3")->required();
    cmd->add_option("--map", c.map, "transpose | reduction");
    cmd->add_option("--grid", c.grid, "Schmidt grid resolution (0 selects the default)");
    cmd->add_option("--samples", c.samples, "local-basis samples for non-covariant channels");
    cmd->add_option("--seed", c.seed, "sampling seed");
    cmd->add_option("--out", c.out, "output path");
  }
  channel_cmd->add_option("--p", c.p, "channel parameter");
  channel_cmd->add_option("--points", c.points, "emit a CSV sweep over this many p values instead");
  threshold_cmd->add_option("--tol", c.tol, "bisection tolerance");

  // discriminate
  struct {
    std::string state, map = "transpose", sigma0, out;
    UnitaryOptions u;
  } x;
  CLI::App* disc_cmd = app.add_subcommand("discriminate", "channel discrimination with the trace-annihilating split");
  disc_cmd->add_option("--state", x.state, "input .dm.json")->required()->check(CLI::ExistingFile);
  disc_cmd->add_option("--map", x.map, "transpose | reduction");
  disc_cmd->add_option("--sigma0", x.sigma0, "completion state (.dm.json with dim_a = 1); default |f><f|")
      ->check(CLI::ExistingFile);
  disc_cmd->add_option("--out", x.out, "output path");
  add_unitary_options(disc_cmd, x.u);

  // gen-state
  StateRequest g;
  std::string g_out;
  CLI::App* gen_cmd = app.add_subcommand("gen-state", "write a named state as .dm.json");
  gen_cmd->add_option("--name", g.name, "rho1 | rho2 | rho3 | rho4 | bell | maxmix4 | maxmix | isotropic | random | random-pure")
      ->required();
  gen_cmd->add_option("--p", g.p, "mixing parameter");
  gen_cmd->add_option("--b", g.b, "rho4 parameter");
  gen_cmd->add_option("--dim-a", g.dim_a, "local dimension of A");
  gen_cmd->add_option("--dim-b", g.dim_b, "local dimension of B");
  gen_cmd->add_option("--seed", g.seed, "seed for random states");
  gen_cmd->add_option("--out", g_out, "output path (stdout when omitted)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kError;
  }

  try {
    if (detect_cmd->parsed() || detect_ppt_cmd->parsed()) {
      const bool ppt = detect_ppt_cmd->parsed();
      const DensityMatrix state = read_state_file(d.state);
      const PositiveMap map = map_by_name(d.map, state.dim_b());
      ResolvedUnitary ru = resolve_unitary(d.u, state, map);
      DetectionOptions opts;
      opts.mode = ppt ? DetectionMode::AbsolutePPT : DetectionMode::AbsoluteSeparability;
      opts.hankel_order = d.hankel;
      opts.moment_order = d.order;
      opts.thm9_samples = d.thm9_samples;
      opts.seed = d.u.seed;
      const DetectionReport report = detect(state, d.state, map, ru.unitary, opts, std::move(ru.search));
      emit(dump(to_json(report)), d.out, out);
      return report.verdict == Verdict::Inconclusive ? kInconclusive : kDetected;
    }

    if (scan_cmd->parsed()) {
      ScanConfig cfg;
      cfg.family = scan_family_by_name(s.family);
      cfg.map = s.map;
      cfg.b = s.b;
      cfg.phi1 = s.phi1.value_or(kPhi1Default);
      cfg.phi2 = s.phi2.value_or(kPhi2Default);
      cfg.points = s.points;
      cfg.tol = s.tol;
      if (!s.unitary.empty()) {
        const UnitarySpec spec = parse_unitary_spec(s.unitary);
        const int dim = 9;
        switch (spec.kind) {
          case UnitarySpec::Kind::Search: throw Error(ErrorKind::Parse, "scan does not search unitaries");
          case UnitarySpec::Kind::Identity: cfg.unitary = GlobalUnitary::identity(dim); break;
          case UnitarySpec::Kind::Haar: cfg.unitary = haar_random(dim, spec.seed); break;
          case UnitarySpec::Kind::File: cfg.unitary = read_unitary_file(spec.path); break;
          case UnitarySpec::Kind::Named:
            cfg.unitary = named_unitary(spec.named, s.phi1.value_or(spec.phi1.value_or(kPhi1Default)),
                                        s.phi2.value_or(spec.phi2.value_or(kPhi2Default)));
            break;
        }
      }
      emit(scan_csv(run_scan(cfg)), s.out, out);
      return kDetected;
    }

    if (channel_cmd->parsed()) {
      const ChannelFamily family = channel_family_by_name(c.family);
      const PositiveMap map = map_by_name(c.map, local_dim(family));
      const SweepOptions opts{c.grid, c.samples, c.seed};
      if (c.points > 0) {
        if (c.points < 2) throw Error(ErrorKind::ParamOutOfRange, "--points needs at least 2");
        std::string csv = "p,worst_margin,verdict\n";
        for (int i = 0; i < c.points; ++i) {
          const double p = static_cast<double>(i) / (c.points - 1);
          const ChannelCriterionReport r = annihilation_sweep(family_channel(family, p), map, opts);
          csv += fmt(p) + "," + fmt(r.worst_margin) + "," + to_string(r.verdict) + "\n";
        }
        emit(csv, c.out, out);
        return kDetected;
      }
      if (!c.p) throw Error(ErrorKind::ParamOutOfRange, "channel-detect needs --p or --points");
      ChannelCriterionReport r = annihilation_sweep(family_channel(family, *c.p), map, opts);
      r.p = *c.p;
      Json j = to_json(r);
      j["map"] = map.name();
      emit(dump(j), c.out, out);
      return r.verdict == ChannelVerdict::Inconclusive ? kInconclusive : kDetected;
    }

    if (threshold_cmd->parsed()) {
      const ChannelFamily family = channel_family_by_name(c.family);
      const PositiveMap map = map_by_name(c.map, local_dim(family));
      const ThresholdOutcome t = threshold_scan(family, map, c.tol, SweepOptions{c.grid, c.samples, c.seed});
      Json j{{"family", c.family}, {"map", map.name()}, {"tol", c.tol}};
      j["threshold"] = to_json(t);
      emit(dump(j), c.out, out);
      return kDetected;
    }

    if (disc_cmd->parsed()) {
      const DensityMatrix state = read_state_file(x.state);
      const PositiveMap map = map_by_name(x.map, state.dim_b());
      ResolvedUnitary ru = resolve_unitary(x.u, state, map);
      std::optional<CMatrix> sigma0;
      if (!x.sigma0.empty()) sigma0 = read_state_file(x.sigma0).matrix();
      const ChannelPair pair = channel_pair(trace_annihilating(make_trace_preserving(map)), sigma0);
      const AdvantageReport r = advantage_test(state, ru.unitary, pair);
      const TracePreservingMap& tp = pair.ta.trace_preserving();
      Json j{{"state", x.state},
             {"map", map.name()},
             {"mu", tp.mu()},
             {"trace_correction", tp.has_correction()},
             {"extended_output_dim", tp.extended_output_dim()},
             {"k", pair.k},
             {"completion", pair.completion}};
      j["report"] = to_json(r);
      if (ru.search) j["search"] = to_json(*ru.search);
      j["unitary"] = to_json(ru.unitary);
      emit(dump(j), x.out, out);
      return r.advantage > pair.k * tol::strict ? kDetected : kInconclusive;
    }

    if (gen_cmd->parsed()) {
      emit(dump(state_to_json(generate_state(g))), g_out, out);
      return kDetected;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}

}  // namespace absep::cli
