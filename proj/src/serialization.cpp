#include "absep/serialization.hpp"

#include <cmath>
#include <fstream>

namespace absep {

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::Parse, "matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw Error(ErrorKind::Parse, "ragged matrix rows");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Json& entry = row[static_cast<std::size_t>(c)];
      if (entry.is_number()) {
        m(i, c) = entry.get<double>();
      } else if (entry.is_array() && entry.size() == 2 && entry[0].is_number() && entry[1].is_number()) {
        m(i, c) = Complex(entry[0].get<double>(), entry[1].get<double>());
      } else {
        throw Error(ErrorKind::Parse, "matrix entries must be [re, im] pairs");
      }
    }
  }
  return m;
}

Json state_to_json(const DensityMatrix& state) {
  return Json{{"dim_a", state.dim_a()}, {"dim_b", state.dim_b()}, {"matrix", matrix_to_json(state.matrix())}};
}

DensityMatrix state_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim_a") || !j.contains("dim_b") || !j.contains("matrix"))
    throw Error(ErrorKind::Parse, "state JSON needs dim_a, dim_b and matrix");
  return validate(matrix_from_json(j.at("matrix")), j.at("dim_a").get<int>(), j.at("dim_b").get<int>());
}

namespace {

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, path.string() + ": " + e.what());
  }
}

}  // namespace

DensityMatrix read_state_file(const std::filesystem::path& path) {
  try {
    return state_from_json(read_json(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, path.string() + ": " + e.what());
  }
}

void write_state_file(const std::filesystem::path& path, const DensityMatrix& state) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Parse, "cannot write " + path.string());
  out << state_to_json(state).dump(2) << '\n';
}

GlobalUnitary read_unitary_file(const std::filesystem::path& path) {
  const Json j = read_json(path);
  const Json& m = j.is_object() ? j.at("matrix") : j;
  return GlobalUnitary::checked(matrix_from_json(m), "file:" + path.string());
}

Json to_json(const GlobalUnitary& u) {
  Json j{{"label", u.label()}, {"polar_corrected", u.polar_corrected()}};
  if (u.polar_corrected()) j["input_unitarity_residual"] = u.input_residual();
  j["matrix"] = matrix_to_json(u.matrix());
  return j;
}

Json to_json(const MomentVector& m) {
  Json values = Json::array();
  for (double v : m.values) values.push_back(number(v));
  return values;
}

Json to_json(const UnitarySearchResult& r) {
  return Json{{"best_score", number(r.best_score)},
              {"evaluations", r.evaluations},
              {"converged", r.converged},
              {"best_restart", r.best_restart}};
}

Json to_json(const DetectionReport& r) {
  Json j;
  j["state"] = r.state_id;
  j["map"] = r.map_name;
  j["mode"] = r.mode == DetectionMode::AbsolutePPT ? "absolute-ppt" : "absolute-separability";
  j["verdict"] = to_string(r.verdict);
  j["certified_by"] = r.certified_by;
  j["normalizer"] = number(r.normalizer);
  j["min_eig"] = number(r.min_eig);
  j["moments"] = to_json(r.moments);
  j["thm1"] = Json{{"margin", number(r.thm1.margin)}, {"violated", r.thm1.violated}};
  Json hankel = Json::array();
  for (const auto& h : r.hankel)
    hankel.push_back(Json{{"m", h.m},
                          {"det", number(h.determinant)},
                          {"min_eig", number(h.min_eigenvalue)},
                          {"violated", h.violated},
                          {"verdict", to_string(h.verdict)}});
  j["hankel"] = std::move(hankel);
  if (r.oracle) j["oracle"] = Json{{"value", number(r.oracle->value)}, {"absolutely_separable", r.oracle->absolutely_separable}};
  if (r.ball) j["ball"] = Json{{"purity", number(r.ball->purity)}, {"radius", number(r.ball->radius)}, {"inside", r.ball->inside}};
  if (r.thm9)
    j["thm9"] = Json{{"max_r2", number(r.thm9->max_r2)},
                     {"bound", number(r.thm9->bound)},
                     {"d", r.thm9->d},
                     {"sufficient_appt", r.thm9->sufficient_appt},
                     {"heuristic", true}};
  if (r.search) j["search"] = to_json(*r.search);
  j["unitary"] = to_json(r.unitary);
  j["notes"] = r.notes;
  return j;
}

Json to_json(const ChannelCriterionReport& r) {
  Json j;
  j["channel"] = r.channel;
  j["p"] = r.p ? number(*r.p) : Json(nullptr);
  j["verdict"] = to_string(r.verdict);
  j["worst_margin"] = number(r.worst_margin);
  j["worst_input"] = r.worst_input;
  Json q = Json::array();
  for (double v : r.q_moments) q.push_back(number(v));
  j["q_moments"] = std::move(q);
  j["grid_points"] = r.grid_points;
  j["skipped"] = r.skipped;
  j["max_entangled_is_worst"] = r.max_entangled_is_worst;
  return j;
}

Json to_json(const ThresholdOutcome& r) {
  Json prescan = Json::array();
  for (const auto& [p, m] : r.prescan) prescan.push_back(Json::array({p, number(m)}));
  return Json{{"p_star", r.p_star},
              {"lower", r.lower},
              {"upper", r.upper},
              {"bisection_steps", r.bisection_steps},
              {"prescan", std::move(prescan)}};
}

Json to_json(const AdvantageReport& r) {
  return Json{{"distance", number(r.distance)},
              {"baseline", number(r.baseline)},
              {"advantage", number(r.advantage)},
              {"identity_rhs", number(r.identity_rhs)},
              {"identity_residual", number(r.identity_residual)},
              {"tp_min_eig", number(r.tp_min_eig)},
              {"tp_output_negative", r.tp_output_negative},
              {"consistent", r.consistent},
              {"p_success", number(r.p_success)},
              {"p_success_baseline", number(r.p_success_baseline)}};
}

}  // namespace absep
