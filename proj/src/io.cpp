#include "isotuple/io.hpp"

#include <fstream>
#include <sstream>

namespace isotuple {

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

Complex entry_from_json(const Json& z) {
  if (z.is_number()) return {z.get<double>(), 0.0};
  if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
    return {z[0].get<double>(), z[1].get<double>()};
  }
  throw ParseError("matrix entry must be a number or [re, im]");
}

}  // namespace

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix must be a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw ParseError("matrix must be square (row " + std::to_string(i) + ")");
    }
    for (Eigen::Index k = 0; k < n; ++k) m(i, k) = entry_from_json(row[static_cast<std::size_t>(k)]);
  }
  if (!m.allFinite()) throw ParseError("matrix has non-finite entries");
  return m;
}

Json tuple_to_json(const OperatorTuple& t) {
  Json comps = Json::array();
  for (const auto& c : t) comps.push_back(matrix_to_json(c));
  return Json{{"dim", t.dim()}, {"d", t.size()}, {"components", std::move(comps)}};
}

OperatorTuple tuple_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("components")) {
    throw ParseError("tuple must be an object with a \"components\" array");
  }
  const Json& comps = j.at("components");
  if (!comps.is_array() || comps.empty()) throw ParseError("tuple needs at least one component");
  std::vector<CMatrix> out;
  for (const auto& c : comps) out.push_back(matrix_from_json(c));
  if (j.contains("d") && j.at("d") != comps.size()) throw ParseError("tuple \"d\" disagrees with components");
  for (const auto& c : out) {
    if (c.rows() != out.front().rows()) throw ParseError("tuple components differ in dimension");
  }
  if (j.contains("dim") && j.at("dim") != out.front().rows()) {
    throw ParseError("tuple \"dim\" disagrees with components");
  }
  return OperatorTuple(std::move(out));
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

namespace {

Json optional_degree(const std::optional<unsigned>& d) { return d ? Json(*d) : Json(nullptr); }

}  // namespace

Json profile_to_json(const DefectProfile& p) {
  return Json{{"k_max", p.k_max()},
              {"scale", p.scale},
              {"triangle_norms", p.triangle_norms},
              {"triangle_thresholds", p.triangle_thresholds},
              {"delta_norms", p.delta_norms},
              {"delta_thresholds", p.delta_thresholds},
              {"min_isometry_degree", optional_degree(p.min_isometry_degree)},
              {"min_symmetry_degree", optional_degree(p.min_symmetry_degree)},
              {"isometry_anomalies", p.isometry_anomalies},
              {"symmetry_anomalies", p.symmetry_anomalies}};
}

Json bundle_to_json(const Bundle& b) {
  Json tuples = Json::object();
  for (const auto& [name, t] : b.tuples) tuples[name] = tuple_to_json(t);
  Json mats = Json::object();
  for (const auto& [name, m] : b.matrices) mats[name] = matrix_to_json(m);
  return Json{{"profile", b.profile}, {"seed", b.seed},  {"params", b.params},
              {"residuals", b.residuals}, {"tuples", tuples}, {"matrices", mats}};
}

Json trial_to_json(const TrialRecord& r) {
  const TrialResult& t = r.result;
  Json j{{"trial", r.index},
         {"seed", r.seed},
         {"status", to_string(t.status)},
         {"reason", t.reason},
         {"defect", t.defect},
         {"threshold", t.threshold},
         {"bound", optional_degree(t.bound)},
         {"empirical_min_degree", optional_degree(t.empirical_min_degree)},
         {"sharpness_defect", t.sharpness_defect},
         {"details", t.details}};
  if (!t.defect_norms.empty()) j["defect_norms"] = t.defect_norms;
  if (r.bundle) j["bundle"] = bundle_to_json(*r.bundle);
  return j;
}

Json report_to_json(const CampaignReport& r, bool include_timing) {
  Json cex = Json::array();
  for (const auto& c : r.counterexamples) cex.push_back(trial_to_json(c));
  Json anomalies = Json::array();
  for (const auto& c : r.anomalies) anomalies.push_back(trial_to_json(c));
  Json witnesses = Json::array();
  for (const auto& w : r.sharpness_witnesses) {
    witnesses.push_back({{"trial", w.index},
                         {"seed", w.seed},
                         {"bound", optional_degree(w.result.bound)},
                         {"defect_below_bound", w.result.sharpness_defect}});
  }
  Json hist = Json::object();
  for (const auto& [slack, count] : r.slack_histogram) hist[std::to_string(slack)] = count;
  Json j{{"schema_version", CampaignReport::kSchemaVersion},
         {"theorem_id", r.theorem_id},
         {"seed", r.seed},
         {"requested_trials", r.requested_trials},
         {"trials", r.trials},
         {"passes", r.passes},
         {"tolerance_anomalies", r.tolerance_anomalies},
         {"skipped", r.skipped},
         {"completed", r.completed},
         {"budget_exceeded", r.budget_exceeded},
         {"tolerance", {{"abs_eps", r.tol.abs_eps}, {"rel_eps", r.tol.rel_eps}}},
         {"max_defect_ratio", r.max_defect_ratio},
         {"bound_minus_empirical_degree", hist},
         {"counterexamples", cex},
         {"anomalies", anomalies},
         {"sharpness_witnesses", witnesses}};
  if (include_timing) j["timing"] = {{"wall_time_seconds", r.wall_time}};
  return j;
}

std::string report_csv_header() { return "theorem_id,trials,passes,anomalies,max_defect\n"; }

std::string report_csv_row(const CampaignReport& r) {
  std::ostringstream os;
  os.precision(6);
  os << r.theorem_id << ',' << r.trials << ',' << r.passes << ',' << r.tolerance_anomalies << ','
     << r.max_defect_ratio << '\n';
  return os.str();
}

}  // namespace isotuple
