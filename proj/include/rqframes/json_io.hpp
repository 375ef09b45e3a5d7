#pragma once

/**
 * @file json_io.hpp
 * @brief JSON encodings of quaternions, vectors, matrices, families and reports.
 *
 *   quaternion  [x0, x1, x2, x3]
 *   vector      [[x0, x1, x2, x3], ...]
 *   matrix      {"rows": r, "cols": c, "entries": [[q, ...], ...]}   (row-major)
 *   family      {"dim": d, "rank": n, "nodes": [{"label": q, "weight": w,
 *                "vectors": [n vectors]}, ...]}
 *
 * Doubles are written in shortest round-trip form, so decode(encode(x))
 * reproduces x bit for bit.
 */

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "rqframes/frames.hpp"
#include "rqframes/harness.hpp"
#include "rqframes/perturb.hpp"

namespace rqframes {

using json = nlohmann::json;

namespace detail {

inline double finite_number(const json& j, const char* what) {
  if (!j.is_number()) throw parse_error(std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw non_finite(std::string(what) + " is not finite");
  return v;
}

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw parse_error(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline std::size_t positive_size(const json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    throw parse_error(std::string(what) + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

}  // namespace detail

inline json to_json(const quaternion& q) { return json::array({q.x0, q.x1, q.x2, q.x3}); }

inline quaternion quaternion_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) throw parse_error("quaternion must be a 4-array");
  return {detail::finite_number(j[0], "x0"), detail::finite_number(j[1], "x1"), detail::finite_number(j[2], "x2"),
          detail::finite_number(j[3], "x3")};
}

inline json to_json(const qvector& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(to_json(q));
  return out;
}

inline qvector qvector_from_json(const json& j) {
  if (!j.is_array()) throw parse_error("vector must be an array of quaternions");
  qvector v(j.size());
  for (std::size_t a = 0; a < j.size(); ++a) v[a] = quaternion_from_json(j[a]);
  return v;
}

inline json to_json(const qmatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

inline qmatrix qmatrix_from_json(const json& j) {
  const std::size_t rows = detail::positive_size(detail::field(j, "rows"), "rows");
  const std::size_t cols = detail::positive_size(detail::field(j, "cols"), "cols");
  const json& e = detail::field(j, "entries");
  if (!e.is_array() || e.size() != rows) throw parse_error("matrix entries must have one array per row");
  qmatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!e[r].is_array() || e[r].size() != cols) throw parse_error("matrix row has wrong length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = quaternion_from_json(e[r][c]);
  }
  return m;
}

inline json to_json(const frame_family& f) {
  json nodes = json::array();
  for (std::size_t k = 0; k < f.node_count(); ++k) {
    json vs = json::array();
    for (std::size_t i = 0; i < f.rank(); ++i) vs.push_back(to_json(f.vector(k, i)));
    nodes.push_back({{"label", to_json(f.measure()[k].label)}, {"weight", f.weight(k)}, {"vectors", std::move(vs)}});
  }
  return {{"dim", f.dim()}, {"rank", f.rank()}, {"nodes", std::move(nodes)}};
}

inline frame_family frame_family_from_json(const json& j) {
  const std::size_t dim = detail::positive_size(detail::field(j, "dim"), "dim");
  const std::size_t rank = detail::positive_size(detail::field(j, "rank"), "rank");
  const json& nodes = detail::field(j, "nodes");
  if (!nodes.is_array()) throw parse_error("nodes must be an array");
  std::vector<quadrature_node> measure;
  std::vector<frame_family::node_vectors> vectors;
  for (const auto& n : nodes) {
    measure.push_back({quaternion_from_json(detail::field(n, "label")), detail::finite_number(detail::field(n, "weight"), "weight")});
    const json& vs = detail::field(n, "vectors");
    if (!vs.is_array()) throw parse_error("node vectors must be an array");
    frame_family::node_vectors node;
    for (const auto& v : vs) node.push_back(qvector_from_json(v));
    vectors.push_back(std::move(node));
  }
  return {dim, rank, quadrature_measure(std::move(measure)), std::move(vectors)};
}

inline json to_json(const condition& c) {
  // infinite thresholds (the vacuous lambda < infinity hypothesis) are written as null
  json threshold = std::isfinite(c.threshold) ? json(c.threshold) : json(nullptr);
  return {{"name", c.name}, {"value", c.value}, {"threshold", std::move(threshold)}, {"holds", c.holds}};
}

inline json to_json(const theorem_report& r) {
  json conds = json::array();
  for (const auto& c : r.conditions) conds.push_back(to_json(c));
  json certs = json::array();
  for (const auto& c : r.certificates) certs.push_back(to_json(c));
  json out = {{"theorem_id", std::string(to_string(r.theorem))},
              {"conditions", std::move(conds)},
              {"certificates", std::move(certs)},
              {"hypotheses_hold", r.hypotheses_hold},
              {"predicted", {{"lower", r.predicted.lower}, {"upper", r.predicted.upper}}},
              {"measured", {{"lower", r.measured.lower}, {"upper", r.measured.upper}}},
              {"contained", r.contained},
              {"passed", r.passed()},
              {"trial_seed", r.trial_seed}};
  if (r.lower_candidates)
    out["lower_candidates"] = {{"statement", r.lower_candidates->statement}, {"proof", r.lower_candidates->proof}};
  if (r.error) out["error"] = *r.error;
  return out;
}

inline json to_json(const experiment_config& c) {
  json ts = json::array();
  for (auto t : c.theorem_set) ts.push_back(std::string(to_string(t)));
  return {{"dim", c.dim},
          {"rank", c.rank},
          {"node_count", c.node_count},
          {"trials", c.trials},
          {"seed", c.seed},
          {"perturbation_scale", c.perturbation_scale},
          {"theorem_set", std::move(ts)}};
}

/// Missing fields keep their defaults.
inline experiment_config experiment_config_from_json(const json& j) {
  if (!j.is_object()) throw parse_error("config must be a JSON object");
  experiment_config c;
  if (j.contains("dim")) c.dim = detail::positive_size(j["dim"], "dim");
  if (j.contains("rank")) c.rank = detail::positive_size(j["rank"], "rank");
  if (j.contains("node_count")) c.node_count = detail::positive_size(j["node_count"], "node_count");
  if (j.contains("trials")) c.trials = detail::positive_size(j["trials"], "trials");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw parse_error("seed must be an unsigned 64-bit integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("perturbation_scale")) c.perturbation_scale = detail::finite_number(j["perturbation_scale"], "perturbation_scale");
  if (j.contains("theorem_set")) {
    if (!j["theorem_set"].is_array()) throw parse_error("theorem_set must be an array");
    c.theorem_set.clear();
    for (const auto& t : j["theorem_set"]) {
      if (!t.is_string()) throw parse_error("theorem ids are strings");
      c.theorem_set.push_back(theorem_from_string(t.get<std::string>()));
    }
  }
  c.validate();
  return c;
}

inline json to_json(const suite_report& s, bool include_wall_time = true) {
  json reports = json::array();
  for (std::size_t e = 0; e < s.reports.size(); ++e) {
    json r = to_json(s.reports[e]);
    r["trial"] = s.trial_index[e];
    reports.push_back(std::move(r));
  }
  json tallies = json::object();
  for (const auto& [t, tally] : s.tallies)
    tallies[std::string(to_string(t))] = {{"total", tally.total},
                                          {"hypotheses_held", tally.hypotheses_held},
                                          {"contained", tally.contained},
                                          {"failed", tally.failed}};
  json out = {{"config", to_json(s.config)},
              {"reports", std::move(reports)},
              {"aggregate", std::move(tallies)},
              {"all_passed", s.all_passed()}};
  if (include_wall_time) out["wall_time_seconds"] = s.wall_time_seconds;
  return out;
}

/// One row per report: trial, theorem, seed, hypotheses, bounds, containment.
inline std::string to_csv(const suite_report& s) {
  std::ostringstream os;
  os << "trial,theorem_id,trial_seed,hypotheses_hold,predicted_lower,predicted_upper,measured_lower,measured_upper,"
        "contained,passed\n";
  for (std::size_t e = 0; e < s.reports.size(); ++e) {
    const auto& r = s.reports[e];
    os << s.trial_index[e] << ',' << to_string(r.theorem) << ',' << r.trial_seed << ',' << r.hypotheses_hold << ','
       << json(r.predicted.lower).dump() << ',' << json(r.predicted.upper).dump() << ','
       << json(r.measured.lower).dump() << ',' << json(r.measured.upper).dump() << ',' << r.contained << ','
       << r.passed() << '\n';
  }
  return os.str();
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw parse_error(path + ": " + e.what());
  }
}

}  // namespace rqframes
