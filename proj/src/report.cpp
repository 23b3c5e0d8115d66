#include "hausflow/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace hausflow {

namespace {

using json = nlohmann::ordered_json;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

}  // namespace

json json_real(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

json json_real_list(const std::vector<double>& xs) {
  json a = json::array();
  for (double x : xs) a.push_back(json_real(x));
  return a;
}

json flow_report(const ResolvedExperiment& exp, const FlowState& state) {
  json r;
  r["schema_version"] = 1;
  r["command"] = "run";
  r["config"] = exp.effective;
  json res;
  res["verdict"] = flow_verdict_name(state.verdict);
  res["iterations"] = state.iterations;
  res["sup_deltas"] = json_real_list(state.deltas);
  res["min_signed_deltas"] = json_real_list(state.min_signed_deltas);
  res["sup_core"] = json_real_list(state.sup_core);
  res["divergence_threshold"] = json_real(state.divergence_threshold);
  res["band_fallback_edges"] = state.band_fallback_edges;
  res["max_snap_error"] = json_real(state.max_snap_error);
  res["final_provenance"] = state.iterates.empty() ? "" : state.iterates.back().provenance;
  r["result"] = std::move(res);
  return r;
}

json verify_report(const ResolvedExperiment& exp, const VerifyRun& run) {
  json r;
  r["schema_version"] = 1;
  r["command"] = "verify";
  r["config"] = exp.effective;
  r["flow_verdict"] = flow_verdict_name(run.flow.verdict);
  json props = json::array();
  for (const auto& p : run.properties) {
    json jp;
    jp["name"] = p.name;
    jp["passed"] = p.passed;
    jp["skipped"] = p.skipped;
    jp["details"] = p.details;
    props.push_back(std::move(jp));
  }
  r["properties"] = std::move(props);
  r["all_passed"] = run.all_passed;
  return r;
}

json semigroup_report(const ResolvedExperiment& exp, const std::vector<SemigroupRow>& rows,
                      const BracketReport* bracket) {
  json r;
  r["schema_version"] = 1;
  r["command"] = "semigroup";
  r["config"] = exp.effective;
  r["isotropy_trivial"] = exp.generators.isotropy_certified;
  if (bracket) {
    r["bracket"] = {{"generating", bracket->generating}, {"closure_dim", bracket->closure_dim}};
  } else {
    r["bracket"] = nullptr;
  }
  json jrows = json::array();
  for (const auto& row : rows) {
    json jr;
    jr["maxlen"] = row.maxlen;
    jr["cloud_size"] = row.cloud_size;
    jr["covering_radius"] = json_real(row.radius);
    jr["inverse_cloud_size"] = row.inverse_cloud_size;
    jr["inverse_covering_radius"] = json_real(row.inverse_radius);
    jrows.push_back(std::move(jr));
  }
  r["rows"] = std::move(jrows);
  return r;
}

json finsler_report(const ResolvedExperiment& exp, const std::string& sigma_spec, int sigma_count,
                    const std::vector<double>& t_schedule, const std::vector<NormEntry>& table,
                    const SupLimsupReport& sup_limsup, double homogeneity,
                    const std::vector<double>& symmetry_defects) {
  json r;
  r["schema_version"] = 1;
  r["command"] = "finsler";
  r["config"] = exp.effective;
  r["sigma_sample"] = {{"description", sigma_spec}, {"count", sigma_count}};
  r["t_schedule"] = json_real_list(t_schedule);
  json dirs = json::array();
  for (const auto& entry : table) {
    json jd;
    json v = json::array();
    for (int ax = 0; ax < entry.direction.size(); ++ax) v.push_back(entry.direction[ax]);
    jd["direction"] = std::move(v);
    jd["trend"] = json_real_list(entry.estimate.trend);
    jd["value"] = json_real(entry.estimate.value);
    jd["diverged"] = entry.estimate.diverged;
    dirs.push_back(std::move(jd));
  }
  r["directions"] = std::move(dirs);
  r["sup_limsup"] = {{"sup_all", json_real(sup_limsup.sup_all)},
                     {"tail_value", json_real(sup_limsup.tail_value)},
                     {"ratio", json_real(sup_limsup.ratio)}};
  r["homogeneity_defect"] = json_real(homogeneity);
  r["symmetry_defects"] = json_real_list(symmetry_defects);
  return r;
}

void write_json_file(const json& doc, const std::string& path) {
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
}

void write_semigroup_csv(const std::vector<SemigroupRow>& rows, const std::string& path) {
  auto out = open_out(path);
  out << "maxlen,cloud_size,covering_radius,inverse_cloud_size,inverse_covering_radius\n";
  for (const auto& row : rows)
    out << row.maxlen << ',' << row.cloud_size << ',' << fmt17(row.radius) << ','
        << row.inverse_cloud_size << ',' << fmt17(row.inverse_radius) << '\n';
}

void write_norm_csv(const std::vector<NormEntry>& table, const std::string& path) {
  auto out = open_out(path);
  if (table.empty()) {
    out << "value,diverged\n";
    return;
  }
  const int dim = static_cast<int>(table.front().direction.size());
  for (int ax = 0; ax < dim; ++ax) out << 'v' << ax + 1 << ',';
  out << "value,diverged\n";
  for (const auto& entry : table) {
    for (int ax = 0; ax < dim; ++ax) out << fmt17(entry.direction[ax]) << ',';
    out << fmt17(entry.estimate.value) << ',' << (entry.estimate.diverged ? 1 : 0) << '\n';
  }
}

}  // namespace hausflow
