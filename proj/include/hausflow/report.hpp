#pragma once

#include "hausflow/config.hpp"
#include "hausflow/finsler.hpp"
#include "hausflow/verify.hpp"

namespace hausflow {

// JSON has no infinities; extended reals encode as the strings "inf"/"-inf".
nlohmann::ordered_json json_real(double x);
nlohmann::ordered_json json_real_list(const std::vector<double>& xs);

nlohmann::ordered_json flow_report(const ResolvedExperiment& exp, const FlowState& state);
nlohmann::ordered_json verify_report(const ResolvedExperiment& exp, const VerifyRun& run);

struct SemigroupRow {
  int maxlen = 0;
  int cloud_size = 0;
  double radius = 0.0;
  int inverse_cloud_size = 0;
  double inverse_radius = 0.0;
};
nlohmann::ordered_json semigroup_report(const ResolvedExperiment& exp,
                                        const std::vector<SemigroupRow>& rows,
                                        const BracketReport* bracket);

nlohmann::ordered_json finsler_report(const ResolvedExperiment& exp,
                                      const std::string& sigma_spec, int sigma_count,
                                      const std::vector<double>& t_schedule,
                                      const std::vector<NormEntry>& table,
                                      const SupLimsupReport& sup_limsup,
                                      double homogeneity,
                                      const std::vector<double>& symmetry_defects);

// dump(2) with a trailing newline, binary mode: byte-identical across runs
void write_json_file(const nlohmann::ordered_json& doc, const std::string& path);

void write_semigroup_csv(const std::vector<SemigroupRow>& rows, const std::string& path);
void write_norm_csv(const std::vector<NormEntry>& table, const std::string& path);

}  // namespace hausflow
