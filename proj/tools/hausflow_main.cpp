#include "hausflow/config.hpp"
#include "hausflow/field_io.hpp"
#include "hausflow/finsler.hpp"
#include "hausflow/oracle.hpp"
#include "hausflow/report.hpp"
#include "hausflow/semigroup.hpp"
#include "hausflow/verify.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

namespace {

using namespace hausflow;

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  int threads = 1;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

ResolvedExperiment load_experiment(const CommonOpts& opts) {
  ResolvedExperiment exp = load_config(opts.config_path);
  if (opts.seed_set) {
    exp.seed = opts.seed;
    exp.effective["seed"] = opts.seed;
  }
  return exp;
}

std::string out_path(const CommonOpts& opts, const std::string& name) {
  return (std::filesystem::path(opts.out_dir) / name).string();
}

std::string format_vector(const Eigen::VectorXd& v) {
  std::string s = "(";
  for (int k = 0; k < v.size(); ++k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v[k]);
    s += buf;
    if (k + 1 < v.size()) s += ", ";
  }
  return s + ")";
}

int cmd_run(const CommonOpts& opts) {
  ResolvedExperiment exp = load_experiment(opts);
  FlowState state =
      run_flow(exp.base, exp.generators, exp.grid, exp.adjacency, exp.flow, opts.threads);
  write_json_file(flow_report(exp, state), out_path(opts, "report.json"));
  for (const auto& it : state.iterates) write_field(it, opts.out_dir, it.provenance);
  std::printf("verdict: %s after %d iterations\n", flow_verdict_name(state.verdict),
              state.iterations);
  if (!state.deltas.empty())
    std::printf("final sup delta: %.17g\n", state.deltas.back());
  std::printf("fields: %s ... %s in %s\n", state.iterates.front().provenance.c_str(),
              state.iterates.back().provenance.c_str(), opts.out_dir.c_str());
  switch (state.verdict) {
    case FlowVerdict::Converged: return 0;
    case FlowVerdict::Diverged: return 2;
    case FlowVerdict::MaxIterReached: return 3;
  }
  return 1;
}

int cmd_verify(const CommonOpts& opts) {
  ResolvedExperiment exp = load_experiment(opts);
  VerifyRun run = run_property_suite(exp, opts.threads);
  write_json_file(verify_report(exp, run), out_path(opts, "report.json"));
  std::printf("flow verdict: %s after %d iterations\n", flow_verdict_name(run.flow.verdict),
              run.flow.iterations);
  for (const auto& p : run.properties) {
    const char* tag = p.skipped ? "skip" : (p.passed ? "pass" : "FAIL");
    std::printf("%s  %-24s %s\n", tag, p.name.c_str(), p.details.c_str());
  }
  std::printf("%s\n", run.all_passed ? "all checked properties hold" : "property failures present");
  return run.all_passed ? 0 : 4;
}

int cmd_semigroup(const CommonOpts& opts) {
  ResolvedExperiment exp = load_experiment(opts);
  GeneratorSet inverse = invert_generators(exp.generators);
  WordParams wp;
  wp.cloud_cap = exp.semigroup.cloud_cap;
  std::vector<SemigroupRow> rows;
  for (int maxlen : exp.semigroup.maxlens) {
    SemigroupRow row;
    row.maxlen = maxlen;
    WordCloud cloud = generate_words(exp.generators, maxlen, exp.window, wp);
    row.cloud_size = cloud.size();
    row.radius = covering_radius(cloud, exp.window, exp.base, exp.semigroup.probe_factor);
    WordCloud icloud = generate_words(inverse, maxlen, exp.window, wp);
    row.inverse_cloud_size = icloud.size();
    row.inverse_radius = covering_radius(icloud, exp.window, exp.base, exp.semigroup.probe_factor);
    std::printf("maxlen %2d: cloud %d radius %.17g, inverse cloud %d radius %.17g\n", row.maxlen,
                row.cloud_size, row.radius, row.inverse_cloud_size, row.inverse_radius);
    rows.push_back(row);
  }
  BracketReport bracket;
  bool have_bracket = false;
  const auto& gen_echo = exp.effective["generators"];
  if (gen_echo.contains("basis")) {
    std::vector<AlgebraVector> basis;
    for (const auto& brow : gen_echo["basis"]) {
      AlgebraVector v(exp.group.dim);
      for (int k = 0; k < exp.group.dim; ++k) v[k] = brow[k].get<double>();
      basis.push_back(v);
    }
    bracket = check_bracket_generating(exp.group, basis);
    have_bracket = true;
    std::printf("bracket closure: dim %d, %s\n", bracket.closure_dim,
                bracket.generating ? "generating" : "not generating");
  }
  std::printf("isotropy trivial: %s\n", exp.generators.isotropy_certified ? "yes" : "no");
  write_json_file(semigroup_report(exp, rows, have_bracket ? &bracket : nullptr),
                  out_path(opts, "report.json"));
  write_semigroup_csv(rows, out_path(opts, "semigroup.csv"));
  return 0;
}

int cmd_finsler(const CommonOpts& opts) {
  ResolvedExperiment exp = load_experiment(opts);
  const Grid& grid = *exp.grid;

  std::vector<GroupElement> sigma;
  sigma.reserve(static_cast<std::size_t>(grid.total()));
  for (int i = 0; i < grid.total(); ++i) sigma.push_back(grid.point(i));
  WordCloud cloud = generate_words(exp.generators, exp.finsler.word_maxlen, exp.window);
  sigma.insert(sigma.end(), cloud.points.begin(), cloud.points.end());
  std::string sigma_spec =
      "grid points plus generator words up to length " + std::to_string(exp.finsler.word_maxlen);

  double window_scale = 1.0;
  if (exp.group.kind != GroupKind::Torus)
    for (int ax = 0; ax < exp.group.dim; ++ax)
      window_scale = std::max(window_scale, exp.window.hi[ax] - exp.window.lo[ax]);
  std::vector<double> schedule = default_t_schedule(window_scale, exp.finsler.t_levels);

  FinslerParams params;
  params.divergence_scale = lipschitz_scale_estimate(exp.base, exp.window);
  params.both_signs = exp.finsler.both_signs;

  GroupElement e = identity(exp.group);
  std::vector<NormEntry> table;
  std::vector<double> symmetry;
  for (const auto& v : exp.finsler.directions) {
    FinslerEstimate fv = finsler_estimate(e, v, exp.base, schedule, sigma, params);
    FinslerEstimate f2 = finsler_estimate(e, AlgebraVector(2.0 * v), exp.base, schedule, sigma, params);
    FinslerEstimate fm = finsler_estimate(e, AlgebraVector(-v), exp.base, schedule, sigma, params);
    table.push_back({v, fv});
    table.push_back({AlgebraVector(2.0 * v), f2});
    double defect = 0.0;
    if (fv.diverged != fm.diverged) defect = kInf;
    else if (!fv.diverged) defect = std::abs(fv.value - fm.value);
    symmetry.push_back(defect);
    std::printf("F%s = %.17g%s, doubled %.17g, mirror defect %.17g\n", format_vector(v).c_str(),
                fv.value, fv.diverged ? " (diverged)" : "", f2.value, defect);
  }
  SupLimsupReport sls =
      sup_equals_limsup_check(exp.finsler.directions.front(), exp.base, schedule, sigma, params);
  double hom = homogeneity_defect(table);
  std::printf("sup/tail ratio: %.17g, homogeneity defect: %.17g\n", sls.ratio, hom);
  write_json_file(finsler_report(exp, sigma_spec, static_cast<int>(sigma.size()), schedule, table,
                                 sls, hom, symmetry),
                  out_path(opts, "report.json"));
  write_norm_csv(table, out_path(opts, "norms.csv"));
  return 0;
}

int cmd_oracle(const std::string& case_id, const CommonOpts& opts) {
  std::vector<std::string> ids =
      case_id.empty() ? oracle_case_ids() : std::vector<std::string>{case_id};
  for (const auto& id : ids) {
    write_json_file(oracle_case(id), out_path(opts, id + ".json"));
    std::printf("wrote %s\n", out_path(opts, id + ".json").c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for induced-Hausdorff metric flows on model groups"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string oracle_id;

  auto add_common = [&opts](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", opts.config_path, "experiment config (json)");
    if (needs_config) c->required();
    sub->add_option("--out", opts.out_dir, "output directory (created if missing)");
    sub->add_option("--threads", opts.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--seed", opts.seed, "override the config seed");
  };

  CLI::App* run = app.add_subcommand("run", "iterate the flow, dump report.json and field CSVs");
  add_common(run, true);
  CLI::App* verify = app.add_subcommand("verify", "run the flow plus the property batteries");
  add_common(verify, true);
  CLI::App* semigroup =
      app.add_subcommand("semigroup", "generator word clouds and covering radii");
  add_common(semigroup, true);
  CLI::App* finsler = app.add_subcommand("finsler", "directional limit-norm estimates");
  add_common(finsler, true);
  CLI::App* oracle =
      app.add_subcommand("oracle", "regenerate the frozen reference values");
  add_common(oracle, false);
  oracle->add_option("--case", oracle_id, "single case id (default: all cases)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    std::filesystem::create_directories(opts.out_dir);
    if (run->parsed()) {
      opts.seed_set = run->count("--seed") > 0;
      return cmd_run(opts);
    }
    if (verify->parsed()) {
      opts.seed_set = verify->count("--seed") > 0;
      return cmd_verify(opts);
    }
    if (semigroup->parsed()) {
      opts.seed_set = semigroup->count("--seed") > 0;
      return cmd_semigroup(opts);
    }
    if (finsler->parsed()) {
      opts.seed_set = finsler->count("--seed") > 0;
      return cmd_finsler(opts);
    }
    if (oracle->parsed()) return cmd_oracle(oracle_id, opts);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
