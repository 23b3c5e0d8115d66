#pragma once

#include "hausflow/flow.hpp"
#include "hausflow/semigroup.hpp"

#include "json.hpp"

namespace hausflow {

struct FinslerConfig {
  int t_levels = 14;     // t schedule: window scale halved this many times
  bool both_signs = false;
  std::vector<AlgebraVector> directions;  // empty resolves to the chart axes
  int word_maxlen = 8;   // word-cloud depth mixed into the sigma sample
};

struct SemigroupConfig {
  std::vector<int> maxlens = {4, 8, 12};
  int probe_factor = 10;
  std::size_t cloud_cap = 200000;
};

struct VerifyConfig {
  int pairs = 200;              // sampled core pairs per property battery
  double epsilon_factor = 3.0;  // midpoint tolerance = factor x grid step
};

// A parsed, validated, defaults-resolved experiment. `effective` echoes the
// full config with every default spelled out; reports embed it verbatim so a
// run is reproducible from its own output.
struct ResolvedExperiment {
  std::string description;
  GroupSpec group;
  BaseMetricSpec base;
  GeneratorSet generators;  // certificate reflects the isotropy check result
  WindowSpec window;        // padding resolved to a number
  std::shared_ptr<const Grid> grid;
  AdjacencySpec adjacency;
  FlowParams flow;
  FinslerConfig finsler;
  SemigroupConfig semigroup;
  VerifyConfig verify;
  std::uint64_t seed = 0;
  nlohmann::ordered_json effective;
};

// Validation failures throw std::invalid_argument naming the offending field
// path (e.g. "window.resolution: every entry must be >= 2").
ResolvedExperiment resolve_config(const nlohmann::ordered_json& doc);
ResolvedExperiment load_config(const std::string& path);

}  // namespace hausflow
