#pragma once

#include "hausflow/config.hpp"
#include "hausflow/finsler.hpp"

namespace hausflow {

struct PropertyResult {
  std::string name;
  bool passed = false;
  bool skipped = false;  // prerequisite absent (e.g. flow did not converge)
  std::string details;
};

// Symmetry, zero diagonal, off-diagonal positivity, triangle inequality.
// Full min-plus closure when the matrix is small, seeded triple sampling
// above that; failures name the offending index pair.
PropertyResult metric_axioms(const MetricField& field, std::uint64_t seed,
                             int sample_triples = 200000);

struct VerifyRun {
  FlowState flow;  // the driving run, iterates retained
  std::vector<PropertyResult> properties;
  bool all_passed = false;  // skipped batteries do not count against the suite
};

// Runs the flow, then the property batteries: metric axioms on the final
// field, monotonicity of the induced sequence, the right-invariant envelope
// upper bound, epsilon-midpoints, right-invariance of the limit, and limit
// norm symmetry/homogeneity. Convergence-dependent batteries report skipped
// when the verdict is not converged.
VerifyRun run_property_suite(const ResolvedExperiment& exp, int threads = 1);

}  // namespace hausflow
