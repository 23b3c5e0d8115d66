#pragma once

#include "hausflow/intrinsic.hpp"

namespace hausflow {

struct FlowParams {
  double tol = 1e-4;               // converged when sup core delta drops below
  int max_iter = 60;
  double divergence_factor = 1000; // threshold = factor x initial core diameter
  bool retain_iterates = false;    // keep every iterate instead of first/last
  double monotone_slack = 1e-9;    // tolerated entrywise dip between iterates
};

enum class FlowVerdict { Converged, MaxIterReached, Diverged };
const char* flow_verdict_name(FlowVerdict v);

struct FlowState {
  // d0 first, final iterate last; all of them when retain_iterates is set
  std::vector<MetricField> iterates;
  std::vector<double> deltas;             // sup |next - cur| over core pairs, per step
  std::vector<double> min_signed_deltas;  // min (next - cur) over core pairs, per step
  std::vector<double> sup_core;           // max core value per iterate, d0 included
  FlowVerdict verdict = FlowVerdict::MaxIterReached;
  int iterations = 0;
  double divergence_threshold = kInf;
  int band_fallback_edges = 0;   // max over steps; see flow_step
  double max_snap_error = 0.0;   // max over steps; see FlowStepStats
};

// The iterate dropped below its predecessor beyond the slack: an internal
// consistency failure, not a property of the dynamical system.
class MonotonicityError : public std::runtime_error {
 public:
  MonotonicityError(int i, int j, double before, double after);
  int i, j;
  double before, after;
};

struct FlowStepStats {
  int fallback_edges = 0;      // edges kept at their previous value (see below)
  int distinct_offsets = 0;    // nonzero when the invariant-base grouping ran
  double max_snap_error = 0.0; // chart distance moved by lattice snapping
};

// One step of the dynamical system: induced values on the stencil edges,
// then shortest paths. `base_override` evaluates distances for this step
// (the analytic base on the first step); without it the field itself backs
// the evaluation through table lookups, with generators snapped onto the
// field lattice so translate targets stay exact.
//
// Edges whose translates leave a lookup table keep their previous value:
// that preserves both the entrywise lower bound and the invariant-envelope
// upper bound, and such edges only occur in the padding band (a miss with
// both endpoints in the core is a TruncationError).
MetricField flow_step(const MetricField& field, const GeneratorSet& X, const AdjacencySpec& adj,
                      const BaseMetricSpec* base_override = nullptr, int threads = 1,
                      FlowStepStats* stats = nullptr);

// Iterates flow_step from the base matrix until the sup core delta drops
// below tol, a core value crosses the divergence threshold, or the budget
// runs out. Monotonicity is enforced between induced iterates (d1 onward);
// the d0 -> d1 comparison is recorded in min_signed_deltas but not enforced,
// since the first induced metric may drop below the base (dense translate
// sets do exactly that).
FlowState run_flow(const BaseMetricSpec& base, const GeneratorSet& X,
                   std::shared_ptr<const Grid> grid, const AdjacencySpec& adj,
                   const FlowParams& params, int threads = 1);

}  // namespace hausflow
