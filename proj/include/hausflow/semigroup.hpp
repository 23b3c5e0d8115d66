#pragma once

#include "hausflow/base_metric.hpp"
#include "hausflow/generator_set.hpp"

namespace hausflow {

// Trace of the semigroup generated by X near the window: every product
// x_{i_1} ... x_{i_m} with m <= maxlen that stays inside the window plus a
// pruning margin, deduplicated and sorted lexicographically.
struct WordCloud {
  GroupSpec group;
  std::vector<GroupElement> points;
  int maxlen = 0;
  double dedup_tol = 1e-9;

  int size() const { return static_cast<int>(points.size()); }
};

struct WordParams {
  double dedup_tol = 1e-9;
  double margin = -1.0;          // pruning margin past the window; < 0 means reach_radius(X)
  std::size_t cloud_cap = 200000;
};

// Breadth-first closure of right multiplication by X, pruned per non-wrapping
// axis to [lo - margin, hi + margin]. Points found at depth < maxlen are
// expanded, so the cloud is closed under in-window translation up to maxlen.
WordCloud generate_words(const GeneratorSet& X, int maxlen, const WindowSpec& window,
                         const WordParams& params = {});

// Max over a probe grid (per-axis resolution x probe_factor points) of the
// distance to the nearest cloud point. Decreasing values across growing
// maxlen certify empirical density.
double covering_radius(const WordCloud& cloud, const WindowSpec& window,
                       const BaseMetricSpec& spec, int probe_factor = 10);

// {inv(x) : x in X}; the certificate is dropped, the caller re-checks.
GeneratorSet invert_generators(const GeneratorSet& X);

struct BracketReport {
  bool generating = false;
  int closure_dim = 0;
};

// Iterated bracket closure of the span: generating iff it reaches full
// dimension. Rank via column-pivoted QR at relative tolerance 1e-9.
BracketReport check_bracket_generating(const GroupSpec& group,
                                       const std::vector<AlgebraVector>& vectors);

// gX = X with e in X forces g in X, so only the generators themselves are
// candidates: true iff no non-identity generator permutes X by left
// multiplication (set equality at dedup tolerance).
bool check_isotropy_trivial(const GeneratorSet& X, double tol = 1e-9);

// X = {e} U {exp(-v_i)} U {exp(sqrt(2) v_i)} from a bracket-generating basis,
// with the isotropy check run and recorded. Torus bases must keep the
// 2-scaled coefficient box inside the injectivity window of exp.
GeneratorSet build_generator_from_basis(const GroupSpec& group,
                                        const std::vector<AlgebraVector>& basis);

}  // namespace hausflow
