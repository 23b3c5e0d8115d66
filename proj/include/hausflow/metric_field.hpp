#pragma once

#include "hausflow/base_metric.hpp"
#include "hausflow/generator_set.hpp"

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hausflow {

// Symmetric pairwise-distance table over a sampled grid. +inf entries are
// allowed (extended metric); the diagonal is zero. Indices follow the grid's
// row-major order, core membership comes from grid->core.
struct MetricField {
  std::shared_ptr<const Grid> grid;
  Eigen::MatrixXd values;
  std::string provenance;
  bool intrinsic = false;
};

// A translate of a grid point fell off the lookup table backing the metric.
// The caller must enlarge the window padding (or refine the table lattice).
class TruncationError : public std::out_of_range {
 public:
  TruncationError(int point, int generator, const std::string& msg)
      : std::out_of_range(msg), point(point), generator(generator) {}
  int point;      // flat grid index whose translate is not evaluable
  int generator;  // index into the generator set
};

// max{ max_a min_b d(a,b), max_b min_a d(a,b) } by exact enumeration.
double hausdorff_distance(const std::vector<GroupElement>& A,
                          const std::vector<GroupElement>& B,
                          const BaseMetricSpec& spec);

// d_X(p,q) = hausdorff_distance(pX, qX). X must carry the isotropy
// certificate: without it point separation is not guaranteed.
double induced_metric(const GroupElement& p, const GroupElement& q,
                      const GeneratorSet& X, const BaseMetricSpec& spec);

// d_M(p,q) = max_j d(p x_j, q x_j); dominates both d and d_X.
double max_translate_metric(const GroupElement& p, const GroupElement& q,
                            const GeneratorSet& X, const BaseMetricSpec& spec);

using PairMetric = std::function<double(const GroupElement&, const GroupElement&)>;

// Fills the symmetric matrix by evaluating `metric` on every index pair.
// Parallel over interleaved rows; entries are independent, so the result is
// identical for any thread count.
MetricField metric_matrix(std::shared_ptr<const Grid> grid, const PairMetric& metric,
                          const std::string& provenance, int threads = 1);

MetricField base_metric_matrix(std::shared_ptr<const Grid> grid, const BaseMetricSpec& spec,
                               int threads = 1);

// All-pairs induced matrix with precomputed translate tables. Table-backed
// bases report a translate miss as TruncationError naming the grid point and
// generator. Quadratic in grid size times |X|^2: meant for tests, oracles,
// and small windows; the flow evaluates stencil edges only.
MetricField induced_metric_matrix(std::shared_ptr<const Grid> grid, const BaseMetricSpec& spec,
                                  const GeneratorSet& X, const std::string& provenance,
                                  int threads = 1);

}  // namespace hausflow
