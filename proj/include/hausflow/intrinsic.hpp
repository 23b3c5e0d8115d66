#pragma once

#include "hausflow/metric_field.hpp"

#include <utility>
#include <vector>

namespace hausflow {

// Grid points within this Chebyshev radius are path neighbors; torus axes
// wrap. Radius 2 keeps the direction error of shortest paths below ~3% in 2D
// while the graph stays sparse; radius 1 distorts anisotropic limits badly.
struct AdjacencySpec {
  int stencil_radius = 2;
};

// Nonzero lattice offsets of the Chebyshev ball, one representative per
// +/- pair, in a fixed lexicographic order.
std::vector<Eigen::VectorXi> stencil_offsets(int dim, int radius);

// Undirected stencil edges (i, j), i < j, wrap-aware, sorted, deduplicated.
std::vector<std::pair<int, int>> stencil_edges(const Grid& grid, const AdjacencySpec& adj);

// Sum of consecutive distances along the polyline.
double path_length(const std::vector<GroupElement>& poly, const BaseMetricSpec& spec);
double path_length(const std::vector<int>& poly, const MetricField& field);

enum class ApspMethod { Auto, FloydWarshall, Dijkstra };

// All-pairs shortest paths over the stencil graph with edge weights taken
// from the field. Pairs no path connects come back +inf. Auto runs
// Floyd-Warshall up to 400 points and heap Dijkstra above; the two agree to
// 1e-12. For fields that satisfy the triangle inequality the output
// dominates the input entrywise (every path is at least as long as the
// direct distance); the operation is idempotent and monotone.
MetricField intrinsicize(const MetricField& field, const AdjacencySpec& adj, int threads = 1,
                         ApspMethod method = ApspMethod::Auto);

struct FieldComparison {
  double sup_diff = 0.0;
  double mean_diff = 0.0;
  int argmax_i = -1, argmax_j = -1;
};

// Entrywise |a - b| over core pairs; +inf against +inf counts as zero.
FieldComparison compare_fields(const MetricField& a, const MetricField& b);

}  // namespace hausflow
