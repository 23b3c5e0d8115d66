#pragma once

#include "hausflow/group.hpp"

#include <limits>
#include <memory>
#include <string>

namespace hausflow {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Analytic base metrics plus an explicit lookup table. Every kind is a true
// metric on its model; the gauge kind is right-invariant on the Heisenberg
// group, the others are invariant on their abelian models where marked.
enum class MetricKind {
  Euclidean,         // |p - q|_2 on R^n charts
  ChartQuotient,     // torus quotient of euclidean: per-axis min(|D|, 1-|D|), then l2
  ArctanPullback,    // |arctan p - arctan q| on R
  CuberootPullback,  // |cbrt p - cbrt q| on R
  ChordalCircle,     // 2 sin(pi * quotient distance) on T^1
  HeisenbergGauge,   // gauge((x,y,z)) = ((x^2+y^2)^2 + 16 c^2)^(1/4), c = z - xy/2; d(g,h) = gauge(g h^-1)
  UserTable,         // explicit matrix over a grid
};

const char* metric_kind_name(MetricKind k);
MetricKind metric_kind_from_name(const std::string& name);

struct MetricField;  // metric_field.hpp

struct BaseMetricSpec {
  MetricKind kind = MetricKind::Euclidean;
  GroupSpec group;
  // UserTable only: values over table_grid indices
  std::shared_ptr<const MetricField> table;

  // d(p s, q s) = d(p, q) for every group element s
  bool right_invariant() const;
};

BaseMetricSpec make_base_metric(MetricKind kind, const GroupSpec& group);
BaseMetricSpec make_table_metric(std::shared_ptr<const MetricField> table);

double eval_base_metric(const BaseMetricSpec& spec, const GroupElement& p, const GroupElement& q);

// d-diameter over a coarse window sample divided by the chart diameter.
// Used as the scale reference for divergence thresholds.
double lipschitz_scale_estimate(const BaseMetricSpec& spec, const WindowSpec& window);

}  // namespace hausflow
