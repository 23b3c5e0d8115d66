#include "hausflow/base_metric.hpp"
#include "hausflow/metric_field.hpp"

#include <cmath>
#include <stdexcept>

namespace hausflow {

const char* metric_kind_name(MetricKind k) {
  switch (k) {
    case MetricKind::Euclidean: return "euclidean";
    case MetricKind::ChartQuotient: return "chart_quotient";
    case MetricKind::ArctanPullback: return "arctan_pullback";
    case MetricKind::CuberootPullback: return "cuberoot_pullback";
    case MetricKind::ChordalCircle: return "chordal_circle";
    case MetricKind::HeisenbergGauge: return "heisenberg_gauge";
    case MetricKind::UserTable: return "user_table";
  }
  return "?";
}

MetricKind metric_kind_from_name(const std::string& name) {
  for (MetricKind k : {MetricKind::Euclidean, MetricKind::ChartQuotient,
                       MetricKind::ArctanPullback, MetricKind::CuberootPullback,
                       MetricKind::ChordalCircle, MetricKind::HeisenbergGauge,
                       MetricKind::UserTable})
    if (name == metric_kind_name(k)) return k;
  throw std::invalid_argument("unknown base metric kind: " + name);
}

bool BaseMetricSpec::right_invariant() const {
  switch (kind) {
    case MetricKind::Euclidean:
      return group.kind == GroupKind::Real;  // abelian translation invariance
    case MetricKind::ChartQuotient:
    case MetricKind::ChordalCircle:
    case MetricKind::HeisenbergGauge:
      return true;
    default:
      return false;
  }
}

BaseMetricSpec make_base_metric(MetricKind kind, const GroupSpec& group) {
  switch (kind) {
    case MetricKind::Euclidean:
      if (group.kind == GroupKind::Torus)
        throw std::invalid_argument("euclidean base needs a non-wrapping chart; use chart_quotient on tori");
      break;
    case MetricKind::ChartQuotient:
      if (group.kind != GroupKind::Torus)
        throw std::invalid_argument("chart_quotient base is defined on tori");
      break;
    case MetricKind::ArctanPullback:
    case MetricKind::CuberootPullback:
      if (group.kind != GroupKind::Real || group.dim != 1)
        throw std::invalid_argument(std::string(metric_kind_name(kind)) + " base is defined on R^1");
      break;
    case MetricKind::ChordalCircle:
      if (group.kind != GroupKind::Torus || group.dim != 1)
        throw std::invalid_argument("chordal_circle base is defined on T^1");
      break;
    case MetricKind::HeisenbergGauge:
      if (group.kind != GroupKind::Heisenberg)
        throw std::invalid_argument("heisenberg_gauge base is defined on the Heisenberg group");
      break;
    case MetricKind::UserTable:
      throw std::invalid_argument("user_table base needs make_table_metric");
  }
  BaseMetricSpec s;
  s.kind = kind;
  s.group = group;
  return s;
}

BaseMetricSpec make_table_metric(std::shared_ptr<const MetricField> table) {
  if (!table || !table->grid) throw std::invalid_argument("user_table base needs a field");
  BaseMetricSpec s;
  s.kind = MetricKind::UserTable;
  s.group = table->grid->group;
  s.table = std::move(table);
  return s;
}

namespace {

double quotient_l2(const GroupSpec& g, const GroupElement& p, const GroupElement& q) {
  return chart_displacement(g, p, q).norm();
}

double heis_gauge(const GroupElement& a) {
  double w2 = a[0] * a[0] + a[1] * a[1];
  double c = a[2] - 0.5 * a[0] * a[1];  // central part in exponential coordinates
  return std::pow(w2 * w2 + 16.0 * c * c, 0.25);
}

}  // namespace

double eval_base_metric(const BaseMetricSpec& spec, const GroupElement& p, const GroupElement& q) {
  switch (spec.kind) {
    case MetricKind::Euclidean:
      return (p - q).norm();
    case MetricKind::ChartQuotient:
      return quotient_l2(spec.group, p, q);
    case MetricKind::ArctanPullback:
      return std::abs(std::atan(p[0]) - std::atan(q[0]));
    case MetricKind::CuberootPullback:
      return std::abs(std::cbrt(p[0]) - std::cbrt(q[0]));
    case MetricKind::ChordalCircle: {
      double d = std::abs(chart_displacement(spec.group, p, q)[0]);
      return 2.0 * std::sin(M_PI * d);
    }
    case MetricKind::HeisenbergGauge:
      return heis_gauge(mul(spec.group, p, inv(spec.group, q)));
    case MetricKind::UserTable: {
      int i = spec.table->grid->locate(p);
      int j = spec.table->grid->locate(q);
      if (i < 0 || j < 0)
        throw std::out_of_range("user_table lookup outside the table grid");
      return spec.table->values(i, j);
    }
  }
  throw std::logic_error("unreachable");
}

double lipschitz_scale_estimate(const BaseMetricSpec& spec, const WindowSpec& window) {
  WindowSpec coarse = window;
  for (int ax = 0; ax < coarse.resolution.size(); ++ax)
    coarse.resolution[ax] = std::min<int>(window.resolution[ax], 9);
  coarse.padding_radius = 0.0;
  auto grid = sample_window(spec.group, coarse);
  double dmax = 0.0, cmax = 0.0;
  for (int i = 0; i < grid->total(); ++i)
    for (int j = i + 1; j < grid->total(); ++j) {
      GroupElement p = grid->point(i), q = grid->point(j);
      double d = eval_base_metric(spec, p, q);
      if (std::isfinite(d)) dmax = std::max(dmax, d);
      cmax = std::max(cmax, chart_distance_inf(spec.group, p, q));
    }
  if (cmax <= 0) throw std::invalid_argument("lipschitz_scale_estimate: degenerate window");
  return dmax / cmax;
}

}  // namespace hausflow
