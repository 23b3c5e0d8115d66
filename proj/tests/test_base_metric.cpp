#include "doctest.h"

#include "hausflow/base_metric.hpp"
#include "hausflow/metric_field.hpp"
#include "test_util.hpp"

#include <cmath>

using namespace hausflow;
using testutil::ivec;
using testutil::vec;

TEST_SUITE("base_metric") {

TEST_CASE("kind names round trip") {
  for (MetricKind k :
       {MetricKind::Euclidean, MetricKind::ChartQuotient, MetricKind::ArctanPullback,
        MetricKind::CuberootPullback, MetricKind::ChordalCircle, MetricKind::HeisenbergGauge,
        MetricKind::UserTable})
    CHECK(metric_kind_from_name(metric_kind_name(k)) == k);
  CHECK_THROWS_AS(metric_kind_from_name("taxicab"), std::invalid_argument);
}

TEST_CASE("model validation rejects mismatched groups") {
  auto r1 = make_group(GroupKind::Real, 1);
  auto r2 = make_group(GroupKind::Real, 2);
  auto t1 = make_group(GroupKind::Torus, 1);
  auto h = make_group(GroupKind::Heisenberg, 3);
  CHECK_THROWS_AS(make_base_metric(MetricKind::ChordalCircle, r1), std::invalid_argument);
  CHECK_THROWS_AS(make_base_metric(MetricKind::ChartQuotient, r2), std::invalid_argument);
  CHECK_THROWS_AS(make_base_metric(MetricKind::ArctanPullback, r2), std::invalid_argument);
  CHECK_THROWS_AS(make_base_metric(MetricKind::ArctanPullback, t1), std::invalid_argument);
  CHECK_THROWS_AS(make_base_metric(MetricKind::Euclidean, t1), std::invalid_argument);
  CHECK_THROWS_AS(make_base_metric(MetricKind::HeisenbergGauge, r2), std::invalid_argument);
  CHECK_THROWS_AS(make_base_metric(MetricKind::UserTable, r1), std::invalid_argument);
  CHECK_NOTHROW(make_base_metric(MetricKind::Euclidean, r2));
  CHECK_NOTHROW(make_base_metric(MetricKind::ChartQuotient, t1));
  CHECK_NOTHROW(make_base_metric(MetricKind::HeisenbergGauge, h));
}

TEST_CASE("line pullbacks transport the absolute difference") {
  auto r1 = make_group(GroupKind::Real, 1);
  auto arctan = make_base_metric(MetricKind::ArctanPullback, r1);
  CHECK(std::abs(eval_base_metric(arctan, vec({0.0}), vec({0.1})) - std::atan(0.1)) <= 1e-15);
  CHECK(std::abs(eval_base_metric(arctan, vec({1.0}), vec({2.0})) -
                 (std::atan(2.0) - std::atan(1.0))) <= 1e-15);
  auto cbrt = make_base_metric(MetricKind::CuberootPullback, r1);
  CHECK(std::abs(eval_base_metric(cbrt, vec({0.0}), vec({0.001})) - 0.1) <= 1e-15);
  CHECK(std::abs(eval_base_metric(cbrt, vec({-1.0}), vec({8.0})) - 3.0) <= 1e-12);
}

TEST_CASE("chord length matches the inscribed geometry") {
  auto t1 = make_group(GroupKind::Torus, 1);
  auto chord = make_base_metric(MetricKind::ChordalCircle, t1);
  CHECK(std::abs(eval_base_metric(chord, vec({0.0}), vec({0.5})) - 2.0) <= 1e-15);
  CHECK(std::abs(eval_base_metric(chord, vec({0.0}), vec({0.25})) - std::sqrt(2.0)) <= 1e-15);
  // wraps: 0.9 -> 0.1 spans a fifth of the circle, not four fifths
  CHECK(std::abs(eval_base_metric(chord, vec({0.9}), vec({0.1})) -
                 2.0 * std::sin(M_PI * 0.2)) <= 1e-15);
}

TEST_CASE("torus quotient takes the shortest representative") {
  auto t2 = make_group(GroupKind::Torus, 2);
  auto q = make_base_metric(MetricKind::ChartQuotient, t2);
  CHECK(std::abs(eval_base_metric(q, vec({0.9, 0.0}), vec({0.1, 0.0})) - 0.2) <= 1e-15);
  CHECK(std::abs(eval_base_metric(q, vec({0.0, 0.0}), vec({0.5, 0.5})) -
                 std::sqrt(0.5)) <= 1e-15);
}

TEST_CASE("heisenberg gauge matches its frozen evaluations") {
  auto h = make_group(GroupKind::Heisenberg, 3);
  auto gauge = make_base_metric(MetricKind::HeisenbergGauge, h);
  auto doc = testutil::load_json(testutil::oracle_path("heis-gauge"));
  for (const auto& row : doc["values"]) {
    GroupElement p(3), q(3);
    for (int k = 0; k < 3; ++k) {
      p[k] = row["p"][k].get<double>();
      q[k] = row["q"][k].get<double>();
    }
    CHECK(std::abs(eval_base_metric(gauge, p, q) - row["value"].get<double>()) <= 1e-12);
  }
  CHECK(doc["right_invariance_defect"].get<double>() <= 1e-12);
  // spot check invariance directly
  GroupElement p = vec({0.3, -0.2, 0.5}), q = vec({-0.1, 0.4, 0.0}), s = vec({1.0, 2.0, -1.0});
  double lhs = eval_base_metric(gauge, mul(h, p, s), mul(h, q, s));
  CHECK(std::abs(lhs - eval_base_metric(gauge, p, q)) <= 1e-12);
}

TEST_CASE("table metric reads entries by grid index") {
  auto r1 = make_group(GroupKind::Real, 1);
  auto grid = sample_window(r1, testutil::line_window(0.0, 1.0, 5, 0.0));
  auto field = std::make_shared<MetricField>();
  field->grid = grid;
  field->values.resize(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) field->values(i, j) = std::abs(i - j) * 0.25;
  auto spec = make_table_metric(field);
  CHECK(spec.kind == MetricKind::UserTable);
  CHECK(std::abs(eval_base_metric(spec, vec({0.25}), vec({1.0})) - 0.75) <= 1e-15);
  CHECK(eval_base_metric(spec, vec({0.0}), vec({0.0})) == 0.0);
}

TEST_CASE("right invariance flags") {
  auto r1 = make_group(GroupKind::Real, 1);
  auto t1 = make_group(GroupKind::Torus, 1);
  auto t2 = make_group(GroupKind::Torus, 2);
  auto h = make_group(GroupKind::Heisenberg, 3);
  CHECK(make_base_metric(MetricKind::Euclidean, r1).right_invariant());
  CHECK(make_base_metric(MetricKind::ChartQuotient, t2).right_invariant());
  CHECK(make_base_metric(MetricKind::ChordalCircle, t1).right_invariant());
  CHECK(make_base_metric(MetricKind::HeisenbergGauge, h).right_invariant());
  CHECK_FALSE(make_base_metric(MetricKind::ArctanPullback, r1).right_invariant());
  CHECK_FALSE(make_base_metric(MetricKind::CuberootPullback, r1).right_invariant());
}

TEST_CASE("lipschitz scale tracks the window") {
  auto r1 = make_group(GroupKind::Real, 1);
  auto w = testutil::line_window(-2.0, 2.0, 201, 0.0);
  double euclid = lipschitz_scale_estimate(make_base_metric(MetricKind::Euclidean, r1), w);
  CHECK(std::abs(euclid - 1.0) <= 1e-12);
  double arct = lipschitz_scale_estimate(make_base_metric(MetricKind::ArctanPullback, r1), w);
  CHECK(arct < euclid);
  CHECK(arct > 0.2);
}

}  // TEST_SUITE
