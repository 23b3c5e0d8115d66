#include "doctest.h"

#include "hausflow/metric_field.hpp"
#include "hausflow/semigroup.hpp"
#include "test_util.hpp"

#include <cmath>
#include <random>

using namespace hausflow;
using testutil::ivec;
using testutil::vec;

namespace {

std::vector<GroupElement> points_of(const nlohmann::json& arr) {
  std::vector<GroupElement> out;
  for (const auto& row : arr) {
    GroupElement p(static_cast<int>(row.size()));
    for (int k = 0; k < p.size(); ++k) p[k] = row[k].get<double>();
    out.push_back(p);
  }
  return out;
}

GeneratorSet line_generators() {
  auto r1 = make_group(GroupKind::Real, 1);
  auto X = make_generator_set(r1, {vec({-1.0}), vec({std::sqrt(2.0)})});
  X.isotropy_certified = check_isotropy_trivial(X);
  return X;
}

}  // namespace

TEST_SUITE("metric_field") {

TEST_CASE("hausdorff distance matches the frozen enumerations") {
  auto doc = testutil::load_json(testutil::oracle_path("hausdorff-pairs"));
  for (const auto& c : doc["cases"]) {
    auto kind = metric_kind_from_name(c["metric"].get<std::string>());
    auto group = kind == MetricKind::ChartQuotient ? make_group(GroupKind::Torus, 1)
                                                   : make_group(GroupKind::Real, 1);
    auto spec = make_base_metric(kind, group);
    double got = hausdorff_distance(points_of(c["A"]), points_of(c["B"]), spec);
    CHECK(std::abs(got - c["value"].get<double>()) <= 1e-15);
  }
}

TEST_CASE("hausdorff distance is symmetric and detects one-sided gaps") {
  auto r1 = make_group(GroupKind::Real, 1);
  auto spec = make_base_metric(MetricKind::Euclidean, r1);
  std::vector<GroupElement> A = {vec({0.0}), vec({1.0})};
  std::vector<GroupElement> B = {vec({0.0}), vec({1.0}), vec({5.0})};
  CHECK(hausdorff_distance(A, B, spec) == hausdorff_distance(B, A, spec));
  CHECK(hausdorff_distance(A, B, spec) == 4.0);  // 5 has nothing nearby in A
}

TEST_CASE("induced metric follows the translate table") {
  auto X = line_generators();
  auto doc = testutil::load_json(testutil::oracle_path("induced-line"));
  for (const auto& c : doc["cases"]) {
    auto spec = make_base_metric(metric_kind_from_name(c["metric"].get<std::string>()),
                                 make_group(GroupKind::Real, 1));
    double got = induced_metric(vec({c["p"].get<double>()}), vec({c["q"].get<double>()}), X, spec);
    CHECK(std::abs(got - c["value"].get<double>()) <= 1e-15);
  }
}

TEST_CASE("induced metric requires the isotropy certificate") {
  auto t1 = make_group(GroupKind::Torus, 1);
  auto half = make_generator_set(t1, {vec({0.5})});
  CHECK_FALSE(half.isotropy_certified);
  auto spec = make_base_metric(MetricKind::ChartQuotient, t1);
  CHECK_THROWS_AS(induced_metric(vec({0.0}), vec({0.1}), half, spec), std::invalid_argument);
}

TEST_CASE("max-translate dominates both the base and the induced metric") {
  auto X = line_generators();
  auto r1 = make_group(GroupKind::Real, 1);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (MetricKind kind : {MetricKind::Euclidean, MetricKind::ArctanPullback}) {
    auto spec = make_base_metric(kind, r1);
    for (int t = 0; t < 100; ++t) {
      auto p = vec({u(rng)}), q = vec({u(rng)});
      double d = eval_base_metric(spec, p, q);
      double dx = induced_metric(p, q, X, spec);
      double dm = max_translate_metric(p, q, X, spec);
      CHECK(d <= dm + 1e-15);
      CHECK(dx <= dm + 1e-15);
    }
  }
}

TEST_CASE("the identity generator set leaves the metric unchanged") {
  auto r1 = make_group(GroupKind::Real, 1);
  auto X = make_generator_set(r1, {});
  X.isotropy_certified = check_isotropy_trivial(X);
  CHECK(X.size() == 1);
  auto spec = make_base_metric(MetricKind::ArctanPullback, r1);
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int t = 0; t < 50; ++t) {
    auto p = vec({u(rng)}), q = vec({u(rng)});
    CHECK(induced_metric(p, q, X, spec) == eval_base_metric(spec, p, q));
  }
}

TEST_CASE("metric matrices are symmetric, zero on the diagonal, thread invariant") {
  auto r1 = make_group(GroupKind::Real, 1);
  auto grid = sample_window(r1, testutil::line_window(-1.0, 1.0, 31, 0.0));
  auto spec = make_base_metric(MetricKind::ArctanPullback, r1);
  auto one = base_metric_matrix(grid, spec, 1);
  auto three = base_metric_matrix(grid, spec, 3);
  CHECK((one.values - one.values.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(one.values.diagonal().cwiseAbs().maxCoeff() == 0.0);
  CHECK((one.values - three.values).cwiseAbs().maxCoeff() == 0.0);
  CHECK(one.values.minCoeff() >= 0.0);
}

TEST_CASE("the induced matrix equals the pairwise definition") {
  auto X = line_generators();
  auto r1 = make_group(GroupKind::Real, 1);
  auto grid = sample_window(r1, testutil::line_window(-1.0, 1.0, 21, 0.0));
  auto spec = make_base_metric(MetricKind::ArctanPullback, r1);
  auto field = induced_metric_matrix(grid, spec, X, "dX");
  CHECK(field.provenance == "dX");
  for (int i = 0; i < grid->total(); ++i)
    for (int j = i + 1; j < grid->total(); ++j) {
      double direct = induced_metric(grid->point(i), grid->point(j), X, spec);
      CHECK(std::abs(field.values(i, j) - direct) <= 1e-15);
    }
}

}  // TEST_SUITE
