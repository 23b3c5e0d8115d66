#include "doctest.h"

#include "hausflow/finsler.hpp"
#include "hausflow/metric_field.hpp"
#include "test_util.hpp"

#include <cmath>

using namespace hausflow;
using testutil::vec;

namespace {

std::vector<GroupElement> line_sigma(double lo, double hi, int n) {
  std::vector<GroupElement> sigma;
  sigma.reserve(n + 1);
  for (int i = 0; i <= n; ++i) sigma.push_back(vec({lo + (hi - lo) * i / n}));
  return sigma;
}

BaseMetricSpec line_metric(MetricKind kind) {
  return make_base_metric(kind, make_group(GroupKind::Real, 1));
}

std::shared_ptr<const Grid> line_grid(double lo, double hi, int res) {
  return sample_window(make_group(GroupKind::Real, 1), testutil::line_window(lo, hi, res, 0.0));
}

}  // namespace

TEST_SUITE("finsler") {

TEST_CASE("bar metric matches the frozen line survey and its closed forms") {
  auto sigma = line_sigma(-3.0, 3.0, 240000);
  auto doc = testutil::load_json(testutil::oracle_path("bar-metric"));
  for (const auto& c : doc["cases"]) {
    auto spec = line_metric(metric_kind_from_name(c["metric"].get<std::string>()));
    double got = bar_metric(vec({c["p"].get<double>()}), vec({c["q"].get<double>()}), spec, sigma);
    CHECK(std::abs(got - c["value"].get<double>()) <= 1e-14);
    CHECK(std::abs(got - c["closed_form"].get<double>()) <= 1e-12);
  }
  CHECK_THROWS_AS(bar_metric(vec({0.0}), vec({1.0}), line_metric(MetricKind::Euclidean), {}),
                  std::invalid_argument);
}

TEST_CASE("directional trend matches the frozen line survey") {
  auto sigma = line_sigma(-3.0, 3.0, 24000);
  for (const char* name : {"arctan-finsler", "cuberoot-finsler"}) {
    CAPTURE(name);
    auto doc = testutil::load_json(testutil::oracle_path(name));
    auto spec = line_metric(metric_kind_from_name(doc["metric"].get<std::string>()));
    std::vector<double> schedule = doc["t"].get<std::vector<double>>();
    auto est = finsler_estimate(identity(spec.group), vec({1.0}), spec, schedule, sigma);
    REQUIRE(est.trend.size() == schedule.size());
    for (std::size_t k = 0; k < schedule.size(); ++k) {
      double want = doc["trend"][k].get<double>();
      CHECK(std::abs(est.trend[k] - want) <= 1e-12 * std::max(1.0, want));
    }
    CHECK(est.sigma_count == 24001);
    // the 2^-k schedule resonates with this sigma lattice: one tail ratio
    // stalls, so the growth test stays quiet even where the sup blows up
    CHECK(est.diverged == doc["tail_growing_10pct"].get<bool>());
    double want_tail = doc["tail_value"].get<double>();
    CHECK(std::abs(est.value - want_tail) <= 1e-12 * want_tail);
  }
}

TEST_CASE("cube-root direction diverges on a resonance-free sample") {
  std::vector<GroupElement> sigma = {vec({0.0})};
  auto est = finsler_estimate(identity(make_group(GroupKind::Real, 1)), vec({1.0}),
                              line_metric(MetricKind::CuberootPullback),
                              default_t_schedule(1.0, 14), sigma);
  CHECK(est.diverged);
  CHECK(std::isinf(est.value));
  // per halving the quotient t^(-2/3) grows by 2^(2/3)
  for (std::size_t k = 1; k < est.trend.size(); ++k)
    CHECK(std::abs(est.trend[k] / est.trend[k - 1] - std::cbrt(4.0)) <= 1e-9);
}

TEST_CASE("t schedules halve from the window scale and reject misuse") {
  auto t = default_t_schedule(4.0, 14);
  REQUIRE(t.size() == 14);
  CHECK(t.front() == 2.0);
  CHECK(t.back() == 4.0 * std::pow(2.0, -14));
  for (std::size_t k = 1; k < t.size(); ++k) CHECK(t[k] == 0.5 * t[k - 1]);
  CHECK_THROWS_AS(default_t_schedule(0.0, 14), std::invalid_argument);
  CHECK_THROWS_AS(default_t_schedule(1.0, 1), std::invalid_argument);

  auto spec = line_metric(MetricKind::Euclidean);
  auto sigma = line_sigma(-1.0, 1.0, 4);
  auto e = identity(spec.group);
  CHECK_THROWS_AS(finsler_estimate(e, vec({1.0}), spec, {}, sigma), std::invalid_argument);
  CHECK_THROWS_AS(finsler_estimate(e, vec({1.0}), spec, {0.5, 0.5}, sigma), std::invalid_argument);
  CHECK_THROWS_AS(finsler_estimate(e, vec({1.0}), spec, {0.5, -0.25}, sigma),
                  std::invalid_argument);
  CHECK_THROWS_AS(finsler_estimate(e, vec({0.0}), spec, {0.5, 0.25}, sigma),
                  std::invalid_argument);
}

TEST_CASE("small-t tail realizes the sup for bounded-slope pullbacks") {
  auto schedule = default_t_schedule(1.0, 12);
  auto sigma = line_sigma(-3.0, 3.0, 600);
  auto rep = sup_equals_limsup_check(vec({1.0}), line_metric(MetricKind::ArctanPullback), schedule,
                                     sigma);
  CHECK(rep.ratio == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.sup_all == rep.tail_value);

  auto flat = sup_equals_limsup_check(vec({1.0}), line_metric(MetricKind::Euclidean), schedule,
                                      sigma);
  CHECK(flat.sup_all == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(flat.ratio == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("invariance scan is quiet for euclidean and loud for arctan") {
  auto grid = line_grid(-2.0, 2.0, 201);
  std::vector<GroupElement> sigma = {vec({1.0})};  // 50 lattice steps, stays aligned

  auto flat = right_invariance_defect(base_metric_matrix(grid, line_metric(MetricKind::Euclidean)),
                                      sigma);
  CHECK(flat.triples > 0);
  CHECK(flat.max_abs <= 1e-12);
  CHECK(flat.max_excess <= 1e-12);

  auto bent = right_invariance_defect(
      base_metric_matrix(grid, line_metric(MetricKind::ArctanPullback)), sigma);
  CHECK(bent.max_abs > 0.15);
  CHECK(bent.max_abs < 0.93);
  CHECK(bent.max_excess > 0.1);
  CHECK(bent.argmax_i >= 0);
  CHECK(bent.argmax_j > bent.argmax_i);
  CHECK(bent.argmax_sigma == 0);
}

TEST_CASE("envelope blow-up test rejects the cube-root pullback") {
  auto grid = line_grid(-1.0, 1.0, 41);
  CHECK_THROWS_WITH_AS(
      right_invariant_envelope(line_metric(MetricKind::CuberootPullback), grid, AdjacencySpec{1}),
      doctest::Contains("partition sums"), EnvelopeInfiniteError);
}

TEST_CASE("arctan envelope is finite, intrinsic, and dominates the base") {
  auto grid = line_grid(-1.0, 1.0, 41);
  auto spec = line_metric(MetricKind::ArctanPullback);
  MetricField env = right_invariant_envelope(spec, grid, AdjacencySpec{1});
  CHECK(env.provenance == "envelope:arctan_pullback");
  CHECK(env.intrinsic);
  for (int i = 0; i < grid->total(); i += 7)
    for (int j = i + 1; j < grid->total(); j += 5) {
      double base = eval_base_metric(spec, grid->point(i), grid->point(j));
      CHECK(env.values(i, j) >= base - 1e-10);
      CHECK(std::isfinite(env.values(i, j)));
    }
}

TEST_CASE("norm tables are exactly homogeneous for the euclidean line") {
  auto spec = line_metric(MetricKind::Euclidean);
  auto sigma = line_sigma(-3.0, 3.0, 12);
  auto table = norm_table(identity(spec.group), {vec({1.0}), vec({2.0}), vec({-1.0})}, spec,
                          default_t_schedule(1.0, 10), sigma);
  REQUIRE(table.size() == 3);
  CHECK(table[0].estimate.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(table[1].estimate.value == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(table[2].estimate.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(homogeneity_defect(table) <= 1e-12);
}

}  // TEST_SUITE
