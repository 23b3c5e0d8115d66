#include "hausflow/finsler.hpp"

#include <cmath>

namespace hausflow {

namespace {

// nearest lattice index regardless of off-lattice distance; -1 only when a
// non-wrapping axis falls outside the padded bounds
int nearest_index(const Grid& grid, const GroupElement& coords) {
  Eigen::VectorXi m(grid.npts.size());
  for (int ax = 0; ax < grid.npts.size(); ++ax) {
    double u = (coords[ax] - grid.origin[ax]) / grid.step[ax];
    long k = std::lround(u);
    if (grid.wrap[ax]) {
      long n = grid.npts[ax];
      k %= n;
      if (k < 0) k += n;
    } else if (k < 0 || k >= grid.npts[ax]) {
      return -1;
    }
    m[ax] = static_cast<int>(k);
  }
  return grid.flat(m);
}

double max_quotient(const GroupElement& g, const AlgebraVector& v, double t,
                    const BaseMetricSpec& spec, const std::vector<GroupElement>& sigma_sample,
                    bool both_signs) {
  const GroupSpec& G = spec.group;
  double q = 0.0;
  GroupElement step_pos = exp_map(G, v, t);
  GroupElement step_neg = exp_map(G, v, -t);
  for (const auto& sigma : sigma_sample) {
    GroupElement gs = mul(G, g, sigma);
    q = std::max(q, eval_base_metric(spec, mul(G, step_pos, gs), gs) / t);
    if (both_signs) q = std::max(q, eval_base_metric(spec, mul(G, step_neg, gs), gs) / t);
  }
  return q;
}

int tail_start(std::size_t levels) {
  return static_cast<int>(levels - (levels + 2) / 3);
}

bool growing_tail(const std::vector<double>& trend, double growth_factor) {
  const std::size_t n = trend.size();
  if (n < 4) return false;
  for (std::size_t k = n - 3; k < n; ++k)
    if (!(trend[k] >= growth_factor * trend[k - 1])) return false;
  return true;
}

void validate_schedule(const std::vector<double>& t_schedule) {
  if (t_schedule.empty()) throw std::invalid_argument("empty t schedule");
  for (std::size_t k = 0; k < t_schedule.size(); ++k) {
    if (!(t_schedule[k] > 0)) throw std::invalid_argument("t schedule must be positive");
    if (k && !(t_schedule[k] < t_schedule[k - 1]))
      throw std::invalid_argument("t schedule must decrease strictly");
  }
}

}  // namespace

double bar_metric(const GroupElement& p, const GroupElement& q, const BaseMetricSpec& spec,
                  const std::vector<GroupElement>& sigma_sample) {
  if (sigma_sample.empty()) throw std::invalid_argument("bar_metric: empty sample");
  const GroupSpec& G = spec.group;
  double m = 0.0;
  for (const auto& s : sigma_sample)
    m = std::max(m, eval_base_metric(spec, mul(G, p, s), mul(G, q, s)));
  return m;
}

std::vector<double> default_t_schedule(double window_scale, int levels) {
  if (!(window_scale > 0) || levels < 2)
    throw std::invalid_argument("default_t_schedule: need scale > 0 and levels >= 2");
  std::vector<double> t(levels);
  double cur = window_scale;
  for (int k = 0; k < levels; ++k) t[k] = (cur *= 0.5);
  return t;
}

FinslerEstimate finsler_estimate(const GroupElement& g, const AlgebraVector& v,
                                 const BaseMetricSpec& spec, const std::vector<double>& t_schedule,
                                 const std::vector<GroupElement>& sigma_sample,
                                 const FinslerParams& params) {
  validate_schedule(t_schedule);
  if (sigma_sample.empty()) throw std::invalid_argument("finsler_estimate: empty sample");
  if (v.norm() == 0.0) throw std::invalid_argument("finsler_estimate: zero direction");

  FinslerEstimate est;
  est.base_point = g;
  est.direction = v;
  est.t_schedule = t_schedule;
  est.sigma_count = static_cast<int>(sigma_sample.size());
  est.trend.reserve(t_schedule.size());
  for (double t : t_schedule)
    est.trend.push_back(max_quotient(g, v, t, spec, sigma_sample, params.both_signs));

  double tail_max = 0.0;
  for (std::size_t k = tail_start(est.trend.size()); k < est.trend.size(); ++k)
    tail_max = std::max(tail_max, est.trend[k]);
  est.diverged = tail_max > 100.0 * params.divergence_scale &&
                 growing_tail(est.trend, params.growth_factor);
  est.value = est.diverged ? kInf : tail_max;
  return est;
}

SupLimsupReport sup_equals_limsup_check(const AlgebraVector& v, const BaseMetricSpec& spec,
                                        const std::vector<double>& t_schedule,
                                        const std::vector<GroupElement>& sigma_sample,
                                        const FinslerParams& params) {
  FinslerEstimate est =
      finsler_estimate(identity(spec.group), v, spec, t_schedule, sigma_sample, params);
  SupLimsupReport rep;
  for (double q : est.trend) rep.sup_all = std::max(rep.sup_all, q);
  double tail_max = 0.0;
  for (std::size_t k = tail_start(est.trend.size()); k < est.trend.size(); ++k)
    tail_max = std::max(tail_max, est.trend[k]);
  rep.tail_value = tail_max;
  rep.ratio = tail_max > 0 ? rep.sup_all / tail_max : kInf;
  return rep;
}

InvarianceDefect right_invariance_defect(const MetricField& field,
                                         const std::vector<GroupElement>& sigma_sample,
                                         double rel_tol, long long triple_cap) {
  const Grid& grid = *field.grid;
  const int n = grid.total();
  std::vector<int> core_idx;
  for (int i = 0; i < n; ++i)
    if (grid.core[i]) core_idx.push_back(i);
  const long long npairs =
      static_cast<long long>(core_idx.size()) * (static_cast<long long>(core_idx.size()) - 1) / 2;
  long long total = npairs * static_cast<long long>(sigma_sample.size());
  long long stride = total > triple_cap ? (total + triple_cap - 1) / triple_cap : 1;

  // translate index per (core point, sigma), -1 when it leaves the core;
  // padding-band entries are lattice bookkeeping, not part of the field
  Eigen::MatrixXi tr(core_idx.size(), sigma_sample.size());
  for (std::size_t a = 0; a < core_idx.size(); ++a) {
    GroupElement p = grid.point(core_idx[a]);
    for (std::size_t s = 0; s < sigma_sample.size(); ++s) {
      int idx = nearest_index(grid, mul(grid.group, p, sigma_sample[s]));
      tr(a, s) = (idx >= 0 && grid.core[idx]) ? idx : -1;
    }
  }

  InvarianceDefect out;
  long long pair_counter = 0;
  for (std::size_t a = 0; a < core_idx.size(); ++a)
    for (std::size_t b = a + 1; b < core_idx.size(); ++b) {
      if (pair_counter++ % stride) continue;
      double base = field.values(core_idx[a], core_idx[b]);
      for (std::size_t s = 0; s < sigma_sample.size(); ++s) {
        int ia = tr(a, s), ib = tr(b, s);
        if (ia < 0 || ib < 0) continue;
        double delta = std::abs(field.values(ia, ib) - base);
        ++out.triples;
        if (delta > out.max_abs) {
          out.max_abs = delta;
          out.argmax_i = core_idx[a];
          out.argmax_j = core_idx[b];
          out.argmax_sigma = static_cast<int>(s);
        }
        out.max_excess = std::max(out.max_excess, delta - rel_tol * base);
      }
    }
  return out;
}

MetricField right_invariant_envelope(const BaseMetricSpec& spec, std::shared_ptr<const Grid> grid,
                                     const AdjacencySpec& adj, int threads) {
  const int n = grid->total();
  std::vector<GroupElement> sigma(n);
  for (int i = 0; i < n; ++i) sigma[i] = grid->point(i);

  // line charts force every path across each intermediate separation, so an
  // unbounded partition sum proves the intrinsic envelope infinite
  if (spec.group.kind == GroupKind::Real && spec.group.dim == 1) {
    double L = 4.0 * grid->min_step();
    AlgebraVector v = AlgebraVector::Ones(1);
    GroupElement e = identity(spec.group);
    std::vector<double> sums;
    for (int k = 0; k <= 8; ++k) {
      double parts = std::pow(2.0, k);
      sums.push_back(parts * bar_metric(e, exp_map(spec.group, v, L / parts), spec, sigma));
    }
    WindowSpec w;
    w.lo = Eigen::VectorXd::Constant(1, grid->origin[0]);
    w.hi = Eigen::VectorXd::Constant(1, grid->origin[0] + (grid->npts[0] - 1) * grid->step[0]);
    w.resolution = Eigen::VectorXi::Constant(1, 9);
    double scale = lipschitz_scale_estimate(spec, w);
    if (sums.back() > 100.0 * scale * L && growing_tail(sums, 1.10))
      throw EnvelopeInfiniteError(
          "right_invariant_envelope: partition sums of the bar metric grow without bound "
          "(" + std::to_string(sums.front()) + " -> " + std::to_string(sums.back()) +
          " over 2^8 refinements); the intrinsic envelope is infinite");
  }

  MetricField edges_field;
  edges_field.grid = grid;
  edges_field.provenance = std::string("envelope:") + metric_kind_name(spec.kind);
  edges_field.values = Eigen::MatrixXd::Constant(n, n, kInf);
  edges_field.values.diagonal().setZero();
  for (auto [i, j] : stencil_edges(*grid, adj)) {
    double w = bar_metric(grid->point(i), grid->point(j), spec, sigma);
    if (!std::isfinite(w))
      throw EnvelopeInfiniteError("right_invariant_envelope: bar metric is infinite on an edge");
    edges_field.values(i, j) = edges_field.values(j, i) = w;
  }
  MetricField out = intrinsicize(edges_field, adj, threads);
  out.provenance = edges_field.provenance;
  return out;
}

std::vector<NormEntry> norm_table(const GroupElement& g,
                                  const std::vector<AlgebraVector>& directions,
                                  const BaseMetricSpec& spec, const std::vector<double>& t_schedule,
                                  const std::vector<GroupElement>& sigma_sample,
                                  const FinslerParams& params) {
  std::vector<NormEntry> table;
  table.reserve(directions.size());
  for (const auto& v : directions)
    table.push_back({v, finsler_estimate(g, v, spec, t_schedule, sigma_sample, params)});
  return table;
}

double homogeneity_defect(const std::vector<NormEntry>& table) {
  double worst = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i)
    for (std::size_t j = 0; j < table.size(); ++j) {
      if (i == j) continue;
      const auto& vi = table[i].direction;
      const auto& vj = table[j].direction;
      if (table[i].estimate.diverged || table[j].estimate.diverged) continue;
      // proportional pair? vi = lambda * vj
      double lambda = 0.0;
      bool prop = true;
      for (int ax = 0; ax < vi.size(); ++ax) {
        if (vj[ax] == 0.0) {
          if (vi[ax] != 0.0) prop = false;
          continue;
        }
        double r = vi[ax] / vj[ax];
        if (lambda == 0.0)
          lambda = r;
        else if (std::abs(r - lambda) > 1e-12 * std::abs(lambda))
          prop = false;
      }
      if (!prop || lambda == 0.0) continue;
      double vj_val = table[j].estimate.value;
      if (vj_val <= 0) continue;
      double expected = std::abs(lambda);
      double got = table[i].estimate.value / vj_val;
      worst = std::max(worst, std::abs(got - expected) / expected);
    }
  return worst;
}

}  // namespace hausflow
