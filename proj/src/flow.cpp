#include "hausflow/flow.hpp"

#include <cmath>
#include <map>

namespace hausflow {

namespace {

std::string next_provenance(const std::string& prev) {
  if (prev.size() > 1 && prev[0] == 'd') {
    std::size_t k = 1;
    while (k < prev.size() && std::isdigit(static_cast<unsigned char>(prev[k]))) ++k;
    if (k == prev.size()) return "d" + std::to_string(std::stoi(prev.substr(1)) + 1);
  }
  return "d1";
}

// snapped generator as whole lattice steps of the table grid; abelian only
std::vector<Eigen::VectorXi> lattice_generators(const Grid& grid, const GeneratorSet& X) {
  std::vector<Eigen::VectorXi> out;
  out.reserve(X.elements.size());
  for (const auto& x : X.elements) {
    Eigen::VectorXi r(grid.group.dim);
    for (int ax = 0; ax < grid.group.dim; ++ax)
      r[ax] = static_cast<int>(std::llround(x[ax] / grid.step[ax]));
    out.push_back(r);
  }
  return out;
}

int lattice_neighbor(const Grid& grid, int flat, const Eigen::VectorXi& delta) {
  Eigen::VectorXi m = grid.multi(flat);
  for (int ax = 0; ax < m.size(); ++ax) {
    int v = m[ax] + delta[ax];
    if (grid.wrap[ax]) {
      int n = grid.npts[ax];
      v %= n;
      if (v < 0) v += n;
    } else if (v < 0 || v >= grid.npts[ax]) {
      return -1;
    }
    m[ax] = v;
  }
  return grid.flat(m);
}

double table_hausdorff(const Eigen::MatrixXd& D, const std::vector<int>& A,
                       const std::vector<int>& B) {
  const int m = static_cast<int>(A.size());
  double h = 0.0;
  for (int dir = 0; dir < 2; ++dir) {
    const auto& rows = dir == 0 ? A : B;
    const auto& cols = dir == 0 ? B : A;
    for (int a = 0; a < m; ++a) {
      double best = kInf;
      // scan columns from the diagonal out: the sets share generator order,
      // so the early exit fires fast
      for (int k = 0; k < m; ++k) {
        int b = a + k;
        if (b >= m) b -= m;
        best = std::min(best, D(rows[a], cols[b]));
        if (best <= h) break;
      }
      h = std::max(h, best);
    }
  }
  return h;
}

bool abelian(const GroupSpec& g) { return g.kind != GroupKind::Heisenberg; }

// wrapped lattice offset of edge (i, j), sign-canonicalized; the induced
// value of an invariant base depends on the offset only
std::vector<int> edge_offset_key(const Grid& grid, int i, int j) {
  Eigen::VectorXi mi = grid.multi(i), mj = grid.multi(j);
  std::vector<int> key(mi.size());
  for (int ax = 0; ax < mi.size(); ++ax) {
    int d = mj[ax] - mi[ax];
    if (grid.wrap[ax]) {
      int n = grid.npts[ax];
      d %= n;
      if (d < 0) d += n;
      if (d > n / 2) d -= n;  // minimal wrapped representative
    }
    key[ax] = d;
  }
  for (int v : key) {
    if (v > 0) break;
    if (v < 0) {
      for (auto& u : key) u = -u;
      break;
    }
  }
  return key;
}

double core_pair_max(const MetricField& f) {
  const int n = f.grid->total();
  double m = 0.0;
  for (int i = 0; i < n; ++i) {
    if (!f.grid->core[i]) continue;
    for (int j = i + 1; j < n; ++j)
      if (f.grid->core[j]) m = std::max(m, f.values(i, j));
  }
  return m;
}

void check_padding(const GroupSpec& g, const GeneratorSet& X, const Grid& grid) {
  const int dim = g.dim;
  // chart extremes of the core region
  Eigen::VectorXd lo(dim), hi(dim);
  for (int ax = 0; ax < dim; ++ax) {
    lo[ax] = grid.origin[ax] + grid.pad[ax] * grid.step[ax];
    hi[ax] = grid.origin[ax] + (grid.npts[ax] - 1 - grid.pad[ax]) * grid.step[ax];
  }
  const int corners = 1 << dim;
  for (const auto& x : X.elements)
    for (int c = 0; c < corners; ++c) {
      GroupElement p(dim);
      for (int ax = 0; ax < dim; ++ax) p[ax] = (c >> ax) & 1 ? hi[ax] : lo[ax];
      GroupElement t = mul(g, p, x);
      // translate displacement is affine in p per axis, so corner checks
      // bound the whole core box
      for (int ax = 0; ax < dim; ++ax) {
        if (grid.wrap[ax]) continue;
        double slack = 1e-9 * grid.step[ax];
        double last = grid.origin[ax] + (grid.npts[ax] - 1) * grid.step[ax];
        if (t[ax] < grid.origin[ax] - slack || t[ax] > last + slack)
          throw std::invalid_argument(
              "run_flow: core translates leave the padded window on axis " + std::to_string(ax) +
              "; enlarge padding to at least the generator reach (" +
              std::to_string(X.reach_radius()) + ")");
      }
    }
}

}  // namespace

const char* flow_verdict_name(FlowVerdict v) {
  switch (v) {
    case FlowVerdict::Converged: return "converged";
    case FlowVerdict::MaxIterReached: return "max_iter_reached";
    case FlowVerdict::Diverged: return "diverged";
  }
  return "?";
}

MonotonicityError::MonotonicityError(int i_, int j_, double before_, double after_)
    : std::runtime_error("flow iterate dropped at pair (" + std::to_string(i_) + "," +
                         std::to_string(j_) + "): " + std::to_string(before_) + " -> " +
                         std::to_string(after_)),
      i(i_),
      j(j_),
      before(before_),
      after(after_) {}

MetricField flow_step(const MetricField& field, const GeneratorSet& X, const AdjacencySpec& adj,
                      const BaseMetricSpec* base_override, int threads, FlowStepStats* stats) {
  if (!X.isotropy_certified)
    throw std::invalid_argument("flow_step: generator set lacks the isotropy certificate");
  const Grid& grid = *field.grid;
  const int n = grid.total();

  BaseMetricSpec spec;
  if (base_override) {
    spec = *base_override;
  } else {
    auto self = std::make_shared<MetricField>(field);
    spec = make_table_metric(self);
  }

  MetricField edges_field;
  edges_field.grid = field.grid;
  edges_field.provenance = next_provenance(field.provenance);
  edges_field.values = Eigen::MatrixXd::Constant(n, n, kInf);
  edges_field.values.diagonal().setZero();

  auto edges = stencil_edges(grid, adj);
  FlowStepStats local_stats;

  if (spec.kind == MetricKind::UserTable) {
    const Grid& tgrid = *spec.table->grid;
    if (!abelian(grid.group))
      throw std::invalid_argument(
          "flow_step: table-backed evaluation needs lattice translates; only abelian models "
          "support them");
    auto lat = lattice_generators(tgrid, X);
    const int m = X.size();
    for (int j = 0; j < m; ++j)
      for (int ax = 0; ax < tgrid.group.dim; ++ax)
        local_stats.max_snap_error =
            std::max(local_stats.max_snap_error,
                     std::abs(X.elements[j][ax] - lat[j][ax] * tgrid.step[ax]));
    // translate index tables; -1 marks a translate off the lookup grid
    std::vector<std::vector<int>> tidx(n, std::vector<int>(m));
    std::vector<char> clean(n, 1);
    for (int i = 0; i < n; ++i) {
      int ti = tgrid.locate(grid.point(i));
      for (int j = 0; j < m; ++j) {
        int t = ti >= 0 ? lattice_neighbor(tgrid, ti, lat[j]) : -1;
        tidx[i][j] = t;
        if (t < 0) clean[i] = 0;
      }
    }
    const Eigen::MatrixXd& D = spec.table->values;
    for (auto [i, j] : edges) {
      if (clean[i] && clean[j]) {
        double w = table_hausdorff(D, tidx[i], tidx[j]);
        edges_field.values(i, j) = edges_field.values(j, i) = w;
      } else if (grid.core[i] && grid.core[j]) {
        int p = clean[i] ? j : i;
        int g = 0;
        while (tidx[p][g] >= 0) ++g;
        throw TruncationError(p, g,
                              "translate of core point " + std::to_string(p) + " by generator " +
                                  std::to_string(g) + " leaves the table; enlarge padding");
      } else {
        double w = field.values(i, j);
        edges_field.values(i, j) = edges_field.values(j, i) = w;
        ++local_stats.fallback_edges;
      }
    }
  } else if (spec.right_invariant() && abelian(grid.group)) {
    // invariant base: the induced value depends on the edge offset only, so
    // one Hausdorff evaluation per distinct offset covers every edge
    std::map<std::vector<int>, double> by_offset;
    for (auto [i, j] : edges) {
      auto key = edge_offset_key(grid, i, j);
      auto it = by_offset.find(key);
      double w;
      if (it != by_offset.end()) {
        w = it->second;
      } else {
        w = induced_metric(grid.point(i), grid.point(j), X, spec);
        by_offset.emplace(key, w);
      }
      edges_field.values(i, j) = edges_field.values(j, i) = w;
    }
    local_stats.distinct_offsets = static_cast<int>(by_offset.size());
  } else {
    for (auto [i, j] : edges) {
      double w = induced_metric(grid.point(i), grid.point(j), X, spec);
      edges_field.values(i, j) = edges_field.values(j, i) = w;
    }
  }

  if (stats) *stats = local_stats;
  MetricField out = intrinsicize(edges_field, adj, threads);
  out.provenance = edges_field.provenance;
  return out;
}

FlowState run_flow(const BaseMetricSpec& base, const GeneratorSet& X,
                   std::shared_ptr<const Grid> grid, const AdjacencySpec& adj,
                   const FlowParams& params, int threads) {
  if (params.tol <= 0 || params.max_iter < 1 || params.divergence_factor <= 1 ||
      params.monotone_slack < 0)
    throw std::invalid_argument("run_flow: invalid flow parameters");
  check_padding(base.group, X, *grid);

  FlowState state;
  MetricField cur = base_metric_matrix(grid, base, threads);
  cur.provenance = "d0";
  double diam = core_pair_max(cur);
  if (!std::isfinite(diam) || diam <= 0)
    throw std::invalid_argument("run_flow: initial core diameter is not positive and finite");
  state.divergence_threshold = params.divergence_factor * diam;
  state.sup_core.push_back(diam);
  state.iterates.push_back(cur);

  for (int iter = 1; iter <= params.max_iter; ++iter) {
    FlowStepStats stats;
    MetricField next =
        flow_step(cur, X, adj, iter == 1 ? &base : nullptr, threads, &stats);
    state.band_fallback_edges = std::max(state.band_fallback_edges, stats.fallback_edges);
    state.max_snap_error = std::max(state.max_snap_error, stats.max_snap_error);

    const int n = grid->total();
    double sup_delta = 0.0, min_delta = 0.0, sup_val = 0.0;
    int mono_i = -1, mono_j = -1;
    for (int i = 0; i < n; ++i) {
      if (!grid->core[i]) continue;
      for (int j = i + 1; j < n; ++j) {
        if (!grid->core[j]) continue;
        double a = cur.values(i, j), b = next.values(i, j);
        double d = b - a;
        if (!(std::isinf(a) && std::isinf(b))) {
          sup_delta = std::max(sup_delta, std::abs(d));
          if (d < min_delta) {
            min_delta = d;
            mono_i = i;
            mono_j = j;
          }
        }
        sup_val = std::max(sup_val, b);
      }
    }
    if (iter > 1 && min_delta < -params.monotone_slack)
      throw MonotonicityError(mono_i, mono_j, cur.values(mono_i, mono_j),
                              next.values(mono_i, mono_j));

    state.deltas.push_back(sup_delta);
    state.min_signed_deltas.push_back(min_delta);
    state.sup_core.push_back(sup_val);
    state.iterations = iter;
    if (params.retain_iterates)
      state.iterates.push_back(next);
    else if (state.iterates.size() == 1)
      state.iterates.push_back(next);
    else
      state.iterates.back() = next;
    cur = std::move(next);

    if (sup_val > state.divergence_threshold) {
      state.verdict = FlowVerdict::Diverged;
      return state;
    }
    if (sup_delta < params.tol) {
      state.verdict = FlowVerdict::Converged;
      return state;
    }
  }
  state.verdict = FlowVerdict::MaxIterReached;
  return state;
}

}  // namespace hausflow
