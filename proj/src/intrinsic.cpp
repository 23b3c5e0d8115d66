#include "hausflow/intrinsic.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <thread>

namespace hausflow {

namespace {

constexpr int kFloydWarshallCutoff = 400;

bool lex_positive(const Eigen::VectorXi& v) {
  for (int i = 0; i < v.size(); ++i) {
    if (v[i] > 0) return true;
    if (v[i] < 0) return false;
  }
  return false;
}

// neighbor of flat index under a lattice offset, or -1 when it leaves a
// non-wrapping axis
int offset_neighbor(const Grid& grid, int flat, const Eigen::VectorXi& delta) {
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

void check_weights(const MetricField& field, const std::vector<std::pair<int, int>>& edges) {
  for (auto [i, j] : edges) {
    double w = field.values(i, j);
    if (std::isnan(w) || w < 0)
      throw std::invalid_argument("intrinsicize: edge weight at (" + std::to_string(i) + "," +
                                  std::to_string(j) + ") is not a nonnegative number");
  }
}

void floyd_warshall(Eigen::MatrixXd& D, int threads) {
  const int n = static_cast<int>(D.rows());
  Eigen::VectorXd colk(n);
  auto update = [&](int i) {
    double dik = colk[i];
    if (!std::isfinite(dik)) return;
    D.col(i) = D.col(i).cwiseMin((colk.array() + dik).matrix());
  };
  for (int k = 0; k < n; ++k) {
    colk = D.col(k);
    if (threads <= 1) {
      for (int i = 0; i < n; ++i) update(i);
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
          for (int i = t; i < n; i += threads) update(i);
        });
      for (auto& th : pool) th.join();
    }
  }
}

void dijkstra_all(Eigen::MatrixXd& D, const MetricField& field,
                  const std::vector<std::pair<int, int>>& edges, int threads) {
  const int n = static_cast<int>(D.rows());
  std::vector<std::vector<std::pair<int, double>>> adj(n);
  for (auto [i, j] : edges) {
    double w = field.values(i, j);
    if (!std::isfinite(w)) continue;
    adj[i].emplace_back(j, w);
    adj[j].emplace_back(i, w);
  }
  auto source = [&](int s) {
    auto dist = D.col(s);  // column view, written in place
    using Entry = std::pair<double, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
    dist.setConstant(kInf);  // seeds would mask the relaxation at the frontier
    dist[s] = 0.0;
    heap.emplace(0.0, s);
    while (!heap.empty()) {
      auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[u]) continue;
      for (auto [v, w] : adj[u]) {
        double nd = d + w;
        if (nd < dist[v]) {
          dist[v] = nd;
          heap.emplace(nd, v);
        }
      }
    }
  };
  if (threads <= 1) {
    for (int s = 0; s < n; ++s) source(s);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (int s = t; s < n; s += threads) source(s);
      });
    for (auto& th : pool) th.join();
  }
  // a shortest path evaluates to the same sum from both ends only up to
  // summation order; take the min to restore exact symmetry
  D = D.cwiseMin(D.transpose().eval());
}

bool same_geometry(const Grid& a, const Grid& b) {
  if (a.group.kind != b.group.kind || a.group.dim != b.group.dim) return false;
  if (a.npts.size() != b.npts.size()) return false;
  return (a.npts.array() == b.npts.array()).all() &&
         (a.origin.array() == b.origin.array()).all() &&
         (a.step.array() == b.step.array()).all() &&
         (a.pad.array() == b.pad.array()).all() && a.wrap == b.wrap;
}

}  // namespace

std::vector<Eigen::VectorXi> stencil_offsets(int dim, int radius) {
  if (dim < 1 || radius < 1) throw std::invalid_argument("stencil needs dim >= 1, radius >= 1");
  std::vector<Eigen::VectorXi> out;
  Eigen::VectorXi v = Eigen::VectorXi::Constant(dim, -radius);
  while (true) {
    if (lex_positive(v)) out.push_back(v);
    int ax = dim - 1;
    while (ax >= 0 && v[ax] == radius) v[ax--] = -radius;
    if (ax < 0) break;
    ++v[ax];
  }
  return out;
}

std::vector<std::pair<int, int>> stencil_edges(const Grid& grid, const AdjacencySpec& adj) {
  auto offsets = stencil_offsets(static_cast<int>(grid.npts.size()), adj.stencil_radius);
  std::vector<std::pair<int, int>> edges;
  const int n = grid.total();
  edges.reserve(static_cast<std::size_t>(n) * offsets.size());
  for (int i = 0; i < n; ++i)
    for (const auto& delta : offsets) {
      int j = offset_neighbor(grid, i, delta);
      if (j >= 0 && j != i) edges.emplace_back(std::min(i, j), std::max(i, j));
    }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

double path_length(const std::vector<GroupElement>& poly, const BaseMetricSpec& spec) {
  if (poly.size() < 2) throw std::invalid_argument("path_length: need at least 2 points");
  double len = 0.0;
  for (std::size_t k = 1; k < poly.size(); ++k) {
    if (chart_distance_inf(spec.group, poly[k - 1], poly[k]) == 0.0)
      throw std::invalid_argument("path_length: consecutive points must be distinct");
    len += eval_base_metric(spec, poly[k - 1], poly[k]);
  }
  return len;
}

double path_length(const std::vector<int>& poly, const MetricField& field) {
  if (poly.size() < 2) throw std::invalid_argument("path_length: need at least 2 points");
  double len = 0.0;
  for (std::size_t k = 1; k < poly.size(); ++k) {
    if (poly[k - 1] == poly[k])
      throw std::invalid_argument("path_length: consecutive points must be distinct");
    len += field.values(poly[k - 1], poly[k]);
  }
  return len;
}

MetricField intrinsicize(const MetricField& field, const AdjacencySpec& adj, int threads,
                         ApspMethod method) {
  const int n = field.grid->total();
  auto edges = stencil_edges(*field.grid, adj);
  check_weights(field, edges);

  MetricField out;
  out.grid = field.grid;
  out.provenance = field.provenance;
  out.intrinsic = true;
  out.values = Eigen::MatrixXd::Constant(n, n, kInf);
  out.values.diagonal().setZero();
  for (auto [i, j] : edges) {
    double w = std::min(field.values(i, j), out.values(i, j));
    out.values(i, j) = w;
    out.values(j, i) = w;
  }

  if (method == ApspMethod::Auto)
    method = (n <= kFloydWarshallCutoff) ? ApspMethod::FloydWarshall : ApspMethod::Dijkstra;
  if (method == ApspMethod::FloydWarshall)
    floyd_warshall(out.values, threads);
  else
    dijkstra_all(out.values, field, edges, threads);
  return out;
}

FieldComparison compare_fields(const MetricField& a, const MetricField& b) {
  if (a.grid != b.grid && !same_geometry(*a.grid, *b.grid))
    throw std::invalid_argument("compare_fields: grid mismatch");
  const int n = a.grid->total();
  FieldComparison cmp;
  double sum = 0.0;
  long count = 0;
  for (int i = 0; i < n; ++i) {
    if (!a.grid->core[i]) continue;
    for (int j = i + 1; j < n; ++j) {
      if (!a.grid->core[j]) continue;
      double va = a.values(i, j), vb = b.values(i, j);
      double diff;
      if (std::isinf(va) && std::isinf(vb))
        diff = 0.0;
      else
        diff = std::abs(va - vb);
      if (diff > cmp.sup_diff || cmp.argmax_i < 0) {
        cmp.sup_diff = diff;
        cmp.argmax_i = i;
        cmp.argmax_j = j;
      }
      sum += diff;
      ++count;
    }
  }
  cmp.mean_diff = count ? sum / static_cast<double>(count) : 0.0;
  return cmp;
}

}  // namespace hausflow
