#include "hausflow/metric_field.hpp"

#include <thread>

namespace hausflow {

namespace {

// one-sided sup: max over rows of the min over columns of dist(row, col).
// The column scan starts at the row index: translate sets share their
// generator order, so the near-minimal partner sits close to the diagonal
// and the early exit fires after a few probes.
double directed_hausdorff(const std::vector<GroupElement>& A,
                          const std::vector<GroupElement>& B,
                          const BaseMetricSpec& spec) {
  const int na = static_cast<int>(A.size()), nb = static_cast<int>(B.size());
  double sup = 0.0;
  for (int ia = 0; ia < na; ++ia) {
    double best = kInf;
    int start = ia < nb ? ia : 0;
    for (int k = 0; k < nb; ++k) {
      int ib = start + k;
      if (ib >= nb) ib -= nb;
      best = std::min(best, eval_base_metric(spec, A[ia], B[ib]));
      if (best <= sup) break;  // cannot raise the outer max
    }
    sup = std::max(sup, best);
  }
  return sup;
}

std::vector<GroupElement> translates(const GroupSpec& g, const GroupElement& p,
                                     const GeneratorSet& X) {
  std::vector<GroupElement> out;
  out.reserve(X.elements.size());
  for (const auto& x : X.elements) out.push_back(mul(g, p, x));
  return out;
}

void parallel_rows(int n, int threads, const std::function<void(int)>& row_fn) {
  threads = std::max(1, threads);
  if (threads == 1) {
    for (int i = 0; i < n; ++i) row_fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([=] {
      for (int i = t; i < n; i += threads) row_fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

double hausdorff_distance(const std::vector<GroupElement>& A,
                          const std::vector<GroupElement>& B,
                          const BaseMetricSpec& spec) {
  if (A.empty() || B.empty())
    throw std::invalid_argument("hausdorff_distance needs nonempty sets");
  return std::max(directed_hausdorff(A, B, spec), directed_hausdorff(B, A, spec));
}

double induced_metric(const GroupElement& p, const GroupElement& q,
                      const GeneratorSet& X, const BaseMetricSpec& spec) {
  if (!X.isotropy_certified)
    throw std::invalid_argument("induced_metric: generator set lacks the isotropy certificate");
  return hausdorff_distance(translates(X.group, p, X), translates(X.group, q, X), spec);
}

double max_translate_metric(const GroupElement& p, const GroupElement& q,
                            const GeneratorSet& X, const BaseMetricSpec& spec) {
  double m = 0.0;
  for (const auto& x : X.elements)
    m = std::max(m, eval_base_metric(spec, mul(X.group, p, x), mul(X.group, q, x)));
  return m;
}

MetricField metric_matrix(std::shared_ptr<const Grid> grid, const PairMetric& metric,
                          const std::string& provenance, int threads) {
  const int n = grid->total();
  MetricField field;
  field.grid = grid;
  field.values = Eigen::MatrixXd::Zero(n, n);
  field.provenance = provenance;
  std::vector<GroupElement> pts(n);
  for (int i = 0; i < n; ++i) pts[i] = grid->point(i);
  parallel_rows(n, threads, [&](int i) {
    for (int j = i + 1; j < n; ++j) field.values(i, j) = metric(pts[i], pts[j]);
  });
  field.values = field.values.selfadjointView<Eigen::Upper>();
  return field;
}

MetricField base_metric_matrix(std::shared_ptr<const Grid> grid, const BaseMetricSpec& spec,
                               int threads) {
  return metric_matrix(
      grid, [&](const GroupElement& p, const GroupElement& q) { return eval_base_metric(spec, p, q); },
      std::string("base:") + metric_kind_name(spec.kind), threads);
}

MetricField induced_metric_matrix(std::shared_ptr<const Grid> grid, const BaseMetricSpec& spec,
                                  const GeneratorSet& X, const std::string& provenance,
                                  int threads) {
  if (!X.isotropy_certified)
    throw std::invalid_argument("induced_metric_matrix: generator set lacks the isotropy certificate");
  const int n = grid->total();
  const int m = X.size();

  if (spec.kind == MetricKind::UserTable) {
    // resolve every translate to a table index up front so a miss can name
    // its grid point and generator
    const auto& table = *spec.table;
    Eigen::MatrixXi tidx(n, m);
    for (int i = 0; i < n; ++i) {
      GroupElement p = grid->point(i);
      for (int j = 0; j < m; ++j) {
        int idx = table.grid->locate(mul(X.group, p, X.elements[j]));
        if (idx < 0)
          throw TruncationError(i, j,
                                "translate of grid point " + std::to_string(i) + " by generator " +
                                    std::to_string(j) + " leaves the table; enlarge padding");
        tidx(i, j) = idx;
      }
    }
    MetricField field;
    field.grid = grid;
    field.values = Eigen::MatrixXd::Zero(n, n);
    field.provenance = provenance;
    parallel_rows(n, threads, [&](int i) {
      for (int k = i + 1; k < n; ++k) {
        double h = 0.0;
        for (int dir = 0; dir < 2; ++dir) {
          const auto rows = dir == 0 ? tidx.row(i) : tidx.row(k);
          const auto cols = dir == 0 ? tidx.row(k) : tidx.row(i);
          for (int a = 0; a < m; ++a) {
            double best = kInf;
            for (int b = 0; b < m; ++b) {
              best = std::min(best, table.values(rows[a], cols[b]));
              if (best <= h) break;
            }
            h = std::max(h, best);
          }
        }
        field.values(i, k) = h;
      }
    });
    field.values = field.values.selfadjointView<Eigen::Upper>();
    return field;
  }

  std::vector<std::vector<GroupElement>> trans(n);
  for (int i = 0; i < n; ++i) trans[i] = translates(X.group, grid->point(i), X);
  MetricField field;
  field.grid = grid;
  field.values = Eigen::MatrixXd::Zero(n, n);
  field.provenance = provenance;
  parallel_rows(n, threads, [&](int i) {
    for (int k = i + 1; k < n; ++k)
      field.values(i, k) = hausdorff_distance(trans[i], trans[k], spec);
  });
  field.values = field.values.selfadjointView<Eigen::Upper>();
  return field;
}

}  // namespace hausflow
