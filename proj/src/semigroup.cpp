#include "hausflow/semigroup.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace hausflow {

namespace {

using QuantKey = std::vector<long long>;

QuantKey quantize(const GroupElement& p, double tol) {
  QuantKey k(p.size());
  for (int ax = 0; ax < p.size(); ++ax) k[ax] = std::llround(p[ax] / tol);
  return k;
}

// lookup with +-1 probing per axis so near-boundary rounding cannot split a
// duplicate; wrap axes probe modulo the period in key units. The exact key is
// tried first: a hit there is always within tol, so clean lookups cost one find.
int find_near(const std::map<QuantKey, int>& index, const std::vector<GroupElement>& points,
              const GroupSpec& group, const GroupElement& p, const QuantKey& key, double tol) {
  const int dim = static_cast<int>(key.size());
  auto exact = index.find(key);
  if (exact != index.end() && chart_distance_inf(group, points[exact->second], p) <= tol)
    return exact->second;
  const long long period = std::llround(1.0 / tol);
  QuantKey probe(dim);
  std::vector<int> off(dim, -1);
  for (;;) {
    for (int ax = 0; ax < dim; ++ax) {
      probe[ax] = key[ax] + off[ax];
      if (group.kind == GroupKind::Torus) {
        probe[ax] %= period;
        if (probe[ax] < 0) probe[ax] += period;
      }
    }
    auto it = index.find(probe);
    if (it != index.end() && chart_distance_inf(group, points[it->second], p) <= tol)
      return it->second;
    int ax = 0;
    while (ax < dim && off[ax] == 1) off[ax++] = -1;
    if (ax == dim) return -1;
    ++off[ax];
  }
}

bool lex_less(const GroupElement& a, const GroupElement& b) {
  for (int ax = 0; ax < a.size(); ++ax) {
    if (a[ax] < b[ax]) return true;
    if (a[ax] > b[ax]) return false;
  }
  return false;
}

bool inside_margin(const GroupSpec& group, const WindowSpec& window, const GroupElement& p,
                   double margin) {
  if (group.kind == GroupKind::Torus) return true;
  for (int ax = 0; ax < p.size(); ++ax)
    if (p[ax] < window.lo[ax] - margin || p[ax] > window.hi[ax] + margin) return false;
  return true;
}

}  // namespace

WordCloud generate_words(const GeneratorSet& X, int maxlen, const WindowSpec& window,
                         const WordParams& params) {
  if (maxlen < 1) throw std::invalid_argument("generate_words: maxlen must be >= 1");
  if (!(params.dedup_tol > 0)) throw std::invalid_argument("generate_words: dedup_tol must be > 0");
  const GroupSpec& G = X.group;
  if (window.lo.size() != G.dim || window.hi.size() != G.dim)
    throw std::invalid_argument("generate_words: window dimension mismatch");
  const double margin = params.margin < 0 ? X.reach_radius() : params.margin;

  WordCloud cloud;
  cloud.group = G;
  cloud.maxlen = maxlen;
  cloud.dedup_tol = params.dedup_tol;

  std::map<QuantKey, int> index;
  std::vector<int> frontier;
  GroupElement e = identity(G);
  if (!inside_margin(G, window, e, margin))
    throw std::invalid_argument("generate_words: identity outside the pruned window");
  index.emplace(quantize(e, params.dedup_tol), 0);
  cloud.points.push_back(e);
  frontier.push_back(0);

  for (int depth = 1; depth <= maxlen && !frontier.empty(); ++depth) {
    std::vector<int> next;
    for (int pi : frontier)
      for (int gi = 1; gi < X.size(); ++gi) {
        GroupElement cand = reduce(G, mul(G, cloud.points[pi], X.elements[gi]));
        if (!inside_margin(G, window, cand, margin)) continue;
        QuantKey key = quantize(cand, params.dedup_tol);
        if (find_near(index, cloud.points, G, cand, key, params.dedup_tol) >= 0) continue;
        if (cloud.points.size() >= params.cloud_cap)
          throw std::length_error("generate_words: cloud cap exceeded");
        int id = static_cast<int>(cloud.points.size());
        index.emplace(std::move(key), id);
        cloud.points.push_back(std::move(cand));
        next.push_back(id);
      }
    frontier = std::move(next);
  }
  std::sort(cloud.points.begin(), cloud.points.end(), lex_less);
  return cloud;
}

double covering_radius(const WordCloud& cloud, const WindowSpec& window,
                       const BaseMetricSpec& spec, int probe_factor) {
  if (cloud.points.empty()) throw std::invalid_argument("covering_radius: empty cloud");
  if (probe_factor < 1) throw std::invalid_argument("covering_radius: probe_factor must be >= 1");
  const GroupSpec& G = cloud.group;

  Eigen::VectorXi npts(G.dim);
  Eigen::VectorXd origin(G.dim), step(G.dim);
  long long total = 1;
  for (int ax = 0; ax < G.dim; ++ax) {
    long long n = static_cast<long long>(window.resolution[ax]) * probe_factor;
    if (G.kind == GroupKind::Torus) {
      origin[ax] = 0.0;
      step[ax] = 1.0 / static_cast<double>(n);
    } else {
      if (!(window.hi[ax] > window.lo[ax]))
        throw std::invalid_argument("covering_radius: empty window");
      origin[ax] = window.lo[ax];
      step[ax] = (window.hi[ax] - window.lo[ax]) / static_cast<double>(n - 1);
    }
    npts[ax] = static_cast<int>(n);
    total *= n;
    if (n < 2 || total > (1LL << 24))
      throw std::invalid_argument("covering_radius: probe grid empty or too large");
  }

  // pullback-through-a-monotone-chart metrics reach their min over the cloud
  // at a coordinate neighbor, so a sorted scan replaces the full min
  const bool sorted_1d = G.kind == GroupKind::Real && G.dim == 1 &&
                         (spec.kind == MetricKind::Euclidean ||
                          spec.kind == MetricKind::ArctanPullback ||
                          spec.kind == MetricKind::CuberootPullback);
  if (sorted_1d) {
    std::vector<double> xs(cloud.points.size());
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = cloud.points[i][0];
    double worst = 0.0;
    GroupElement probe(1), near(1);
    for (long long k = 0; k < total; ++k) {
      probe[0] = origin[0] + static_cast<double>(k) * step[0];
      auto it = std::lower_bound(xs.begin(), xs.end(), probe[0]);
      double best = kInf;
      if (it != xs.end()) {
        near[0] = *it;
        best = eval_base_metric(spec, probe, near);
      }
      if (it != xs.begin()) {
        near[0] = *(it - 1);
        best = std::min(best, eval_base_metric(spec, probe, near));
      }
      worst = std::max(worst, best);
    }
    return worst;
  }

  double worst = 0.0;
  Eigen::VectorXi m = Eigen::VectorXi::Zero(G.dim);
  GroupElement probe(G.dim);
  for (long long k = 0; k < total; ++k) {
    for (int ax = 0; ax < G.dim; ++ax) probe[ax] = origin[ax] + m[ax] * step[ax];
    double best = kInf;
    for (const auto& p : cloud.points) {
      best = std::min(best, eval_base_metric(spec, probe, p));
      if (best == 0.0) break;
    }
    worst = std::max(worst, best);
    for (int ax = G.dim - 1; ax >= 0; --ax) {
      if (++m[ax] < npts[ax]) break;
      m[ax] = 0;
    }
  }
  return worst;
}

GeneratorSet invert_generators(const GeneratorSet& X) {
  std::vector<GroupElement> inverted;
  inverted.reserve(X.elements.size());
  for (const auto& x : X.elements) inverted.push_back(reduce(X.group, inv(X.group, x)));
  return make_generator_set(X.group, inverted);
}

BracketReport check_bracket_generating(const GroupSpec& group,
                                       const std::vector<AlgebraVector>& vectors) {
  if (vectors.empty()) throw std::invalid_argument("check_bracket_generating: empty list");
  std::vector<AlgebraVector> basis;
  auto rank_of = [&](const std::vector<AlgebraVector>& vs) {
    Eigen::MatrixXd M(group.dim, static_cast<int>(vs.size()));
    for (std::size_t c = 0; c < vs.size(); ++c) M.col(static_cast<int>(c)) = vs[c];
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(M);
    qr.setThreshold(1e-9);
    return static_cast<int>(qr.rank());
  };
  for (const auto& v : vectors) {
    if (v.size() != group.dim)
      throw std::invalid_argument("check_bracket_generating: vector dimension mismatch");
    basis.push_back(v);
  }
  int rank = rank_of(basis);
  bool grew = true;
  while (grew && rank < group.dim) {
    grew = false;
    const std::size_t n = basis.size();
    for (std::size_t i = 0; i < n && rank < group.dim; ++i)
      for (std::size_t j = i + 1; j < n && rank < group.dim; ++j) {
        AlgebraVector b = bracket(group, basis[i], basis[j]);
        if (b.norm() == 0.0) continue;
        basis.push_back(b);
        int r = rank_of(basis);
        if (r > rank) {
          rank = r;
          grew = true;
        } else {
          basis.pop_back();
        }
      }
  }
  return {rank == group.dim, rank};
}

bool check_isotropy_trivial(const GeneratorSet& X, double tol) {
  const GroupSpec& G = X.group;
  const int n = X.size();
  std::map<QuantKey, int> index;
  for (int i = 0; i < n; ++i) index.emplace(quantize(X.elements[i], tol), i);
  for (int gi = 1; gi < n; ++gi) {
    std::vector<bool> matched(n, false);
    bool permutes = true;
    for (int xi = 0; xi < n && permutes; ++xi) {
      GroupElement gx = reduce(G, mul(G, X.elements[gi], X.elements[xi]));
      int hit = find_near(index, X.elements, G, gx, quantize(gx, tol), tol);
      permutes = hit >= 0 && !matched[hit];
      if (permutes) matched[hit] = true;
    }
    if (permutes) return false;
  }
  return true;
}

GeneratorSet build_generator_from_basis(const GroupSpec& group,
                                        const std::vector<AlgebraVector>& basis) {
  BracketReport rep = check_bracket_generating(group, basis);
  if (!rep.generating)
    throw std::invalid_argument("build_generator_from_basis: brackets close at dimension " +
                                std::to_string(rep.closure_dim) + " < " +
                                std::to_string(group.dim));
  if (group.kind == GroupKind::Torus) {
    for (int ax = 0; ax < group.dim; ++ax) {
      double extent = 0.0;
      for (const auto& v : basis) extent += 2.0 * std::abs(v[ax]);
      if (!(extent < 0.5))
        throw std::invalid_argument(
            "build_generator_from_basis: scaled basis box leaves the torus injectivity window");
    }
  }
  std::vector<GroupElement> elements;
  elements.push_back(identity(group));
  for (const auto& v : basis) elements.push_back(exp_map(group, v, -1.0));
  for (const auto& v : basis) elements.push_back(exp_map(group, v, std::sqrt(2.0)));
  GeneratorSet X = make_generator_set(group, elements);
  if (!check_isotropy_trivial(X))
    throw std::invalid_argument("build_generator_from_basis: generator set has nontrivial isotropy");
  X.isotropy_certified = true;
  return X;
}

}  // namespace hausflow
