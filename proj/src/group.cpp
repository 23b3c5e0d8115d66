#include "hausflow/group.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hausflow {

namespace {

void require_dim(const GroupSpec& g, const Eigen::VectorXd& a, const char* what) {
  if (a.size() != g.dim)
    throw std::invalid_argument(std::string(what) + ": element dimension " +
                                std::to_string(a.size()) + " does not match group dimension " +
                                std::to_string(g.dim));
}

double wrap01(double x) {
  double r = x - std::floor(x);
  return (r >= 1.0) ? 0.0 : r;  // guards floor rounding at exact integers
}

}  // namespace

const char* group_kind_name(GroupKind k) {
  switch (k) {
    case GroupKind::Real: return "real";
    case GroupKind::Torus: return "torus";
    case GroupKind::Heisenberg: return "heisenberg";
  }
  return "?";
}

GroupKind group_kind_from_name(const std::string& name) {
  for (GroupKind k : {GroupKind::Real, GroupKind::Torus, GroupKind::Heisenberg})
    if (name == group_kind_name(k)) return k;
  throw std::invalid_argument("unknown group kind: " + name);
}

GroupSpec make_group(GroupKind kind, int dim) {
  if (kind == GroupKind::Heisenberg && dim != 3)
    throw std::invalid_argument("heisenberg group has dimension 3");
  if (dim < 1) throw std::invalid_argument("group dimension must be >= 1");
  return GroupSpec{kind, dim};
}

GroupElement identity(const GroupSpec& g) { return GroupElement::Zero(g.dim); }

GroupElement reduce(const GroupSpec& g, GroupElement a) {
  require_dim(g, a, "reduce");
  if (g.kind == GroupKind::Torus)
    for (int i = 0; i < a.size(); ++i) a[i] = wrap01(a[i]);
  return a;
}

GroupElement mul(const GroupSpec& g, const GroupElement& a, const GroupElement& b) {
  require_dim(g, a, "mul");
  require_dim(g, b, "mul");
  switch (g.kind) {
    case GroupKind::Real:
      return a + b;
    case GroupKind::Torus:
      return reduce(g, a + b);
    case GroupKind::Heisenberg: {
      GroupElement r(3);
      r << a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1];
      return r;
    }
  }
  throw std::logic_error("unreachable");
}

GroupElement inv(const GroupSpec& g, const GroupElement& a) {
  require_dim(g, a, "inv");
  switch (g.kind) {
    case GroupKind::Real:
      return -a;
    case GroupKind::Torus:
      return reduce(g, -a);
    case GroupKind::Heisenberg: {
      GroupElement r(3);
      r << -a[0], -a[1], a[0] * a[1] - a[2];
      return r;
    }
  }
  throw std::logic_error("unreachable");
}

GroupElement exp_map(const GroupSpec& g, const AlgebraVector& v, double t) {
  require_dim(g, v, "exp_map");
  switch (g.kind) {
    case GroupKind::Real:
      return t * v;
    case GroupKind::Torus:
      return reduce(g, t * v);
    case GroupKind::Heisenberg: {
      GroupElement r(3);
      r << t * v[0], t * v[1], t * v[2] + 0.5 * t * t * v[0] * v[1];
      return r;
    }
  }
  throw std::logic_error("unreachable");
}

AlgebraVector bracket(const GroupSpec& g, const AlgebraVector& v, const AlgebraVector& w) {
  require_dim(g, v, "bracket");
  require_dim(g, w, "bracket");
  AlgebraVector r = AlgebraVector::Zero(g.dim);
  if (g.kind == GroupKind::Heisenberg) r[2] = v[0] * w[1] - v[1] * w[0];
  return r;
}

Eigen::VectorXd chart_displacement(const GroupSpec& g, const GroupElement& a, const GroupElement& b) {
  require_dim(g, a, "chart_displacement");
  require_dim(g, b, "chart_displacement");
  Eigen::VectorXd d = (a - b).cwiseAbs();
  if (g.kind == GroupKind::Torus)
    for (int i = 0; i < d.size(); ++i) d[i] = std::min(d[i], 1.0 - d[i]);
  return d;
}

double chart_distance_inf(const GroupSpec& g, const GroupElement& a, const GroupElement& b) {
  return chart_displacement(g, a, b).maxCoeff();
}

// ---- Grid ------------------------------------------------------------------

int Grid::core_count() const {
  int c = 0;
  for (auto m : core) c += m;
  return c;
}

Eigen::VectorXi Grid::multi(int flat) const {
  Eigen::VectorXi m(npts.size());
  for (int ax = static_cast<int>(npts.size()) - 1; ax >= 0; --ax) {
    m[ax] = flat % npts[ax];
    flat /= npts[ax];
  }
  return m;
}

int Grid::flat(const Eigen::VectorXi& m) const {
  int f = 0;
  for (int ax = 0; ax < npts.size(); ++ax) f = f * npts[ax] + m[ax];
  return f;
}

GroupElement Grid::point(int flat) const {
  Eigen::VectorXi m = multi(flat);
  GroupElement p(npts.size());
  for (int ax = 0; ax < npts.size(); ++ax) p[ax] = origin[ax] + m[ax] * step[ax];
  return p;
}

int Grid::locate(const GroupElement& coords, double tol_frac) const {
  Eigen::VectorXi m(npts.size());
  for (int ax = 0; ax < npts.size(); ++ax) {
    double u = (coords[ax] - origin[ax]) / step[ax];
    double k = std::round(u);
    if (wrap[ax]) {
      double n = static_cast<double>(npts[ax]);
      k -= n * std::floor(k / n);
      u -= n * std::floor(u / n);
      // off-lattice fraction measured on the wrapped axis
      double frac = std::abs(u - k);
      frac = std::min(frac, n - frac);
      if (frac > tol_frac) return -1;
      if (k >= n) k = 0.0;
    } else {
      if (std::abs(u - k) > tol_frac) return -1;
      if (k < 0 || k >= npts[ax]) return -1;
    }
    m[ax] = static_cast<int>(k);
  }
  return flat(m);
}

std::shared_ptr<const Grid> sample_window(const GroupSpec& g, const WindowSpec& w) {
  const int dim = g.dim;
  if (w.lo.size() != dim || w.hi.size() != dim || w.resolution.size() != dim)
    throw std::invalid_argument("sample_window: bounds/resolution dimension mismatch");
  if (w.padding_radius < 0) throw std::invalid_argument("sample_window: negative padding");

  auto grid = std::make_shared<Grid>();
  grid->group = g;
  grid->npts.resize(dim);
  grid->origin.resize(dim);
  grid->step.resize(dim);
  grid->pad.resize(dim);
  grid->wrap.resize(dim);

  std::size_t total = 1;
  for (int ax = 0; ax < dim; ++ax) {
    int res = w.resolution[ax];
    if (res < 2) throw std::invalid_argument("sample_window: resolution must be >= 2 per axis");
    bool wrapax = (g.kind == GroupKind::Torus);
    grid->wrap[ax] = wrapax;
    if (wrapax) {
      // full period, no duplicate at the seam, wraparound instead of padding
      if (std::abs(w.lo[ax]) > 1e-12 || std::abs(w.hi[ax] - 1.0) > 1e-12)
        throw std::invalid_argument("sample_window: torus axes take the full period [0,1)");
      grid->step[ax] = 1.0 / res;
      grid->origin[ax] = 0.0;
      grid->pad[ax] = 0;
      grid->npts[ax] = res;
    } else {
      if (!(w.hi[ax] > w.lo[ax]))
        throw std::invalid_argument("sample_window: need hi > lo per axis");
      double step = (w.hi[ax] - w.lo[ax]) / (res - 1);
      int pad = (w.padding_radius > 0)
                    ? static_cast<int>(std::ceil(w.padding_radius / step - 1e-12))
                    : 0;
      grid->step[ax] = step;
      grid->pad[ax] = pad;
      grid->origin[ax] = w.lo[ax] - pad * step;
      grid->npts[ax] = res + 2 * pad;
    }
    total *= static_cast<std::size_t>(grid->npts[ax]);
    if (total > w.point_cap)
      throw std::invalid_argument("sample_window: padded grid exceeds the point cap (" +
                                  std::to_string(w.point_cap) + ")");
  }

  grid->core.assign(total, 1);
  for (std::size_t f = 0; f < total; ++f) {
    Eigen::VectorXi m = grid->multi(static_cast<int>(f));
    for (int ax = 0; ax < dim; ++ax) {
      int lo = grid->pad[ax], hi = grid->pad[ax] + w.resolution[ax];
      if (m[ax] < lo || m[ax] >= hi) { grid->core[f] = 0; break; }
    }
  }
  return grid;
}

}  // namespace hausflow
