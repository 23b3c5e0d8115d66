#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace hausflow {

// Concrete group models. Elements live in a canonical chart:
//   Real       - the vector itself
//   Torus      - representative in [0,1)^n, reduced after every operation
//   Heisenberg - (x, y, z) of the upper-triangular unipotent 3x3 matrix
enum class GroupKind { Real, Torus, Heisenberg };

struct GroupSpec {
  GroupKind kind = GroupKind::Real;
  int dim = 1;  // Heisenberg is always 3

  bool operator==(const GroupSpec&) const = default;
};

// Chart coordinates of a group element / components of a Lie algebra vector
// in the fixed canonical basis.
using GroupElement = Eigen::VectorXd;
using AlgebraVector = Eigen::VectorXd;

const char* group_kind_name(GroupKind k);
GroupKind group_kind_from_name(const std::string& name);
GroupSpec make_group(GroupKind kind, int dim);

GroupElement identity(const GroupSpec& g);

// Torus coordinates reduced to [0,1)^n; other models unchanged.
GroupElement reduce(const GroupSpec& g, GroupElement a);

GroupElement mul(const GroupSpec& g, const GroupElement& a, const GroupElement& b);
GroupElement inv(const GroupSpec& g, const GroupElement& a);

// exp(t v) in the chart. Closed form in all three models (the Heisenberg
// nilpotent series terminates at second order).
GroupElement exp_map(const GroupSpec& g, const AlgebraVector& v, double t = 1.0);

AlgebraVector bracket(const GroupSpec& g, const AlgebraVector& v, const AlgebraVector& w);

// Per-axis chart displacement |a - b|, wrap-aware on torus axes.
Eigen::VectorXd chart_displacement(const GroupSpec& g, const GroupElement& a, const GroupElement& b);

// max over axes of chart_displacement (Chebyshev); the dedup and reach
// measurements all use this.
double chart_distance_inf(const GroupSpec& g, const GroupElement& a, const GroupElement& b);

// ---- window sampling -----------------------------------------------------

struct WindowSpec {
  Eigen::VectorXd lo, hi;      // per-axis chart bounds; torus axes use the full period [0,1)
  Eigen::VectorXi resolution;  // core points per axis (>= 2; torus: points around the period)
  double padding_radius = 0.0; // chart distance added on each side of every non-wrapping axis
  std::size_t point_cap = (std::size_t{1} << 21);
};

// Deterministic row-major grid over the padded window (last axis fastest).
// Real axes place `resolution` points inclusively on [lo, hi] and extend by
// whole steps until the padding radius is covered; torus axes place
// k/resolution, k = 0..resolution-1, wrap, and take no padding.
struct Grid {
  GroupSpec group;
  Eigen::VectorXi npts;        // padded points per axis
  Eigen::VectorXd origin;      // chart coordinate of index 0 per axis
  Eigen::VectorXd step;        // per-axis spacing
  Eigen::VectorXi pad;         // pad points per side (0 on wrap axes)
  std::vector<bool> wrap;      // per-axis wraparound flag
  std::vector<std::uint8_t> core;  // flat row-major core mask

  int total() const { return static_cast<int>(core.size()); }
  int core_count() const;

  Eigen::VectorXi multi(int flat) const;
  int flat(const Eigen::VectorXi& m) const;
  GroupElement point(int flat) const;

  // Nearest lattice index of chart coords, or -1 when any axis is off the
  // lattice by more than tol_frac*step or outside the padded bounds.
  int locate(const GroupElement& coords, double tol_frac = 1e-6) const;

  double min_step() const { return step.minCoeff(); }
  double max_step() const { return step.maxCoeff(); }
};

std::shared_ptr<const Grid> sample_window(const GroupSpec& g, const WindowSpec& w);

}  // namespace hausflow
