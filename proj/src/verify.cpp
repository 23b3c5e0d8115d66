#include "hausflow/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace hausflow {

namespace {

std::string fmt(double x) {
  std::ostringstream ss;
  ss.precision(6);
  ss << x;
  return ss.str();
}

struct TriangleScan {
  double worst = 0.0;  // max of d(i,j) - d(i,k) - d(k,j)
  int i = -1, j = -1, k = -1;
  long long checked = 0;
};

void scan_triple(const Eigen::MatrixXd& A, int i, int j, int k, TriangleScan& scan) {
  double rhs = A(i, k) + A(k, j);
  if (!std::isfinite(rhs)) return;
  double defect = A(i, j) - rhs;
  ++scan.checked;
  if (defect > scan.worst) {
    scan.worst = defect;
    scan.i = i;
    scan.j = j;
    scan.k = k;
  }
}

}  // namespace

PropertyResult metric_axioms(const MetricField& field, std::uint64_t seed, int sample_triples) {
  const Eigen::MatrixXd& A = field.values;
  const int n = static_cast<int>(A.rows());
  PropertyResult res;
  res.name = "metric_axioms";

  double asym = 0.0;
  int ai = -1, aj = -1;
  double diag = 0.0;
  double min_off = kInf;
  int pi = -1, pj = -1;
  for (int i = 0; i < n; ++i) {
    diag = std::max(diag, std::abs(A(i, i)));
    for (int j = i + 1; j < n; ++j) {
      double a = A(i, j), b = A(j, i);
      double d = (std::isinf(a) && std::isinf(b)) ? 0.0 : std::abs(a - b);
      if (d > asym || std::isnan(d)) {
        asym = std::isnan(d) ? kInf : d;
        ai = i;
        aj = j;
      }
      if (a < min_off) {
        min_off = a;
        pi = i;
        pj = j;
      }
    }
  }

  TriangleScan scan;
  if (n <= 500) {
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) {
        if (i == k) continue;
        for (int j = i + 1; j < n; ++j) {
          if (j == k) continue;
          scan_triple(A, i, j, k, scan);
        }
      }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int s = 0; s < sample_triples; ++s) {
      int i = pick(rng), j = pick(rng), k = pick(rng);
      if (i == j || j == k || i == k) continue;
      scan_triple(A, i, j, k, scan);
    }
  }

  const double tol = 1e-9;
  bool sym_ok = asym <= tol;
  bool diag_ok = diag <= 1e-12;
  bool pos_ok = n < 2 || min_off > 0.0;
  bool tri_ok = scan.worst <= tol;
  res.passed = sym_ok && diag_ok && pos_ok && tri_ok;

  std::ostringstream ss;
  ss << "asymmetry " << fmt(asym);
  if (!sym_ok) ss << " at (" << ai << "," << aj << ")";
  ss << "; diagonal " << fmt(diag) << "; min offdiag " << fmt(min_off);
  if (!pos_ok) ss << " at (" << pi << "," << pj << ")";
  ss << "; triangle defect " << fmt(scan.worst);
  if (!tri_ok) ss << " at (" << scan.i << "," << scan.j << ") via " << scan.k;
  ss << " over " << scan.checked << " triples";
  res.details = ss.str();
  return res;
}

VerifyRun run_property_suite(const ResolvedExperiment& exp, int threads) {
  VerifyRun run;
  FlowParams fp = exp.flow;
  fp.retain_iterates = true;

  bool flow_failed = false;
  std::string flow_error;
  try {
    run.flow = run_flow(exp.base, exp.generators, exp.grid, exp.adjacency, fp, threads);
  } catch (const MonotonicityError& e) {
    flow_failed = true;
    flow_error = e.what();
  }
  const bool have_final = !flow_failed && !run.flow.iterates.empty();
  const bool converged = have_final && run.flow.verdict == FlowVerdict::Converged;
  const Grid& grid = *exp.grid;
  const double h = grid.max_step();
  const int n = grid.total();

  {
    PropertyResult p;
    if (have_final) {
      p = metric_axioms(run.flow.iterates.back(), exp.seed);
      p.name = "metric_axioms_final";
    } else {
      p.name = "metric_axioms_final";
      p.skipped = true;
      p.details = "no final field: " + flow_error;
    }
    run.properties.push_back(std::move(p));
  }

  {
    PropertyResult p;
    p.name = "flow_monotone";
    if (flow_failed) {
      p.details = flow_error;
    } else {
      double worst = 0.0;
      for (std::size_t s = 1; s < run.flow.min_signed_deltas.size(); ++s)
        worst = std::min(worst, run.flow.min_signed_deltas[s]);
      p.passed = worst >= -exp.flow.monotone_slack;
      std::ostringstream ss;
      ss << "min signed delta " << fmt(worst) << " from the first induced iterate on";
      if (!run.flow.min_signed_deltas.empty())
        ss << "; base step " << fmt(run.flow.min_signed_deltas.front()) << " (unconstrained)";
      p.details = ss.str();
    }
    run.properties.push_back(std::move(p));
  }

  {
    PropertyResult p;
    p.name = "envelope_upper_bound";
    if (!have_final) {
      p.skipped = true;
      p.details = "no iterates";
    } else {
      try {
        MetricField env = right_invariant_envelope(exp.base, exp.grid, exp.adjacency, threads);
        double worst = -kInf;
        int wi = -1, wj = -1;
        for (const auto& it : run.flow.iterates)
          for (int i = 0; i < n; ++i) {
            if (!grid.core[i]) continue;
            for (int j = i + 1; j < n; ++j) {
              if (!grid.core[j]) continue;
              double a = it.values(i, j), b = env.values(i, j);
              if (std::isinf(a) && std::isinf(b)) continue;
              double excess = a - b;
              if (excess > worst) {
                worst = excess;
                wi = i;
                wj = j;
              }
            }
          }
        p.passed = worst <= 2.0 * h + 1e-12;
        std::ostringstream ss;
        ss << "worst core excess over the envelope " << fmt(worst) << " (bound " << fmt(2.0 * h)
           << ") at (" << wi << "," << wj << ") across " << run.flow.iterates.size()
           << " iterates";
        p.details = ss.str();
      } catch (const EnvelopeInfiniteError& e) {
        p.passed = true;
        p.details = std::string("envelope infinite, finite iterates trivially below: ") + e.what();
      }
    }
    run.properties.push_back(std::move(p));
  }

  {
    PropertyResult p;
    p.name = "epsilon_midpoints";
    if (!converged) {
      p.skipped = true;
      p.details = "flow not converged";
    } else {
      const Eigen::MatrixXd& D = run.flow.iterates.back().values;
      std::vector<int> core;
      for (int i = 0; i < n; ++i)
        if (grid.core[i]) core.push_back(i);
      std::mt19937_64 rng(exp.seed);
      std::uniform_int_distribution<int> pick(0, static_cast<int>(core.size()) - 1);
      // the achievable midpoint gap scales with the metric mesh, not the chart step
      double mesh = 0.0;
      for (const auto& ed : stencil_edges(grid, AdjacencySpec{1}))
        if (grid.core[ed.first] && grid.core[ed.second])
          mesh = std::max(mesh, D(ed.first, ed.second));
      const double eps = exp.verify.epsilon_factor * mesh;
      double worst = -kInf;
      int failures = 0;
      for (int s = 0; s < exp.verify.pairs; ++s) {
        int i = core[pick(rng)], j = core[pick(rng)];
        if (i == j) continue;
        double best = kInf;
        for (int m = 0; m < n; ++m)
          best = std::min(best, std::max(D(i, m), D(m, j)));
        double excess = best - D(i, j) / 2.0;
        worst = std::max(worst, excess);
        if (excess > eps) ++failures;
      }
      p.passed = failures == 0;
      p.details = "worst midpoint excess " + fmt(worst) + " vs epsilon " + fmt(eps) + ", " +
                  std::to_string(failures) + " failures";
    }
    run.properties.push_back(std::move(p));
  }

  {
    PropertyResult p;
    p.name = "right_invariance_limit";
    if (!converged) {
      p.skipped = true;
      p.details = "flow not converged";
    } else {
      // grid-aligned translations with chart coordinates in [-1, 1]
      std::vector<GroupElement> sigma;
      std::vector<int> reps(grid.group.dim);
      for (int ax = 0; ax < grid.group.dim; ++ax) {
        int k = grid.wrap[ax] ? grid.npts[ax] - 1
                              : static_cast<int>(std::floor(1.0 / grid.step[ax]));
        reps[ax] = grid.wrap[ax] ? k : 2 * k;  // wrap axes cover the period once
      }
      long long count = 1;
      for (int ax = 0; ax < grid.group.dim; ++ax) count *= reps[ax] + 1;
      long long stride = count > 256 ? (count + 255) / 256 : 1;
      Eigen::VectorXi m = Eigen::VectorXi::Zero(grid.group.dim);
      for (long long idx = 0; idx < count; ++idx) {
        if (idx % stride == 0) {
          GroupElement s(grid.group.dim);
          for (int ax = 0; ax < grid.group.dim; ++ax) {
            double lo = grid.wrap[ax] ? 0.0 : -std::floor(1.0 / grid.step[ax]) * grid.step[ax];
            s[ax] = lo + m[ax] * grid.step[ax];
          }
          sigma.push_back(reduce(grid.group, s));
        }
        for (int ax = grid.group.dim - 1; ax >= 0; --ax) {
          if (++m[ax] <= reps[ax]) break;
          m[ax] = 0;
        }
      }
      InvarianceDefect def = right_invariance_defect(run.flow.iterates.back(), sigma, 0.05);
      p.passed = def.max_excess <= 2.0 * h + 1e-12;
      std::ostringstream ss;
      ss << "max defect " << fmt(def.max_abs) << ", excess over 5% relative " << fmt(def.max_excess)
         << " (bound " << fmt(2.0 * h) << ") over " << def.triples << " triples, "
         << sigma.size() << " translations";
      p.details = ss.str();
    }
    run.properties.push_back(std::move(p));
  }

  {
    PropertyResult p;
    p.name = "finsler_norms";
    std::vector<GroupElement> sigma;
    sigma.reserve(n);
    for (int i = 0; i < n; ++i) sigma.push_back(grid.point(i));
    WordCloud cloud = generate_words(exp.generators, exp.finsler.word_maxlen, exp.window);
    sigma.insert(sigma.end(), cloud.points.begin(), cloud.points.end());

    double window_scale = 1.0;
    for (int ax = 0; ax < grid.group.dim; ++ax)
      if (!grid.wrap[ax]) window_scale = std::max(window_scale, exp.window.hi[ax] - exp.window.lo[ax]);
    std::vector<double> schedule = default_t_schedule(window_scale, exp.finsler.t_levels);
    FinslerParams params;
    params.divergence_scale = lipschitz_scale_estimate(exp.base, exp.window);
    params.both_signs = exp.finsler.both_signs;

    GroupElement e = identity(grid.group);
    std::vector<NormEntry> table;
    double worst_sym = 0.0;
    bool sym_mismatch = false;
    for (const auto& v : exp.finsler.directions) {
      FinslerEstimate pos = finsler_estimate(e, v, exp.base, schedule, sigma, params);
      FinslerEstimate neg = finsler_estimate(e, AlgebraVector(-v), exp.base, schedule, sigma, params);
      table.push_back({v, pos});
      AlgebraVector two = 2.0 * v;
      table.push_back({two, finsler_estimate(e, two, exp.base, schedule, sigma, params)});
      if (pos.diverged != neg.diverged) sym_mismatch = true;
      else if (!pos.diverged)
        worst_sym = std::max(worst_sym, std::abs(pos.value - neg.value) / std::max(1.0, pos.value));
    }
    double homog = homogeneity_defect(table);
    int diverged = 0;
    for (const auto& entry : table) diverged += entry.estimate.diverged ? 1 : 0;
    p.passed = !sym_mismatch && worst_sym <= 1e-3 && homog <= 0.02;
    std::ostringstream ss;
    ss << "symmetry defect " << fmt(worst_sym) << (sym_mismatch ? " (sign mismatch)" : "")
       << "; homogeneity defect " << fmt(homog) << "; " << diverged << "/" << table.size()
       << " diverged; sigma " << sigma.size();
    p.details = ss.str();
    run.properties.push_back(std::move(p));
  }

  run.all_passed = true;
  for (const auto& p : run.properties)
    if (!p.passed && !p.skipped) run.all_passed = false;
  return run;
}

}  // namespace hausflow
