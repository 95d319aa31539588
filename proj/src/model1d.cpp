#include "robinlab/model1d.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "robinlab/errors.hpp"

namespace robinlab::model1d {

double default_t_max(const RobinSpec& spec) { return std::max(spec.xi, 0.0) + 12.0; }

Grid1D default_grid(const RobinSpec& spec, int n) { return {default_t_max(spec), n}; }

void check_pairing(const RobinSpec& spec, const Grid1D& grid) {
  if (!std::isfinite(spec.gamma_eff) || !std::isfinite(spec.xi)) {
    throw ConfigurationError("gamma_eff and xi must be finite");
  }
  if (grid.n < 64) throw ConfigurationError("grid needs at least 64 nodes");
  if (!(grid.t_max > spec.xi + 8.0)) {
    throw ConfigurationError("truncation length must exceed xi + 8 (t_max=" + std::to_string(grid.t_max) +
                             ", xi=" + std::to_string(spec.xi) + ")");
  }
}

Pencil discretize(const RobinSpec& spec, const Grid1D& grid) {
  check_pairing(spec, grid);
  const double d = grid.spacing();
  const int n = grid.n;
  auto v = [&](int i) {
    const double s = i * d - spec.xi;
    return s * s;
  };

  Pencil p;
  if (spec.bc_left == BoundaryKind::Robin) {
    // Unknowns at t_0 .. t_{n-1}; t_0 carries half a cell.
    p.edge.assign(n - 1, 1.0 / d);
    p.potential.resize(n);
    p.mass.resize(n);
    for (int i = 0; i < n; ++i) {
      const double w = (i == 0) ? 0.5 * d : d;
      p.potential[i] = v(i) * w;
      p.mass[i] = w;
    }
    p.potential[0] += spec.gamma_eff;
  } else {
    // Unknowns at t_1 .. t_{n-1}.
    p.edge.assign(n - 2, 1.0 / d);
    p.edge_left = 1.0 / d;
    p.potential.resize(n - 1);
    p.mass.assign(n - 1, d);
    for (int i = 1; i < n; ++i) p.potential[i - 1] = v(i) * d;
  }
  p.edge_right = 1.0 / d;
  return p;
}

int eig_count_below(const RobinSpec& spec, const Grid1D& grid, double lambda) {
  return count_below(discretize(spec, grid), lambda);
}

namespace {

struct Level {
  std::vector<double> mus;
  std::vector<double> traces;
};

Level solve_level(const RobinSpec& spec, int k, const Grid1D& grid, const std::vector<double>* hint) {
  const Pencil p = discretize(spec, grid);
  Level out;
  std::vector<std::vector<double>> vectors;
  for (int j = 1; j <= k; ++j) {
    EigenOptions opts;
    if (hint && static_cast<int>(hint->size()) >= j) {
      const double g = (*hint)[j - 1];
      const double w = 1e-2 * std::max(1.0, std::abs(g));
      opts.guess = std::make_pair(g - w, g + w);
    }
    Eigenpair ep = eigenpair(p, j, opts, vectors);
    out.mus.push_back(ep.value);
    out.traces.push_back(spec.bc_left == BoundaryKind::Robin ? ep.vector[0] * ep.vector[0] : 0.0);
    vectors.push_back(std::move(ep.vector));
  }
  return out;
}

int initial_nodes(const RobinSpec& spec, int n0) {
  return (spec.bc_left == BoundaryKind::Robin && spec.gamma_eff < kStrongRobin) ? 4 * n0 : n0;
}

// Runs levels n0, 2 n0, ...; returns the point and whether it converged.
bool refine(const RobinSpec& spec, int k, const SolveOptions& options, double t_max, RobinBandPoint& out) {
  std::vector<RichardsonTable> mu_tab(k), tr_tab(k);
  const int n0 = initial_nodes(spec, options.n0);
  std::vector<double> hint;
  double change = 0.0;
  bool converged = false;
  const double trace_tol = std::max(options.tol, kTraceFloor);
  for (int level = 0; level <= options.max_doublings; ++level) {
    const Grid1D grid{t_max, n0 << level};
    Level lv = solve_level(spec, k, grid, hint.empty() ? nullptr : &hint);
    change = 0.0;
    bool traces_ok = true;
    for (int j = 0; j < k; ++j) {
      mu_tab[j].push(lv.mus[j]);
      tr_tab[j].push(lv.traces[j]);
      change = std::max(change, mu_tab[j].change());
      if (options.traces && spec.bc_left == BoundaryKind::Robin) {
        traces_ok = traces_ok && tr_tab[j].change() < 0.5 * trace_tol;
      }
    }
    hint = lv.mus;
    out.n = grid.n;
    out.extrapolation_order = 2 * level + 2;
    converged = level > 0 && change < 0.5 * options.tol && traces_ok;
    if (converged) break;
  }
  out.spec = spec;
  out.t_max = t_max;
  out.tol = change;
  out.mus.clear();
  out.boundary_sq.clear();
  for (int j = 0; j < k; ++j) {
    out.mus.push_back(mu_tab[j].best());
    out.boundary_sq.push_back(spec.bc_left == BoundaryKind::Robin ? std::max(0.0, tr_tab[j].best()) : 0.0);
  }
  out.flagged = spec.bc_left == BoundaryKind::Robin && spec.gamma_eff < kStrongRobin;
  return converged;
}

void check_order(const RobinBandPoint& bp) {
  for (std::size_t j = 1; j < bp.mus.size(); ++j) {
    if (!(bp.mus[j] > bp.mus[j - 1])) throw AccuracyError("computed eigenvalues not strictly increasing", bp.mus[j], bp.tol);
  }
}

}  // namespace

RobinBandPoint band_point(const RobinSpec& spec, int k, const SolveOptions& options) {
  if (k < 1) throw ConfigurationError("need at least one eigenvalue");
  if (!(options.tol > 0.0)) throw ConfigurationError("tolerance must be positive");
  double t_max = options.t_max.value_or(default_t_max(spec));
  RobinBandPoint bp;
  if (refine(spec, k, options, t_max, bp)) {
    check_order(bp);
    return bp;
  }
  if (!options.t_max) {
    t_max = 2.0 * t_max;
    if (refine(spec, k, options, t_max, bp)) {
      check_order(bp);
      return bp;
    }
  }
  throw AccuracyError("grid refinement budget exhausted", bp.mus.back(), bp.tol);
}

RobinBandPoint solve_fixed(const RobinSpec& spec, int k, const FixedPlan& plan) {
  if (k < 1 || plan.levels < 1) throw ConfigurationError("fixed plan needs k >= 1 and levels >= 1");
  SolveOptions opts;
  opts.n0 = plan.n0;
  opts.max_doublings = plan.levels - 1;
  opts.tol = 0.0;  // never converges early
  opts.t_max = plan.t_max;
  RobinBandPoint bp;
  refine(spec, k, opts, plan.t_max.value_or(default_t_max(spec)), bp);
  return bp;
}

FixedPlan plan_for(const RobinSpec& spec, int k, double tol, std::optional<double> t_max, bool traces) {
  SolveOptions opts;
  opts.tol = tol;
  opts.t_max = t_max;
  opts.traces = traces;
  const RobinBandPoint bp = band_point(spec, k, opts);
  int levels = 1;
  for (int n = bp.n; n > initial_nodes(spec, opts.n0); n /= 2) ++levels;
  return FixedPlan{opts.n0, std::max(levels, 2), t_max};
}

double mu(int j, const RobinSpec& spec, double tol) {
  if (j < 1) throw ConfigurationError("band index starts at 1");
  SolveOptions opts;
  opts.tol = tol;
  opts.traces = false;
  return band_point(spec, j, opts).mus[j - 1];
}

double mu_dirichlet(int j, double xi, double tol) { return mu(j, RobinSpec::dirichlet(xi), tol); }

double boundary_trace_sq(int j, const RobinSpec& spec, double tol) {
  if (spec.bc_left != BoundaryKind::Robin) {
    throw ConfigurationError("boundary trace requires the Robin condition");
  }
  if (j < 1) throw ConfigurationError("band index starts at 1");
  SolveOptions opts;
  opts.tol = tol;
  return band_point(spec, j, opts).boundary_sq[j - 1];
}

}  // namespace robinlab::model1d
