#pragma once

#include <optional>
#include <vector>

#include "robinlab/pencil.hpp"

// Half-line oscillator -d^2/dt^2 + (t - xi)^2 on t > 0 with either the Robin
// condition u'(0) = gamma_eff u(0) or a Dirichlet condition at the origin.

namespace robinlab::model1d {

enum class BoundaryKind { Robin, Dirichlet };

struct RobinSpec {
  double gamma_eff = 0.0;
  double xi = 0.0;
  BoundaryKind bc_left = BoundaryKind::Robin;

  static RobinSpec robin(double gamma_eff, double xi) { return {gamma_eff, xi, BoundaryKind::Robin}; }
  static RobinSpec dirichlet(double xi) { return {0.0, xi, BoundaryKind::Dirichlet}; }
};

/// Uniform grid t_i = i * t_max / n, i = 0..n, with u(t_max) = 0.
struct Grid1D {
  double t_max = 12.0;
  int n = 512;
  double spacing() const noexcept { return t_max / n; }
};

double default_t_max(const RobinSpec& spec);
Grid1D default_grid(const RobinSpec& spec, int n = 512);

/// Throws ConfigurationError unless n >= 64 and t_max > xi + 8.
void check_pairing(const RobinSpec& spec, const Grid1D& grid);

/// Lumped P1 (equivalently ghost-node central difference) discretization.
Pencil discretize(const RobinSpec& spec, const Grid1D& grid);

/// Eigenvalues of the discretized operator strictly below lambda.
int eig_count_below(const RobinSpec& spec, const Grid1D& grid, double lambda);

struct SolveOptions {
  double tol = 1e-9;
  int n0 = 512;
  int max_doublings = 6;
  /// Overrides the default truncation length.
  std::optional<double> t_max;
  /// Include the boundary traces in the convergence test. Traces are
  /// tested against max(tol, kTraceFloor): the eigenvector entries carry
  /// roundoff near 1e-11 on the finest grids.
  bool traces = true;
};

inline constexpr double kTraceFloor = 1e-9;

/// Grid plan with a fixed number of levels and no stopping test. Values are
/// then smooth functions of (gamma_eff, xi), which is what minimizers and
/// finite differences need.
struct FixedPlan {
  int n0 = 512;
  int levels = 4;
  std::optional<double> t_max;
};

struct RobinBandPoint {
  RobinSpec spec;
  std::vector<double> mus;
  std::vector<double> boundary_sq;
  int n = 0;  // finest grid used
  double t_max = 0.0;
  int extrapolation_order = 0;
  double tol = 0.0;  // achieved (last extrapolant change)
  bool flagged = false;  // strongly attractive Robin condition
};

/// First k eigenvalues and traces, refined until converged.
RobinBandPoint band_point(const RobinSpec& spec, int k, const SolveOptions& options = {});
RobinBandPoint solve_fixed(const RobinSpec& spec, int k, const FixedPlan& plan);

/// Fixed plan with as many levels as an adaptive solve at `spec` needed.
FixedPlan plan_for(const RobinSpec& spec, int k, double tol, std::optional<double> t_max = {}, bool traces = true);

double mu(int j, const RobinSpec& spec, double tol = 1e-9);
double mu_dirichlet(int j, double xi, double tol = 1e-9);
double boundary_trace_sq(int j, const RobinSpec& spec, double tol = 1e-9);

/// Robin coefficients below this are accepted but refined more aggressively.
inline constexpr double kStrongRobin = -10.0;

}  // namespace robinlab::model1d
