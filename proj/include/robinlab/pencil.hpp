#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace robinlab {

/// Generalized symmetric tridiagonal eigenproblem K x = lambda M x with M
/// diagonal and positive.
///
/// K is stored as the quadratic form it discretizes,
///
///   x^T K x = sum_k edge[k] (x[k+1] - x[k])^2
///           + edge_left x[0]^2 + edge_right x[N-1]^2
///           + sum_i potential[i] x[i]^2,
///
/// so energies (Rayleigh quotients) are evaluated without the cancellation a
/// plain x^T K x would suffer on fine grids. edge_left / edge_right couple the
/// end unknowns to eliminated Dirichlet nodes.
struct Pencil {
  std::vector<double> edge;       // N - 1 couplings
  double edge_left = 0.0;
  double edge_right = 0.0;
  std::vector<double> potential;  // N, includes Robin boundary terms
  std::vector<double> mass;       // N, strictly positive

  std::size_t size() const noexcept { return mass.size(); }
  double diagonal(std::size_t i) const noexcept;
  double offdiagonal(std::size_t i) const noexcept { return -edge[i]; }
};

/// Number of eigenvalues strictly below lambda (Sylvester inertia of
/// K - lambda M via the LDL^T pivot recurrence).
int count_below(const Pencil& pencil, double lambda);

/// Gershgorin enclosure of the spectrum of M^{-1/2} K M^{-1/2}.
std::pair<double, double> spectral_bounds(const Pencil& pencil);

double energy(const Pencil& pencil, std::span<const double> x);
double mass_norm_sq(const Pencil& pencil, std::span<const double> x);

/// Solves (K - shift M) x = rhs by Gaussian elimination with partial
/// pivoting. Exactly singular pivots are perturbed, which is what inverse
/// iteration wants.
std::vector<double> solve_shifted(const Pencil& pencil, double shift, std::span<const double> rhs);

struct Eigenpair {
  double value = 0.0;
  std::vector<double> vector;  // M-normalized, first nonzero component positive
};

struct EigenOptions {
  /// Optional guess (lo, hi) for the index-th eigenvalue; verified by counts
  /// and widened as needed.
  std::optional<std::pair<double, double>> guess;
  /// Bisection stops at this width relative to max(1, |lambda|).
  double relative_width = 1e-10;
  int inverse_steps = 3;
};

/// index-th eigenvalue (1-based) by Sturm bisection.
double eigenvalue(const Pencil& pencil, int index, const EigenOptions& options = {});

/// index-th eigenpair: bisection, inverse iteration with one M-orthogonal
/// sweep against `lower` (already computed eigenvectors), and a final
/// Rayleigh quotient.
Eigenpair eigenpair(const Pencil& pencil, int index, const EigenOptions& options = {},
                    std::span<const std::vector<double>> lower = {});

/// Romberg-style table for quantities with an error expansion in even
/// powers of the grid spacing, fed with values on successively halved grids.
class RichardsonTable {
 public:
  void push(double value);
  std::size_t levels() const noexcept { return rows_.size(); }
  double best() const;
  /// |T[k][k] - T[k-1][k-1]|; infinity with fewer than two levels.
  double change() const;
  double raw(std::size_t level) const { return rows_.at(level).front(); }

 private:
  std::vector<std::vector<double>> rows_;
};

struct ConvergedEigenvalues {
  std::vector<double> values;  // extrapolated, ascending
  int finest_n = 0;
  double change = 0.0;         // last extrapolant change
  bool converged = false;
};

/// Lowest k eigenvalues of the pencils build(n0), build(2 n0), ...,
/// extrapolated until two successive extrapolants differ by less than tol/2.
/// Does not throw on non-convergence; callers inspect `converged`.
ConvergedEigenvalues converge_eigenvalues(const std::function<Pencil(int)>& build, int k, int n0,
                                          int max_doublings, double tol);

}  // namespace robinlab
