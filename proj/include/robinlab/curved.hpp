#pragma once

#include <optional>
#include <vector>

#include "robinlab/degennes.hpp"

// Weighted one-dimensional model on [0, h^(delta-1/2)] (scaled normal
// variable) with weight 1 - beta h^(1/2) tau, Dirichlet condition at the far
// end and Robin term h^(alpha-1/2) eta |u(0)|^2.

namespace robinlab::curved {

struct WeightedModelSpec {
  double h = 1e-3;
  double beta = 0.0;
  double xi = 0.0;
  double alpha = 1.0;
  double eta = 0.0;
  double delta = 0.45;

  double eta_tilde() const;
  double length() const;  // h^(delta - 1/2)
};

/// DomainError unless |beta| h^delta < 1/3; ConfigurationError for delta
/// outside (1/4, 1/2).
void validate(const WeightedModelSpec& spec);

/// Lumped P1 discretization on n cells. beta = 0 gives exactly the model1d
/// pencil on the grid of the same length.
Pencil discretize(const WeightedModelSpec& spec, int n);

struct WeightedOptions {
  double tol = 1e-9;
  int n0 = 512;
  int max_doublings = 6;
};

double weighted_mu(const WeightedModelSpec& spec, int j, const WeightedOptions& options = {});

/// Theta(eta~) + d2 (xi - xi(eta~))^2 - d3 beta h^(1/2).
struct Expansion {
  double residual = 0.0;
  double model_value = 0.0;
  double mu = 0.0;
  double theta = 0.0;    // Theta(eta~)
  double xi_star = 0.0;  // xi(eta~)
  double d2 = 0.0;
  double d3 = 0.0;
};

Expansion expansion_residual(const WeightedModelSpec& spec, const WeightedOptions& options = {});

struct LTildeSpec {
  double h = 1e-3;
  double beta = 0.0;
  double S = 2.0 * 3.14159265358979323846;
  double alpha = 1.0;
  double eta = 0.0;
  double lambda = 0.6;
  double delta = 0.45;
  double rho = 0.18;
  /// Constant of the regime |lambda - Theta(eta~)| < zeta0 h^(2 rho). The
  /// paper leaves it unquantified.
  double zeta0 = 1.0;
  /// Evaluate even when the regime inequality fails.
  bool override_regime = false;
};

struct LTildeCount {
  long count = 0;
  double leading = 0.0;
  long n_min = 0, n_max = -1;  // counted Fourier modes
  long scanned_min = 0, scanned_max = -1;
  double theta = 0.0;  // Theta(eta~)
  double d2 = 0.0, d3 = 0.0;
  bool regime_ok = true;
  /// Largest mu_2 - lambda over counted modes is positive, i.e. no second
  /// eigenvalue of a counted mode falls below lambda.
  bool second_band_clear = true;
};

/// h^(-1/4) S / (pi sqrt(d2)) sqrt((d3 beta + h^(-1/2)[lambda - Theta(eta~)])_+).
double conc_n_leading(const LTildeSpec& spec);

/// Counts Fourier modes n with mu_1(H at xi_n = 2 pi n h^(1/2)/S) <= lambda,
/// scanning outward from xi(eta~) until three consecutive modes on each side
/// exceed lambda with increasing values.
LTildeCount ltilde_count(const LTildeSpec& spec, const WeightedOptions& options = {});

}  // namespace robinlab::curved
