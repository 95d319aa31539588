#pragma once

#include <optional>

#include "robinlab/degennes.hpp"

// Sublevel sets {xi : mu_j(gamma, xi) < b} and their summed measure.

namespace robinlab::levelsets {

struct LevelSetInterval {
  int j = 1;
  double gamma = 0.0;
  double b = 0.0;
  double xi_minus = 0.0;
  double xi_plus = 0.0;
  double measure = 0.0;
  bool empty = true;
  /// b within tol of the band minimum; the interval is then degenerate or
  /// nearly so and counting consumers should decide openness themselves.
  bool boundary = false;
  double band_min = 0.0;  // Theta_j(gamma)
  double band_min_xi = 0.0;
  double ceiling = 0.0;   // mu_j far to the right
};

/// mu_j(gamma, xi) for xi far to the right of the well, i.e. the numerical
/// band limit used as ceiling for thresholds.
double band_ceiling(int j, double gamma);

/// Roots of mu_j(gamma, .) = b on both sides of the band minimum. A known
/// band minimum can be passed to skip its computation.
LevelSetInterval xi_pm(int j, double gamma, double b, double tol = 1e-8,
                       std::optional<degennes::BandMinimum> known_min = {});

struct SSum {
  double value = 0.0;
  int j_cutoff = 1;  // first band whose infimum is >= b
};

inline constexpr int kMaxBands = 64;

/// Sum over j of |{xi : mu_j(gamma, xi) < b}|, truncated at the first j with
/// Theta_j(gamma) >= b. Requires b < 1.
SSum s_sum(double gamma, double b, double tol = 1e-8);

}  // namespace robinlab::levelsets
