#pragma once

#include <optional>
#include <vector>

#include "robinlab/levelsets.hpp"

// Half-cylinder ]0,S[ x R_+ with gauge (-t, 0), constant Robin weight gamma
// and the scaled boundary condition h du/dt = h^alpha gamma u. Fourier
// separation in s reduces the spectrum to band values at xi_n = 2 pi n sqrt(h)/S.

namespace robinlab::cylinder {

struct CylinderSpec {
  double S = 2.0 * 3.14159265358979323846;
  double h = 0.01;
  double alpha = 1.0;
  double gamma = 0.0;
  double b0 = 0.8;

  double gamma_eff() const;
  double fourier_step() const;  // 2 pi sqrt(h) / S
};

/// Throws ConfigurationError / DomainError for invalid specs.
void validate(const CylinderSpec& spec);

struct BandRange {
  int j = 1;
  long n_min = 0;
  long n_max = -1;  // empty when n_max < n_min
  double xi_minus = 0.0;
  double xi_plus = 0.0;
  double measure = 0.0;
};

struct CylinderCount {
  /// Number of (j, n) with mu_j(gamma_eff, xi_n) <= b0.
  long count = 0;
  /// Same with ties (Fourier points within tol of a root) excluded.
  long count_open = 0;
  bool ambiguous = false;
  int j_cutoff = 1;
  double s_sum = 0.0;
  std::vector<BandRange> bands;
};

CylinderCount analyze(const CylinderSpec& spec, double tol = 1e-9);
long cylinder_count(const CylinderSpec& spec);
double cylinder_leading(const CylinderSpec& spec);

struct CountReport {
  CylinderSpec spec;
  long exact_count = 0;
  double leading_term = 0.0;
  double difference = 0.0;
  double relative_error = 0.0;
  double c_test = 0.0;
  bool pass = false;
  bool ambiguous = false;
  int j_cutoff = 1;
  std::vector<BandRange> bands;
};

/// |exact - leading| against c_test (default 2 j_cutoff + 2).
CountReport mo_bound_check(const CylinderSpec& spec, std::optional<double> c_test = {});

struct StripBracket {
  long lower = 0;
  long upper = 0;
  double lower_threshold = 0.0;  // shifted b0 used on the doubled cylinder
};

/// Computable endpoints of the bracket for the strip ]0,S[ x ]0,T[:
/// ceil(N(b0 h - c h^2 (delta^-2 + T^-2), cylinder 2(S - delta)) / 2) and
/// N(b0 h, cylinder S).
StripBracket strip_bracket(const CylinderSpec& spec, double T, double delta, double c = 1.0);

}  // namespace robinlab::cylinder
