#pragma once

#include <vector>

#include "robinlab/pencil.hpp"

// Disc of radius R, unit field in the symmetric gauge, constant Robin weight.
// Angular mode m reduces the operator to
//   h [ -d^2/drho^2 - rho^-1 d/drho + (m/rho - rho/2)^2 ]   on (0, R/sqrt(h)],
// r = sqrt(h) rho, with u'(rho_R) = -h^(alpha-1/2) gamma u(rho_R).

namespace robinlab::disc {

struct DiscSpec {
  double R = 1.0;
  double h = 0.01;
  double alpha = 1.0;
  double gamma = 0.0;
  double lambda = 0.008;  // energy threshold, same units as h

  double gamma_eff() const;
  double rho_R() const;
  double scaled_lambda() const { return lambda / h; }
};

void validate(const DiscSpec& spec);

/// Lumped P1 pencil for mode m on n cells of [0, rho_R]. m = 0 keeps the
/// centre node with its dual-cell mass; m != 0 imposes u(0) = 0.
Pencil radial_pencil(const DiscSpec& spec, long m, int n);

struct DiscOptions {
  double tol = 1e-9;
  int max_doublings = 6;
  unsigned workers = 0;
  long max_window = 200000;
};

struct RadialCount {
  long m = 0;
  int count = 0;
  std::vector<double> eigenvalues;  // scaled (units of h), all <= lambda/h plus the first above
  bool ambiguous = false;
};

/// Eigenvalues <= lambda of mode m.
RadialCount disc_radial_count(const DiscSpec& spec, long m, const DiscOptions& options = {});

/// Lower bound for the scaled spectrum of mode m: potential floor minus the
/// Robin trace bound when gamma < 0.
double mode_lower_bound(const DiscSpec& spec, long m);

struct DiscCount {
  long count = 0;
  long m_min = 0, m_max = -1;  // window evaluated
  bool certified = false;
  bool ambiguous = false;
  std::vector<RadialCount> modes;  // nonzero modes only
};

DiscCount disc_count(const DiscSpec& spec, const DiscOptions& options = {});

}  // namespace robinlab::disc
