#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "robinlab/model1d.hpp"

// de Gennes function Theta(gamma) = inf_xi mu_1(gamma, xi), its minimizer and
// the constants derived from it.

namespace robinlab::degennes {

struct DeGennesPoint {
  double gamma = 0.0;
  double theta = 0.0;
  double xi_min = 0.0;
  double theta_prime = 0.0;  // = phi0_sq
  double phi0_sq = 0.0;
  double residual_identity = 0.0;    // |xi_min^2 - theta - gamma^2|
  double residual_derivative = 0.0;  // |central difference of theta - phi0_sq|, NaN if skipped
};

struct MinimizeOptions {
  double tol = 1e-9;
  double scan_step = 1e-2;
  double width = 1e-8;
  /// Predicted minimizer. When set, the scan is restricted to a window
  /// around it.
  std::optional<double> seed;
  /// Step of the central difference stored as residual_derivative; zero
  /// skips it.
  double fd_step = 1e-4;
};

struct BandMinimum {
  double theta = 0.0;
  double xi = 0.0;
};

DeGennesPoint theta(double gamma, const MinimizeOptions& options);
DeGennesPoint theta(double gamma, double tol = 1e-9);

/// Infimum over xi of the k-th band and its minimizer.
BandMinimum theta_k(double gamma, int k, const MinimizeOptions& options);
BandMinimum theta_k(double gamma, int k, double tol = 1e-9);

/// Theta(0), xi_0, Theta'(0), computed once per process.
const DeGennesPoint& at_zero();

double c1(const DeGennesPoint& point);
double c1(double gamma);

/// (d2, d3) of the curvature expansion. alpha < 1/2 is rejected.
std::pair<double, double> d2d3(double alpha, const DeGennesPoint& at_eta);
std::pair<double, double> d2d3(double alpha, double eta);

class DeGennesTable {
 public:
  DeGennesTable() = default;

  double gamma_min() const noexcept { return gamma_min_; }
  double gamma_max() const noexcept { return gamma_max_; }
  double step() const noexcept { return step_; }
  double tol() const noexcept { return tol_; }
  std::uint64_t settings_hash() const noexcept { return hash_; }
  const std::vector<DeGennesPoint>& rows() const noexcept { return rows_; }

  /// Theta by cubic Hermite interpolation using the tabulated Theta'.
  double theta_at(double gamma) const;
  /// Theta' by monotone cubic interpolation; xi by Hermite interpolation with
  /// the slope implied by xi^2 = Theta + gamma^2.
  double theta_prime_at(double gamma) const;
  double xi_at(double gamma) const;
  /// Interpolated point with c1/d2d3-ready fields (residuals left at zero).
  DeGennesPoint point_at(double gamma) const;
  bool covers(double gamma) const noexcept;

  void save_csv(const std::string& path) const;
  static DeGennesTable load_csv(const std::string& path);
  std::string to_csv() const;
  static DeGennesTable from_csv(const std::string& text);

  friend DeGennesTable tabulate(double gamma_min, double gamma_max, double step, double tol, unsigned workers);

 private:
  void build_interpolants();

  double gamma_min_ = 0.0, gamma_max_ = 0.0, step_ = 0.0, tol_ = 0.0;
  std::uint64_t hash_ = 0;
  std::vector<DeGennesPoint> rows_;
  std::vector<double> g_, th_, thp_, xi_, thp_slope_, xi_slope_;
};

/// Rows at gamma_min + i*step up to gamma_max. Rows are computed in fixed
/// chunks of consecutive gammas, each chunk seeded by its previous row, so the
/// output does not depend on the worker count.
DeGennesTable tabulate(double gamma_min, double gamma_max, double step, double tol, unsigned workers = 0);

std::uint64_t settings_hash(double gamma_min, double gamma_max, double step, double tol);

}  // namespace robinlab::degennes
