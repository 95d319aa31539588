#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "robinlab/degennes.hpp"
#include "robinlab/geometry.hpp"

// Leading terms of the boundary Weyl laws. Every estimate counts eigenvalues
// at or below `threshold` (energy units, i.e. h times the scaled level).

namespace robinlab::weyl {

enum class Theorem { T1a, T1b, T1c, T2, T3, T3generic, T41, T42, T43, CEconc, CEconcRelaxed };

const char* theorem_id(Theorem t);

struct WeylEstimate {
  Theorem theorem = Theorem::T1a;
  double value = 0.0;
  double h = 0.0;
  double alpha = 0.0;
  std::string curve;
  double perimeter = 0.0;
  std::string gamma_id;
  std::string parameter_name;  // "b0", "a" or "lambda"
  double parameter = 0.0;
  double threshold = 0.0;  // eigenvalue threshold for the matching exact count
  std::vector<double> s;
  std::vector<double> integrand;  // prefactor included, so value = integral of this
  std::vector<std::string> violations;
  std::string note;
};

/// Theta, Theta' and xi at a Robin parameter. Backed by a DeGennesTable, or by
/// direct (memoized) minimization.
class ThetaSource {
 public:
  struct Value {
    double theta = 0.0;
    double theta_prime = 0.0;
    double xi = 0.0;
  };

  explicit ThetaSource(std::shared_ptr<const degennes::DeGennesTable> table);
  /// Exact minimization at every requested gamma.
  static ThetaSource direct(double tol = 1e-10);
  /// Grid gamma_k = k step filled on demand. Theta is Hermite-interpolated
  /// with Theta', Theta' by cubic Lagrange on four nodes, xi by Hermite with
  /// the slope from xi^2 = Theta + gamma^2. Grid points are exact.
  static ThetaSource lazy_grid(double step = 0.02, double tol = 1e-10);

  Value at(double gamma) const;
  /// True when Theta(gamma) >= level is certain. Above the table range this
  /// uses monotonicity of Theta and the last row, so no lookup is needed.
  bool at_least(double gamma, double level) const;
  bool has_table() const noexcept { return table_ != nullptr; }
  const degennes::DeGennesTable* table() const noexcept { return table_.get(); }

 private:
  ThetaSource() = default;
  Value exact(double gamma) const;
  Value node(long k) const;

  std::shared_ptr<const degennes::DeGennesTable> table_;
  double tol_ = 1e-10;
  double step_ = 0.0;  // lazy grid when positive
  struct Memo {
    std::mutex lock;
    std::map<double, Value> values;
    std::map<long, Value> nodes;
  };
  std::shared_ptr<Memo> memo_;
};

struct WeylOptions {
  /// Evaluate even when a hypothesis fails; violations are then listed in
  /// the estimate instead of raised.
  bool override_hypotheses = false;
  /// Regime constants. c0(h) of the lower bound is taken constant.
  double c0 = 1.0;
  double zeta0 = 1.0;
  double varrho = 0.25;  // Theorem 3 upper exponent, in (0, 1/2)
  double rho = 0.1;      // concentration regime exponent, upper bound zeta0 h^(2 rho)
  double level_tol = 1e-9;
};

/// b0 h threshold. alpha > 1/2: |boundary| |{mu_1(0, .) < b0}| / (2 pi sqrt h).
/// alpha = 1/2: integral of the summed level-set measure at gamma(s).
WeylEstimate thm1_leading(const geometry::BoundaryCurve& curve, double alpha, double b0, double h,
                          const ThetaSource& theta, const WeylOptions& options = {});

/// 1/2 < alpha < 1, threshold h Theta0 + 3 a C1 h^(alpha + 1/2).
WeylEstimate thm2_leading(const geometry::BoundaryCurve& curve, double a, double alpha, double h,
                          const WeylOptions& options = {});

/// alpha = 1/2, threshold h lambda.
WeylEstimate thm3_leading(const geometry::BoundaryCurve& curve, double lambda, double h, const ThetaSource& theta,
                          const WeylOptions& options = {});

/// thm3 at lambda = Theta(gamma0) + a h^beta, labelled T3generic.
WeylEstimate thm3_generic(const geometry::BoundaryCurve& curve, double a, double beta, double h,
                          const ThetaSource& theta, const WeylOptions& options = {});

/// Cases 1, 2, 3 of the curvature theorem.
WeylEstimate thm4_leading(const geometry::BoundaryCurve& curve, double a, double alpha, double h, int which,
                          const ThetaSource& theta, const WeylOptions& options = {});

enum class CeMode {
  Full,
  /// lambda-term dropped: |lambda - Theta| = o(h^(1/2)).
  Relaxed,
  /// curvature term dropped: |lambda - Theta| >> h^(1/2).
  DominantThreshold,
};

/// h^(-1/4) / (pi sqrt d2) sqrt((d3 kappa + h^(-1/2) [lambda - Theta(h^(alpha-1/2) gamma)])_+),
/// integrated over the boundary; threshold h lambda.
WeylEstimate ce_conc_leading(const geometry::BoundaryCurve& curve, double alpha, double lambda, double h,
                             const ThetaSource& theta, CeMode mode = CeMode::Full, const WeylOptions& options = {});

/// Integral over the closed curve of g, where g vanishes for q <= 0 and
/// behaves like sqrt(q) at the edges. Edges are located by bisection between
/// samples; each active interval is integrated after a cosine substitution
/// that makes square-root endpoints smooth. With no edge the periodic
/// trapezoid rule on the samples is used.
double clamped_integral(const geometry::BoundaryCurve& curve, const std::function<double(double)>& q,
                        const std::function<double(double)>& g, std::vector<double>* samples = nullptr);

struct PowerFit {
  double exponent = 0.0;
  double coefficient = 0.0;
  double max_log_residual = 0.0;
};

/// Least squares log v = log c + p log h.
PowerFit fit_power_law(const std::vector<double>& h, const std::vector<double>& v);

/// Small-h limit of thm3_generic for a quadratic-well gamma with curvature k:
/// a h^(beta - 1/2) / (2 Theta'(gamma0) sqrt(k xi(gamma0))). Returns the
/// factor multiplying a h^(beta - 1/2).
double generic_well_constant(const geometry::GammaSpec& gamma, const ThetaSource& theta);

}  // namespace robinlab::weyl
