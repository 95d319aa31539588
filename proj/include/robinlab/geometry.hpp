#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

// Closed boundary curves sampled at equal arclength, with the Robin weight
// gamma(s) attached. Traversal is counterclockwise, nu = T rotated by +90
// degrees so det(T, nu) = 1 and T' = kappa_r nu with kappa_r > 0 on convex
// curves. With these two relations nu points into the domain; t in the
// Jacobian 1 - t kappa_r is the distance to the boundary measured inward.

namespace robinlab::geometry {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

enum class GammaKind { Constant, CosineBump, QuadraticWell };

/// Closed-form Robin weight on a curve of perimeter P, periodic in s.
///   Constant:       base
///   CosineBump:     base + amplitude (1 + cos(2 pi (s - center)/P)) / 2
///   QuadraticWell:  base + amplitude (P^2 / 2 pi^2)(1 - cos(2 pi (s - center)/P))
/// The well is base + amplitude (s - center)^2 + O((s - center)^4) near its
/// minimum.
struct GammaSpec {
  GammaKind kind = GammaKind::Constant;
  double base = 0.0;
  double amplitude = 0.0;
  double center = 0.0;

  static GammaSpec constant(double value) { return {GammaKind::Constant, value, 0.0, 0.0}; }
  static GammaSpec cosine_bump(double base, double amplitude, double center = 0.0) {
    return {GammaKind::CosineBump, base, amplitude, center};
  }
  static GammaSpec quadratic_well(double min_value, double curvature, double center = 0.0) {
    return {GammaKind::QuadraticWell, min_value, curvature, center};
  }

  double operator()(double s, double perimeter) const;
  double min_value(double perimeter) const;
  double max_value(double perimeter) const;
  bool is_constant() const { return kind == GammaKind::Constant || amplitude == 0.0; }
  std::string id() const;
};

/// Parses "constant", "cosine-bump", "quadratic-well".
GammaKind parse_gamma_kind(const std::string& name);
const char* gamma_kind_name(GammaKind kind);

struct BoundaryCurve {
  std::string name;
  std::vector<double> s;
  std::vector<Vec2> points;
  std::vector<Vec2> tangents;
  std::vector<Vec2> normals;
  std::vector<double> curvature;
  std::vector<double> gamma_samples;
  double perimeter = 0.0;
  GammaSpec gamma;

  std::size_t size() const noexcept { return s.size(); }
  double spacing() const { return perimeter / static_cast<double>(s.size()); }
  /// kappa_r at arbitrary s, periodic cubic interpolation of the samples.
  double curvature_at(double arc) const;
};

BoundaryCurve circle(double R, int n_samples, const GammaSpec& gamma = {});
/// Semi-axes a (along x) and b. a = b reproduces the circle.
BoundaryCurve ellipse(double a, double b, int n_samples, const GammaSpec& gamma = {});

/// name = "circle" (params {R}) or "ellipse" (params {a, b}).
BoundaryCurve curve_preset(const std::string& name, const std::vector<double>& params, int n_samples,
                           const GammaSpec& gamma = {});

/// Same curve, new weight.
BoundaryCurve with_gamma(BoundaryCurve curve, const GammaSpec& gamma);

/// Periodic trapezoidal rule: (P/n) sum f(i).
double boundary_integral(const BoundaryCurve& curve, const std::function<double(std::size_t)>& f);

double turning(const BoundaryCurve& curve);

/// a(s, t) = 1 - t kappa_r(s), t >= 0 inside.
double jacobian(const BoundaryCurve& curve, std::size_t index, double t);
double jacobian(const BoundaryCurve& curve, double arc, double t);

/// Largest |T'(s) - kappa_r nu| / |kappa_r| with T' from a fourth-order
/// centred difference of the sampled tangents.
double frenet_defect(const BoundaryCurve& curve);

/// Columns s, x, y, kappa_r, gamma.
void write_csv(const BoundaryCurve& curve, std::ostream& out);

}  // namespace robinlab::geometry
