#include "robinlab/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "robinlab/errors.hpp"
#include "robinlab/interp.hpp"

namespace robinlab::geometry {

namespace {

constexpr double kPi = 3.14159265358979323846;

// 8-point Gauss-Legendre on [-1, 1], symmetric pairs.
constexpr std::array<double, 4> kGLx{0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                     0.9602898564975363};
constexpr std::array<double, 4> kGLw{0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                     0.1012285362903763};

template <class F>
double gauss_legendre(const F& f, double a, double b) {
  const double m = 0.5 * (a + b), r = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < kGLx.size(); ++i) sum += kGLw[i] * (f(m - r * kGLx[i]) + f(m + r * kGLx[i]));
  return r * sum;
}

void check_samples(int n) {
  if (n < 8) throw ConfigurationError("a boundary curve needs at least 8 samples");
  if (n > (1 << 24)) throw ResourceError("too many boundary samples");
}

void attach_gamma(BoundaryCurve& c) {
  c.gamma_samples.resize(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) c.gamma_samples[i] = c.gamma(c.s[i], c.perimeter);
}

}  // namespace

double GammaSpec::operator()(double s, double perimeter) const {
  const double phase = 2.0 * kPi * (s - center) / perimeter;
  switch (kind) {
    case GammaKind::Constant:
      return base;
    case GammaKind::CosineBump:
      return base + amplitude * 0.5 * (1.0 + std::cos(phase));
    case GammaKind::QuadraticWell:
      return base + amplitude * perimeter * perimeter / (2.0 * kPi * kPi) * (1.0 - std::cos(phase));
  }
  return base;
}

double GammaSpec::min_value(double perimeter) const {
  switch (kind) {
    case GammaKind::Constant:
      return base;
    case GammaKind::CosineBump:
      return base + std::min(0.0, amplitude);
    case GammaKind::QuadraticWell:
      return base + std::min(0.0, amplitude * perimeter * perimeter / (kPi * kPi));
  }
  return base;
}

double GammaSpec::max_value(double perimeter) const {
  switch (kind) {
    case GammaKind::Constant:
      return base;
    case GammaKind::CosineBump:
      return base + std::max(0.0, amplitude);
    case GammaKind::QuadraticWell:
      return base + std::max(0.0, amplitude * perimeter * perimeter / (kPi * kPi));
  }
  return base;
}

std::string GammaSpec::id() const {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s(base=%.17g,amplitude=%.17g,center=%.17g)", gamma_kind_name(kind), base,
                amplitude, center);
  return buf;
}

GammaKind parse_gamma_kind(const std::string& name) {
  if (name == "constant") return GammaKind::Constant;
  if (name == "cosine-bump") return GammaKind::CosineBump;
  if (name == "quadratic-well") return GammaKind::QuadraticWell;
  throw ConfigurationError("unknown gamma profile '" + name + "' (constant, cosine-bump, quadratic-well)");
}

const char* gamma_kind_name(GammaKind kind) {
  switch (kind) {
    case GammaKind::Constant:
      return "constant";
    case GammaKind::CosineBump:
      return "cosine-bump";
    case GammaKind::QuadraticWell:
      return "quadratic-well";
  }
  return "constant";
}

double BoundaryCurve::curvature_at(double arc) const {
  const double ds = spacing();
  double u = std::fmod(arc, perimeter);
  if (u < 0.0) u += perimeter;
  const double x = u / ds;
  const std::size_t n = size();
  const auto i = static_cast<std::size_t>(std::floor(x)) % n;
  const double f = x - std::floor(x);
  if (f == 0.0) return curvature[i];
  // cubic through samples i-1 .. i+2
  const double a = curvature[(i + n - 1) % n], b = curvature[i], c = curvature[(i + 1) % n],
               d = curvature[(i + 2) % n];
  return -f * (f - 1) * (f - 2) / 6.0 * a + (f + 1) * (f - 1) * (f - 2) / 2.0 * b -
         (f + 1) * f * (f - 2) / 2.0 * c + (f + 1) * f * (f - 1) / 6.0 * d;
}

BoundaryCurve circle(double R, int n_samples, const GammaSpec& gamma) {
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("circle radius must be positive");
  check_samples(n_samples);
  BoundaryCurve c;
  c.name = "circle";
  c.perimeter = 2.0 * kPi * R;
  c.gamma = gamma;
  const auto n = static_cast<std::size_t>(n_samples);
  c.s.resize(n);
  c.points.resize(n);
  c.tangents.resize(n);
  c.normals.resize(n);
  c.curvature.assign(n, 1.0 / R);
  for (std::size_t i = 0; i < n; ++i) {
    const double th = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
    c.s[i] = R * th;
    c.points[i] = {R * std::cos(th), R * std::sin(th)};
    c.tangents[i] = {-std::sin(th), std::cos(th)};
    c.normals[i] = {-std::cos(th), -std::sin(th)};
  }
  attach_gamma(c);
  return c;
}

BoundaryCurve ellipse(double a, double b, int n_samples, const GammaSpec& gamma) {
  if (!(a > 0.0 && b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("ellipse semi-axes must be positive");
  }
  check_samples(n_samples);
  const auto n = static_cast<std::size_t>(n_samples);
  auto speed = [&](double th) { return std::hypot(a * std::sin(th), b * std::cos(th)); };

  // Cumulative arclength at the parameter nodes theta_k = 2 pi k / n.
  std::vector<double> theta(n + 1), arc(n + 1, 0.0);
  for (std::size_t k = 0; k <= n; ++k) theta[k] = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) arc[k + 1] = arc[k] + gauss_legendre(speed, theta[k], theta[k + 1]);

  BoundaryCurve c;
  c.name = "ellipse";
  c.perimeter = arc[n];
  c.gamma = gamma;
  c.s.resize(n);
  c.points.resize(n);
  c.tangents.resize(n);
  c.normals.resize(n);
  c.curvature.resize(n);

  // theta(s): monotone interpolation for the start, Newton on
  // L(theta) - s = 0 with L' = speed for the rest.
  const auto slopes = interp::pchip_slopes(arc, theta);
  for (std::size_t i = 0; i < n; ++i) {
    const double target = c.perimeter * static_cast<double>(i) / static_cast<double>(n);
    double th = interp::hermite(arc, theta, slopes, target);
    for (int it = 0; it < 8; ++it) {
      const auto k = std::min<std::size_t>(
          n - 1, static_cast<std::size_t>(std::upper_bound(theta.begin(), theta.end(), th) - theta.begin()) - 1);
      const double l = arc[k] + gauss_legendre(speed, theta[k], th);
      const double step = (l - target) / speed(th);
      th -= step;
      if (std::abs(step) < 1e-15) break;
    }
    const double sp = speed(th);
    c.s[i] = target;
    c.points[i] = {a * std::cos(th), b * std::sin(th)};
    c.tangents[i] = {-a * std::sin(th) / sp, b * std::cos(th) / sp};
    c.normals[i] = {-c.tangents[i].y, c.tangents[i].x};
    c.curvature[i] = a * b / (sp * sp * sp);
  }
  attach_gamma(c);
  return c;
}

BoundaryCurve curve_preset(const std::string& name, const std::vector<double>& params, int n_samples,
                           const GammaSpec& gamma) {
  if (name == "circle") {
    if (params.size() != 1) throw ConfigurationError("circle takes one parameter (R)");
    return circle(params[0], n_samples, gamma);
  }
  if (name == "ellipse") {
    if (params.size() != 2) throw ConfigurationError("ellipse takes two parameters (a, b)");
    return ellipse(params[0], params[1], n_samples, gamma);
  }
  throw ConfigurationError("unknown curve preset '" + name + "' (circle, ellipse)");
}

BoundaryCurve with_gamma(BoundaryCurve curve, const GammaSpec& gamma) {
  curve.gamma = gamma;
  attach_gamma(curve);
  return curve;
}

double boundary_integral(const BoundaryCurve& curve, const std::function<double(std::size_t)>& f) {
  double sum = 0.0;
  for (std::size_t i = 0; i < curve.size(); ++i) sum += f(i);
  return sum * curve.spacing();
}

double turning(const BoundaryCurve& curve) {
  return boundary_integral(curve, [&](std::size_t i) { return curve.curvature[i]; });
}

double jacobian(const BoundaryCurve& curve, std::size_t index, double t) {
  return 1.0 - t * curve.curvature.at(index);
}

double jacobian(const BoundaryCurve& curve, double arc, double t) { return 1.0 - t * curve.curvature_at(arc); }

double frenet_defect(const BoundaryCurve& curve) {
  const std::size_t n = curve.size();
  const double ds = curve.spacing();
  double worst = 0.0;
  auto at = [&](std::size_t i, long off) -> const Vec2& {
    return curve.tangents[(i + n + static_cast<std::size_t>(off + 2) - 2) % n];
  };
  for (std::size_t i = 0; i < n; ++i) {
    // fourth-order centred difference
    const double tx = (-at(i, 2).x + 8.0 * at(i, 1).x - 8.0 * at(i, -1).x + at(i, -2).x) / (12.0 * ds);
    const double ty = (-at(i, 2).y + 8.0 * at(i, 1).y - 8.0 * at(i, -1).y + at(i, -2).y) / (12.0 * ds);
    const double dx = tx - curve.curvature[i] * curve.normals[i].x;
    const double dy = ty - curve.curvature[i] * curve.normals[i].y;
    worst = std::max(worst, std::hypot(dx, dy) / std::abs(curve.curvature[i]));
  }
  return worst;
}

void write_csv(const BoundaryCurve& curve, std::ostream& out) {
  out << "s,x,y,kappa_r,gamma\n";
  char buf[160];
  for (std::size_t i = 0; i < curve.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", curve.s[i], curve.points[i].x,
                  curve.points[i].y, curve.curvature[i], curve.gamma_samples[i]);
    out << buf;
  }
}

}  // namespace robinlab::geometry
