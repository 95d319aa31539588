#include "robinlab/weyl.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "robinlab/errors.hpp"
#include "robinlab/levelsets.hpp"

namespace robinlab::weyl {

namespace {

constexpr double kPi = 3.14159265358979323846;

constexpr std::array<double, 4> kGLx{0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                     0.9602898564975363};
constexpr std::array<double, 4> kGLw{0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                     0.1012285362903763};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

void require(bool ok, const std::string& what, WeylEstimate& e, const WeylOptions& o) {
  if (ok) return;
  if (!o.override_hypotheses) throw DomainError("hypothesis violated: " + what);
  e.violations.push_back(what);
}

void check_h(double h) {
  if (!(h > 0.0 && h < 1.0)) throw ConfigurationError("h must lie in (0, 1)");
}

WeylEstimate start(Theorem t, const geometry::BoundaryCurve& curve, double alpha, double h, const char* pname,
                   double pvalue) {
  WeylEstimate e;
  e.theorem = t;
  e.h = h;
  e.alpha = alpha;
  e.curve = curve.name;
  e.perimeter = curve.perimeter;
  e.gamma_id = curve.gamma.id();
  e.parameter_name = pname;
  e.parameter = pvalue;
  e.s = curve.s;
  return e;
}

double gamma_of(const geometry::BoundaryCurve& c, double s) { return c.gamma(s, c.perimeter); }

// xi = sqrt(Theta + gamma^2), computed from Theta so that every formula uses
// the same number.
double xi_of(const ThetaSource::Value& v, double gamma) { return std::sqrt(std::max(0.0, v.theta + gamma * gamma)); }

}  // namespace

const char* theorem_id(Theorem t) {
  switch (t) {
    case Theorem::T1a: return "T1a";
    case Theorem::T1b: return "T1b";
    case Theorem::T1c: return "T1c";
    case Theorem::T2: return "T2";
    case Theorem::T3: return "T3";
    case Theorem::T3generic: return "T3generic";
    case Theorem::T41: return "T4.1";
    case Theorem::T42: return "T4.2";
    case Theorem::T43: return "T4.3";
    case Theorem::CEconc: return "CEconc";
    case Theorem::CEconcRelaxed: return "CEconc-relaxed";
  }
  return "?";
}

// ---------------------------------------------------------------------------

ThetaSource::ThetaSource(std::shared_ptr<const degennes::DeGennesTable> table) : table_(std::move(table)) {
  if (!table_ || table_->rows().size() < 2) throw ConfigurationError("de Gennes table needs at least two rows");
}

ThetaSource ThetaSource::direct(double tol) {
  ThetaSource s;
  s.tol_ = tol;
  s.memo_ = std::make_shared<Memo>();
  return s;
}

ThetaSource ThetaSource::lazy_grid(double step, double tol) {
  if (!(step > 0.0)) throw ConfigurationError("grid step must be positive");
  ThetaSource s = direct(tol);
  s.step_ = step;
  return s;
}

ThetaSource::Value ThetaSource::exact(double gamma) const {
  {
    std::lock_guard<std::mutex> g(memo_->lock);
    auto it = memo_->values.find(gamma);
    if (it != memo_->values.end()) return it->second;
  }
  degennes::DeGennesPoint p;
  if (gamma == 0.0) {
    p = degennes::at_zero();
  } else {
    degennes::MinimizeOptions o;
    o.tol = tol_;
    o.fd_step = 0.0;
    p = degennes::theta(gamma, o);
  }
  Value v{p.theta, p.theta_prime, p.xi_min};
  std::lock_guard<std::mutex> g(memo_->lock);
  memo_->values.emplace(gamma, v);
  return v;
}

ThetaSource::Value ThetaSource::node(long k) const {
  {
    std::lock_guard<std::mutex> g(memo_->lock);
    auto it = memo_->nodes.find(k);
    if (it != memo_->nodes.end()) return it->second;
  }
  const Value v = exact(static_cast<double>(k) * step_);
  std::lock_guard<std::mutex> g(memo_->lock);
  memo_->nodes.emplace(k, v);
  return v;
}

ThetaSource::Value ThetaSource::at(double gamma) const {
  if (table_) return {table_->theta_at(gamma), table_->theta_prime_at(gamma), table_->xi_at(gamma)};
  if (step_ <= 0.0) return exact(gamma);

  const double x = gamma / step_;
  const long k = static_cast<long>(std::floor(x));
  const double t = x - static_cast<double>(k);
  if (t < 1e-12) return node(k);
  if (t > 1.0 - 1e-12) return node(k + 1);
  const Value a = node(k), b = node(k + 1);
  const double h = step_;
  auto hermite = [&](double ya, double da, double yb, double db) {
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * ya + (t3 - 2 * t2 + t) * h * da + (-2 * t3 + 3 * t2) * yb + (t3 - t2) * h * db;
  };
  const double ga = static_cast<double>(k) * h, gb = ga + h;
  Value v;
  v.theta = hermite(a.theta, a.theta_prime, b.theta, b.theta_prime);
  v.xi = hermite(a.xi, (a.theta_prime + 2 * ga) / (2 * a.xi), b.xi, (b.theta_prime + 2 * gb) / (2 * b.xi));
  // cubic Lagrange on k-1 .. k+2, local coordinate u = t + 1
  const Value am = node(k - 1), bp = node(k + 2);
  const double u = t + 1.0;
  v.theta_prime = am.theta_prime * (-(u - 1) * (u - 2) * (u - 3) / 6.0) + a.theta_prime * (u * (u - 2) * (u - 3) / 2.0) +
                  b.theta_prime * (-u * (u - 1) * (u - 3) / 2.0) + bp.theta_prime * (u * (u - 1) * (u - 2) / 6.0);
  return v;
}

bool ThetaSource::at_least(double gamma, double level) const {
  if (table_) {
    if (gamma > table_->gamma_max() && table_->theta_at(table_->gamma_max()) >= level) return true;
    return at(gamma).theta >= level;
  }
  {
    // Theta is nondecreasing: a known gamma' <= gamma already at the level
    // settles it.
    std::lock_guard<std::mutex> g(memo_->lock);
    auto it = memo_->values.upper_bound(gamma);
    if (it != memo_->values.begin() && std::prev(it)->second.theta >= level) return true;
  }
  return at(gamma).theta >= level;
}

// ---------------------------------------------------------------------------

double clamped_integral(const geometry::BoundaryCurve& curve, const std::function<double(double)>& q,
                        const std::function<double(double)>& g, std::vector<double>* samples) {
  const std::size_t n = curve.size();
  const double ds = curve.spacing();
  std::vector<double> qv(n + 1), gv(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    qv[i] = q(curve.s[i]);
    gv[i] = qv[i] > 0.0 ? g(curve.s[i]) : 0.0;
  }
  qv[n] = qv[0];
  gv[n] = gv[0];
  if (samples) samples->assign(gv.begin(), gv.end() - 1);

  auto root = [&](double lo, double hi, bool lo_active) {
    for (int it = 0; it < 200 && hi - lo > 1e-15 * curve.perimeter; ++it) {
      const double mid = 0.5 * (lo + hi);
      if ((q(mid) > 0.0) == lo_active) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };
  const double P = curve.perimeter;
  auto wrap = [&](double x) { return x >= P ? x - P : x; };

  struct Root {
    double s;
    bool rising;
  };
  std::vector<Root> roots;
  for (std::size_t i = 0; i < n; ++i) {
    const bool qa = qv[i] > 0.0, qb = qv[i + 1] > 0.0;
    if (qa == qb) continue;
    const double a = static_cast<double>(i) * ds;
    roots.push_back({root(a, a + ds, qa), qb});
  }
  if (roots.empty()) {
    if (!(qv[0] > 0.0)) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += gv[i];
    return sum * ds;
  }

  // Each active interval [r1, r2] after s = r1 + L (1 - cos(pi u)) / 2: a
  // square-root edge becomes analytic in u. Composite Gauss-Legendre in u.
  double total = 0.0;
  for (std::size_t k = 0; k < roots.size(); ++k) {
    if (!roots[k].rising) continue;
    const Root& end = roots[(k + 1) % roots.size()];
    const double r1 = roots[k].s;
    double r2 = end.s;
    if (r2 <= r1) r2 += P;
    const double len = r2 - r1;
    const int panels = std::max(2, static_cast<int>(std::ceil(len / ds / 2.0)));
    const double du = 1.0 / panels;
    for (int m = 0; m < panels; ++m) {
      const double mid = (m + 0.5) * du;
      for (std::size_t q8 = 0; q8 < kGLx.size(); ++q8) {
        for (double u : {mid - 0.5 * du * kGLx[q8], mid + 0.5 * du * kGLx[q8]}) {
          const double sv = wrap(r1 + 0.5 * len * (1.0 - std::cos(kPi * u)));
          if (!(q(sv) > 0.0)) continue;
          total += 0.5 * du * kGLw[q8] * g(sv) * 0.5 * len * kPi * std::sin(kPi * u);
        }
      }
    }
  }
  return total;
}

// ---------------------------------------------------------------------------

WeylEstimate thm1_leading(const geometry::BoundaryCurve& curve, double alpha, double b0, double h,
                          const ThetaSource& theta, const WeylOptions& options) {
  check_h(h);
  if (!(alpha >= 0.5)) throw ConfigurationError("alpha must be >= 1/2");
  const double scale = 1.0 / (2.0 * kPi * std::sqrt(h));

  if (alpha > 0.5) {
    WeylEstimate e = start(Theorem::T1a, curve, alpha, h, "b0", b0);
    e.threshold = b0 * h;
    const double th0 = theta.at(0.0).theta;
    require(th0 < b0 && b0 < 1.0, fmt("Theta0 < b0 < 1 (Theta0=%.10g, b0=%.10g)", th0, b0), e, options);
    double measure = 0.0;
    if (b0 > th0) measure = levelsets::xi_pm(1, 0.0, b0, options.level_tol).measure;
    e.value = curve.perimeter * measure * scale;
    e.integrand.assign(curve.size(), measure * scale);
    return e;
  }

  const double g0 = curve.gamma.min_value(curve.perimeter);
  const bool simple = g0 >= 0.0;
  WeylEstimate e = start(simple ? Theorem::T1c : Theorem::T1b, curve, alpha, h, "b0", b0);
  e.threshold = b0 * h;
  const double thg0 = theta.at(g0).theta;
  require(thg0 < b0 && b0 < 1.0, fmt("Theta(gamma0) < b0 < 1 (Theta(gamma0)=%.10g, b0=%.10g)", thg0, b0), e,
          options);

  std::map<double, double> memo;
  auto level = [&](double gamma) {
    auto it = memo.find(gamma);
    if (it != memo.end()) return it->second;
    double v = 0.0;
    if (simple) {
      v = levelsets::xi_pm(1, gamma, b0, options.level_tol).measure;
    } else {
      v = levelsets::s_sum(gamma, b0, options.level_tol).value;
    }
    memo.emplace(gamma, v);
    return v;
  };
  auto q = [&](double s) {
    const double gamma = gamma_of(curve, s);
    if (theta.at_least(gamma, b0)) return -1.0;
    return b0 - theta.at(gamma).theta;
  };
  auto g = [&](double s) { return scale * level(gamma_of(curve, s)); };
  if (curve.gamma.is_constant()) {
    const double v = q(0.0) > 0.0 ? g(0.0) : 0.0;
    e.value = curve.perimeter * v;
    e.integrand.assign(curve.size(), v);
  } else {
    e.value = clamped_integral(curve, q, g, &e.integrand);
  }
  return e;
}

WeylEstimate thm2_leading(const geometry::BoundaryCurve& curve, double a, double alpha, double h,
                          const WeylOptions& options) {
  check_h(h);
  WeylEstimate e = start(Theorem::T2, curve, alpha, h, "a", a);
  require(alpha > 0.5 && alpha < 1.0, fmt("1/2 < alpha < 1 (alpha=%.10g)", alpha), e, options);
  const auto& z = degennes::at_zero();
  const double c1 = degennes::c1(z);
  e.threshold = h * z.theta + 3.0 * a * c1 * std::pow(h, alpha + 0.5);
  const double pref = 1.0 / (kPi * std::sqrt(std::pow(h, 1.5 - alpha) * std::sqrt(z.theta)));
  auto q = [&](double s) { return a - gamma_of(curve, s); };
  auto g = [&](double s) { return pref * std::sqrt(std::max(0.0, q(s))); };
  e.value = clamped_integral(curve, q, g, &e.integrand);
  if (curve.gamma.is_constant() && a == curve.gamma.base) {
    e.note = "leading term vanishes at a = gamma for constant gamma; the T4.2 formula applies instead";
  }
  return e;
}

WeylEstimate thm3_leading(const geometry::BoundaryCurve& curve, double lambda, double h, const ThetaSource& theta,
                          const WeylOptions& options) {
  check_h(h);
  if (!(options.varrho > 0.0 && options.varrho < 0.5)) throw ConfigurationError("varrho must lie in (0, 1/2)");
  WeylEstimate e = start(Theorem::T3, curve, 0.5, h, "lambda", lambda);
  e.threshold = h * lambda;
  const double g0 = curve.gamma.min_value(curve.perimeter);
  const double gap = std::abs(lambda - theta.at(g0).theta);
  require(options.c0 * std::sqrt(h) <= gap,
          fmt("c0 h^(1/2) <= |lambda - Theta(gamma0)| (%.6g vs %.6g)", options.c0 * std::sqrt(h), gap), e, options);
  require(gap <= options.zeta0 * std::pow(h, options.varrho),
          fmt("|lambda - Theta(gamma0)| <= zeta0 h^varrho (%.6g vs %.6g)", gap,
              options.zeta0 * std::pow(h, options.varrho)),
          e, options);

  auto q = [&](double s) {
    const double gamma = gamma_of(curve, s);
    if (theta.at_least(gamma, lambda)) return -1.0;
    return lambda - theta.at(gamma).theta;
  };
  auto g = [&](double s) {
    const double gamma = gamma_of(curve, s);
    const auto v = theta.at(gamma);
    const double num = std::max(0.0, lambda - v.theta);
    return std::sqrt(num / (h * v.theta_prime * xi_of(v, gamma))) / kPi;
  };
  e.value = clamped_integral(curve, q, g, &e.integrand);
  return e;
}

WeylEstimate thm3_generic(const geometry::BoundaryCurve& curve, double a, double beta, double h,
                          const ThetaSource& theta, const WeylOptions& options) {
  const double g0 = curve.gamma.min_value(curve.perimeter);
  const double lambda = theta.at(g0).theta + a * std::pow(h, beta);
  WeylEstimate probe = start(Theorem::T3generic, curve, 0.5, h, "a", a);
  require(a > 0.0, fmt("a > 0 (a=%.10g)", a), probe, options);
  require(beta > 0.0 && beta < 0.5, fmt("0 < beta < 1/2 (beta=%.10g)", beta), probe, options);
  require(!curve.gamma.is_constant(), "gamma has a unique non-degenerate minimum", probe, options);
  WeylEstimate e = thm3_leading(curve, lambda, h, theta, options);
  e.theorem = Theorem::T3generic;
  e.parameter_name = "a";
  e.parameter = a;
  e.violations.insert(e.violations.begin(), probe.violations.begin(), probe.violations.end());
  e.note = fmt("lambda = Theta(gamma0) + a h^beta = %.17g, beta = %.17g", lambda, beta);
  return e;
}

WeylEstimate thm4_leading(const geometry::BoundaryCurve& curve, double a, double alpha, double h, int which,
                          const ThetaSource& theta, const WeylOptions& options) {
  check_h(h);
  if (which < 1 || which > 3) throw ConfigurationError("curvature theorem case must be 1, 2 or 3");
  const Theorem ids[] = {Theorem::T41, Theorem::T42, Theorem::T43};
  WeylEstimate e = start(ids[which - 1], curve, alpha, h, "a", a);
  const auto z = theta.at(0.0);
  const double c1_0 = (1.0 / 3.0) * z.theta_prime;  // C1 at gamma = 0
  const double sh = std::sqrt(h);
  double pref = 1.0 / (kPi * std::sqrt(3.0 * sh * std::sqrt(z.theta)));
  std::function<double(double)> q;

  if (which == 1) {
    require(alpha == 1.0, fmt("alpha = 1 (alpha=%.10g)", alpha), e, options);
    e.threshold = h * z.theta + a * c1_0 * std::pow(h, 1.5);
    q = [&](double s) { return curve.curvature_at(s) - 3.0 * gamma_of(curve, s) + a; };
  } else {
    require(curve.gamma.is_constant(), "gamma is constant", e, options);
    const double gamma = curve.gamma.base;
    if (which == 2) {
      require(alpha > 0.5, fmt("alpha > 1/2 (alpha=%.10g)", alpha), e, options);
      const double th = theta.at(std::pow(h, alpha - 0.5) * gamma).theta;
      e.threshold = h * th + a * c1_0 * std::pow(h, 1.5);
    } else {
      require(alpha == 0.5, fmt("alpha = 1/2 (alpha=%.10g)", alpha), e, options);
      const auto v = theta.at(gamma);
      const double xi = xi_of(v, gamma);
      const double c1g = (1.0 / 3.0) * (1.0 + gamma * xi) * (1.0 + gamma * xi) * v.theta_prime;
      pref = (1.0 + gamma * xi) / (kPi * std::sqrt(3.0 * sh * xi));
      e.threshold = h * v.theta + a * c1g * std::pow(h, 1.5);
    }
    q = [&](double s) { return curve.curvature_at(s) + a; };
  }
  auto g = [&](double s) { return pref * std::sqrt(std::max(0.0, q(s))); };
  e.value = clamped_integral(curve, q, g, &e.integrand);
  return e;
}

WeylEstimate ce_conc_leading(const geometry::BoundaryCurve& curve, double alpha, double lambda, double h,
                             const ThetaSource& theta, CeMode mode, const WeylOptions& options) {
  check_h(h);
  if (!(alpha >= 0.5)) throw ConfigurationError("alpha must be >= 1/2");
  WeylEstimate e = start(mode == CeMode::Relaxed ? Theorem::CEconcRelaxed : Theorem::CEconc, curve, alpha, h,
                         "lambda", lambda);
  e.threshold = h * lambda;
  const double scale = std::pow(h, alpha - 0.5);
  const double sh = std::sqrt(h);
  const double g0 = curve.gamma.min_value(curve.perimeter);
  const double gap = std::abs(lambda - theta.at(scale * g0).theta);
  if (mode == CeMode::Relaxed) {
    require(gap < sh, fmt("|lambda - Theta(h^(alpha-1/2) gamma0)| small against h^(1/2) (%.6g vs %.6g)", gap, sh), e,
            options);
  } else {
    require(options.c0 * sh <= gap,
            fmt("c0 h^(1/2) <= |lambda - Theta(h^(alpha-1/2) gamma0)| (%.6g vs %.6g)", options.c0 * sh, gap), e,
            options);
    require(gap < options.zeta0 * std::pow(h, 2.0 * options.rho),
            fmt("|lambda - Theta(h^(alpha-1/2) gamma0)| < zeta0 h^(2 rho) (%.6g vs %.6g)", gap,
                options.zeta0 * std::pow(h, 2.0 * options.rho)),
            e, options);
  }
  if (mode == CeMode::DominantThreshold) e.note = "curvature term dropped";

  const auto z = theta.at(0.0);
  struct Coeffs {
    double d2, d3;
  };
  auto coeffs = [&](double gamma) -> Coeffs {
    if (alpha > 0.5) return {std::sqrt(z.theta) * z.theta_prime, z.theta_prime / 3.0};
    const auto v = theta.at(gamma);
    const double xi = xi_of(v, gamma);
    return {xi * v.theta_prime, (gamma * xi + 1.0) * (gamma * xi + 1.0) * v.theta_prime / 3.0};
  };
  auto q = [&](double s) {
    const double gamma = gamma_of(curve, s);
    const double gt = scale * gamma;
    switch (mode) {
      case CeMode::Relaxed:
        return coeffs(gamma).d3 * curve.curvature_at(s);
      case CeMode::DominantThreshold:
        if (theta.at_least(gt, lambda)) return -1.0;
        return (lambda - theta.at(gt).theta) / sh;
      case CeMode::Full:
        break;
    }
    return coeffs(gamma).d3 * curve.curvature_at(s) + (lambda - theta.at(gt).theta) / sh;
  };
  auto g = [&](double s) {
    const double gamma = gamma_of(curve, s);
    const double d2 = coeffs(gamma).d2;
    return std::pow(h, -0.25) / (kPi * std::sqrt(d2)) * std::sqrt(std::max(0.0, q(s)));
  };
  e.value = clamped_integral(curve, q, g, &e.integrand);
  return e;
}

PowerFit fit_power_law(const std::vector<double>& h, const std::vector<double>& v) {
  if (h.size() != v.size() || h.size() < 2) throw ConfigurationError("power fit needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(h[i] > 0.0 && v[i] > 0.0)) throw DomainError("power fit needs positive data");
    const double x = std::log(h[i]), y = std::log(v[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  PowerFit f;
  f.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double logc = (sy - f.exponent * sx) / n;
  f.coefficient = std::exp(logc);
  for (std::size_t i = 0; i < h.size(); ++i) {
    f.max_log_residual =
        std::max(f.max_log_residual, std::abs(std::log(v[i]) - logc - f.exponent * std::log(h[i])));
  }
  return f;
}

double generic_well_constant(const geometry::GammaSpec& gamma, const ThetaSource& theta) {
  if (gamma.kind != geometry::GammaKind::QuadraticWell || !(gamma.amplitude > 0.0)) {
    throw ConfigurationError("closed-form constant needs a quadratic well with positive curvature");
  }
  const auto v = theta.at(gamma.base);
  return 1.0 / (2.0 * v.theta_prime * std::sqrt(gamma.amplitude * xi_of(v, gamma.base)));
}

}  // namespace robinlab::weyl
