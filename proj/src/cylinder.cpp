#include "robinlab/cylinder.hpp"

#include <algorithm>
#include <cmath>

#include "robinlab/errors.hpp"

namespace robinlab::cylinder {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double CylinderSpec::gamma_eff() const { return std::pow(h, alpha - 0.5) * gamma; }

double CylinderSpec::fourier_step() const { return 2.0 * kPi * std::sqrt(h) / S; }

void validate(const CylinderSpec& spec) {
  if (!(spec.S > 0.0) || !std::isfinite(spec.S)) throw ConfigurationError("S must be positive");
  if (!(spec.h > 0.0 && spec.h < 1.0)) throw ConfigurationError("h must lie in (0, 1)");
  if (!(spec.alpha >= 0.5)) throw ConfigurationError("alpha must be >= 1/2");
  if (!std::isfinite(spec.gamma)) throw ConfigurationError("gamma must be finite");
  if (!(spec.b0 < 1.0)) throw DomainError("b0 must be below 1 (bottom of the essential spectrum)");
}

CylinderCount analyze(const CylinderSpec& spec, double tol) {
  validate(spec);
  const double g = spec.gamma_eff();
  const double dxi = spec.fourier_step();
  CylinderCount out;
  for (int j = 1;; ++j) {
    if (j > levelsets::kMaxBands) throw ResourceError("band cutoff exceeds the hard limit");
    const degennes::BandMinimum bm = degennes::theta_k(g, j, 1e-10);
    if (bm.theta > spec.b0) {
      out.j_cutoff = j;
      break;
    }
    const levelsets::LevelSetInterval iv = levelsets::xi_pm(j, g, spec.b0, 1e-10, bm);
    BandRange r;
    r.j = j;
    r.xi_minus = iv.xi_minus;
    r.xi_plus = iv.xi_plus;
    r.measure = iv.measure;
    out.s_sum += iv.measure;
    r.n_min = static_cast<long>(std::ceil(iv.xi_minus / dxi));
    r.n_max = static_cast<long>(std::floor(iv.xi_plus / dxi));

    long ties = 0;
    // Fourier points that sit on a root within the root tolerance are
    // resolved by a direct evaluation of the band function.
    auto resolve = [&](double root, long n_near, bool left) {
      const double xn = n_near * dxi;
      if (std::abs(xn - root) > tol * std::max(1.0, std::abs(root))) return;
      out.ambiguous = true;
      const double v = model1d::mu(j, model1d::RobinSpec::robin(g, xn), 1e-12);
      const bool inside_closed = v <= spec.b0;
      const bool counted = left ? (n_near >= r.n_min) : (n_near <= r.n_max);
      if (inside_closed && !counted) {
        if (left) r.n_min = n_near; else r.n_max = n_near;
      } else if (!inside_closed && counted) {
        if (left) r.n_min = n_near + 1; else r.n_max = n_near - 1;
      }
      if (inside_closed) ++ties;
    };
    if (!iv.empty) {
      resolve(iv.xi_minus, std::lround(iv.xi_minus / dxi), true);
      resolve(iv.xi_plus, std::lround(iv.xi_plus / dxi), false);
    }
    const long cnt = std::max(0L, r.n_max - r.n_min + 1);
    out.count += cnt;
    out.count_open += std::max(0L, cnt - ties);
    out.bands.push_back(r);
  }
  return out;
}

long cylinder_count(const CylinderSpec& spec) { return analyze(spec).count; }

double cylinder_leading(const CylinderSpec& spec) {
  validate(spec);
  return spec.S / (2.0 * kPi * std::sqrt(spec.h)) * levelsets::s_sum(spec.gamma_eff(), spec.b0, 1e-10).value;
}

CountReport mo_bound_check(const CylinderSpec& spec, std::optional<double> c_test) {
  const CylinderCount c = analyze(spec);
  CountReport r;
  r.spec = spec;
  r.exact_count = c.count;
  r.leading_term = spec.S / (2.0 * kPi * std::sqrt(spec.h)) * c.s_sum;
  r.difference = std::abs(static_cast<double>(c.count) - r.leading_term);
  r.relative_error = r.difference / std::max(r.leading_term, 1.0);
  r.c_test = c_test.value_or(2.0 * c.j_cutoff + 2.0);
  r.pass = r.difference <= r.c_test;
  r.ambiguous = c.ambiguous;
  r.j_cutoff = c.j_cutoff;
  r.bands = c.bands;
  return r;
}

StripBracket strip_bracket(const CylinderSpec& spec, double T, double delta, double c) {
  validate(spec);
  if (!(delta > 0.0 && delta <= 0.5 * spec.S)) throw ConfigurationError("delta must lie in (0, S/2]");
  if (!(T > 0.0)) throw ConfigurationError("T must be positive");
  StripBracket b;
  b.upper = cylinder_count(spec);
  b.lower_threshold = spec.b0 - c * spec.h * (1.0 / (delta * delta) + 1.0 / (T * T));
  if (b.lower_threshold <= 0.0) {
    b.lower = 0;
    return b;
  }
  CylinderSpec doubled = spec;
  doubled.S = 2.0 * (spec.S - delta);
  doubled.b0 = b.lower_threshold;
  const long n = cylinder_count(doubled);
  b.lower = (n + 1) / 2;
  return b;
}

}  // namespace robinlab::cylinder
