#include "robinlab/disc.hpp"

#include <algorithm>
#include <cmath>

#include "robinlab/errors.hpp"
#include "robinlab/parallel.hpp"

namespace robinlab::disc {

double DiscSpec::gamma_eff() const { return std::pow(h, alpha - 0.5) * gamma; }

double DiscSpec::rho_R() const { return R / std::sqrt(h); }

void validate(const DiscSpec& spec) {
  if (!(spec.R > 0.0) || !std::isfinite(spec.R)) throw ConfigurationError("R must be positive");
  if (!(spec.h > 0.0 && spec.h < 1.0)) throw ConfigurationError("h must lie in (0, 1)");
  if (!(spec.alpha >= 0.5)) throw ConfigurationError("alpha must be >= 1/2");
  if (!std::isfinite(spec.gamma) || !std::isfinite(spec.lambda)) throw ConfigurationError("gamma and lambda must be finite");
  if (!(spec.lambda < spec.h)) throw DomainError("lambda must be below h (discrete spectrum regime)");
}

Pencil radial_pencil(const DiscSpec& spec, long m, int n) {
  if (n < 64) throw ConfigurationError("radial grid needs at least 64 cells");
  const double rr = spec.rho_R();
  const double d = rr / n;
  const double mm = static_cast<double>(m);
  auto v = [&](double rho) {
    const double a = mm / rho - 0.5 * rho;
    return a * a;
  };
  const int first = (m == 0) ? 0 : 1;
  const int count = n + 1 - first;
  Pencil p;
  p.edge.resize(count - 1);
  p.potential.resize(count);
  p.mass.resize(count);
  for (int i = first; i <= n; ++i) {
    const double rho = i * d;
    double w;
    if (i == 0) {
      w = d * d / 8.0;
    } else if (i == n) {
      w = 0.5 * d * (rho - 0.25 * d);
    } else {
      w = rho * d;
    }
    p.mass[i - first] = w;
    p.potential[i - first] = (i == 0) ? 0.0 : v(rho) * w;
    if (i < n) p.edge[i - first] = (i + 0.5) * d / d;
  }
  if (m != 0) p.edge_left = 0.5 * d / d;
  p.potential[count - 1] += spec.gamma_eff() * rr;
  return p;
}

double mode_lower_bound(const DiscSpec& spec, long m) {
  const double rr = spec.rho_R();
  const double mm = static_cast<double>(m);
  double floor_v;
  if (m <= 0) {
    floor_v = 2.0 * std::abs(mm);
  } else if (mm <= 0.5 * rr * rr) {
    floor_v = 0.0;
  } else {
    const double a = mm / rr - 0.5 * rr;
    floor_v = a * a;
  }
  const double g = spec.gamma_eff();
  if (g < 0.0) {
    // |u(rho_R)|^2 rho_R <= kappa [(1/l + 1/eps) |u|^2 + eps |u'|^2] on the
    // outer shell of width l, with eps chosen to absorb the kinetic term.
    const double l = std::min(1.0, 0.5 * rr);
    const double kappa = rr / (rr - l);
    floor_v -= -g * kappa * (1.0 / l - g * kappa);
  }
  return floor_v;
}

RadialCount disc_radial_count(const DiscSpec& spec, long m, const DiscOptions& options) {
  validate(spec);
  const double target = spec.scaled_lambda();
  const int n0 = std::max(512, 64 * static_cast<int>(std::ceil(spec.rho_R())));
  auto build = [&](int n) { return radial_pencil(spec, m, n); };

  RadialCount out;
  out.m = m;
  if (mode_lower_bound(spec, m) > target) return out;

  int k = count_below(build(n0), target + 0.05) + 1;
  for (;;) {
    const auto res = converge_eigenvalues(build, k, n0, options.max_doublings, options.tol);
    if (!res.converged) {
      throw AccuracyError("radial eigenvalues did not converge", res.values.back(), res.change);
    }
    if (res.values.back() > target) {
      out.eigenvalues = res.values;
      break;
    }
    k += 1;
  }
  for (double v : out.eigenvalues) {
    if (v <= target) ++out.count;
    if (std::abs(v - target) < 10.0 * options.tol) out.ambiguous = true;
  }
  return out;
}

namespace {

// All m < lo and m > hi have a lower bound above the threshold.
bool window_certified(const DiscSpec& spec, long lo, long hi) {
  const double target = spec.scaled_lambda();
  const double rr = spec.rho_R();
  bool low_ok;
  if (lo - 1 <= 0) {
    low_ok = mode_lower_bound(spec, lo - 1) > target;
  } else {
    low_ok = mode_lower_bound(spec, 1) > target && mode_lower_bound(spec, 0) > target;
  }
  const bool high_ok = static_cast<double>(hi + 1) > 0.5 * rr * rr && mode_lower_bound(spec, hi + 1) > target;
  return low_ok && high_ok;
}

}  // namespace

DiscCount disc_count(const DiscSpec& spec, const DiscOptions& options) {
  validate(spec);
  const double c = spec.R * spec.R / (2.0 * spec.h);
  const long w = static_cast<long>(std::ceil(4.0 * std::sqrt(c) + 16.0));
  long lo = static_cast<long>(std::floor(c)) - w;
  long hi = static_cast<long>(std::ceil(c)) + w;
  while (!window_certified(spec, lo, hi)) {
    const double target = spec.scaled_lambda();
    if (!(mode_lower_bound(spec, lo - 1) > target) || lo - 1 > 0) lo -= w;
    if (!(static_cast<double>(hi + 1) > 0.5 * spec.rho_R() * spec.rho_R() && mode_lower_bound(spec, hi + 1) > target)) {
      hi += w;
    }
    if (hi - lo > options.max_window) throw ResourceError("angular mode window exceeds the hard limit");
  }
  // Modes below the seed whose bound already certifies them need no solve;
  // shrink the window to the first uncertified mode from each side.
  while (lo < hi && mode_lower_bound(spec, lo) > spec.scaled_lambda()) ++lo;
  while (hi > lo && mode_lower_bound(spec, hi) > spec.scaled_lambda()) --hi;

  DiscCount out;
  out.m_min = lo;
  out.m_max = hi;
  out.certified = true;
  const auto counts = parallel_map(
      static_cast<std::size_t>(hi - lo + 1),
      [&](std::size_t i) { return disc_radial_count(spec, lo + static_cast<long>(i), options); }, options.workers);
  for (const auto& rc : counts) {
    out.count += rc.count;
    out.ambiguous = out.ambiguous || rc.ambiguous;
    if (rc.count > 0) out.modes.push_back(rc);
  }
  return out;
}

}  // namespace robinlab::disc
