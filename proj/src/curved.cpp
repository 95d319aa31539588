#include "robinlab/curved.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

#include "robinlab/errors.hpp"

namespace robinlab::curved {

namespace {
constexpr double kPi = 3.14159265358979323846;

degennes::DeGennesPoint point_at(double gamma) {
  if (gamma == 0.0) return degennes::at_zero();
  degennes::MinimizeOptions o;
  o.tol = 1e-10;
  o.fd_step = 0.0;
  return degennes::theta(gamma, o);
}
}  // namespace

double WeightedModelSpec::eta_tilde() const { return std::pow(h, alpha - 0.5) * eta; }

double WeightedModelSpec::length() const { return std::pow(h, delta - 0.5); }

void validate(const WeightedModelSpec& spec) {
  if (!(spec.h > 0.0 && spec.h <= 1.0)) throw ConfigurationError("h must lie in (0, 1]");
  if (!(spec.alpha >= 0.5)) throw ConfigurationError("alpha must be >= 1/2");
  if (!(spec.delta > 0.25 && spec.delta < 0.5)) throw ConfigurationError("delta must lie in (1/4, 1/2)");
  if (!(std::abs(spec.beta) * std::pow(spec.h, spec.delta) < 1.0 / 3.0)) {
    throw DomainError("weight positivity requires |beta| h^delta < 1/3");
  }
  if (!std::isfinite(spec.xi) || !std::isfinite(spec.eta)) throw ConfigurationError("xi and eta must be finite");
}

Pencil discretize(const WeightedModelSpec& spec, int n) {
  validate(spec);
  if (n < 64) throw ConfigurationError("grid needs at least 64 cells");
  const double len = spec.length();
  const double d = len / n;
  const double bh = spec.beta * std::sqrt(spec.h);
  auto weight = [&](double t) { return 1.0 - bh * t; };
  auto potential = [&](double t) {
    const double a = t - spec.xi - 0.5 * bh * t * t;
    return (1.0 + 2.0 * bh * t) * a * a;
  };

  Pencil p;
  p.edge.resize(n - 1);
  p.potential.resize(n);
  p.mass.resize(n);
  for (int k = 0; k + 1 < n; ++k) p.edge[k] = weight((k + 0.5) * d) / d;
  p.edge_right = weight((n - 0.5) * d) / d;
  for (int i = 0; i < n; ++i) {
    const double t = i * d;
    const double w = (i == 0 ? 0.5 * d : d) * weight(t);
    if (!(w > 0.0)) throw DomainError("weight is not positive on the interval");
    p.mass[i] = w;
    p.potential[i] = potential(t) * w;
  }
  p.potential[0] += spec.eta_tilde();
  return p;
}

namespace {

std::vector<double> weighted_mus(const WeightedModelSpec& spec, int k, const WeightedOptions& options) {
  validate(spec);
  const auto res = converge_eigenvalues([&](int n) { return discretize(spec, n); }, k, options.n0,
                                        options.max_doublings, options.tol);
  if (!res.converged) {
    throw AccuracyError("weighted model did not converge", res.values.back(), res.change);
  }
  return res.values;
}

}  // namespace

double weighted_mu(const WeightedModelSpec& spec, int j, const WeightedOptions& options) {
  if (j < 1) throw ConfigurationError("band index starts at 1");
  return weighted_mus(spec, j, options)[j - 1];
}

Expansion expansion_residual(const WeightedModelSpec& spec, const WeightedOptions& options) {
  Expansion e;
  const degennes::DeGennesPoint pt = point_at(spec.eta_tilde());
  e.theta = pt.theta;
  e.xi_star = pt.xi_min;
  const auto [d2, d3] = (spec.alpha > 0.5) ? degennes::d2d3(spec.alpha, degennes::at_zero())
                                           : degennes::d2d3(spec.alpha, point_at(spec.eta));
  e.d2 = d2;
  e.d3 = d3;
  const double dx = spec.xi - e.xi_star;
  e.model_value = e.theta + d2 * dx * dx - d3 * spec.beta * std::sqrt(spec.h);
  e.mu = weighted_mu(spec, 1, options);
  e.residual = std::abs(e.mu - e.model_value);
  return e;
}

double conc_n_leading(const LTildeSpec& spec) {
  const double eta_t = std::pow(spec.h, spec.alpha - 0.5) * spec.eta;
  const double theta = point_at(eta_t).theta;
  const auto [d2, d3] = (spec.alpha > 0.5) ? degennes::d2d3(spec.alpha, degennes::at_zero())
                                           : degennes::d2d3(spec.alpha, point_at(spec.eta));
  const double inner = d3 * spec.beta + (spec.lambda - theta) / std::sqrt(spec.h);
  if (inner <= 0.0) return 0.0;
  return std::pow(spec.h, -0.25) * spec.S / (kPi * std::sqrt(d2)) * std::sqrt(inner);
}

LTildeCount ltilde_count(const LTildeSpec& spec, const WeightedOptions& options) {
  if (!(spec.S > 0.0)) throw ConfigurationError("S must be positive");
  const double rho0 = (spec.alpha == 0.5) ? spec.delta - 0.25 : std::min(spec.delta - 0.25, spec.alpha - 0.5);
  if (!(spec.rho > 0.0 && spec.rho < rho0)) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "rho=%.4g must lie in (0, %.4g)", spec.rho, rho0);
    throw ConfigurationError(buf);
  }
  LTildeCount out;
  const double eta_t = std::pow(spec.h, spec.alpha - 0.5) * spec.eta;
  const degennes::DeGennesPoint pt = point_at(eta_t);
  out.theta = pt.theta;
  const auto [d2, d3] = (spec.alpha > 0.5) ? degennes::d2d3(spec.alpha, degennes::at_zero())
                                           : degennes::d2d3(spec.alpha, point_at(spec.eta));
  out.d2 = d2;
  out.d3 = d3;
  out.regime_ok = std::abs(spec.lambda - pt.theta) < spec.zeta0 * std::pow(spec.h, 2.0 * spec.rho);
  if (!out.regime_ok && !spec.override_regime) {
    char buf[192];
    std::snprintf(buf, sizeof buf,
                  "regime violated: |lambda - Theta(eta~)| = %.4g is not below zeta0 h^(2 rho) = %.4g",
                  std::abs(spec.lambda - pt.theta), spec.zeta0 * std::pow(spec.h, 2.0 * spec.rho));
    throw DomainError(buf);
  }
  out.leading = conc_n_leading(spec);

  const double dxi = 2.0 * kPi * std::sqrt(spec.h) / spec.S;
  const long center = std::lround(pt.xi_min / dxi);
  std::map<long, std::vector<double>> values;
  auto eval = [&](long n) -> const std::vector<double>& {
    auto it = values.find(n);
    if (it != values.end()) return it->second;
    WeightedModelSpec w{spec.h, spec.beta, n * dxi, spec.alpha, spec.eta, spec.delta};
    return values.emplace(n, weighted_mus(w, 2, options)).first->second;
  };

  constexpr long kMaxModes = 200000;
  auto walk = [&](int dir) {
    long n = center;
    int above = 0;
    double last = -std::numeric_limits<double>::infinity();
    long extreme = center;
    while (above < 3) {
      n += dir;
      if (std::abs(n - center) > kMaxModes) throw ResourceError("Fourier mode window exceeds the hard limit");
      const double v = eval(n)[0];
      extreme = n;
      if (v > spec.lambda && v > last) {
        ++above;
      } else {
        above = 0;
      }
      last = v;
    }
    return extreme;
  };
  eval(center);
  out.scanned_max = walk(+1);
  out.scanned_min = walk(-1);

  for (const auto& [n, v] : values) {
    if (v[0] <= spec.lambda) {
      if (out.count == 0) out.n_min = n;
      out.n_max = n;
      ++out.count;
      if (!(v[1] > spec.lambda)) out.second_band_clear = false;
    }
  }
  return out;
}

}  // namespace robinlab::curved
