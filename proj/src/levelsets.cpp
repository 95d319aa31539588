#include "robinlab/levelsets.hpp"

#include <cmath>
#include <cstdio>

#include "robinlab/errors.hpp"

namespace robinlab::levelsets {

using model1d::RobinSpec;

double band_ceiling(int j, double gamma) {
  const double far = 10.0 + 2.0 * std::abs(gamma) + 2.0 * std::sqrt(2.0 * j);
  return model1d::mu(j, RobinSpec::robin(gamma, far), 1e-10);
}

namespace {

// Root of f on [lo, hi] where f(lo) and f(hi) have opposite signs.
double monotone_root(const auto& f, double lo, double hi, double flo, double fhi, double width) {
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  double x = (fhi != flo) ? lo - flo * (hi - lo) / (fhi - flo) : 0.5 * (lo + hi);
  double xp = (std::abs(flo) < std::abs(fhi)) ? lo : hi;
  double fxp = (xp == lo) ? flo : fhi;
  for (int it = 0; it < 3; ++it) {
    const double fx = f(x);
    if (fx == fxp || fx == 0.0) break;
    const double next = x - fx * (x - xp) / (fx - fxp);
    xp = x;
    fxp = fx;
    // Secant steps are accepted only while they stay inside the bracket.
    if (!(next >= lo && next <= hi)) break;
    x = next;
  }
  return x;
}

}  // namespace

LevelSetInterval xi_pm(int j, double gamma, double b, double tol, std::optional<degennes::BandMinimum> known_min) {
  if (j < 1) throw ConfigurationError("band index starts at 1");
  if (!(tol > 0.0)) throw ConfigurationError("tolerance must be positive");
  if (!std::isfinite(b) || !std::isfinite(gamma)) throw ConfigurationError("gamma and b must be finite");

  LevelSetInterval out;
  out.j = j;
  out.gamma = gamma;
  out.b = b;
  out.ceiling = band_ceiling(j, gamma);
  if (!(b < out.ceiling)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "threshold b=%.10g is not below the band ceiling %.10g of band %d", b,
                  out.ceiling, j);
    throw DomainError(buf);
  }
  const degennes::BandMinimum bm = known_min ? *known_min : degennes::theta_k(gamma, j, std::min(1e-10, tol));
  out.band_min = bm.theta;
  out.band_min_xi = bm.xi;
  out.boundary = std::abs(b - bm.theta) < tol;
  if (b <= bm.theta) {
    out.empty = true;
    out.xi_minus = out.xi_plus = bm.xi;
    out.measure = 0.0;
    return out;
  }

  const auto plan = model1d::plan_for(RobinSpec::robin(gamma, bm.xi), j, std::min(1e-10, 0.1 * tol), {}, false);
  auto f = [&](double xi) { return model1d::solve_fixed(RobinSpec::robin(gamma, xi), j, plan).mus[j - 1] - b; };
  const double f0 = f(bm.xi);
  if (!(f0 < 0.0)) {
    // The threshold sits inside the discretization noise of the minimum.
    out.empty = true;
    out.boundary = true;
    out.xi_minus = out.xi_plus = bm.xi;
    return out;
  }

  double step = 1.0, left = bm.xi - step, fl = f(left);
  for (int it = 0; fl < 0.0; ++it) {
    if (it > 40) throw NumericError("left level-set root not bracketed");
    step *= 2.0;
    left = bm.xi - step;
    fl = f(left);
  }
  step = 1.0;
  double right = bm.xi + step, fr = f(right);
  for (int it = 0; fr < 0.0; ++it) {
    if (right > bm.xi + 64.0) {
      throw DomainError("right level-set root escapes to infinity (threshold too close to the band ceiling)");
    }
    step *= 1.5;
    right = bm.xi + step;
    fr = f(right);
  }
  const double width = 0.1 * tol;
  out.xi_minus = monotone_root(f, left, bm.xi, fl, f0, width);
  out.xi_plus = monotone_root(f, bm.xi, right, f0, fr, width);
  out.measure = out.xi_plus - out.xi_minus;
  out.empty = false;
  return out;
}

SSum s_sum(double gamma, double b, double tol) {
  if (!(b < 1.0)) throw DomainError("the summed level-set measure requires b < 1");
  SSum s;
  for (int j = 1;; ++j) {
    if (j > kMaxBands) throw ResourceError("band cutoff exceeds the hard limit");
    const degennes::BandMinimum bm = degennes::theta_k(gamma, j, std::min(1e-10, tol));
    if (bm.theta >= b) {
      s.j_cutoff = j;
      return s;
    }
    s.value += xi_pm(j, gamma, b, tol, bm).measure;
  }
}

}  // namespace robinlab::levelsets
