// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance [--criterion N]...
//
// Exit status is 0 when every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "robinlab/curved.hpp"
#include "robinlab/cylinder.hpp"
#include "robinlab/degennes.hpp"
#include "robinlab/disc.hpp"
#include "robinlab/geometry.hpp"
#include "robinlab/model1d.hpp"
#include "robinlab/weyl.hpp"

using namespace robinlab;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* pattern, ...) {
  char buf[1024];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof buf, pattern, args);
  va_end(args);
  return buf;
}

// 1 -------------------------------------------------------------------------

Outcome solver_exactness() {
  double worst = 0.0;
  const auto p = model1d::band_point(model1d::RobinSpec::robin(0.0, 0.0), 4);
  for (int j = 1; j <= 4; ++j) {
    worst = std::max(worst, std::abs(p.mus[j - 1] - (4.0 * j - 3.0)));
    worst = std::max(worst, std::abs(model1d::mu_dirichlet(j, 0.0) - (4.0 * j - 1.0)));
  }
  return {worst <= 1e-7, fmt("max abs error %.3g (tol 1e-7)", worst)};
}

// 2 -------------------------------------------------------------------------

const std::vector<double> kGammaGrid{-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0};

Outcome degennes_identities() {
  double id = 0.0, der = 0.0;
  for (double g : kGammaGrid) {
    degennes::MinimizeOptions o;
    o.fd_step = 1e-4;
    const auto p = degennes::theta(g, o);
    id = std::max(id, std::abs(p.xi_min * p.xi_min - g * g - p.theta));
    der = std::max(der, p.residual_derivative);
  }
  return {id <= 1e-6 && der <= 1e-4,
          fmt("max |xi^2 - gamma^2 - Theta| %.3g (tol 1e-6), max |Theta' - |phi(0)|^2| %.3g (tol 1e-4)", id, der)};
}

// 3 -------------------------------------------------------------------------

Outcome feynman_hellmann() {
  const double step = 1e-4;
  double worst = 0.0;
  for (double g : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
    for (double xi : {-1.0, 0.0, 0.5, 1.0, 2.0}) {
      const auto spec = model1d::RobinSpec::robin(g, xi);
      const auto p = model1d::band_point(spec, 1);
      // fixed plan, so the difference quotient sees a smooth function
      const auto plan = model1d::plan_for(spec, 1, 1e-10);
      const double up = model1d::solve_fixed(model1d::RobinSpec::robin(g, xi + step), 1, plan).mus[0];
      const double dn = model1d::solve_fixed(model1d::RobinSpec::robin(g, xi - step), 1, plan).mus[0];
      const double dmu = (up - dn) / (2.0 * step);
      worst = std::max(worst, std::abs(dmu + (p.mus[0] - xi * xi + g * g) * p.boundary_sq[0]));
    }
  }
  return {worst <= 1e-3, fmt("max residual %.3g on the 5x5 grid (tol 1e-3)", worst)};
}

// 4 -------------------------------------------------------------------------

Outcome ordering() {
  double m1 = 1e300, m2 = 1e300, m3 = 1e300;
  double at1 = 0.0, at2 = 0.0, at3 = 0.0;
  for (int k = 0; k <= 60; ++k) {
    const double xi = -2.0 + 0.1 * k;
    const auto p = model1d::band_point(model1d::RobinSpec::robin(0.0, xi), 2);
    const double dir = model1d::mu_dirichlet(1, xi);
    if (p.mus[1] - dir < m1) m1 = p.mus[1] - dir, at1 = xi;
    if (dir - 1.0 < m2) m2 = dir - 1.0, at2 = xi;
  }
  for (double g : kGammaGrid) {
    const double gap = degennes::theta_k(g, 2).theta - degennes::theta(g).theta;
    if (gap < m3) m3 = gap, at3 = g;
  }
  const bool ok = m1 > 1e-6 && m2 > 1e-6 && m3 > 1e-6;
  return {ok, fmt("min mu_2 - mu_1^D %.4g (xi=%.1f), min mu_1^D - 1 %.4g (xi=%.1f), min Theta_2 - Theta %.4g "
                  "(gamma=%.1f); margin 1e-6",
                  m1, at1, m2, at2, m3, at3)};
}

// 5 -------------------------------------------------------------------------

Outcome cylinder_deviation() {
  double worst = 0.0, rlo = 1e300, rhi = -1e300;
  int vacuous = 0;
  bool ok = true;
  for (double alpha : {0.5, 1.0}) {
    for (double gamma : {-0.5, 0.0, 0.5}) {
      for (int k = 3; k <= 7; ++k) {
        const cylinder::CylinderSpec s{2.0 * kPi, std::pow(4.0, -k), alpha, gamma, 0.8};
        const long n = cylinder::cylinder_count(s);
        const double lead = cylinder::cylinder_leading(s);
        worst = std::max(worst, std::abs(n - lead));
        if (std::abs(n - lead) > 4.0) ok = false;
        if (k >= 6) {
          if (lead == 0.0 && n == 0) {
            ++vacuous;  // empty sublevel set: nothing to compare
            continue;
          }
          const double r = n / lead;
          rlo = std::min(rlo, r);
          rhi = std::max(rhi, r);
          if (r < 0.9 || r > 1.1) ok = false;
        }
      }
    }
  }
  return {ok, fmt("max |count - leading| %.3f (bound 4), ratio range [%.4f, %.4f] for h <= 4^-6 (need [0.9, 1.1]); "
                  "%d vacuous cases with empty sublevel set",
                  worst, rlo, rhi, vacuous)};
}

// 6, 7 ----------------------------------------------------------------------

struct DiscSeries {
  std::vector<double> ratio;
  std::string text;
};

DiscSeries disc_series(bool curvature) {
  const auto curve = geometry::circle(1.0, 256);
  const auto src = weyl::ThetaSource::direct();
  DiscSeries out;
  for (double h : {2e-2, 1e-2, 5e-3}) {
    const auto e = curvature ? weyl::thm4_leading(curve, 0.0, 1.0, h, 1, src)
                             : weyl::thm1_leading(curve, 1.0, 0.8, h, src);
    const auto c = disc::disc_count({1.0, h, 1.0, 0.0, e.threshold});
    out.ratio.push_back(c.count / e.value);
    out.text += fmt("%sh=%g: %ld/%.4f=%.4f", out.text.empty() ? "" : ", ", h, c.count, e.value, out.ratio.back());
  }
  return out;
}

bool closer_each_step(const std::vector<double>& r) {
  for (std::size_t i = 1; i < r.size(); ++i)
    if (!(std::abs(r[i] - 1.0) < std::abs(r[i - 1] - 1.0))) return false;
  return true;
}

Outcome disc_theorem1() {
  const auto s = disc_series(false);
  const bool band = s.ratio.back() >= 0.85 && s.ratio.back() <= 1.15;
  const bool mono = closer_each_step(s.ratio);
  return {band && mono, s.text + fmt("; ratio at 5e-3 in [0.85, 1.15]: %s; |ratio - 1| decreasing: %s",
                                     band ? "yes" : "no", mono ? "yes" : "no")};
}

Outcome disc_theorem4() {
  const auto s = disc_series(true);
  const bool band = s.ratio.back() >= 0.75 && s.ratio.back() <= 1.25;
  const bool mono = closer_each_step(s.ratio);
  return {band && mono, s.text + fmt("; ratio at 5e-3 in [0.75, 1.25]: %s; trending to 1: %s", band ? "yes" : "no",
                                     mono ? "yes" : "no")};
}

// 8 -------------------------------------------------------------------------

Outcome curved_expansion() {
  const auto& z = degennes::at_zero();
  const std::vector<double> hs{1e-2, 1e-3, 1e-4};
  bool ok = true;
  std::string text;
  std::vector<double> mu_minus, mu_plus;
  for (double beta : {-1.0, 1.0}) {
    std::vector<double> res;
    for (double h : hs) {
      const auto e = curved::expansion_residual({h, beta, z.xi_min, 1.0, 0.0, 0.45});
      res.push_back(std::abs(e.residual));
      (beta < 0 ? mu_minus : mu_plus).push_back(e.mu);
    }
    const auto fit = weyl::fit_power_law(hs, res);
    if (!(fit.exponent >= 0.6)) ok = false;
    text += fmt("beta=%+g residuals %.3g, %.3g, %.3g slope %.3f; ", beta, res[0], res[1], res[2], fit.exponent);
  }
  bool order = true;
  for (std::size_t i = 0; i < hs.size(); ++i) order = order && mu_plus[i] < mu_minus[i];
  ok = ok && order;
  return {ok, text + fmt("slope >= 0.6 needed; mu_1 decreasing in beta: %s", order ? "yes" : "no")};
}

// 9 -------------------------------------------------------------------------

Outcome weighted_cylinder() {
  const auto& z = degennes::at_zero();
  std::vector<double> rel;
  std::string text;
  bool ok = true;
  for (double h : {1e-3, 1e-4}) {
    curved::LTildeSpec s;
    s.h = h;
    s.beta = 1.0;
    s.alpha = 1.0;
    s.eta = 0.0;
    s.lambda = z.theta + std::pow(h, 0.4);
    s.delta = 0.26;
    s.rho = (s.delta - 0.25) / 2.0;
    const auto c = curved::ltilde_count(s);
    rel.push_back(std::abs(c.count - c.leading) / c.leading);
    if (rel.back() > 0.15) ok = false;
    text += fmt("h=%g: count %ld, leading %.3f, rel %.4f; ", h, c.count, c.leading, rel.back());
  }
  ok = ok && rel[1] < rel[0];
  return {ok, text + "tol 0.15 and decreasing (delta = 0.26)"};
}

// 10 ------------------------------------------------------------------------

Outcome generic_minimum() {
  const auto curve = geometry::circle(1.0, 2048, geometry::GammaSpec::quadratic_well(0.0, 1.0));
  const auto src = weyl::ThetaSource::lazy_grid(0.05);
  std::vector<double> hs, vs;
  for (int k = 0; k < 5; ++k) {
    const double h = 1e-5 * std::pow(10.0, -k / 4.0);
    hs.push_back(h);
    vs.push_back(weyl::thm3_generic(curve, 1.0, 0.3, h, src).value);
  }
  const auto fit = weyl::fit_power_law(hs, vs);
  const double expect = 0.3 - 0.5;
  return {std::abs(fit.exponent - expect) <= 0.02,
          fmt("fitted exponent %.4f over h in [1e-6, 1e-5], expected %.2f +- 0.02 (coefficient %.4f)",
              fit.exponent, expect, fit.coefficient)};
}

// 11 ------------------------------------------------------------------------

Outcome specialization() {
  const auto src = weyl::ThetaSource::lazy_grid(0.05);
  // The identity is algebraic; T4 thresholds sit on the border of the
  // concentration regime (gap a C1 h^(1/2)), so its checks are not applied.
  weyl::WeylOptions loose;
  loose.override_hypotheses = true;
  double worst = 0.0;
  int cases = 0;
  auto track = [&](double a, double b) {
    worst = std::max(worst, std::abs(a - b) / std::abs(b));
    ++cases;
  };
  for (double h : {1e-2, 1e-3}) {
    const auto c0 = geometry::circle(1.0, 512);
    for (double a : {-0.5, 0.0, 1.0}) {
      const auto t = weyl::thm4_leading(c0, a, 1.0, h, 1, src);
      track(weyl::ce_conc_leading(c0, 1.0, t.threshold / h, h, src, weyl::CeMode::Full, loose).value, t.value);
    }
    const auto c2 = geometry::circle(1.0, 512, geometry::GammaSpec::constant(0.4));
    const auto t2 = weyl::thm4_leading(c2, 0.5, 1.0, h, 2, src);
    track(weyl::ce_conc_leading(c2, 1.0, t2.threshold / h, h, src, weyl::CeMode::Full, loose).value, t2.value);
    const auto c3 = geometry::circle(1.0, 512, geometry::GammaSpec::constant(-0.3));
    const auto t3 = weyl::thm4_leading(c3, 0.0, 0.5, h, 3, src);
    track(weyl::ce_conc_leading(c3, 0.5, t3.threshold / h, h, src, weyl::CeMode::Full, loose).value, t3.value);
    const auto cb = geometry::circle(1.0, 512, geometry::GammaSpec::cosine_bump(-0.2, 0.5));
    const double lambda = src.at(-0.2).theta + std::pow(h, 0.3);
    const auto t = weyl::thm3_leading(cb, lambda, h, src);
    track(weyl::ce_conc_leading(cb, 0.5, lambda, h, src, weyl::CeMode::DominantThreshold, loose).value, t.value);
  }
  return {worst <= 1e-8, fmt("max relative difference %.3g over %d cases (tol 1e-8)", worst, cases)};
}

// 12 ------------------------------------------------------------------------

Outcome geometry_sanity() {
  const auto c = geometry::circle(1.0, 512);
  const auto e = geometry::ellipse(2.0, 1.0, 512);
  const double tc = std::abs(geometry::turning(c) - 2.0 * kPi);
  const double te = std::abs(geometry::turning(e) - 2.0 * kPi);
  const double pc = std::abs(c.perimeter - 2.0 * kPi);
  return {tc <= 1e-6 && te <= 1e-6 && pc <= 1e-10,
          fmt("turning error circle %.2g, ellipse %.2g (tol 1e-6); circle perimeter error %.2g (tol 1e-10)", tc, te,
              pc)};
}

struct Criterion {
  int id;
  const char* title;
  double budget;  // seconds
  std::function<Outcome()> run;
};

const std::vector<Criterion> kCriteria{
    {1, "1D solver exactness", 1.0, solver_exactness},
    {2, "de Gennes identities", 30.0, degennes_identities},
    {3, "Feynman-Hellmann in xi", 30.0, feynman_hellmann},
    {4, "ordering of bands", 1e300, ordering},
    {5, "half-cylinder uniform deviation", 120.0, cylinder_deviation},
    {6, "leading term on the disc", 600.0, disc_theorem1},
    {7, "curvature term on the disc", 600.0, disc_theorem4},
    {8, "curved-model expansion", 120.0, curved_expansion},
    {9, "weighted-cylinder counting", 300.0, weighted_cylinder},
    {10, "generic-minimum scaling", 60.0, generic_minimum},
    {11, "specialization identity", 10.0, specialization},
    {12, "geometry sanity", 1e300, geometry_sanity},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      wanted.push_back(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]...\n", argv[0]);
      return 2;
    }
  }
  int failed = 0;
  for (const auto& c : kCriteria) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget;
    const bool pass = o.pass && in_time;
    std::string timing = fmt("%.2f s", secs);
    if (c.budget < 1e300) timing += fmt(" (limit %g s)", c.budget);
    std::printf("%s criterion %d (%s): %s; %s\n", pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(),
                timing.c_str());
    std::fflush(stdout);
    if (!pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
