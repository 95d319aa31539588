#include <doctest.h>

#include <cmath>
#include <memory>

#include "robinlab/degennes.hpp"
#include "robinlab/errors.hpp"
#include "robinlab/weyl.hpp"

using namespace robinlab;
using geometry::GammaSpec;

namespace {

constexpr double kTheta0 = 0.59010612495023;  // parabolic_cylinder.py

const weyl::ThetaSource& grid_source() {
  static const weyl::ThetaSource s = weyl::ThetaSource::lazy_grid(0.05);
  return s;
}

}  // namespace

TEST_SUITE("weyl") {
  TEST_CASE("clamped quadrature of square-root edges") {
    const auto c = geometry::circle(1.0, 64);
    const double v = weyl::clamped_integral(
        c, [](double s) { return std::cos(s); }, [](double s) { return std::sqrt(std::max(0.0, std::cos(s))); });
    // 2 int_0^{pi/2} sqrt(cos) (mpmath)
    CHECK(v == doctest::Approx(2.3962804694711846).epsilon(1e-6));
  }

  TEST_CASE("theorem 1 with constant gamma is the cylinder leading term") {
    const auto c = geometry::circle(1.0, 64, GammaSpec::constant(-0.5));
    const auto e = weyl::thm1_leading(c, 0.5, 0.8, 0.01, weyl::ThetaSource::direct());
    CHECK(e.value == doctest::Approx(21.577163586841).epsilon(1e-7));
    CHECK(e.threshold == doctest::Approx(0.008));
    const auto f = weyl::thm1_leading(geometry::circle(1.0, 64), 1.0, 0.8, 0.01, weyl::ThetaSource::direct());
    CHECK(f.value == doctest::Approx(12.873450631338).epsilon(1e-7));
  }

  TEST_CASE("curvature case 1 on the unit circle") {
    const auto c = geometry::circle(1.0, 128);
    const double h = 1e-3;
    const auto e = weyl::thm4_leading(c, 0.0, 1.0, h, 1, grid_source());
    const double expect = 2.0 / std::sqrt(3.0 * std::sqrt(h) * std::sqrt(kTheta0));
    CHECK(e.value == doctest::Approx(expect).epsilon(1e-8));
    CHECK(e.threshold == doctest::Approx(h * kTheta0).epsilon(1e-9));
  }

  TEST_CASE("concentration formula specializes exactly") {
    const auto c = geometry::circle(1.0, 256, GammaSpec::constant(0.4));
    const double h = 1e-3, a = 0.5;
    const auto t42 = weyl::thm4_leading(c, a, 1.0, h, 2, grid_source());
    weyl::WeylOptions o;
    o.override_hypotheses = true;  // gap a C1 h^(1/2) is below c0 h^(1/2)
    const auto ce = weyl::ce_conc_leading(c, 1.0, t42.threshold / h, h, grid_source(), weyl::CeMode::Full, o);
    CHECK_FALSE(ce.violations.empty());
    CHECK(ce.value == doctest::Approx(t42.value).epsilon(1e-8));
  }

  TEST_CASE("hypotheses are enforced unless overridden") {
    const auto c = geometry::circle(1.0, 64);
    CHECK_THROWS_AS(weyl::thm2_leading(c, 0.0, 1.5, 1e-3), DomainError);
    weyl::WeylOptions o;
    o.override_hypotheses = true;
    const auto e = weyl::thm2_leading(c, 0.0, 1.5, 1e-3, o);
    CHECK_FALSE(e.violations.empty());
    CHECK_THROWS_AS(weyl::thm1_leading(c, 1.0, 0.8, 2.0, grid_source()), ConfigurationError);
  }

  TEST_CASE("lazy grid source agrees with direct minimization") {
    const auto direct = weyl::ThetaSource::direct();
    for (double g : {-0.37, 0.05, 0.61}) {
      const auto a = grid_source().at(g), b = direct.at(g);
      CHECK(a.theta == doctest::Approx(b.theta).epsilon(1e-7));
      CHECK(a.xi == doctest::Approx(b.xi).epsilon(1e-6));
      CHECK(a.theta_prime == doctest::Approx(b.theta_prime).epsilon(1e-5));
    }
    CHECK(grid_source().at(0.0).theta == doctest::Approx(kTheta0).epsilon(1e-10));
    CHECK(grid_source().at_least(5.0, 0.9));
  }

  TEST_CASE("theorem 1 details") {
    const auto src = weyl::ThetaSource::direct();
    // alpha > 1/2 does not see gamma
    const auto a = weyl::thm1_leading(geometry::circle(1.0, 64, GammaSpec::constant(0.3)), 1.0, 0.8, 0.01, src);
    const auto b = weyl::thm1_leading(geometry::circle(1.0, 64), 1.0, 0.8, 0.01, src);
    CHECK(a.value == b.value);
    // alpha = 1/2 with a varying weight: stable under doubling the samples
    const auto bump = GammaSpec::cosine_bump(-0.5, 0.4);
    const auto u = weyl::thm1_leading(geometry::circle(1.0, 32, bump), 0.5, 0.8, 0.01, grid_source());
    const auto v = weyl::thm1_leading(geometry::circle(1.0, 64, bump), 0.5, 0.8, 0.01, grid_source());
    CHECK(std::abs(u.value - v.value) <= 1e-6 * v.value);
    CHECK_THROWS_AS(weyl::thm1_leading(geometry::circle(1.0, 64), 1.0, 0.5, 0.01, src), DomainError);
  }

  TEST_CASE("theorem 2") {
    const double h = 1e-3, alpha = 0.75;
    const auto c = geometry::circle(1.0, 128);
    const auto e = weyl::thm2_leading(c, 1.0, alpha, h);
    CHECK(e.value == doctest::Approx(2.0 / std::sqrt(std::pow(h, 1.5 - alpha) * std::sqrt(kTheta0))).epsilon(1e-9));
    const auto& z = degennes::at_zero();
    CHECK(e.threshold == doctest::Approx(h * z.theta + 3.0 * degennes::c1(z) * std::pow(h, alpha + 0.5)));
    const auto c2 = geometry::circle(1.0, 128, GammaSpec::constant(0.2));
    CHECK(weyl::thm2_leading(c2, 0.1, alpha, h).value == 0.0);
    const auto r = weyl::thm2_leading(c2, 0.2, alpha, h);
    CHECK(r.value == 0.0);
    CHECK(r.note.find("T4.2") != std::string::npos);
  }

  TEST_CASE("theorem 3") {
    const double h = 1e-3;
    weyl::WeylOptions o;
    o.override_hypotheses = true;
    const auto c = geometry::circle(1.0, 128, GammaSpec::constant(0.2));
    const auto v = grid_source().at(0.2);
    CHECK(weyl::thm3_leading(c, v.theta - 0.01, h, grid_source(), o).value == 0.0);
    const double lambda = v.theta + 0.05;
    const auto e = weyl::thm3_leading(c, lambda, h, grid_source());
    const double xi = std::sqrt(v.theta + 0.04);
    CHECK(e.value == doctest::Approx(2.0 * std::sqrt(0.05 / (h * v.theta_prime * xi))).epsilon(1e-9));
    CHECK(weyl::thm3_leading(c, lambda + 0.01, h, grid_source()).value > e.value);
    CHECK_THROWS_AS(weyl::thm3_leading(c, v.theta + 1e-4, h, grid_source()), DomainError);
  }

  TEST_CASE("generic minimum: fitted constant stable over a decade") {
    const auto c = geometry::circle(1.0, 2048, GammaSpec::quadratic_well(0.0, 1.0));
    std::vector<double> coeff;
    for (double h : {1e-5, 1e-6}) {
      const auto e = weyl::thm3_generic(c, 1.0, 0.3, h, grid_source());
      coeff.push_back(e.value / std::pow(h, 0.3 - 0.5));
    }
    CHECK(std::abs(coeff[1] / coeff[0] - 1.0) < 0.05);
    // small-h constant of the well
    const double k = weyl::generic_well_constant(c.gamma, grid_source());
    CHECK(coeff[1] == doctest::Approx(k).epsilon(0.1));
  }

  TEST_CASE("theorem 4 cases") {
    const double h = 1e-3;
    const auto c = geometry::circle(1.0, 128);
    CHECK(weyl::thm4_leading(c, -1.0, 1.0, h, 1, grid_source()).value < 1e-12);
    const auto one = weyl::thm4_leading(c, 0.3, 1.0, h, 1, grid_source());
    const auto two = weyl::thm4_leading(c, 0.3, 1.0, h, 2, grid_source());
    CHECK(one.value == doctest::Approx(two.value).epsilon(1e-12));
    CHECK(one.threshold == doctest::Approx(two.threshold).epsilon(1e-12));
    CHECK(weyl::thm4_leading(c, 0.6, 1.0, h, 1, grid_source()).value > one.value);
    const auto c3 = geometry::circle(1.0, 128, GammaSpec::constant(-0.3));
    const auto src = weyl::ThetaSource::direct();
    const auto v = src.at(-0.3);
    const double xi = std::sqrt(v.theta + 0.09);
    const auto t = weyl::thm4_leading(c3, 0.0, 0.5, h, 3, src);
    CHECK(t.value == doctest::Approx(2.0 * (1.0 - 0.3 * xi) / std::sqrt(3.0 * std::sqrt(h) * xi)).epsilon(1e-9));
    CHECK(t.threshold == doctest::Approx(h * v.theta).epsilon(1e-9));
  }

  TEST_CASE("relaxed concentration regime on the circle") {
    const double h = 1e-3;
    const auto c = geometry::circle(1.0, 128);
    const auto e = weyl::ce_conc_leading(c, 1.0, kTheta0, h, grid_source(), weyl::CeMode::Relaxed);
    const auto [d2, d3] = degennes::d2d3(1.0, 0.0);
    CHECK(e.value == doctest::Approx(std::pow(h, -0.25) * 2.0 * std::sqrt(d3) / std::sqrt(d2)).epsilon(1e-6));
    CHECK(weyl::theorem_id(e.theorem) == std::string("CEconc-relaxed"));
  }

  TEST_CASE("power fit") {
    std::vector<double> h{1e-3, 1e-4, 1e-5}, v;
    for (double x : h) v.push_back(3.0 * std::pow(x, -0.2));
    const auto f = weyl::fit_power_law(h, v);
    CHECK(f.exponent == doctest::Approx(-0.2).epsilon(1e-12));
    CHECK(f.coefficient == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(f.max_log_residual < 1e-12);
  }
}
