#include <doctest.h>

#include <cmath>
#include <sstream>

#include "robinlab/errors.hpp"
#include "robinlab/geometry.hpp"
#include "robinlab/weyl.hpp"

using namespace robinlab;
using geometry::GammaSpec;

TEST_SUITE("geometry") {
  TEST_CASE("circle") {
    const auto c = geometry::circle(2.0, 256);
    CHECK(std::abs(c.perimeter - 4.0 * M_PI) < 1e-12);
    CHECK(std::abs(geometry::turning(c) - 2.0 * M_PI) < 1e-12);
    for (double k : c.curvature) CHECK(k == doctest::Approx(0.5));
    // counterclockwise, nu inward
    CHECK(c.tangents[0].y > 0.0);
    CHECK(c.normals[0].x < 0.0);
    CHECK(geometry::frenet_defect(c) < 1e-6);
    CHECK(geometry::jacobian(c, std::size_t{3}, 0.4) == doctest::Approx(0.8));
  }

  TEST_CASE("ellipse") {
    const auto e = geometry::ellipse(2.0, 1.0, 512);
    // 4 a E(1 - b^2/a^2), mpmath (tests/oracles/derived_values.py)
    CHECK(std::abs(e.perimeter - 9.6884482205476754) < 1e-10);
    CHECK(std::abs(geometry::turning(e) - 2.0 * M_PI) < 1e-10);
    CHECK(geometry::frenet_defect(e) < 1e-4);
    // vertex curvatures a/b^2 and b/a^2
    CHECK(e.curvature[0] == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(e.curvature_at(e.perimeter / 4) == doctest::Approx(0.25).epsilon(1e-3));
    // equal arclength spacing
    for (std::size_t i = 1; i < e.size(); i += 37) {
      const double dx = e.points[i].x - e.points[i - 1].x, dy = e.points[i].y - e.points[i - 1].y;
      CHECK(std::hypot(dx, dy) == doctest::Approx(e.spacing()).epsilon(1e-4));
    }
  }

  TEST_CASE("ellipse with equal axes is the circle") {
    const auto e = geometry::ellipse(1.5, 1.5, 64);
    const auto c = geometry::circle(1.5, 64);
    for (std::size_t i = 0; i < 64; ++i) {
      CHECK(std::abs(e.points[i].x - c.points[i].x) < 1e-12);
      CHECK(std::abs(e.curvature[i] - c.curvature[i]) < 1e-12);
    }
  }

  TEST_CASE("gamma profiles") {
    const double P = 2.0 * M_PI;
    const auto bump = GammaSpec::cosine_bump(-0.5, 0.4, 1.0);
    CHECK(bump(1.0, P) == doctest::Approx(-0.1));
    CHECK(bump(1.0 + M_PI, P) == doctest::Approx(-0.5));
    CHECK(bump.min_value(P) == doctest::Approx(-0.5));
    CHECK(bump.max_value(P) == doctest::Approx(-0.1));
    const auto well = GammaSpec::quadratic_well(0.2, 3.0);
    CHECK(well(0.0, P) == doctest::Approx(0.2));
    CHECK(well(1e-3, P) == doctest::Approx(0.2 + 3e-6).epsilon(1e-9));
    CHECK(well.max_value(P) == doctest::Approx(0.2 + 3.0 * P * P / (M_PI * M_PI)));
    CHECK(GammaSpec::constant(0.3).is_constant());
    CHECK(geometry::parse_gamma_kind("quadratic-well") == geometry::GammaKind::QuadraticWell);
    CHECK(std::string(geometry::gamma_kind_name(geometry::GammaKind::CosineBump)) == "cosine-bump");
    CHECK_THROWS_AS(geometry::parse_gamma_kind("sawtooth"), ConfigurationError);
  }

  TEST_CASE("refinement") {
    const auto e = geometry::ellipse(2.0, 1.0, 256);
    const auto f = geometry::ellipse(2.0, 1.0, 512);
    CHECK(std::abs(e.perimeter - f.perimeter) < 1e-8);
    // smooth integrand: periodic trapezoid
    auto smooth = [](const geometry::BoundaryCurve& c) {
      return geometry::boundary_integral(c, [&](std::size_t i) { return std::sqrt(std::max(0.0, c.curvature[i] + 0.5)); });
    };
    CHECK(std::abs(smooth(e) - smooth(f)) < 1e-6);
    // clamp active on part of the curve: edge-aware quadrature
    auto clamped = [](const geometry::BoundaryCurve& c) {
      return weyl::clamped_integral(
          c, [&](double s) { return c.curvature_at(s) - 0.5; },
          [&](double s) { return std::sqrt(std::max(0.0, c.curvature_at(s) - 0.5)); });
    };
    CHECK(std::abs(clamped(e) - clamped(f)) < 1e-6);
    CHECK(geometry::boundary_integral(e, [](std::size_t) { return 1.0; }) == doctest::Approx(e.perimeter));
    CHECK(geometry::jacobian(e, e.perimeter / 4, 0.5) == doctest::Approx(1.0 - 0.5 * e.curvature_at(e.perimeter / 4)));
  }

  TEST_CASE("presets, integrals and csv") {
    const auto c = geometry::curve_preset("circle", {1.0}, 128, GammaSpec::constant(0.1));
    CHECK(geometry::boundary_integral(c, [&](std::size_t i) { return c.gamma_samples[i]; }) ==
          doctest::Approx(0.2 * M_PI));
    const auto d = geometry::with_gamma(c, GammaSpec::constant(-1.0));
    CHECK(d.gamma_samples[5] == -1.0);
    CHECK_THROWS_AS(geometry::curve_preset("square", {1.0}, 128), ConfigurationError);
    CHECK_THROWS_AS(geometry::circle(-1.0, 128), Error);
    std::ostringstream out;
    geometry::write_csv(c, out);
    CHECK(out.str().rfind("s,x,y,kappa_r,gamma\n", 0) == 0);
  }
}
