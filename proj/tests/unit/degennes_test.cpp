#include <doctest.h>

#include <cmath>

#include "robinlab/degennes.hpp"
#include "robinlab/errors.hpp"

using namespace robinlab;

// Reference values: tests/oracles/parabolic_cylinder.py and derived_values.py.

TEST_SUITE("degennes") {
  TEST_CASE("Theta at zero") {
    const auto& z = degennes::at_zero();
    CHECK(z.theta == doctest::Approx(0.59010612495023).epsilon(1e-9));
    CHECK(z.xi_min == doctest::Approx(0.7681836533).epsilon(1e-8));
    CHECK(z.theta_prime == doctest::Approx(0.762204321623).epsilon(1e-7));
  }

  TEST_CASE("Theta against the parabolic cylinder oracle") {
    struct Row {
      double gamma, theta, xi, phi0sq;
    };
    for (const Row r : {Row{-1.0, -0.83471442564789, 0.4065532859, 2.19722024716},
                        Row{1.0, 0.96146838625634, 1.400524325, 0.113713345516}}) {
      const auto p = degennes::theta(r.gamma);
      CHECK(p.theta == doctest::Approx(r.theta).epsilon(1e-9));
      CHECK(p.xi_min == doctest::Approx(r.xi).epsilon(1e-7));
      CHECK(p.phi0_sq == doctest::Approx(r.phi0sq).epsilon(1e-6));
      CHECK(p.residual_identity < 1e-6);
      CHECK(p.residual_derivative < 1e-4);
    }
  }

  TEST_CASE("second band minimum") {
    const auto b = degennes::theta_k(0.0, 2);
    CHECK(b.theta == doctest::Approx(2.6348594022324).epsilon(1e-8));
    CHECK(b.xi == doctest::Approx(1.623225).epsilon(1e-5));
  }

  TEST_CASE("constants") {
    const auto& z = degennes::at_zero();
    CHECK(degennes::c1(z) == doctest::Approx(z.theta_prime / 3.0));
    const auto [d2, d3] = degennes::d2d3(1.0, 0.0);
    CHECK(d2 == doctest::Approx(z.xi_min * z.theta_prime));
    CHECK(d3 == doctest::Approx(z.theta_prime / 3.0));
    const auto p = degennes::theta(0.5);
    const auto [e2, e3] = degennes::d2d3(0.5, p);
    CHECK(e2 == doctest::Approx(p.xi_min * p.theta_prime));
    CHECK(e3 == doctest::Approx(std::pow(0.5 * p.xi_min + 1.0, 2) * p.theta_prime / 3.0));
    CHECK(degennes::c1(p) == doctest::Approx(e3));
    CHECK_THROWS_AS(degennes::d2d3(0.4, 0.0), DomainError);
  }

  TEST_CASE("table interpolation, csv round trip and worker independence") {
    const auto t1 = degennes::tabulate(-0.2, 0.2, 0.1, 1e-9, 1);
    const auto t2 = degennes::tabulate(-0.2, 0.2, 0.1, 1e-9, 3);
    CHECK(t1.to_csv() == t2.to_csv());
    REQUIRE(t1.rows().size() == 5);
    const auto back = degennes::DeGennesTable::from_csv(t1.to_csv());
    CHECK(back.to_csv() == t1.to_csv());
    CHECK(back.settings_hash() == degennes::settings_hash(-0.2, 0.2, 0.1, 1e-9));
    CHECK(t1.theta_at(0.0) == doctest::Approx(0.59010612495023).epsilon(1e-9));
    // between rows: compare with a direct minimization
    const auto p = degennes::theta(0.05, 1e-10);
    CHECK(t1.theta_at(0.05) == doctest::Approx(p.theta).epsilon(1e-6));
    CHECK(t1.xi_at(0.05) == doctest::Approx(p.xi_min).epsilon(1e-5));
    CHECK(t1.covers(0.15));
    CHECK_FALSE(t1.covers(0.3));
    CHECK_THROWS(degennes::DeGennesTable::from_csv("gamma,theta\n1,2\n"));
  }
}
