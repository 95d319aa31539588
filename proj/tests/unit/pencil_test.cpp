#include <doctest.h>

#include <cmath>

#include "robinlab/pencil.hpp"

using namespace robinlab;

namespace {

// -u'' on (0, 1), Dirichlet at both ends, n interior nodes.
Pencil dirichlet_laplacian(int n) {
  const double d = 1.0 / (n + 1);
  Pencil p;
  p.edge.assign(n - 1, 1.0 / d);
  p.edge_left = p.edge_right = 1.0 / d;
  p.potential.assign(n, 0.0);
  p.mass.assign(n, d);
  return p;
}

double discrete_eig(int k, int n) {
  const double d = 1.0 / (n + 1);
  return (2.0 - 2.0 * std::cos(k * M_PI * d)) / (d * d);
}

}  // namespace

TEST_SUITE("pencil") {
  TEST_CASE("sturm count matches the closed-form discrete spectrum") {
    const int n = 50;
    const auto p = dirichlet_laplacian(n);
    for (int k = 1; k <= n; k += 7) {
      const double ev = discrete_eig(k, n);
      CHECK(count_below(p, ev - 1e-8) == k - 1);
      CHECK(count_below(p, ev + 1e-8) == k);
    }
    const auto [lo, hi] = spectral_bounds(p);
    CHECK(lo <= discrete_eig(1, n));
    CHECK(hi >= discrete_eig(n, n));
  }

  TEST_CASE("bisection and inverse iteration") {
    const int n = 200;
    const auto p = dirichlet_laplacian(n);
    CHECK(eigenvalue(p, 3) == doctest::Approx(discrete_eig(3, n)).epsilon(1e-10));
    const auto e1 = eigenpair(p, 1);
    const auto e2 = eigenpair(p, 2, {}, std::vector<std::vector<double>>{e1.vector});
    CHECK(e2.value == doctest::Approx(discrete_eig(2, n)).epsilon(1e-10));
    CHECK(mass_norm_sq(p, e1.vector) == doctest::Approx(1.0));
    CHECK(energy(p, e1.vector) == doctest::Approx(e1.value).epsilon(1e-10));
    CHECK(e1.vector.front() > 0.0);
    double overlap = 0.0;
    for (int i = 0; i < n; ++i) overlap += p.mass[i] * e1.vector[i] * e2.vector[i];
    CHECK(std::abs(overlap) < 1e-8);
  }

  TEST_CASE("shifted solve") {
    const auto p = dirichlet_laplacian(20);
    std::vector<double> x(20), r(20);
    for (int i = 0; i < 20; ++i) x[i] = std::sin(0.3 * i) + 0.1 * i;
    const double shift = 3.7;
    for (int i = 0; i < 20; ++i) {
      r[i] = (p.diagonal(i) - shift * p.mass[i]) * x[i];
      if (i > 0) r[i] += p.offdiagonal(i - 1) * x[i - 1];
      if (i < 19) r[i] += p.offdiagonal(i) * x[i + 1];
    }
    const auto y = solve_shifted(p, shift, r);
    for (int i = 0; i < 20; ++i) CHECK(y[i] == doctest::Approx(x[i]).epsilon(1e-10));
  }

  TEST_CASE("richardson removes even powers") {
    RichardsonTable t;
    CHECK(std::isinf(t.change()));
    for (double d : {0.4, 0.2, 0.1, 0.05}) t.push(2.0 + 3.0 * d * d - 5.0 * d * d * d * d + 0.5 * std::pow(d, 6));
    CHECK(t.levels() == 4);
    CHECK(t.best() == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(t.raw(0) == doctest::Approx(2.0 + 3 * 0.16 - 5 * 0.0256 + 0.5 * 0.004096));
  }

  TEST_CASE("extrapolated eigenvalues of the continuous problem") {
    // lowest eigenvalue of -u'' on (0,1) is pi^2, with an h^2 expansion
    const auto r = converge_eigenvalues([](int n) { return dirichlet_laplacian(n - 1); }, 2, 32, 6, 1e-9);
    REQUIRE(r.converged);
    CHECK(r.values[0] == doctest::Approx(M_PI * M_PI).epsilon(1e-9));
    CHECK(r.values[1] == doctest::Approx(4 * M_PI * M_PI).epsilon(1e-9));
  }
}
