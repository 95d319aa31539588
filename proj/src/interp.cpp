#include "robinlab/interp.hpp"

#include <algorithm>
#include <cmath>

#include "robinlab/errors.hpp"

namespace robinlab::interp {

std::vector<double> pchip_slopes(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 2) throw ConfigurationError("pchip needs at least two matching samples");
  std::vector<double> h(n - 1), delta(n - 1), d(n, 0.0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = x[k + 1] - x[k];
    delta[k] = (y[k + 1] - y[k]) / h[k];
  }
  if (n == 2) {
    d[0] = d[1] = delta[0];
    return d;
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (delta[k - 1] * delta[k] > 0.0) {
      const double w1 = 2.0 * h[k] + h[k - 1];
      const double w2 = h[k] + 2.0 * h[k - 1];
      d[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
    }
  }
  // One-sided three-point end slopes, limited as in the usual pchip.
  auto end_slope = [](double h0, double h1, double del0, double del1) {
    double s = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
    if (s * del0 <= 0.0) {
      s = 0.0;
    } else if (del0 * del1 <= 0.0 && std::abs(s) > 3.0 * std::abs(del0)) {
      s = 3.0 * del0;
    }
    return s;
  };
  d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
  d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  return d;
}

namespace {

std::size_t locate(std::span<const double> x, double x0) {
  if (x.size() < 2 || x0 < x.front() || x0 > x.back()) throw DomainError("interpolation point outside the table");
  auto it = std::upper_bound(x.begin(), x.end(), x0);
  std::size_t k = static_cast<std::size_t>(it - x.begin());
  if (k == 0) k = 1;
  if (k >= x.size()) k = x.size() - 1;
  return k - 1;
}

}  // namespace

double hermite(std::span<const double> x, std::span<const double> y, std::span<const double> dy, double x0) {
  const std::size_t k = locate(x, x0);
  const double h = x[k + 1] - x[k];
  const double t = (x0 - x[k]) / h;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
  return h00 * y[k] + h10 * h * dy[k] + h01 * y[k + 1] + h11 * h * dy[k + 1];
}

double hermite_derivative(std::span<const double> x, std::span<const double> y, std::span<const double> dy,
                          double x0) {
  const std::size_t k = locate(x, x0);
  const double h = x[k + 1] - x[k];
  const double t = (x0 - x[k]) / h;
  const double t2 = t * t;
  const double d00 = 6 * t2 - 6 * t, d10 = 3 * t2 - 4 * t + 1;
  const double d01 = -6 * t2 + 6 * t, d11 = 3 * t2 - 2 * t;
  return (d00 * y[k] + d01 * y[k + 1]) / h + d10 * dy[k] + d11 * dy[k + 1];
}

}  // namespace robinlab::interp
