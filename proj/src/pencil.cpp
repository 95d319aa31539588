#include "robinlab/pencil.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "robinlab/errors.hpp"

namespace robinlab {

double Pencil::diagonal(std::size_t i) const noexcept {
  const std::size_t n = size();
  double d = potential[i];
  d += (i == 0) ? edge_left : edge[i - 1];
  d += (i + 1 == n) ? edge_right : edge[i];
  return d;
}

int count_below(const Pencil& pencil, double lambda) {
  const std::size_t n = pencil.size();
  if (n == 0) return 0;
  // Pivot floor relative to the matrix scale, as in the LAPACK bisection
  // routines; a vanishing pivot is treated as positive so that lambda itself
  // is not counted.
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    scale = std::max(scale, std::abs(pencil.diagonal(i) - lambda * pencil.mass[i]));
  }
  const double pivmin = std::max(scale, 1.0) * std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();

  int negatives = 0;
  double pivot = pencil.diagonal(0) - lambda * pencil.mass[0];
  for (std::size_t i = 0;; ++i) {
    if (std::abs(pivot) < pivmin) pivot = pivmin;
    if (pivot < 0.0) ++negatives;
    if (i + 1 == n) break;
    const double off = pencil.edge[i];
    pivot = pencil.diagonal(i + 1) - lambda * pencil.mass[i + 1] - off * off / pivot;
  }
  return negatives;
}

std::pair<double, double> spectral_bounds(const Pencil& pencil) {
  const std::size_t n = pencil.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    // Row i of M^{-1/2} K M^{-1/2}.
    const double m = pencil.mass[i];
    double radius = 0.0;
    if (i > 0) radius += pencil.edge[i - 1] / std::sqrt(m * pencil.mass[i - 1]);
    if (i + 1 < n) radius += pencil.edge[i] / std::sqrt(m * pencil.mass[i + 1]);
    const double c = pencil.diagonal(i) / m;
    lo = std::min(lo, c - radius);
    hi = std::max(hi, c + radius);
  }
  return {lo, hi};
}

double energy(const Pencil& pencil, std::span<const double> x) {
  const std::size_t n = pencil.size();
  double e = pencil.edge_left * x[0] * x[0] + pencil.edge_right * x[n - 1] * x[n - 1];
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double dx = x[k + 1] - x[k];
    e += pencil.edge[k] * dx * dx;
  }
  for (std::size_t i = 0; i < n; ++i) e += pencil.potential[i] * x[i] * x[i];
  return e;
}

double mass_norm_sq(const Pencil& pencil, std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i < pencil.size(); ++i) s += pencil.mass[i] * x[i] * x[i];
  return s;
}

std::vector<double> solve_shifted(const Pencil& pencil, double shift, std::span<const double> rhs) {
  const std::size_t n = pencil.size();
  std::vector<double> d(n), du(n, 0.0), dl(n, 0.0), b(rhs.begin(), rhs.end());
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = pencil.diagonal(i) - shift * pencil.mass[i];
    if (i + 1 < n) {
      du[i] = -pencil.edge[i];
      dl[i] = -pencil.edge[i];
    }
    scale = std::max(scale, std::abs(d[i]) + 2.0 * std::abs(du[i]));
  }
  const double tiny = std::max(scale, 1.0) * std::numeric_limits<double>::epsilon();
  if (n == 1) {
    return {b[0] / (std::abs(d[0]) < tiny ? tiny : d[0])};
  }

  // Elimination with row interchanges; after the loop dl holds the second
  // superdiagonal of U.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (std::abs(d[i]) < tiny) d[i] = tiny;
      const double fact = dl[i] / d[i];
      d[i + 1] -= fact * du[i];
      b[i + 1] -= fact * b[i];
      dl[i] = 0.0;
    } else {
      const double fact = d[i] / dl[i];
      d[i] = dl[i];
      const double temp = d[i + 1];
      d[i + 1] = du[i] - fact * temp;
      if (i + 2 < n) {
        dl[i] = du[i + 1];
        du[i + 1] = -fact * dl[i];
      } else {
        dl[i] = 0.0;
      }
      du[i] = temp;
      const double bt = b[i];
      b[i] = b[i + 1];
      b[i + 1] = bt - fact * b[i + 1];
    }
  }
  if (std::abs(d[n - 1]) < tiny) d[n - 1] = tiny;

  std::vector<double> x(n);
  x[n - 1] = b[n - 1] / d[n - 1];
  x[n - 2] = (b[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
  for (std::size_t k = n - 2; k-- > 0;) {
    x[k] = (b[k] - du[k] * x[k + 1] - dl[k] * x[k + 2]) / d[k];
  }
  return x;
}

namespace {

std::pair<double, double> bracket_for(const Pencil& pencil, int index, const EigenOptions& options) {
  if (options.guess) {
    auto [lo, hi] = *options.guess;
    double width = std::max(hi - lo, 1e-3 * std::max(1.0, std::abs(hi)));
    for (int attempt = 0; attempt < 60; ++attempt) {
      const bool lo_ok = count_below(pencil, lo) < index;
      const bool hi_ok = count_below(pencil, hi) >= index;
      if (lo_ok && hi_ok) return {lo, hi};
      if (!lo_ok) lo -= width;
      if (!hi_ok) hi += width;
      width *= 2.0;
    }
  }
  auto [lo, hi] = spectral_bounds(pencil);
  const double pad = 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
  return {lo - pad, hi + pad};
}

}  // namespace

double eigenvalue(const Pencil& pencil, int index, const EigenOptions& options) {
  if (index < 1 || static_cast<std::size_t>(index) > pencil.size()) {
    throw ConfigurationError("eigenvalue index out of range");
  }
  auto [lo, hi] = bracket_for(pencil, index, options);
  while (hi - lo > options.relative_width * std::max({1.0, std::abs(lo), std::abs(hi)})) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (count_below(pencil, mid) >= index) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Eigenpair eigenpair(const Pencil& pencil, int index, const EigenOptions& options,
                    std::span<const std::vector<double>> lower) {
  const double shift = eigenvalue(pencil, index, options);
  const std::size_t n = pencil.size();

  auto normalize = [&](std::vector<double>& v) {
    const double norm = std::sqrt(mass_norm_sq(pencil, v));
    for (double& c : v) c /= norm;
  };
  auto orthogonalize = [&](std::vector<double>& v) {
    for (const auto& w : lower) {
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += pencil.mass[i] * v[i] * w[i];
      for (std::size_t i = 0; i < n; ++i) v[i] -= dot * w[i];
    }
  };

  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.5 * std::sin(0.7 * static_cast<double>(i) + 0.3);
  normalize(v);
  std::vector<double> rhs(n);
  for (int step = 0; step < options.inverse_steps; ++step) {
    for (std::size_t i = 0; i < n; ++i) rhs[i] = pencil.mass[i] * v[i];
    v = solve_shifted(pencil, shift, rhs);
    if (step == 0) orthogonalize(v);
    normalize(v);
  }
  orthogonalize(v);
  normalize(v);

  double vmax = 0.0;
  for (double c : v) vmax = std::max(vmax, std::abs(c));
  for (double c : v) {
    if (std::abs(c) > 1e-8 * vmax) {
      if (c < 0.0) {
        for (double& x : v) x = -x;
      }
      break;
    }
  }

  Eigenpair out;
  out.value = energy(pencil, v) / mass_norm_sq(pencil, v);
  out.vector = std::move(v);
  return out;
}

void RichardsonTable::push(double value) {
  std::vector<double> row{value};
  if (!rows_.empty()) {
    const auto& prev = rows_.back();
    double factor = 1.0;
    for (std::size_t m = 1; m <= prev.size(); ++m) {
      factor *= 4.0;
      row.push_back(row[m - 1] + (row[m - 1] - prev[m - 1]) / (factor - 1.0));
    }
  }
  rows_.push_back(std::move(row));
}

double RichardsonTable::best() const {
  if (rows_.empty()) throw ConfigurationError("empty Richardson table");
  return rows_.back().back();
}

double RichardsonTable::change() const {
  if (rows_.size() < 2) return std::numeric_limits<double>::infinity();
  return std::abs(rows_.back().back() - rows_[rows_.size() - 2].back());
}

ConvergedEigenvalues converge_eigenvalues(const std::function<Pencil(int)>& build, int k, int n0,
                                          int max_doublings, double tol) {
  std::vector<RichardsonTable> tables(k);
  ConvergedEigenvalues out;
  std::vector<double> hint;
  for (int level = 0; level <= max_doublings; ++level) {
    const int n = n0 << level;
    const Pencil p = build(n);
    std::vector<std::vector<double>> vectors;
    std::vector<double> raw;
    for (int j = 1; j <= k; ++j) {
      EigenOptions opts;
      if (static_cast<int>(hint.size()) >= j) {
        const double g = hint[j - 1];
        const double w = 1e-2 * std::max(1.0, std::abs(g));
        opts.guess = std::make_pair(g - w, g + w);
      }
      Eigenpair ep = eigenpair(p, j, opts, vectors);
      raw.push_back(ep.value);
      vectors.push_back(std::move(ep.vector));
    }
    out.change = 0.0;
    for (int j = 0; j < k; ++j) {
      tables[j].push(raw[j]);
      out.change = std::max(out.change, tables[j].change());
    }
    hint = raw;
    out.finest_n = n;
    if (level > 0 && out.change < 0.5 * tol) {
      out.converged = true;
      break;
    }
  }
  out.values.clear();
  for (const auto& t : tables) out.values.push_back(t.best());
  return out;
}

}  // namespace robinlab
