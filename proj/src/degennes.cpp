#include "robinlab/degennes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "robinlab/errors.hpp"
#include "robinlab/interp.hpp"
#include "robinlab/parallel.hpp"

namespace robinlab::degennes {

namespace {

using model1d::FixedPlan;
using model1d::RobinSpec;

constexpr int kCoarseNodes = 256;
constexpr double kSeedWindow = 0.25;
constexpr std::size_t kChunk = 16;

double scan_upper(double gamma, int k) {
  return std::max({3.0, 2.0 * std::abs(gamma) + 3.0, std::sqrt(2.0 * k + gamma * gamma) + 3.0});
}

struct Minimum {
  double xi = 0.0;
  double value = 0.0;
  model1d::RobinBandPoint point;
};

Minimum minimize_band(double gamma, int k, const MinimizeOptions& options) {
  if (!(options.tol > 0.0)) throw ConfigurationError("tolerance must be positive");
  if (k < 1) throw ConfigurationError("band index starts at 1");
  const double upper = scan_upper(gamma, k);
  const double t_max = upper + 12.0;
  const FixedPlan coarse{kCoarseNodes, 1, t_max};

  auto coarse_value = [&](double xi) { return model1d::solve_fixed(RobinSpec::robin(gamma, xi), k, coarse).mus[k - 1]; };

  auto scan = [&](double lo, double hi, std::vector<std::pair<double, double>>& profile) {
    profile.clear();
    const int steps = static_cast<int>(std::ceil((hi - lo) / options.scan_step));
    for (int i = 0; i <= steps; ++i) {
      const double xi = lo + (hi - lo) * i / steps;
      profile.emplace_back(xi, coarse_value(xi));
    }
    auto it = std::min_element(profile.begin(), profile.end(),
                               [](const auto& a, const auto& b) { return a.second < b.second; });
    return static_cast<std::size_t>(it - profile.begin());
  };

  std::vector<std::pair<double, double>> profile;
  std::size_t imin = 0;
  bool ok = false;
  if (options.seed) {
    const double lo = std::max(0.0, *options.seed - kSeedWindow);
    const double hi = std::min(upper, *options.seed + kSeedWindow);
    imin = scan(lo, hi, profile);
    ok = imin > 0 && imin + 1 < profile.size();
  }
  if (!ok) {
    imin = scan(0.0, upper, profile);
    if (imin == 0 || imin + 1 == profile.size()) {
      throw NumericError("band minimum not bracketed by the xi scan", profile);
    }
  }
  double a = profile[imin >= 2 ? imin - 2 : 0].first;
  double b = profile[std::min(imin + 2, profile.size() - 1)].first;

  const FixedPlan plan = model1d::plan_for(RobinSpec::robin(gamma, profile[imin].first), k, options.tol, t_max);
  auto value = [&](double xi) { return model1d::solve_fixed(RobinSpec::robin(gamma, xi), k, plan).mus[k - 1]; };

  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = value(c), fd = value(d);
  const double polish_from = std::max(options.width, 1e-3);
  while (b - a > polish_from) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = value(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = value(d);
    }
  }
  // Golden section alone stalls near sqrt(noise/curvature); finish with
  // Newton steps on a Richardson-corrected central difference of the
  // objective, whose truncation error is O(s^4).
  double x = 0.5 * (a + b);
  const double lo_lim = a - 10.0 * (b - a), hi_lim = b + 10.0 * (b - a);
  for (int it = 0; it < 4 && b - a > options.width; ++it) {
    const double s = 2e-3;
    const double f0 = value(x);
    const double fp = value(x + s), fm = value(x - s);
    const double fp2 = value(x + 0.5 * s), fm2 = value(x - 0.5 * s);
    const double d1 = (fp - fm) / (2.0 * s), d2 = (fp2 - fm2) / s;
    const double slope = (4.0 * d2 - d1) / 3.0;
    const double curv = (fp2 - 2.0 * f0 + fm2) / (0.25 * s * s);
    if (!(curv > 0.0)) break;
    const double step = slope / curv;
    const double next = x - step;
    if (!(next > lo_lim && next < hi_lim)) break;
    x = next;
    if (std::abs(step) < options.width) break;
  }
  Minimum m;
  m.xi = x;
  m.point = model1d::solve_fixed(RobinSpec::robin(gamma, m.xi), k, plan);
  m.value = m.point.mus[k - 1];
  return m;
}

}  // namespace

DeGennesPoint theta(double gamma, const MinimizeOptions& options) {
  if (!std::isfinite(gamma)) throw ConfigurationError("gamma must be finite");
  const Minimum m = minimize_band(gamma, 1, options);
  DeGennesPoint p;
  p.gamma = gamma;
  p.theta = m.value;
  p.xi_min = m.xi;
  p.phi0_sq = m.point.boundary_sq[0];
  p.theta_prime = p.phi0_sq;
  p.residual_identity = std::abs(m.xi * m.xi - m.value - gamma * gamma);
  if (options.fd_step > 0.0) {
    MinimizeOptions side = options;
    side.fd_step = 0.0;
    side.seed = m.xi;
    const double s = options.fd_step;
    const double up = minimize_band(gamma + s, 1, side).value;
    const double down = minimize_band(gamma - s, 1, side).value;
    p.residual_derivative = std::abs((up - down) / (2.0 * s) - p.phi0_sq);
  } else {
    p.residual_derivative = std::numeric_limits<double>::quiet_NaN();
  }
  return p;
}

DeGennesPoint theta(double gamma, double tol) {
  MinimizeOptions o;
  o.tol = tol;
  return theta(gamma, o);
}

BandMinimum theta_k(double gamma, int k, const MinimizeOptions& options) {
  const Minimum m = minimize_band(gamma, k, options);
  return {m.value, m.xi};
}

BandMinimum theta_k(double gamma, int k, double tol) {
  MinimizeOptions o;
  o.tol = tol;
  return theta_k(gamma, k, o);
}

const DeGennesPoint& at_zero() {
  static const DeGennesPoint p = [] {
    MinimizeOptions o;
    o.tol = 1e-10;
    o.fd_step = 0.0;
    return theta(0.0, o);
  }();
  return p;
}

double c1(const DeGennesPoint& p) {
  const double xi = std::sqrt(std::max(0.0, p.theta + p.gamma * p.gamma));
  const double f = 1.0 + p.gamma * xi;
  return f * f * p.theta_prime / 3.0;
}

double c1(double gamma) {
  if (gamma == 0.0) return c1(at_zero());
  MinimizeOptions o;
  o.fd_step = 0.0;
  return c1(theta(gamma, o));
}

std::pair<double, double> d2d3(double alpha, const DeGennesPoint& at_eta) {
  if (!(alpha >= 0.5)) throw DomainError("d2/d3 are defined for alpha >= 1/2");
  if (alpha > 0.5) {
    const DeGennesPoint& z = at_zero();
    return {z.xi_min * z.theta_prime, z.theta_prime / 3.0};
  }
  const double xi = at_eta.xi_min;
  const double f = at_eta.gamma * xi + 1.0;
  return {xi * at_eta.theta_prime, f * f * at_eta.theta_prime / 3.0};
}

std::pair<double, double> d2d3(double alpha, double eta) {
  if (!(alpha >= 0.5)) throw DomainError("d2/d3 are defined for alpha >= 1/2");
  if (alpha > 0.5 || eta == 0.0) return d2d3(alpha, at_zero());
  MinimizeOptions o;
  o.fd_step = 0.0;
  return d2d3(alpha, theta(eta, o));
}

// ---------------------------------------------------------------------------
// Table

std::uint64_t settings_hash(double gamma_min, double gamma_max, double step, double tol) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "degennes-table/v1 gmin=%.17g gmax=%.17g step=%.17g tol=%.17g scan=%.17g width=%.17g fd=%.17g",
                gamma_min, gamma_max, step, tol, MinimizeOptions{}.scan_step, MinimizeOptions{}.width,
                MinimizeOptions{}.fd_step);
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (const char* c = buf; *c; ++c) {
    h ^= static_cast<unsigned char>(*c);
    h *= 1099511628211ull;
  }
  return h;
}

DeGennesTable tabulate(double gamma_min, double gamma_max, double step, double tol, unsigned workers) {
  if (!(gamma_max >= gamma_min)) throw ConfigurationError("empty gamma range");
  if (!(step > 0.0)) throw ConfigurationError("table step must be positive");
  if (!(tol > 0.0)) throw ConfigurationError("tolerance must be positive");
  const auto count = static_cast<std::size_t>(std::floor((gamma_max - gamma_min) / step + 1e-9)) + 1;
  if (count > 200000) throw ResourceError("table too large");

  const std::size_t chunks = (count + kChunk - 1) / kChunk;
  auto blocks = parallel_map(
      chunks,
      [&](std::size_t c) {
        std::vector<DeGennesPoint> rows;
        std::optional<double> seed;
        for (std::size_t i = c * kChunk; i < std::min(count, (c + 1) * kChunk); ++i) {
          const double g = gamma_min + static_cast<double>(i) * step;
          MinimizeOptions o;
          o.tol = tol;
          if (!rows.empty()) seed = std::sqrt(std::max(0.0, rows.back().theta + g * g));
          o.seed = seed;
          rows.push_back(theta(g, o));
        }
        return rows;
      },
      workers);

  DeGennesTable t;
  t.gamma_min_ = gamma_min;
  t.gamma_max_ = gamma_min + static_cast<double>(count - 1) * step;
  t.step_ = step;
  t.tol_ = tol;
  t.hash_ = settings_hash(gamma_min, gamma_max, step, tol);
  for (auto& b : blocks) t.rows_.insert(t.rows_.end(), b.begin(), b.end());
  t.build_interpolants();
  return t;
}

void DeGennesTable::build_interpolants() {
  g_.clear();
  th_.clear();
  thp_.clear();
  xi_.clear();
  for (const auto& r : rows_) {
    g_.push_back(r.gamma);
    th_.push_back(r.theta);
    thp_.push_back(r.theta_prime);
    xi_.push_back(r.xi_min);
  }
  if (rows_.size() >= 2) {
    thp_slope_ = interp::pchip_slopes(g_, thp_);
    // xi^2 = Theta + gamma^2 gives xi' = (Theta' + 2 gamma) / (2 xi).
    xi_slope_.resize(g_.size());
    for (std::size_t i = 0; i < g_.size(); ++i) xi_slope_[i] = (thp_[i] + 2.0 * g_[i]) / (2.0 * xi_[i]);
  }
}

bool DeGennesTable::covers(double gamma) const noexcept {
  return !rows_.empty() && gamma >= g_.front() - 1e-12 && gamma <= g_.back() + 1e-12;
}

namespace {
[[noreturn]] void out_of_range(double gamma, double lo, double hi) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "gamma=%.6g outside the de Gennes table range [%.6g, %.6g]", gamma, lo, hi);
  throw DomainError(buf);
}
}  // namespace

double DeGennesTable::theta_at(double gamma) const {
  if (!covers(gamma)) out_of_range(gamma, gamma_min_, gamma_max_);
  if (rows_.size() == 1) return rows_[0].theta;
  gamma = std::clamp(gamma, g_.front(), g_.back());
  return interp::hermite(g_, th_, thp_, gamma);
}

double DeGennesTable::theta_prime_at(double gamma) const {
  if (!covers(gamma)) out_of_range(gamma, gamma_min_, gamma_max_);
  if (rows_.size() == 1) return rows_[0].theta_prime;
  gamma = std::clamp(gamma, g_.front(), g_.back());
  return interp::hermite(g_, thp_, thp_slope_, gamma);
}

double DeGennesTable::xi_at(double gamma) const {
  if (!covers(gamma)) out_of_range(gamma, gamma_min_, gamma_max_);
  if (rows_.size() == 1) return rows_[0].xi_min;
  gamma = std::clamp(gamma, g_.front(), g_.back());
  return interp::hermite(g_, xi_, xi_slope_, gamma);
}

DeGennesPoint DeGennesTable::point_at(double gamma) const {
  DeGennesPoint p;
  p.gamma = gamma;
  p.theta = theta_at(gamma);
  p.xi_min = xi_at(gamma);
  p.theta_prime = theta_prime_at(gamma);
  p.phi0_sq = p.theta_prime;
  return p;
}

std::string DeGennesTable::to_csv() const {
  std::ostringstream os;
  char buf[512];
  std::snprintf(buf, sizeof buf, "# settings_hash=%016llx gamma_min=%.17g gamma_max=%.17g step=%.17g tol=%.17g\n",
                static_cast<unsigned long long>(hash_), gamma_min_, gamma_max_, step_, tol_);
  os << buf << "gamma,theta,xi_min,theta_prime,phi0_sq,residual_identity,residual_derivative\n";
  for (const auto& r : rows_) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.gamma, r.theta, r.xi_min,
                  r.theta_prime, r.phi0_sq, r.residual_identity, r.residual_derivative);
    os << buf;
  }
  return os.str();
}

DeGennesTable DeGennesTable::from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  DeGennesTable t;
  if (!std::getline(is, line)) throw PersistenceError("empty de Gennes table");
  unsigned long long hash = 0;
  if (std::sscanf(line.c_str(), "# settings_hash=%llx gamma_min=%lg gamma_max=%lg step=%lg tol=%lg", &hash,
                  &t.gamma_min_, &t.gamma_max_, &t.step_, &t.tol_) != 5) {
    throw PersistenceError("malformed de Gennes table comment line");
  }
  t.hash_ = hash;
  if (!std::getline(is, line) || line != "gamma,theta,xi_min,theta_prime,phi0_sq,residual_identity,residual_derivative") {
    throw PersistenceError("unexpected de Gennes table header");
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    DeGennesPoint r;
    std::istringstream ls(line);
    std::string field;
    double* dst[] = {&r.gamma, &r.theta, &r.xi_min, &r.theta_prime, &r.phi0_sq, &r.residual_identity,
                     &r.residual_derivative};
    for (double* d : dst) {
      if (!std::getline(ls, field, ',')) throw PersistenceError("short row in de Gennes table");
      try {
        *d = std::stod(field);
      } catch (const std::exception&) {
        if (field == "nan" || field == "-nan") {
          *d = std::numeric_limits<double>::quiet_NaN();
        } else {
          throw PersistenceError("bad number in de Gennes table: " + field);
        }
      }
    }
    t.rows_.push_back(r);
  }
  if (t.rows_.empty()) throw PersistenceError("de Gennes table has no rows");
  t.build_interpolants();
  return t;
}

void DeGennesTable::save_csv(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw PersistenceError("cannot open " + path + " for writing");
  out << to_csv();
  if (!out) throw PersistenceError("write failed for " + path);
}

DeGennesTable DeGennesTable::load_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PersistenceError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_csv(ss.str());
}

}  // namespace robinlab::degennes
