// robinlab command-line front end.
//
// Every numeric flag can also come from a JSON config (--config file) whose
// keys are the flag names without dashes; flags given on the command line win.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <new>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "robinlab/curved.hpp"
#include "robinlab/cylinder.hpp"
#include "robinlab/degennes.hpp"
#include "robinlab/disc.hpp"
#include "robinlab/errors.hpp"
#include "robinlab/geometry.hpp"
#include "robinlab/levelsets.hpp"
#include "robinlab/model1d.hpp"
#include "robinlab/parallel.hpp"
#include "robinlab/report.hpp"
#include "robinlab/weyl.hpp"

using namespace robinlab;
using report::json;

namespace {

constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Flag/config binding

class Binder {
 public:
  explicit Binder(CLI::App* app) : app_(app) {}

  template <class T>
  CLI::Option* add(const std::string& key, T& var, const std::string& help) {
    CLI::Option* opt = app_->add_option("--" + key, var, help)->capture_default_str();
    keys_.insert(key);
    apply_.push_back([opt, key, &var](const json& cfg) {
      if (opt->count() == 0 && cfg.contains(key)) var = cfg.at(key).get<T>();
    });
    return opt;
  }

  CLI::Option* flag(const std::string& key, bool& var, const std::string& help) {
    CLI::Option* opt = app_->add_flag("--" + key, var, help);
    keys_.insert(key);
    apply_.push_back([opt, key, &var](const json& cfg) {
      if (opt->count() == 0 && cfg.contains(key)) var = cfg.at(key).get<bool>();
    });
    return opt;
  }

  void apply(const json& cfg) const {
    for (const auto& [k, v] : cfg.items()) {
      if (k == "command") continue;
      if (!keys_.count(k)) throw ConfigurationError("unknown config key '" + k + "' for " + app_->get_name());
    }
    if (cfg.contains("command") && cfg.at("command").get<std::string>() != app_->get_name()) {
      throw ConfigurationError("config is for command '" + cfg.at("command").get<std::string>() + "'");
    }
    for (const auto& f : apply_) f(cfg);
  }

 private:
  CLI::App* app_;
  std::set<std::string> keys_;
  std::vector<std::function<void(const json&)>> apply_;
};

struct Common {
  std::string config;
  std::string out = "out";
  std::vector<std::string> formats{"csv", "json", "svg"};
  unsigned workers = 0;

  void bind(CLI::App* app, Binder& b) {
    app->add_option("--config", config, "JSON config file; flags override its keys");
    b.add("out", out, "output directory");
    b.add("formats", formats, "subset of csv,json,svg")->delimiter(',');
    b.add("workers", workers, "worker threads (0 = hardware concurrency)");
  }
  bool wants(const std::string& f) const { return std::find(formats.begin(), formats.end(), f) != formats.end(); }
  std::string path(const std::string& name) const { return out + "/" + name; }
  void validate() const {
    for (const auto& f : formats) {
      if (f != "csv" && f != "json" && f != "svg") throw ConfigurationError("unknown format '" + f + "'");
    }
  }
};

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream f(path);
  if (!f) throw ConfigurationError("cannot read config " + path);
  try {
    json j = json::parse(f);
    if (!j.is_object()) throw ConfigurationError("config must be a JSON object");
    return j;
  } catch (const json::exception& e) {
    throw ConfigurationError(std::string("config parse error: ") + e.what());
  }
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigurationError(what);
}

void write_json(const Common& c, const std::string& name, const json& j) {
  if (c.wants("json")) report::write_file(c.path(name), j.dump(2) + "\n");
}
void write_csv(const Common& c, const std::string& name, const report::Table& t) {
  if (c.wants("csv")) report::write_file(c.path(name), t.to_csv());
}
void write_svg(const Common& c, const std::string& name, const std::vector<report::Series>& s,
               const report::PlotOptions& o) {
  if (c.wants("svg")) report::write_file(c.path(name), report::svg_plot(s, o));
}

std::vector<double> sorted_desc(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// ---------------------------------------------------------------------------
// tabulate-theta

struct TabulateCmd {
  Common common;
  double gamma_min = -2.0, gamma_max = 2.0, step = 1e-2, tol = 1e-9;

  void bind(CLI::App* app, Binder& b) {
    common.bind(app, b);
    b.add("gamma-min", gamma_min, "first gamma");
    b.add("gamma-max", gamma_max, "last gamma");
    b.add("step", step, "gamma step");
    b.add("tol", tol, "Theta tolerance");
  }

  void run() const {
    require(gamma_max > gamma_min, "empty gamma range");
    require(step > 0.0 && tol > 0.0, "step and tol must be positive");
    const auto table = degennes::tabulate(gamma_min, gamma_max, step, tol, common.workers);
    if (common.wants("csv")) report::write_file(common.path("theta_table.csv"), table.to_csv());

    const auto& z = degennes::at_zero();
    double rid = 0.0, rder = 0.0;
    for (const auto& r : table.rows()) {
      rid = std::max(rid, r.residual_identity);
      if (!std::isnan(r.residual_derivative)) rder = std::max(rder, r.residual_derivative);
    }
    char hash[24];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(table.settings_hash()));
    write_json(common, "theta_summary.json",
               {{"theta0", z.theta},
                {"xi0", z.xi_min},
                {"theta_prime0", z.theta_prime},
                {"c1", degennes::c1(z)},
                {"rows", table.rows().size()},
                {"max_residual_identity", rid},
                {"max_residual_derivative", rder},
                {"settings_hash", hash}});

    report::Series th{"Theta(gamma)", {}, {}}, tp{"Theta'(gamma)", {}, {}};
    for (const auto& r : table.rows()) {
      th.x.push_back(r.gamma);
      th.y.push_back(r.theta);
      tp.x.push_back(r.gamma);
      tp.y.push_back(r.theta_prime);
    }
    write_svg(common, "theta.svg", {th, tp}, {"de Gennes function", "gamma", "value"});
  }
};

// ---------------------------------------------------------------------------
// band

struct BandCmd {
  Common common;
  double gamma = 0.0, xi_min = -2.0, xi_max = 4.0, xi_step = 0.05, tol = 1e-9;
  std::vector<int> j{1, 2, 3};
  bool dirichlet = false;

  void bind(CLI::App* app, Binder& b) {
    common.bind(app, b);
    b.add("gamma", gamma, "Robin coefficient");
    b.add("j", j, "band indices")->delimiter(',');
    b.add("xi-min", xi_min, "first xi");
    b.add("xi-max", xi_max, "last xi");
    b.add("xi-step", xi_step, "xi step");
    b.add("tol", tol, "eigenvalue tolerance");
    b.flag("dirichlet", dirichlet, "overlay the Dirichlet band mu_1^D");
  }

  void run() const {
    require(!j.empty(), "empty band list");
    for (int k : j) require(k >= 1, "band indices start at 1");
    require(xi_max >= xi_min && xi_step > 0.0, "empty xi range");
    const auto n = static_cast<std::size_t>(std::floor((xi_max - xi_min) / xi_step + 1e-9)) + 1;
    require(n <= 100000, "xi grid too large");
    const int kmax = *std::max_element(j.begin(), j.end());
    model1d::SolveOptions so;
    so.tol = tol;
    so.traces = false;
    struct Row {
      std::vector<double> mus;
      double dir = 0.0;
    };
    const auto rows = parallel_map(
        n,
        [&](std::size_t i) {
          const double xi = xi_min + static_cast<double>(i) * xi_step;
          Row r;
          r.mus = model1d::band_point(model1d::RobinSpec::robin(gamma, xi), kmax, so).mus;
          if (dirichlet) r.dir = model1d::mu_dirichlet(1, xi, tol);
          return r;
        },
        common.workers);

    report::Table t;
    t.columns.push_back("xi");
    for (int k : j) t.columns.push_back("mu_" + std::to_string(k));
    if (dirichlet) t.columns.push_back("mu_1_dirichlet");
    std::vector<report::Series> series;
    for (int k : j) series.push_back({"mu_" + std::to_string(k), {}, {}});
    if (dirichlet) series.push_back({"mu_1^D", {}, {}});
    double best = 1e300, best_xi = 0.0;
    long ordering_violations = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double xi = xi_min + static_cast<double>(i) * xi_step;
      std::vector<double> vals{xi};
      for (std::size_t c = 0; c < j.size(); ++c) {
        const double v = rows[i].mus[j[c] - 1];
        vals.push_back(v);
        series[c].x.push_back(xi);
        series[c].y.push_back(v);
      }
      if (dirichlet) {
        vals.push_back(rows[i].dir);
        series.back().x.push_back(xi);
        series.back().y.push_back(rows[i].dir);
        if (kmax >= 2 && !(rows[i].mus[1] > rows[i].dir && rows[i].dir > 1.0)) ++ordering_violations;
      }
      if (rows[i].mus[0] < best) best = rows[i].mus[0], best_xi = xi;
      t.add(vals);
    }
    write_csv(common, "band.csv", t);
    json summary = {{"gamma", gamma}, {"grid_min_mu_1", best}, {"grid_argmin_xi", best_xi}};
    if (dirichlet && kmax >= 2) summary["ordering_violations"] = ordering_violations;
    write_json(common, "band_summary.json", summary);
    write_svg(common, "band.svg", series, {"band functions", "xi", "mu"});
  }
};

// ---------------------------------------------------------------------------
// levelset

struct LevelsetCmd {
  Common common;
  double gamma = 0.0, b = 0.8, tol = 1e-8;
  std::vector<int> j{1};

  void bind(CLI::App* app, Binder& bi) {
    common.bind(app, bi);
    bi.add("gamma", gamma, "Robin coefficient");
    bi.add("b", b, "level");
    bi.add("j", j, "band indices")->delimiter(',');
    bi.add("tol", tol, "root tolerance");
  }

  void run() const {
    require(!j.empty(), "empty band list");
    require(tol > 0.0, "tol must be positive");
    json intervals = json::array();
    report::Table t;
    t.columns = {"j", "xi_minus", "xi_plus", "measure"};
    for (int k : j) {
      require(k >= 1, "band indices start at 1");
      const auto l = levelsets::xi_pm(k, gamma, b, tol);
      intervals.push_back(report::to_json(l));
      t.add({static_cast<double>(k), l.xi_minus, l.xi_plus, l.measure});
    }
    json out = {{"gamma", gamma}, {"b", b}, {"intervals", intervals}};
    if (b < 1.0) {
      const auto s = levelsets::s_sum(gamma, b, tol);
      out["s_sum"] = {{"value", s.value}, {"j_cutoff", s.j_cutoff}};
    }
    write_csv(common, "levelset.csv", t);
    write_json(common, "levelset.json", out);
  }
};

// ---------------------------------------------------------------------------
// count

struct CountCmd {
  Common common;
  std::string model;
  std::vector<double> h;
  double alpha = 1.0, gamma = 0.0, b0 = 0.8, S = 2.0 * kPi, R = 1.0, tol = 1e-9;
  double c_test = 0.0;

  void bind(CLI::App* app, Binder& b) {
    common.bind(app, b);
    b.add("model", model, "cylinder or disc")->check(CLI::IsMember({"cylinder", "disc"}));
    b.add("h", h, "semiclassical parameters")->delimiter(',');
    b.add("alpha", alpha, "Robin exponent");
    b.add("gamma", gamma, "Robin coefficient (constant)");
    b.add("b0", b0, "threshold b0, counting eigenvalues <= b0 h");
    b.add("S", S, "cylinder circumference");
    b.add("R", R, "disc radius");
    b.add("tol", tol, "eigenvalue tolerance");
    b.add("c-test", c_test, "cylinder deviation bound (0 = default 2 j_cutoff + 2)");
  }

  void run() const {
    require(model == "cylinder" || model == "disc", "--model must be cylinder or disc");
    require(!h.empty(), "empty h list");
    const auto hs = sorted_desc(h);
    report::Table t;
    json series = json::array();
    report::Series ratio{"exact / leading", {}, {}};

    if (model == "cylinder") {
      t.columns = {"h", "exact", "leading", "difference", "ratio", "pass"};
      std::vector<cylinder::CountReport> reps(hs.size());
      for (std::size_t i = 0; i < hs.size(); ++i) {
        cylinder::CylinderSpec s{S, hs[i], alpha, gamma, b0};
        cylinder::validate(s);
      }
      const auto out = parallel_map(
          hs.size(),
          [&](std::size_t i) {
            cylinder::CylinderSpec s{S, hs[i], alpha, gamma, b0};
            return cylinder::mo_bound_check(s, c_test > 0.0 ? std::optional<double>(c_test) : std::nullopt);
          },
          common.workers);
      for (const auto& r : out) {
        const double rr = r.leading_term > 0.0 ? static_cast<double>(r.exact_count) / r.leading_term : NAN;
        t.add({r.spec.h, static_cast<double>(r.exact_count), r.leading_term, r.difference, rr, r.pass ? 1.0 : 0.0});
        series.push_back(report::to_json(r));
        ratio.x.push_back(r.spec.h);
        ratio.y.push_back(rr);
      }
    } else {
      t.columns = {"h", "exact", "leading", "difference", "ratio", "m_min", "m_max"};
      const auto curve = geometry::circle(R, 256, geometry::GammaSpec::constant(gamma));
      const auto source = weyl::ThetaSource::direct();
      for (double hv : hs) {
        disc::DiscSpec s{R, hv, alpha, gamma, b0 * hv};
        disc::validate(s);
        disc::DiscOptions o;
        o.tol = tol;
        o.workers = common.workers;
        const auto c = disc::disc_count(s, o);
        weyl::WeylOptions wo;
        wo.override_hypotheses = true;
        const auto lead = weyl::thm1_leading(curve, alpha, b0, hv, source, wo);
        const double rr = lead.value > 0.0 ? static_cast<double>(c.count) / lead.value : NAN;
        t.add({hv, static_cast<double>(c.count), lead.value, static_cast<double>(c.count) - lead.value, rr,
               static_cast<double>(c.m_min), static_cast<double>(c.m_max)});
        json j = report::to_json(s, c);
        j["leading_term"] = report::to_json(lead, false);
        series.push_back(j);
        ratio.x.push_back(hv);
        ratio.y.push_back(rr);
      }
    }
    write_csv(common, "count.csv", t);
    write_json(common, "count.json", {{"model", model}, {"series", series}});
    report::PlotOptions po{model + " count ratio", "h", "exact / leading"};
    po.logx = true;
    write_svg(common, "count.svg", {ratio}, po);
  }
};

// ---------------------------------------------------------------------------
// curved-check

struct CurvedCmd {
  Common common;
  std::vector<double> h{1e-2, 1e-3, 1e-4};
  std::vector<double> beta{-1.0, 1.0};
  double alpha = 1.0, eta = 0.0, delta = 0.45, tol = 1e-9;
  double xi = NAN;
  bool count = false, override_regime = false;
  double S = 2.0 * kPi, rho = 0.0, lambda_coefficient = 1.0, lambda_exponent = 0.4, zeta0 = 1.0;

  void bind(CLI::App* app, Binder& b) {
    common.bind(app, b);
    b.add("h", h, "semiclassical parameters")->delimiter(',');
    b.add("beta", beta, "curvature values")->delimiter(',');
    b.add("alpha", alpha, "Robin exponent");
    b.add("eta", eta, "Robin coefficient");
    b.add("delta", delta, "truncation exponent, length h^(delta - 1/2)");
    b.add("xi", xi, "Fourier variable (default xi(eta~))");
    b.add("tol", tol, "eigenvalue tolerance");
    b.flag("count", count, "also run the weighted-cylinder count");
    b.add("S", S, "cylinder circumference for --count");
    b.add("rho", rho, "regime exponent for --count (0 = half the admissible bound)");
    b.add("lambda-coefficient", lambda_coefficient, "lambda = Theta(eta~) + c h^p: c");
    b.add("lambda-exponent", lambda_exponent, "lambda = Theta(eta~) + c h^p: p");
    b.add("zeta0", zeta0, "regime constant");
    b.flag("override-regime", override_regime, "count even when the regime inequality fails");
  }

  void run() const {
    require(!h.empty() && !beta.empty(), "empty h or beta list");
    const auto hs = sorted_desc(h);
    curved::WeightedOptions wo;
    wo.tol = tol;
    report::Table t;
    t.columns = {"h", "beta", "xi", "mu", "model_value", "residual"};
    json slopes = json::array();
    std::vector<report::Series> series;
    for (double bv : beta) {
      report::Series s{"beta=" + report::number(bv), {}, {}};
      for (double hv : hs) {
        curved::WeightedModelSpec spec{hv, bv, 0.0, alpha, eta, delta};
        const double et = spec.eta_tilde();
        spec.xi = std::isnan(xi) ? (et == 0.0 ? degennes::at_zero().xi_min : degennes::theta(et, 1e-10).xi_min) : xi;
        const auto e = curved::expansion_residual(spec, wo);
        t.add({hv, bv, spec.xi, e.mu, e.model_value, e.residual});
        s.x.push_back(hv);
        s.y.push_back(e.residual);
      }
      double slope = NAN;
      if (hs.size() >= 2) slope = weyl::fit_power_law(s.x, s.y).exponent;
      slopes.push_back({{"beta", bv}, {"slope", slope}});
      series.push_back(s);
    }
    json out = {{"expansion_slopes", slopes}};

    if (count) {
      report::Table c;
      c.columns = {"h", "beta", "lambda", "count", "leading", "relative_error"};
      json counts = json::array();
      const double rho0 = (alpha == 0.5) ? delta - 0.25 : std::min(delta - 0.25, alpha - 0.5);
      const double r = rho > 0.0 ? rho : 0.5 * rho0;
      for (double bv : beta) {
        for (double hv : hs) {
          const double et = std::pow(hv, alpha - 0.5) * eta;
          const double th = et == 0.0 ? degennes::at_zero().theta : degennes::theta(et, 1e-10).theta;
          curved::LTildeSpec ls{hv, bv, S, alpha, eta, th + lambda_coefficient * std::pow(hv, lambda_exponent),
                                delta, r, zeta0, override_regime};
          const auto lc = curved::ltilde_count(ls, wo);
          const double rel = lc.leading > 0.0 ? std::abs(static_cast<double>(lc.count) - lc.leading) / lc.leading : NAN;
          c.add({hv, bv, ls.lambda, static_cast<double>(lc.count), lc.leading, rel});
          json j = report::to_json(lc);
          j["h"] = hv;
          j["beta"] = bv;
          counts.push_back(j);
        }
      }
      write_csv(common, "ltilde.csv", c);
      out["ltilde"] = counts;
    }
    write_csv(common, "curved.csv", t);
    write_json(common, "curved.json", out);
    report::PlotOptions po{"expansion residual", "h", "residual"};
    po.logx = po.logy = true;
    write_svg(common, "curved.svg", series, po);
  }
};

// ---------------------------------------------------------------------------
// weyl-compare

struct WeylCmd {
  Common common;
  std::string theorem, curve = "circle", gamma_profile = "constant", exact = "none", ce_mode = "full", table;
  std::vector<double> h;
  double R = 1.0, axis_a = 2.0, axis_b = 1.0;
  int samples = 512;
  double gamma = 0.0, gamma_amplitude = 0.0, gamma_center = 0.0;
  double alpha = 1.0, b0 = 0.8, a = 0.0, lambda = NAN, beta = NAN, tol = 1e-9;
  double theta_step = 0.02;
  double c0 = 1.0, zeta0 = 1.0, varrho = 0.25, rho = 0.1;
  bool override_hypotheses = false;

  void bind(CLI::App* app, Binder& b) {
    common.bind(app, b);
    b.add("theorem", theorem, "1, 2, 3, 4.1, 4.2, 4.3 or ce")
        ->check(CLI::IsMember({"1", "2", "3", "4.1", "4.2", "4.3", "ce"}));
    b.add("h", h, "semiclassical parameters")->delimiter(',');
    b.add("curve", curve, "circle or ellipse");
    b.add("R", R, "circle radius");
    b.add("axis-a", axis_a, "ellipse semi-axis along x");
    b.add("axis-b", axis_b, "ellipse semi-axis along y");
    b.add("samples", samples, "boundary samples");
    b.add("gamma-profile", gamma_profile, "constant, cosine-bump or quadratic-well");
    b.add("gamma", gamma, "gamma base value (constant / bump base / well minimum)");
    b.add("gamma-amplitude", gamma_amplitude, "bump amplitude or well curvature");
    b.add("gamma-center", gamma_center, "arclength of the bump peak or well minimum");
    b.add("alpha", alpha, "Robin exponent");
    b.add("b0", b0, "theorem 1 threshold");
    b.add("a", a, "threshold offset a");
    b.add("lambda", lambda, "scaled threshold for theorem 3 and ce");
    b.add("beta", beta, "theorem 3: lambda = Theta(gamma0) + a h^beta when set");
    b.add("ce-mode", ce_mode, "full, relaxed or dominant")->check(CLI::IsMember({"full", "relaxed", "dominant"}));
    b.add("exact", exact, "none, disc or cylinder")->check(CLI::IsMember({"none", "disc", "cylinder"}));
    b.add("table", table, "de Gennes table CSV (default: grid filled on demand)");
    b.add("theta-step", theta_step, "grid step of the on-demand Theta source; 0 minimizes at every sample");
    b.add("tol", tol, "eigenvalue tolerance for exact counts");
    b.add("c0", c0, "regime constant c0");
    b.add("zeta0", zeta0, "regime constant zeta0");
    b.add("varrho", varrho, "theorem 3 regime exponent");
    b.add("rho", rho, "concentration regime exponent");
    b.flag("override-hypotheses", override_hypotheses, "evaluate and flag instead of rejecting");
  }

  weyl::WeylEstimate estimate(const geometry::BoundaryCurve& c, double hv, const weyl::ThetaSource& src,
                              const weyl::WeylOptions& o) const {
    if (theorem == "1") return weyl::thm1_leading(c, alpha, b0, hv, src, o);
    if (theorem == "2") return weyl::thm2_leading(c, a, alpha, hv, o);
    if (theorem == "3") {
      if (!std::isnan(beta)) return weyl::thm3_generic(c, a, beta, hv, src, o);
      require(!std::isnan(lambda), "theorem 3 needs --lambda or --beta");
      return weyl::thm3_leading(c, lambda, hv, src, o);
    }
    if (theorem == "ce") {
      require(!std::isnan(lambda), "ce needs --lambda");
      const auto mode = ce_mode == "relaxed"    ? weyl::CeMode::Relaxed
                        : ce_mode == "dominant" ? weyl::CeMode::DominantThreshold
                                                : weyl::CeMode::Full;
      return weyl::ce_conc_leading(c, alpha, lambda, hv, src, mode, o);
    }
    return weyl::thm4_leading(c, a, alpha, hv, theorem[2] - '0', src, o);
  }

  void run() const {
    require(!h.empty(), "empty h list");
    const auto hs = sorted_desc(h);
    geometry::GammaSpec gs{geometry::parse_gamma_kind(gamma_profile), gamma, gamma_amplitude, gamma_center};
    const auto c = curve == "circle"    ? geometry::circle(R, samples, gs)
                   : curve == "ellipse" ? geometry::ellipse(axis_a, axis_b, samples, gs)
                                        : throw ConfigurationError("unknown curve '" + curve + "'");
    require(theta_step >= 0.0, "theta-step must be non-negative");
    const auto src = !table.empty()    ? weyl::ThetaSource(std::make_shared<const degennes::DeGennesTable>(
                                             degennes::DeGennesTable::load_csv(table)))
                     : theta_step > 0.0 ? weyl::ThetaSource::lazy_grid(theta_step)
                                        : weyl::ThetaSource::direct();
    weyl::WeylOptions o;
    o.override_hypotheses = override_hypotheses;
    o.c0 = c0;
    o.zeta0 = zeta0;
    o.varrho = varrho;
    o.rho = rho;
    if (exact == "disc") {
      require(curve == "circle" && gs.is_constant(), "disc counts need a circle with constant gamma");
    }
    if (exact == "cylinder") {
      require(gs.is_constant(), "cylinder counts need constant gamma");
      require(theorem == "1" || theorem == "2" || theorem == "3",
              "the flat cylinder has no curvature; pair it with theorems 1-3 only");
    }

    report::Table t;
    t.columns = {"h", "threshold", "estimate", "exact", "ratio"};
    json ests = json::array();
    report::Series ratio{"exact / estimate", {}, {}};
    for (double hv : hs) {
      const auto e = estimate(c, hv, src, o);
      double ex = NAN;
      json j = report::to_json(e);
      if (exact == "disc") {
        disc::DiscSpec s{R, hv, alpha, gs.base, e.threshold};
        disc::DiscOptions dopt;
        dopt.tol = tol;
        dopt.workers = common.workers;
        const auto dc = disc::disc_count(s, dopt);
        ex = static_cast<double>(dc.count);
        j["exact"] = report::to_json(s, dc);
      } else if (exact == "cylinder") {
        cylinder::CylinderSpec s{c.perimeter, hv, alpha, gs.base, e.threshold / hv};
        const auto cc = cylinder::analyze(s, tol);
        ex = static_cast<double>(cc.count);
        j["exact"] = {{"spec", report::to_json(s)}, {"count", cc.count}, {"ambiguous", cc.ambiguous}};
      }
      const double rr = (!std::isnan(ex) && e.value > 0.0) ? ex / e.value : NAN;
      t.add({hv, e.threshold, e.value, ex, rr});
      ests.push_back(j);
      ratio.x.push_back(hv);
      ratio.y.push_back(rr);
    }
    write_csv(common, "weyl.csv", t);
    write_json(common, "weyl.json", {{"theorem", theorem}, {"estimates", ests}});
    report::PlotOptions po{"theorem " + theorem, "h", "exact / estimate"};
    po.logx = true;
    write_svg(common, "weyl.svg", {ratio}, po);
  }
};

template <class Cmd>
struct Registered {
  Cmd cmd;
  CLI::App* app = nullptr;
  std::unique_ptr<Binder> binder;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"robinlab: magnetic Robin Laplacian band functions, counts and Weyl laws"};
  app.require_subcommand(1);
  // -h stays free for the semiclassical parameter.
  app.set_help_flag("--help", "print help");

  Registered<TabulateCmd> tab;
  Registered<BandCmd> band;
  Registered<LevelsetCmd> lev;
  Registered<CountCmd> cnt;
  Registered<CurvedCmd> cur;
  Registered<WeylCmd> wey;
  auto reg = [&](auto& r, const char* name, const char* help) {
    r.app = app.add_subcommand(name, help);
    r.binder = std::make_unique<Binder>(r.app);
    r.cmd.bind(r.app, *r.binder);
  };
  reg(tab, "tabulate-theta", "tabulate Theta(gamma), xi(gamma), Theta'(gamma)");
  reg(band, "band", "band functions mu_j(gamma, xi) on a xi grid");
  reg(lev, "levelset", "sublevel sets {mu_j < b} and their summed measure");
  reg(cnt, "count", "exact counts with leading terms over an h sweep");
  reg(cur, "curved-check", "weighted curved model: expansion residuals and counts");
  reg(wey, "weyl-compare", "Weyl leading terms, optionally paired with exact counts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    auto dispatch = [&](auto& r) {
      if (!r.app->parsed()) return false;
      r.binder->apply(load_config(r.cmd.common.config));
      r.cmd.common.validate();
      r.cmd.run();
      return true;
    };
    dispatch(tab) || dispatch(band) || dispatch(lev) || dispatch(cnt) || dispatch(cur) || dispatch(wey);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const json::exception& e) {
    std::cerr << "error: invalid config value: " << e.what() << "\n";
    return 2;
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
