#include "robinlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "robinlab/errors.hpp"

namespace robinlab::report {

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json to_json(const degennes::DeGennesPoint& p) {
  return {{"gamma", p.gamma},
          {"theta", p.theta},
          {"xi_min", p.xi_min},
          {"theta_prime", p.theta_prime},
          {"phi0_sq", p.phi0_sq},
          {"residual_identity", p.residual_identity},
          {"residual_derivative", std::isnan(p.residual_derivative) ? json(nullptr) : json(p.residual_derivative)}};
}

json to_json(const levelsets::LevelSetInterval& l) {
  return {{"j", l.j},           {"gamma", l.gamma},       {"b", l.b},
          {"xi_minus", l.xi_minus}, {"xi_plus", l.xi_plus}, {"measure", l.measure},
          {"empty", l.empty},   {"boundary", l.boundary}, {"band_min", l.band_min},
          {"band_min_xi", l.band_min_xi}, {"ceiling", l.ceiling}};
}

json to_json(const cylinder::CylinderSpec& s) {
  return {{"S", s.S}, {"h", s.h}, {"alpha", s.alpha}, {"gamma", s.gamma}, {"b0", s.b0}};
}

json to_json(const cylinder::CountReport& r) {
  json bands = json::array();
  for (const auto& b : r.bands) {
    bands.push_back({{"j", b.j},
                     {"n_min", b.n_min},
                     {"n_max", b.n_max},
                     {"xi_minus", b.xi_minus},
                     {"xi_plus", b.xi_plus},
                     {"measure", b.measure}});
  }
  return {{"spec", to_json(r.spec)},
          {"exact_count", r.exact_count},
          {"leading_term", r.leading_term},
          {"difference", r.difference},
          {"relative_error", r.relative_error},
          {"c_test", r.c_test},
          {"pass", r.pass},
          {"ambiguous", r.ambiguous},
          {"j_cutoff", r.j_cutoff},
          {"bands", bands}};
}

json to_json(const disc::DiscSpec& s, const disc::DiscCount& c) {
  json modes = json::array();
  for (const auto& m : c.modes) modes.push_back({{"m", m.m}, {"count", m.count}, {"eigenvalues", m.eigenvalues}});
  return {{"R", s.R},
          {"h", s.h},
          {"alpha", s.alpha},
          {"gamma", s.gamma},
          {"lambda", s.lambda},
          {"count", c.count},
          {"window", {c.m_min, c.m_max}},
          {"certified", c.certified},
          {"ambiguous", c.ambiguous},
          {"modes", modes}};
}

json to_json(const curved::Expansion& e) {
  return {{"mu", e.mu},       {"model_value", e.model_value}, {"residual", e.residual}, {"theta", e.theta},
          {"xi_star", e.xi_star}, {"d2", e.d2},               {"d3", e.d3}};
}

json to_json(const curved::LTildeCount& c) {
  return {{"count", c.count},
          {"leading", c.leading},
          {"n_range", {c.n_min, c.n_max}},
          {"scanned", {c.scanned_min, c.scanned_max}},
          {"theta", c.theta},
          {"d2", c.d2},
          {"d3", c.d3},
          {"regime_ok", c.regime_ok},
          {"second_band_clear", c.second_band_clear}};
}

json to_json(const weyl::WeylEstimate& e, bool with_samples) {
  json j = {{"theorem", weyl::theorem_id(e.theorem)},
            {"value", e.value},
            {"h", e.h},
            {"alpha", e.alpha},
            {"curve", e.curve},
            {"perimeter", e.perimeter},
            {"gamma", e.gamma_id},
            {e.parameter_name, e.parameter},
            {"threshold", e.threshold},
            {"violations", e.violations}};
  if (!e.note.empty()) j["note"] = e.note;
  if (with_samples) j["integrand_samples"] = {{"s", e.s}, {"value", e.integrand}};
  return j;
}

void Table::add(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(number(v));
  add_cells(std::move(cells));
}

void Table::add_cells(std::vector<std::string> cells) {
  if (cells.size() != columns.size()) throw ConfigurationError("table row width does not match the header");
  rows.push_back(std::move(cells));
}

std::string Table::to_csv() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(columns);
  for (const auto& r : rows) line(r);
  return out;
}

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b"};

}  // namespace

std::string svg_plot(const std::vector<Series>& series, const PlotOptions& o) {
  const double left = 70, right = 20, top = 30, bottom = 50;
  const double pw = o.width - left - right, ph = o.height - top - bottom;
  auto tx = [&](double v) { return o.logx ? std::log10(v) : v; };
  auto ty = [&](double v) { return o.logy ? std::log10(v) : v; };
  auto usable = [&](double x, double y) {
    return std::isfinite(x) && std::isfinite(y) && (!o.logx || x > 0) && (!o.logy || y > 0);
  };

  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!usable(s.x[i], s.y[i])) continue;
      x0 = std::min(x0, tx(s.x[i]));
      x1 = std::max(x1, tx(s.x[i]));
      y0 = std::min(y0, ty(s.y[i]));
      y1 = std::max(y1, ty(s.y[i]));
    }
  }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x0 -= 0.5, x1 += 0.5;
  if (y1 == y0) y0 -= 0.5, y1 += 0.5;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  auto px = [&](double v) { return left + (tx(v) - x0) / (x1 - x0) * pw; };
  auto py = [&](double v) { return top + (y1 - ty(v)) / (y1 - y0) * ph; };

  std::ostringstream out;
  char buf[256];
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << o.width << "\" height=\"" << o.height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf,
                "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" fill=\"none\" stroke=\"black\"/>\n", left,
                top, pw, ph);
  out << buf;
  // ticks: 5 per axis at the ends and in between, labelled in data units
  for (int k = 0; k <= 4; ++k) {
    const double fx = x0 + (x1 - x0) * k / 4.0, fy = y0 + (y1 - y0) * k / 4.0;
    const double lx = o.logx ? std::pow(10.0, fx) : fx, ly = o.logy ? std::pow(10.0, fy) : fy;
    const double sx = left + pw * k / 4.0, sy = top + ph - ph * k / 4.0;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.2f\" y=\"%.2f\" font-size=\"11\" text-anchor=\"middle\">%.4g</text>\n", sx,
                  top + ph + 16, lx);
    out << buf;
    std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.2f\" font-size=\"11\" text-anchor=\"end\">%.4g</text>\n",
                  left - 6, sy + 4, ly);
    out << buf;
  }
  std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.2f\" font-size=\"13\" text-anchor=\"middle\">", left + pw / 2,
                static_cast<double>(o.height) - 12);
  out << buf << escape(o.xlabel) << (o.logx ? " (log)" : "") << "</text>\n";
  std::snprintf(buf, sizeof buf,
                "<text x=\"14\" y=\"%.2f\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 14 %.2f)\">",
                top + ph / 2, top + ph / 2);
  out << buf << escape(o.ylabel) << (o.logy ? " (log)" : "") << "</text>\n";
  if (!o.title.empty()) {
    std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"18\" font-size=\"14\" text-anchor=\"middle\">",
                  left + pw / 2);
    out << buf << escape(o.title) << "</text>\n";
  }

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kColors[k % (sizeof kColors / sizeof kColors[0])];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!usable(s.x[i], s.y[i])) continue;
      std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", first ? "" : " ", px(s.x[i]), py(s.y[i]));
      out << buf;
      first = false;
    }
    out << "\"/>\n";
    std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.2f\" font-size=\"11\" fill=\"%s\">", left + 8,
                  top + 14 + 14.0 * static_cast<double>(k), color);
    out << buf << escape(s.label) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  std::error_code ec;
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path(), ec);
  if (ec) throw PersistenceError("cannot create directory for " + path + ": " + ec.message());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw PersistenceError("cannot open " + path + " for writing");
  f << content;
  if (!f) throw PersistenceError("write failed for " + path);
}

}  // namespace robinlab::report
