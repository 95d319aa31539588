#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "robinlab/curved.hpp"
#include "robinlab/cylinder.hpp"
#include "robinlab/degennes.hpp"
#include "robinlab/disc.hpp"
#include "robinlab/levelsets.hpp"
#include "robinlab/weyl.hpp"

// Serialization of results: JSON objects, CSV tables and bare SVG polylines.
// CSV numbers use %.17g and JSON the shortest round-trip form, so reruns are
// byte-identical.

namespace robinlab::report {

using json = nlohmann::ordered_json;

json to_json(const degennes::DeGennesPoint& p);
json to_json(const levelsets::LevelSetInterval& l);
json to_json(const cylinder::CylinderSpec& s);
json to_json(const cylinder::CountReport& r);
json to_json(const disc::DiscSpec& s, const disc::DiscCount& c);
json to_json(const curved::Expansion& e);
json to_json(const curved::LTildeCount& c);
json to_json(const weyl::WeylEstimate& e, bool with_samples = true);

std::string number(double v);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add(const std::vector<double>& values);
  void add_cells(std::vector<std::string> cells);
  std::string to_csv() const;
};

struct Series {
  std::string label;
  std::vector<double> x, y;
};

struct PlotOptions {
  std::string title;
  std::string xlabel = "x";
  std::string ylabel = "y";
  bool logx = false;
  bool logy = false;
  int width = 640;
  int height = 420;
};

/// Axes, one polyline per series, legend. Non-positive values are dropped on
/// log axes.
std::string svg_plot(const std::vector<Series>& series, const PlotOptions& options);

/// Writes the file, creating parent directories. PersistenceError on failure.
void write_file(const std::string& path, const std::string& content);

}  // namespace robinlab::report
