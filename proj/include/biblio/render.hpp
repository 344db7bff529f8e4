#pragma once

#include <map>
#include <string>
#include <vector>

#include "biblio/conetwork.hpp"
#include "biblio/corpus.hpp"
#include "biblio/yindex.hpp"

namespace biblio {

struct PlotSpec {
  int width = 640;
  int height = 640;
  int margin = 60;
  long long label_min_j = 0;  // polar: j threshold; network: weighted degree threshold
  std::vector<std::string> palette = default_palette();

  static std::vector<std::string> default_palette();
  /// Throws ConfigError unless width, height > 2 * margin, margin >= 0 and
  /// the palette is non-empty.
  void validate() const;
};

/// Polar plot viewport. With s = (min(width, height) - 2 margin) / r_max:
///   px = margin + x * s,  py = height - margin - y * s
/// where (x, y) = (j cos h, j sin h). r_max is the largest j rounded up to
/// the gridline step (at least one step).
struct PolarViewport {
  double margin = 0.0;
  double height = 0.0;
  double scale = 1.0;
  double r_max = 1.0;
  long long grid_step = 1;

  double px(double x) const { return margin + x * scale; }
  double py(double y) const { return height - margin - y * scale; }
  double data_x(double px_value) const { return (px_value - margin) / scale; }
  double data_y(double py_value) const { return (height - margin - py_value) / scale; }
};

/// Integer step from {1, 2, 5} x 10^k giving at most 10 gridlines up to max_j.
long long grid_step(long long max_j);
PolarViewport polar_viewport(const std::vector<YIndex>& points, const PlotSpec& spec);

std::string render_polar(const std::vector<YIndex>& points, const PlotSpec& spec,
                         const std::string& title = "");

/// `degrees` holds each node's total collaboration frequency (weighted degree).
std::string render_network(const CoNetwork& network, const Partition& partition,
                           const Layout& layout, const std::map<std::string, long long>& degrees,
                           const PlotSpec& spec, const std::string& title = "");

/// Node radius for a given total collaboration frequency.
double node_radius(long long total_links);
/// Stroke width for a given edge weight.
double edge_width(long long weight);

std::string render_timeline(const std::vector<TimelinePeriod>& periods, const PlotSpec& spec);

std::string xml_escape(const std::string& text);

}  // namespace biblio
