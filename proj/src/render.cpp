#include "biblio/render.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace biblio {

std::vector<std::string> PlotSpec::default_palette() {
  return {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
          "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};
}

void PlotSpec::validate() const {
  if (margin < 0) throw ConfigError("plot margin must be >= 0");
  if (width <= 2 * margin || height <= 2 * margin) {
    throw ConfigError("plot width and height must exceed twice the margin");
  }
  if (palette.empty()) throw ConfigError("plot palette is empty");
}

std::string xml_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string num(double v) { return format_fixed(v, 2); }

void open_svg(std::ostringstream& out, const PlotSpec& spec) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << spec.width
      << "\" height=\"" << spec.height << "\" viewBox=\"0 0 " << spec.width << " "
      << spec.height << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << spec.width << "\" height=\"" << spec.height
      << "\" fill=\"#ffffff\"/>\n";
}

void title_text(std::ostringstream& out, const PlotSpec& spec, const std::string& title) {
  if (title.empty()) return;
  out << "<text x=\"" << num(spec.width / 2.0) << "\" y=\"" << num(spec.margin / 2.0)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
      << xml_escape(title) << "</text>\n";
}

}  // namespace

long long grid_step(long long max_j) {
  if (max_j <= 10) return 1;
  long long base = 1;
  while (true) {
    for (long long m : {1LL, 2LL, 5LL}) {
      const long long step = m * base;
      if (max_j <= 10 * step) return step;
    }
    base *= 10;
  }
}

PolarViewport polar_viewport(const std::vector<YIndex>& points, const PlotSpec& spec) {
  long long max_j = 1;
  for (const auto& p : points) max_j = std::max(max_j, p.j);
  PolarViewport v;
  v.grid_step = grid_step(max_j);
  v.r_max = static_cast<double>((max_j + v.grid_step - 1) / v.grid_step * v.grid_step);
  v.margin = spec.margin;
  v.height = spec.height;
  v.scale = (std::min(spec.width, spec.height) - 2.0 * spec.margin) / v.r_max;
  return v;
}

std::string render_polar(const std::vector<YIndex>& points, const PlotSpec& spec,
                         const std::string& title) {
  spec.validate();
  const PolarViewport v = polar_viewport(points, spec);
  std::ostringstream out;
  open_svg(out, spec);
  title_text(out, spec, title);

  const double ox = v.px(0.0);
  const double oy = v.py(0.0);
  out << "<g class=\"grid\" fill=\"none\" stroke=\"#d0d0d0\" stroke-width=\"1\">\n";
  for (long long r = v.grid_step; r <= static_cast<long long>(v.r_max); r += v.grid_step) {
    const double rr = static_cast<double>(r) * v.scale;
    out << "<path data-j=\"" << r << "\" d=\"M " << num(ox + rr) << " " << num(oy) << " A "
        << num(rr) << " " << num(rr) << " 0 0 0 " << num(ox) << " " << num(oy - rr) << "\"/>\n";
  }
  out << "</g>\n<g class=\"grid-labels\" font-family=\"sans-serif\" font-size=\"10\" "
         "fill=\"#606060\" text-anchor=\"middle\">\n";
  for (long long r = v.grid_step; r <= static_cast<long long>(v.r_max); r += v.grid_step) {
    out << "<text x=\"" << num(v.px(static_cast<double>(r))) << "\" y=\"" << num(oy + 14.0)
        << "\">" << r << "</text>\n";
  }
  out << "</g>\n";

  // Axes and the equal FP/RP diagonal.
  const double end = v.r_max * v.scale;
  out << "<g class=\"axes\" stroke=\"#000000\" stroke-width=\"1\">\n"
      << "<line x1=\"" << num(ox) << "\" y1=\"" << num(oy) << "\" x2=\"" << num(ox + end)
      << "\" y2=\"" << num(oy) << "\"/>\n"
      << "<line x1=\"" << num(ox) << "\" y1=\"" << num(oy) << "\" x2=\"" << num(ox)
      << "\" y2=\"" << num(oy - end) << "\"/>\n"
      << "</g>\n";
  const double diag = v.r_max * std::cos(kPi / 4.0);
  out << "<line class=\"diagonal\" x1=\"" << num(ox) << "\" y1=\"" << num(oy) << "\" x2=\""
      << num(v.px(diag)) << "\" y2=\"" << num(v.py(diag))
      << "\" stroke=\"#808080\" stroke-width=\"1\" stroke-dasharray=\"6 4\"/>\n";
  out << "<text x=\"" << num(ox + end / 2.0) << "\" y=\"" << num(oy + 32.0)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">j cos h</text>\n"
      << "<text x=\"" << num(ox - 36.0) << "\" y=\"" << num(oy - end / 2.0)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
         "transform=\"rotate(-90 "
      << num(ox - 36.0) << " " << num(oy - end / 2.0) << ")\">j sin h</text>\n";

  out << "<g class=\"points\" fill=\"" << spec.palette.front() << "\">\n";
  for (const auto& p : points) {
    out << "<circle data-entity=\"" << xml_escape(p.entity) << "\" data-j=\"" << p.j
        << "\" data-h=\"" << format_fixed(p.h, 4) << "\" cx=\"" << num(v.px(p.x)) << "\" cy=\""
        << num(v.py(p.y)) << "\" r=\"3\"/>\n";
  }
  out << "</g>\n";

  // Labels: nudged outward along the radius while within 10 px of a placed one.
  out << "<g class=\"labels\" font-family=\"sans-serif\" font-size=\"10\" fill=\"#202020\">\n";
  std::vector<Point> placed;
  for (const auto& p : points) {
    if (p.j < spec.label_min_j) continue;
    const double ux = std::cos(p.h);
    const double uy = -std::sin(p.h);
    double offset = 6.0;
    Point at{v.px(p.x) + ux * offset, v.py(p.y) + uy * offset};
    for (int guard = 0; guard < 1000; ++guard) {
      const bool clash = std::any_of(placed.begin(), placed.end(), [&](const Point& q) {
        return std::hypot(q.x - at.x, q.y - at.y) < 10.0;
      });
      if (!clash) break;
      offset += 10.0;
      at = {v.px(p.x) + ux * offset, v.py(p.y) + uy * offset};
    }
    placed.push_back(at);
    const std::string label = p.label.empty() ? p.entity : p.label;
    out << "<text data-entity=\"" << xml_escape(p.entity) << "\" x=\"" << num(at.x) << "\" y=\""
        << num(at.y) << "\">" << xml_escape(label) << "</text>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

double node_radius(long long total_links) {
  return 2.0 * std::sqrt(static_cast<double>(std::max(total_links, 0LL)));
}

double edge_width(long long weight) { return 0.75 * static_cast<double>(weight); }

std::string render_network(const CoNetwork& network, const Partition& partition,
                           const Layout& layout, const std::map<std::string, long long>& degrees,
                           const PlotSpec& spec, const std::string& title) {
  spec.validate();
  if (partition.community.size() != network.size() || layout.positions.size() != network.size()) {
    throw std::invalid_argument("partition and layout must cover the network");
  }
  std::ostringstream out;
  open_svg(out, spec);
  title_text(out, spec, title);

  double minx = 0.0, maxx = 0.0, miny = 0.0, maxy = 0.0;
  for (std::size_t i = 0; i < layout.positions.size(); ++i) {
    const auto& p = layout.positions[i];
    if (i == 0 || p.x < minx) minx = p.x;
    if (i == 0 || p.x > maxx) maxx = p.x;
    if (i == 0 || p.y < miny) miny = p.y;
    if (i == 0 || p.y > maxy) maxy = p.y;
  }
  const double span = std::max({maxx - minx, maxy - miny, 1e-9});
  const double avail = std::min(spec.width, spec.height) - 2.0 * spec.margin;
  const double s = network.size() > 1 ? avail / span : 0.0;
  const double cx = spec.width / 2.0;
  const double cy = spec.height / 2.0;
  auto sx = [&](double x) { return cx + (x - (minx + maxx) / 2.0) * s; };
  auto sy = [&](double y) { return cy - (y - (miny + maxy) / 2.0) * s; };

  out << "<g class=\"edges\" stroke=\"#9a9a9a\" stroke-opacity=\"0.7\">\n";
  for (const auto& e : network.edges) {
    const auto& a = layout.positions[e.u];
    const auto& b = layout.positions[e.v];
    out << "<line data-u=\"" << xml_escape(network.nodes[e.u]) << "\" data-v=\""
        << xml_escape(network.nodes[e.v]) << "\" data-weight=\"" << e.weight << "\" x1=\""
        << num(sx(a.x)) << "\" y1=\"" << num(sy(a.y)) << "\" x2=\"" << num(sx(b.x))
        << "\" y2=\"" << num(sy(b.y)) << "\" stroke-width=\"" << num(edge_width(e.weight))
        << "\"/>\n";
  }
  out << "</g>\n<g class=\"nodes\" stroke=\"#ffffff\" stroke-width=\"0.5\">\n";
  auto degree_of = [&](const std::string& node) {
    auto it = degrees.find(node);
    return it == degrees.end() ? 0LL : it->second;
  };
  for (std::size_t i = 0; i < network.size(); ++i) {
    const auto& p = layout.positions[i];
    const int c = partition.community[i];
    const auto& colour = spec.palette[static_cast<std::size_t>(c) % spec.palette.size()];
    out << "<circle data-entity=\"" << xml_escape(network.nodes[i]) << "\" data-community=\"" << c
        << "\" data-links=\"" << degree_of(network.nodes[i]) << "\" cx=\"" << num(sx(p.x))
        << "\" cy=\"" << num(sy(p.y)) << "\" r=\"" << num(node_radius(degree_of(network.nodes[i])))
        << "\" fill=\"" << colour << "\"/>\n";
  }
  out << "</g>\n<g class=\"labels\" font-family=\"sans-serif\" font-size=\"9\" "
         "fill=\"#202020\" text-anchor=\"middle\">\n";
  for (std::size_t i = 0; i < network.size(); ++i) {
    const long long d = degree_of(network.nodes[i]);
    if (d < spec.label_min_j) continue;
    const auto& p = layout.positions[i];
    out << "<text x=\"" << num(sx(p.x)) << "\" y=\"" << num(sy(p.y) - node_radius(d) - 2.0)
        << "\">" << xml_escape(network.nodes[i]) << "</text>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

std::string render_timeline(const std::vector<TimelinePeriod>& periods, const PlotSpec& spec) {
  spec.validate();
  if (periods.empty()) throw std::invalid_argument("timeline needs at least one period");
  std::ostringstream out;
  open_svg(out, spec);
  title_text(out, spec, "Publications and mean citations per period");

  std::size_t max_count = 1;
  double max_mean = 1.0;
  for (const auto& p : periods) {
    max_count = std::max(max_count, p.pub_count);
    max_mean = std::max(max_mean, p.mean_citations);
  }
  const double left = spec.margin;
  const double right = spec.width - spec.margin;
  const double top = spec.margin;
  const double bottom = spec.height - spec.margin;
  const double plot_h = bottom - top;
  const double slot = (right - left) / static_cast<double>(periods.size());
  const double bar_w = slot * 0.6;

  out << "<g class=\"axes\" stroke=\"#000000\" stroke-width=\"1\">\n"
      << "<line x1=\"" << num(left) << "\" y1=\"" << num(bottom) << "\" x2=\"" << num(right)
      << "\" y2=\"" << num(bottom) << "\"/>\n"
      << "<line x1=\"" << num(left) << "\" y1=\"" << num(top) << "\" x2=\"" << num(left)
      << "\" y2=\"" << num(bottom) << "\"/>\n"
      << "<line x1=\"" << num(right) << "\" y1=\"" << num(top) << "\" x2=\"" << num(right)
      << "\" y2=\"" << num(bottom) << "\"/>\n"
      << "</g>\n";
  out << "<g font-family=\"sans-serif\" font-size=\"10\">\n"
      << "<text x=\"" << num(left - 8.0) << "\" y=\"" << num(top) << "\" text-anchor=\"end\">"
      << max_count << "</text>\n"
      << "<text x=\"" << num(left - 8.0) << "\" y=\"" << num(bottom)
      << "\" text-anchor=\"end\">0</text>\n"
      << "<text x=\"" << num(right + 8.0) << "\" y=\"" << num(top) << "\">"
      << format_fixed(max_mean, 1) << "</text>\n"
      << "<text x=\"" << num(right + 8.0) << "\" y=\"" << num(bottom) << "\">0</text>\n"
      << "</g>\n";

  const std::string bar_colour = spec.palette.front();
  const std::string line_colour = spec.palette.size() > 1 ? spec.palette[1] : "#000000";
  out << "<g class=\"bars\" fill=\"" << bar_colour << "\">\n";
  for (std::size_t i = 0; i < periods.size(); ++i) {
    const auto& p = periods[i];
    const double h = plot_h * static_cast<double>(p.pub_count) / static_cast<double>(max_count);
    const double x = left + slot * static_cast<double>(i) + (slot - bar_w) / 2.0;
    out << "<rect data-period=\"" << p.label() << "\" data-count=\"" << p.pub_count << "\" x=\""
        << num(x) << "\" y=\"" << num(bottom - h) << "\" width=\"" << num(bar_w)
        << "\" height=\"" << num(h) << "\"/>\n";
  }
  out << "</g>\n";

  std::string path;
  out << "<g class=\"line-points\" fill=\"" << line_colour << "\">\n";
  for (std::size_t i = 0; i < periods.size(); ++i) {
    const auto& p = periods[i];
    const double x = left + slot * (static_cast<double>(i) + 0.5);
    const double y = bottom - plot_h * p.mean_citations / max_mean;
    path += (i == 0 ? "M " : " L ") + num(x) + " " + num(y);
    out << "<circle data-period=\"" << p.label() << "\" data-mean=\""
        << format_fixed(p.mean_citations, 2) << "\" cx=\"" << num(x) << "\" cy=\"" << num(y)
        << "\" r=\"3\"/>\n";
  }
  out << "</g>\n<path class=\"line\" d=\"" << path << "\" fill=\"none\" stroke=\"" << line_colour
      << "\" stroke-width=\"2\"/>\n";
  out << "<g class=\"period-labels\" font-family=\"sans-serif\" font-size=\"10\" "
         "text-anchor=\"middle\">\n";
  for (std::size_t i = 0; i < periods.size(); ++i) {
    out << "<text x=\"" << num(left + slot * (static_cast<double>(i) + 0.5)) << "\" y=\""
        << num(bottom + 16.0) << "\">" << periods[i].label() << "</text>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace biblio
