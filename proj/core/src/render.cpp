#include "xmapf/render.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace xmapf {

namespace {

const char* kPalette[] = {
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628",
    "#f781bf", "#17becf", "#bcbd22", "#8c564b", "#2ca02c", "#d62728",
};

double cx(Cell c, int px) { return (c.x + 0.5) * px; }
double cy(Cell c, int px) { return (c.y + 0.5) * px; }

void draw_grid(std::ostringstream& out, const GridWorld& world, int px) {
  const int w = world.width() * px;
  const int h = world.height() * px;
  out << "<rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h
      << "\" fill=\"white\"/>\n";
  for (int x = 0; x <= world.width(); ++x) {
    out << "<line x1=\"" << x * px << "\" y1=\"0\" x2=\"" << x * px
        << "\" y2=\"" << h << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
  }
  for (int y = 0; y <= world.height(); ++y) {
    out << "<line x1=\"0\" y1=\"" << y * px << "\" x2=\"" << w << "\" y2=\""
        << y * px << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
  }
  for (int y = 0; y < world.height(); ++y) {
    for (int x = 0; x < world.width(); ++x) {
      if (world.blocked(Cell{x, y})) {
        out << "<rect x=\"" << x * px << "\" y=\"" << y * px << "\" width=\""
            << px << "\" height=\"" << px << "\" fill=\"#444444\"/>\n";
      }
    }
  }
}

void draw_star(std::ostringstream& out, double x, double y, double r,
               const std::string& color) {
  // 5-pointed star
  out << "<path fill=\"" << color << "\" d=\"M";
  for (int k = 0; k < 10; ++k) {
    double ang = -1.5707963 + k * 0.62831853;
    double rad = (k % 2 == 0) ? r : 0.45 * r;
    out << (k ? " L" : "") << x + rad * std::cos(ang) << ' '
        << y + rad * std::sin(ang);
  }
  out << " Z\"/>\n";
}

void draw_path(std::ostringstream& out, const Path& p, int lo, int hi, int px,
               const std::string& color, bool with_markers, Cell goal) {
  const int a = std::max(lo, 0);
  const int b = std::min(hi, p.last_time());
  if (a > b) return;  // agent not alive in this window
  out << "<polyline fill=\"none\" stroke=\"" << color
      << "\" stroke-width=\"" << px / 8.0 << "\" stroke-linecap=\"round\" "
      << "stroke-linejoin=\"round\" points=\"";
  for (int t = a; t <= b; ++t) {
    out << cx(p.at(t), px) << ',' << cy(p.at(t), px) << ' ';
  }
  out << "\"/>\n";
  // waits as a small loop glyph
  for (int t = a + 1; t <= b; ++t) {
    if (p.at(t) == p.at(t - 1)) {
      out << "<circle cx=\"" << cx(p.at(t), px) + px / 5.0 << "\" cy=\""
          << cy(p.at(t), px) - px / 5.0 << "\" r=\"" << px / 8.0
          << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
          << px / 16.0 << "\"/>\n";
    }
  }
  // segment entry marker (start of window); full start gets the circle
  out << "<circle cx=\"" << cx(p.at(a), px) << "\" cy=\"" << cy(p.at(a), px)
      << "\" r=\"" << px / 5.0 << "\" fill=\"" << color << "\"/>\n";
  if (with_markers) {
    draw_star(out, cx(goal, px), cy(goal, px), px / 3.0, color);
  }
}

std::string document(const GridWorld& world, const Plan& plan, int lo, int hi,
                     const std::string& label, const RenderSpec& spec) {
  const int px = spec.cell_px;
  const int w = world.width() * px;
  const int h = world.height() * px + px;  // label strip
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << w << ' '
      << h << "\">\n";
  draw_grid(out, world, px);
  for (const auto& p : plan.paths) {
    const bool goal_in_window = p.last_time() <= hi;
    draw_path(out, p, lo, hi, px, spec.color(p.agent_id), goal_in_window,
              p.vertices.back());
  }
  out << "<text x=\"" << px / 4 << "\" y=\"" << world.height() * px + 0.7 * px
      << "\" font-size=\"" << 0.6 * px << "\" fill=\"#222222\">" << label
      << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace

std::string RenderSpec::color(int agent_id) const {
  return kPalette[static_cast<std::size_t>(agent_id) %
                  (sizeof(kPalette) / sizeof(kPalette[0]))];
}

std::vector<RenderedDocument> render_explanation(const Plan& plan,
                                                 const Decomposition& d,
                                                 const GridWorld& world,
                                                 const RenderSpec& spec) {
  if (d.breakpoints.size() < 2 ||
      d.breakpoints.back() != plan.makespan() + 1) {
    throw std::invalid_argument("render_explanation: decomposition does not match plan");
  }
  if (!decomposition_is_sound(plan, d)) {
    throw std::invalid_argument("render_explanation: segments are not vertex-disjoint");
  }
  std::vector<RenderedDocument> docs;
  for (int k = 1; k <= d.index(); ++k) {
    const int a = d.window_begin(k - 1);
    const int b = d.window_end(k - 1);
    std::ostringstream label;
    label << "k=[" << a << ',' << b << ']';
    std::ostringstream name;
    name << "segment_" << k << "_t" << a << '-' << b << ".svg";
    docs.push_back(RenderedDocument{
        name.str(), document(world, plan, a, b - 1, label.str(), spec)});
  }
  docs.push_back(RenderedDocument{
      "full_plan.svg",
      document(world, plan, 0, plan.makespan(), "full plan", spec)});
  return docs;
}

}  // namespace xmapf
