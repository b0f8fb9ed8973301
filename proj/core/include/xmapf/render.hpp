#pragma once

#include <string>
#include <vector>

#include "xmapf/grid.hpp"
#include "xmapf/segmentation.hpp"

namespace xmapf {

struct RenderSpec {
  int cell_px = 40;
  /// Deterministic agent-id -> color.
  std::string color(int agent_id) const;
};

struct RenderedDocument {
  std::string filename;  // segment_<k>_t<a>-<b>.svg or full_plan.svg
  std::string svg;
};

/// One SVG per segment (agents drawn over their window sub-paths, window
/// label "k=[a,b]") plus a full-plan overview. Starts are circles, goals
/// stars, waits a small loop glyph.
std::vector<RenderedDocument> render_explanation(const Plan& plan,
                                                 const Decomposition& d,
                                                 const GridWorld& world,
                                                 const RenderSpec& spec = {});

}  // namespace xmapf
