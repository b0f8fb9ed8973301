#pragma once

#include <string>

#include "xmapf/plan.hpp"

namespace xmapf {

/// Line-oriented dump, one line per agent:
///   agent <id>: (x0,y0) (x1,y1) ...
std::string dump_plan(const Plan& plan);
Plan parse_plan(const std::string& text);

/// Machine-readable dump: {"agents":[{"id":0,"path":[[x,y],...]},...]}
std::string dump_plan_json(const Plan& plan);
Plan parse_plan_json(const std::string& text);

}  // namespace xmapf
