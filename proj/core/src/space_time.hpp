#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "xmapf/grid.hpp"
#include "xmapf/plan.hpp"
#include "constraint_table.hpp"

namespace xmapf::detail {

// Space-time A* from (start, t0) to goal, arrival time <= bound.
// f = g + h, ties prefer larger g, then generation order (neighbors are
// expanded wait, N, E, S, W). extra_blocked, when set, removes (cell, time)
// states from the search space.
std::optional<std::vector<Cell>> space_time_astar(
    const GridWorld& world, Cell start, int t0, Cell goal,
    const ConstraintTable& constraints, int bound, const DistanceField& h,
    const std::function<bool(Cell, int)>& extra_blocked = {});

}  // namespace xmapf::detail
