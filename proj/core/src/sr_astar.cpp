#include <algorithm>
#include <limits>

#include "xmapf/lowlevel.hpp"
#include "space_time.hpp"

namespace xmapf {

TimedObstacleSet::TimedObstacleSet(const Plan& others) {
  if (others.empty()) return;
  Decomposition d = decompose_with_collision_breaks(others);
  window_begin_ = d.breakpoints;
  horizon_ = d.breakpoints.back();
  window_cells_.resize(static_cast<std::size_t>(d.index()));
  for (int k = 0; k < d.index(); ++k) {
    auto& cells = window_cells_[static_cast<std::size_t>(k)];
    for (const auto& p : others.paths) {
      const int lo = d.window_begin(k);
      const int hi = std::min(d.window_end(k) - 1, p.last_time());
      for (int t = lo; t <= hi; ++t) cells.insert(p.at(t));
    }
  }
}

bool TimedObstacleSet::blocked(Cell c, int t) const {
  if (window_begin_.empty() || t < 0) return false;
  // Beyond the horizon the final window still applies: the combined plan's
  // last window stretches to the new makespan, so reusing a cell from it at
  // any later time would break that window's disjointness.
  if (t >= horizon_) return window_cells_.back().count(c) != 0;
  auto it = std::upper_bound(window_begin_.begin(), window_begin_.end(), t);
  const auto k = static_cast<std::size_t>(it - window_begin_.begin()) - 1;
  return window_cells_[k].count(c) != 0;
}

int TimedObstacleSet::last_free_time(Cell c) const {
  if (window_cells_.empty()) return std::numeric_limits<int>::max();
  if (window_cells_.back().count(c) == 0) {
    return std::numeric_limits<int>::max();
  }
  for (auto k = window_cells_.size() - 1; k-- > 0;) {
    if (window_cells_[k].count(c) == 0) return window_begin_[k + 1] - 1;
  }
  return -1;
}

TimedObstacleSet build_timed_obstacles(const Plan& others) {
  return TimedObstacleSet(others);
}

std::optional<Path> sr_astar(const LowLevelQuery& q) {
  const GridWorld& world = *q.world;
  detail::ConstraintTable ct(q.constraints, q.task.agent_id);
  DistanceField h(world, q.task.goal);
  TimedObstacleSet obstacles(q.others);
  // Past the obstacle horizon and the last constrained timestep the search
  // space is static, so any path reaching the goal can be shortened to reach
  // it within one extra sweep of the grid; deeper search cannot succeed.
  const int static_from = std::max(obstacles.horizon(), ct.latest_time() + 1);
  int bound = std::min(q.length_bound, static_from + world.passable_count());
  // Arrival must land on an unblocked goal; when the final window owns the
  // goal cell, no arrival at or past the horizon can ever work.
  bound = std::min(bound, obstacles.last_free_time(q.task.goal));
  if (bound < 0) return std::nullopt;
  auto cells = detail::space_time_astar(
      world, q.task.start, 0, q.task.goal, ct, bound, h,
      [&obstacles](Cell c, int t) { return obstacles.blocked(c, t); });
  if (!cells) return std::nullopt;
  return Path{q.task.agent_id, std::move(*cells)};
}

}  // namespace xmapf
