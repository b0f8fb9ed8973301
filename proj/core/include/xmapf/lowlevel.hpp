#pragma once

#include <limits>
#include <optional>
#include <unordered_set>
#include <vector>

#include "xmapf/grid.hpp"
#include "xmapf/plan.hpp"
#include "xmapf/segmentation.hpp"

namespace xmapf {

inline constexpr int kUnbounded = std::numeric_limits<int>::max();

/// Single-agent planning query. `others` holds the fixed paths of the other
/// agents (possibly a partial plan); `constraints` may contain entries for any
/// agent, only those matching task.agent_id apply. `length_bound` caps the
/// number of timesteps (moves/waits).
struct LowLevelQuery {
  const GridWorld* world = nullptr;
  AgentTask task;
  std::vector<Constraint> constraints;
  Plan others;
  int length_bound = kUnbounded;
};

struct XgOptions {
  bool eliminate_cycles = true;
  bool fallback_after_budget = true;
  /// Recompute every node's incremental index from scratch and assert
  /// equality. Test instrumentation; very slow.
  bool debug_check_index = false;
};

/// Default path-length bound: (r_bound + 1) * number of passable cells.
int default_length_bound(const GridWorld& world, int r_bound);

/// Space-time A* under vertex/edge constraints, ignoring other agents.
/// f = g + BFS distance to goal; ties prefer larger g, then the fixed
/// neighbor order wait, N, E, S, W.
std::optional<Path> astar(const LowLevelQuery& q);

/// Explanation-guided A*: returns a constraint-satisfying path whose combined
/// index with q.others is minimal among all such paths of length <= B.
/// Priority is lexicographic (index, distance-to-goal, time).
std::optional<Path> xg_astar(const LowLevelQuery& q, const XgOptions& opts = {});

/// Weighted variant: priority w*index + (1-w)*(g+h), ties by lower index then
/// lower h. Requires 0 < w < 1. Same search space as xg_astar.
std::optional<Path> wxg_astar(const LowLevelQuery& q, double w,
                              const XgOptions& opts = {});

/// Index of {prefix} u others with both truncated to the prefix's last
/// timestep. Reference recomputation for the incremental value kept by
/// xg_astar nodes.
int combined_index_prefix(const Path& prefix, const Plan& others);

/// Index of {path} u others at full length (collision-break rule).
int combined_index(const Path& path, const Plan& others);

/// Per-window cell sets of `others`: a cell is blocked at time t iff some
/// other-agent path visits it anywhere inside t's decomposition window.
/// Times beyond the final window are unobstructed.
class TimedObstacleSet {
 public:
  TimedObstacleSet() = default;
  explicit TimedObstacleSet(const Plan& others);

  bool blocked(Cell c, int t) const;
  /// End of the last window; the final window's obstacles persist past it
  /// (the combined plan's last window stretches to the new makespan).
  int horizon() const { return horizon_; }
  /// Latest timestep at which c is unblocked: INT_MAX when the final window
  /// leaves it free, -1 when every window blocks it.
  int last_free_time(Cell c) const;

 private:
  std::vector<int> window_begin_;  // breakpoints incl. final
  std::vector<std::unordered_set<Cell, CellHash>> window_cells_;
  int horizon_ = 0;
};

TimedObstacleSet build_timed_obstacles(const Plan& others);

/// Segmentation-respecting A*: space-time A* over the world minus timed
/// obstacles. Any returned path adds no breakpoints to q.others' greedy
/// decomposition. Incomplete: may fail where xg_astar would succeed.
std::optional<Path> sr_astar(const LowLevelQuery& q);

}  // namespace xmapf
