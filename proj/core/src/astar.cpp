#include <algorithm>
#include <cstdint>
#include <queue>

#include "xmapf/lowlevel.hpp"
#include "space_time.hpp"

namespace xmapf {

int default_length_bound(const GridWorld& world, int r_bound) {
  // One cycle-free segment needs at most |V| steps.
  const long long cells = world.passable_count();
  const long long r = (r_bound == kUnbounded) ? 3 : r_bound;
  const long long b = (r + 1) * cells;
  return static_cast<int>(std::min<long long>(b, 1 << 24));
}

namespace detail {

namespace {

struct StNode {
  Cell v;
  int t;
  int parent;  // arena index, -1 for root
};

struct QEntry {
  int f;
  int g;
  std::int64_t seq;
  int node;
};

struct QOrder {
  bool operator()(const QEntry& a, const QEntry& b) const {
    if (a.f != b.f) return a.f > b.f;
    if (a.g != b.g) return a.g < b.g;  // prefer deeper
    return a.seq > b.seq;
  }
};

}  // namespace

std::optional<std::vector<Cell>> space_time_astar(
    const GridWorld& world, Cell start, int t0, Cell goal,
    const ConstraintTable& constraints, int bound, const DistanceField& h,
    const std::function<bool(Cell, int)>& extra_blocked) {
  if (!world.passable(start) || !world.passable(goal)) return std::nullopt;
  if (!h.reachable(start)) return std::nullopt;
  if (t0 > bound) return std::nullopt;
  if (extra_blocked && extra_blocked(start, t0)) return std::nullopt;

  std::vector<StNode> arena;
  std::priority_queue<QEntry, std::vector<QEntry>, QOrder> open;
  std::unordered_set<CellTimeKey, CellTimeHash> seen;
  std::int64_t seq = 0;

  arena.push_back(StNode{start, t0, -1});
  seen.insert(CellTimeKey{start, t0});
  open.push(QEntry{t0 + h.at(start), t0, seq++, 0});

  while (!open.empty()) {
    QEntry top = open.top();
    open.pop();
    const StNode node = arena[static_cast<std::size_t>(top.node)];
    if (node.v == goal) {
      std::vector<Cell> path;
      for (int k = top.node; k != -1; k = arena[static_cast<std::size_t>(k)].parent) {
        path.push_back(arena[static_cast<std::size_t>(k)].v);
      }
      std::reverse(path.begin(), path.end());
      return path;
    }
    const int nt = node.t + 1;
    if (nt > bound) continue;
    for (Cell nb : world.neighbors(node.v)) {
      if (!h.reachable(nb)) continue;
      if (constraints.move_forbidden(node.v, nb, nt)) continue;
      if (extra_blocked && extra_blocked(nb, nt)) continue;
      if (!seen.insert(CellTimeKey{nb, nt}).second) continue;
      arena.push_back(StNode{nb, nt, top.node});
      open.push(QEntry{nt + h.at(nb), nt, seq++,
                       static_cast<int>(arena.size()) - 1});
    }
  }
  return std::nullopt;
}

}  // namespace detail

std::optional<Path> astar(const LowLevelQuery& q) {
  const GridWorld& world = *q.world;
  detail::ConstraintTable ct(q.constraints, q.task.agent_id);
  DistanceField h(world, q.task.goal);
  // Beyond the last constrained timestep the world is static: if the goal is
  // reachable at all, it is reachable within one extra sweep of the grid.
  const int bound = std::min(q.length_bound,
                             ct.latest_time() + 1 + world.passable_count());
  auto cells = detail::space_time_astar(world, q.task.start, 0, q.task.goal,
                                        ct, bound, h);
  if (!cells) return std::nullopt;
  return Path{q.task.agent_id, std::move(*cells)};
}

}  // namespace xmapf
