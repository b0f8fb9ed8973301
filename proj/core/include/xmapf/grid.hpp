#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "xmapf/types.hpp"

namespace xmapf {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 4-connected grid with blocked cells and optional wait (self-loop) moves.
/// Immutable after construction; safe to share across threads.
class GridWorld {
 public:
  GridWorld(int width, int height, bool allow_wait = true);

  int width() const { return width_; }
  int height() const { return height_; }
  bool allow_wait() const { return allow_wait_; }

  bool in_bounds(Cell c) const {
    return c.x >= 0 && c.x < width_ && c.y >= 0 && c.y < height_;
  }
  bool blocked(Cell c) const { return blocked_[index(c)]; }
  bool passable(Cell c) const { return in_bounds(c) && !blocked_[index(c)]; }
  int passable_count() const { return passable_count_; }

  void block(Cell c);

  /// Passable 4-neighbors of v, in the fixed order wait, N(y-1), E(x+1),
  /// S(y+1), W(x-1). v itself appears first iff waits are allowed.
  std::vector<Cell> neighbors(Cell v) const;

  int index(Cell c) const { return c.y * width_ + c.x; }
  Cell cell(int idx) const { return Cell{idx % width_, idx / width_}; }

 private:
  int width_;
  int height_;
  bool allow_wait_;
  int passable_count_;
  std::vector<char> blocked_;
};

struct Instance {
  GridWorld world;
  std::vector<AgentTask> tasks;
};

/// BFS distance-to-goal over passable cells; unreachable cells hold
/// DistanceField::kUnreachable.
class DistanceField {
 public:
  static constexpr int kUnreachable = std::numeric_limits<int>::max();

  DistanceField(const GridWorld& world, Cell goal);

  int at(Cell c) const { return dist_[static_cast<std::size_t>(idx_(c))]; }
  bool reachable(Cell c) const { return at(c) != kUnreachable; }

 private:
  int width_;
  std::vector<int> dist_;
  int idx_(Cell c) const { return c.y * width_ + c.x; }
};

GridWorld parse_map(const std::string& text);
std::string serialize_map(const GridWorld& world);

/// First n rows of a MovingAI .scen file become the tasks, in file order.
Instance parse_scenario(const std::string& text, const GridWorld& world, int n);

/// Inline ASCII fixture: rows of '.'/'@' with agent starts 'a','b',... and
/// goals 'A','B',... overlaid.
Instance parse_ascii_instance(const std::string& text, bool allow_wait = true);

GridWorld load_map_file(const std::string& path);
Instance load_scenario_file(const std::string& path, const GridWorld& world,
                            int n);

}  // namespace xmapf
