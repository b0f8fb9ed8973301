#pragma once

#include <cstdint>
#include <functional>
#include <string>

namespace xmapf {

/// Grid coordinate. x is the column, y is the row (row 0 is the top map row,
/// matching MovingAI scenario column order).
struct Cell {
  int x = 0;
  int y = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

inline std::string to_string(Cell c) {
  return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

struct CellHash {
  std::size_t operator()(Cell c) const noexcept {
    return std::hash<std::uint64_t>{}(
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.x)) << 32) |
        static_cast<std::uint32_t>(c.y));
  }
};

struct AgentTask {
  int agent_id = 0;
  Cell start;
  Cell goal;
};

}  // namespace xmapf
