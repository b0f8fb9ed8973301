#pragma once

#include <algorithm>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "xmapf/plan.hpp"

namespace xmapf::detail {

struct CellTimeKey {
  Cell cell;
  int t = 0;
  friend bool operator==(const CellTimeKey&, const CellTimeKey&) = default;
};
struct CellTimeHash {
  std::size_t operator()(const CellTimeKey& k) const noexcept {
    std::size_t h = CellHash{}(k.cell);
    return h ^ (std::hash<int>{}(k.t) + 0x9e3779b97f4a7c15ULL + (h << 6));
  }
};

struct EdgeTimeKey {
  Cell from, to;
  int t = 0;
  friend bool operator==(const EdgeTimeKey&, const EdgeTimeKey&) = default;
};
struct EdgeTimeHash {
  std::size_t operator()(const EdgeTimeKey& k) const noexcept {
    std::size_t h = CellHash{}(k.from) * 1000003u ^ CellHash{}(k.to);
    return h ^ (std::hash<int>{}(k.t) + 0x9e3779b97f4a7c15ULL + (h << 6));
  }
};

// O(1) lookup over one agent's constraints.
class ConstraintTable {
 public:
  ConstraintTable(const std::vector<Constraint>& constraints, int agent_id) {
    for (const auto& c : constraints) {
      if (c.agent_id != agent_id) continue;
      if (const auto* v = std::get_if<VertexConstraint>(&c.body)) {
        vertex_.insert(CellTimeKey{v->cell, v->time});
        latest_time_ = std::max(latest_time_, v->time);
      } else {
        const auto& e = std::get<EdgeConstraint>(c.body);
        edge_.insert(EdgeTimeKey{e.from, e.to, e.time});
        latest_time_ = std::max(latest_time_, e.time);
      }
    }
  }

  /// Largest constrained timestep; -1 when the table is empty.
  int latest_time() const { return latest_time_; }

  bool vertex_forbidden(Cell c, int t) const {
    return vertex_.count(CellTimeKey{c, t}) != 0;
  }
  bool edge_forbidden(Cell from, Cell to, int t_arrival) const {
    return edge_.count(EdgeTimeKey{from, to, t_arrival}) != 0;
  }
  bool move_forbidden(Cell from, Cell to, int t_arrival) const {
    return vertex_forbidden(to, t_arrival) ||
           edge_forbidden(from, to, t_arrival);
  }

 private:
  std::unordered_set<CellTimeKey, CellTimeHash> vertex_;
  std::unordered_set<EdgeTimeKey, EdgeTimeHash> edge_;
  int latest_time_ = -1;
};

}  // namespace xmapf::detail
