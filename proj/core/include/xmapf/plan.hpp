#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "xmapf/types.hpp"

namespace xmapf {

/// Timestamped route of one agent: vertices[k] is its location at timestep k.
struct Path {
  int agent_id = 0;
  std::vector<Cell> vertices;

  int length() const { return static_cast<int>(vertices.size()); }
  int last_time() const { return static_cast<int>(vertices.size()) - 1; }
  bool alive_at(int t) const { return t >= 0 && t < length(); }
  Cell at(int t) const { return vertices[static_cast<std::size_t>(t)]; }
};

/// One path per agent, stored in agent-id order. Agents disappear once their
/// path ends; collisions are only checked while both agents are alive.
struct Plan {
  std::vector<Path> paths;

  std::size_t size() const { return paths.size(); }
  bool empty() const { return paths.empty(); }
  const Path& operator[](std::size_t i) const { return paths[i]; }

  /// Last occupied timestep across all paths; -1 for an empty plan.
  int makespan() const;
};

struct VertexConstraint {
  Cell cell;
  int time = 0;
  friend bool operator==(const VertexConstraint&,
                         const VertexConstraint&) = default;
};

/// Forbids the directed traversal from->to arriving at `time`.
struct EdgeConstraint {
  Cell from;
  Cell to;
  int time = 0;
  friend bool operator==(const EdgeConstraint&,
                         const EdgeConstraint&) = default;
};

struct Constraint {
  int agent_id = 0;
  std::variant<VertexConstraint, EdgeConstraint> body;
  friend bool operator==(const Constraint&, const Constraint&) = default;
};

struct VertexCollision {
  int i = 0;
  int j = 0;
  Cell cell;
  int time = 0;
};

struct EdgeCollision {
  int i = 0;
  int j = 0;
  Cell from;  // agent i moves from->to between time-1 and time
  Cell to;
  int time = 0;  // arrival timestep
};

struct Conflict {
  std::variant<VertexCollision, EdgeCollision> body;
};

/// Earliest collision in the plan: minimal time, vertex before edge at equal
/// time, then lowest (i,j). Returns nothing for a valid plan.
std::optional<Conflict> first_collision(const Plan& plan);

bool path_satisfies(const Path& path,
                    const std::vector<Constraint>& constraints);

/// Total moves/waits: sum over agents of (path length - 1).
int sum_of_costs(const Plan& plan);

}  // namespace xmapf
