#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include "xmapf/lowlevel.hpp"

namespace xmapf {

enum class LowLevel { Astar, Xg, Wxg, Sr };

enum class SegBranch { AllBoundaries, FirstBoundary };

struct SolverOptions {
  LowLevel low_level = LowLevel::Astar;
  double weight = 0.5;           // WXG only
  XgOptions xg;                  // XG/WXG only
  SegBranch seg_branch = SegBranch::AllBoundaries;
  int length_bound = 0;          // 0: use default_length_bound
  double timeout_seconds = 300.0;
  /// When >= 0, replaces the wall-clock timeout with a high-level
  /// node-expansion budget (deterministic test mode).
  std::int64_t expansion_budget = -1;
};

struct SolveStats {
  std::int64_t nodes_expanded = 0;
  std::int64_t nodes_generated = 0;
  std::int64_t low_level_calls = 0;
  double wall_seconds = 0.0;
};

struct Solution {
  Plan plan;
  Decomposition decomposition;
};

enum class Outcome {
  Solved,
  Unsolvable,  // tree exhausted under a complete low level
  NotFound,    // tree exhausted under an incomplete low level
  Timeout,
};

std::string to_string(Outcome o);

struct SolveResult {
  Outcome outcome = Outcome::Timeout;
  std::optional<Solution> solution;
  SolveStats stats;
};

/// Vanilla CBS: best-first on (sum-of-costs, insertion order), collision
/// splits only. The returned solution's decomposition is computed post hoc.
SolveResult solve_cbs(const Instance& inst, const SolverOptions& opts = {});

/// XG-CBS at index bound r (kUnbounded for no bound): best-first on
/// (index-with-collision-breaks, sum-of-costs, insertion order); collision
/// splits first, then segmentation children per boundary witness.
SolveResult solve_xg_cbs(const Instance& inst, int r,
                         const SolverOptions& opts = {});

struct ConflictCheck {
  enum class Kind { Valid, Collision, Segmentation } kind;
  std::optional<Conflict> collision;
  std::vector<SegWitness> witnesses;
};

/// Collision takes precedence over segmentation; valid iff collision-free and
/// index <= r.
ConflictCheck conflict_check(const Plan& plan, int r);

}  // namespace xmapf
