#pragma once

#include <vector>

#include "xmapf/plan.hpp"

namespace xmapf {

/// Minimal vertex-disjoint decomposition of a plan. Breakpoints are
/// 0 = t_0 < t_1 < ... < t_r = makespan+1; segment k covers the half-open
/// timestep window [t_{k-1}, t_k). The index is r, the number of segments.
struct Decomposition {
  std::vector<int> breakpoints;

  int index() const { return static_cast<int>(breakpoints.size()) - 1; }
  int window_begin(int k) const { return breakpoints[static_cast<std::size_t>(k)]; }
  int window_end(int k) const { return breakpoints[static_cast<std::size_t>(k) + 1]; }
};

/// Why a segment could not be extended past breakpoint t_k: agent i sits at
/// `cell` at T_i = t_k, which agent j already visits at T_j inside the window.
struct SegWitness {
  int boundary = 0;  // k in 1..r-1
  int i = 0;
  int j = 0;
  Cell cell;
  int t_i = 0;
  int t_j = 0;
};

/// Greedy minimal decomposition. Requires a collision-free plan.
Decomposition greedy_decompose(const Plan& plan);

/// Greedy index where a timestep carrying a vertex/edge collision additionally
/// forces a segment cut. Total: accepts colliding plans. Equals
/// greedy_decompose(plan).index() on collision-free plans.
int index_with_collision_breaks(const Plan& plan);

/// Same cut rule as index_with_collision_breaks, exposing the breakpoints.
Decomposition decompose_with_collision_breaks(const Plan& plan);

/// One witness per internal breakpoint of d: the lexicographically smallest
/// ordered pair (i,j) whose intersection blocks extending segment k, with the
/// earliest qualifying T_j. Requires d = greedy_decompose(plan), index >= 2.
std::vector<SegWitness> boundary_witnesses(const Plan& plan,
                                           const Decomposition& d);

/// Re-check that every segment of d has pairwise vertex-disjoint per-agent
/// vertex sets.
bool decomposition_is_sound(const Plan& plan, const Decomposition& d);

}  // namespace xmapf
