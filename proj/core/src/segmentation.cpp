#include "xmapf/segmentation.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace xmapf {

namespace {

/// Greedy left-to-right decomposition. Windows extend while per-agent vertex
/// sets stay pairwise disjoint; a non-extendable timestep starts a new window.
/// A single-timestep window that is itself non-disjoint (a vertex collision)
/// stands as a degenerate segment and forces the next cut too.
Decomposition decompose_generic(const Plan& plan) {
  Decomposition d;
  d.breakpoints.push_back(0);
  const int horizon = plan.makespan();
  if (horizon < 0) {  // empty plan
    d.breakpoints.push_back(1);
    return d;
  }
  const int n = static_cast<int>(plan.size());
  std::unordered_map<Cell, int, CellHash> owner;  // cell -> first agent in window
  bool dirty = false;

  auto add_time = [&](int t) -> bool {  // returns true when disjointness holds
    bool ok = true;
    for (int i = 0; i < n; ++i) {
      if (!plan[i].alive_at(t)) continue;
      auto [it, inserted] = owner.emplace(plan[i].at(t), i);
      if (!inserted && it->second != i) ok = false;
    }
    return ok;
  };

  add_time(0);
  {
    // re-run membership to detect a colliding first timestep
    std::unordered_map<Cell, int, CellHash> probe;
    for (int i = 0; i < n; ++i) {
      if (!plan[i].alive_at(0)) continue;
      auto [it, inserted] = probe.emplace(plan[i].at(0), i);
      if (!inserted) dirty = true;
    }
  }

  for (int t = 1; t <= horizon; ++t) {
    bool extendable = false;
    if (!dirty) {
      extendable = true;
      for (int i = 0; i < n && extendable; ++i) {
        if (!plan[i].alive_at(t)) continue;
        auto it = owner.find(plan[i].at(t));
        if (it != owner.end() && it->second != i) extendable = false;
      }
      // two agents arriving at the same fresh cell at t
      if (extendable) {
        std::unordered_map<Cell, int, CellHash> fresh;
        for (int i = 0; i < n && extendable; ++i) {
          if (!plan[i].alive_at(t)) continue;
          auto [it, inserted] = fresh.emplace(plan[i].at(t), i);
          if (!inserted && it->second != i) extendable = false;
        }
      }
    }
    if (extendable) {
      add_time(t);
    } else {
      d.breakpoints.push_back(t);
      owner.clear();
      dirty = !add_time(t);
    }
  }
  d.breakpoints.push_back(horizon + 1);
  return d;
}

}  // namespace

Decomposition greedy_decompose(const Plan& plan) {
  if (first_collision(plan).has_value()) {
    throw std::invalid_argument(
        "greedy_decompose requires a collision-free plan");
  }
  return decompose_generic(plan);
}

Decomposition decompose_with_collision_breaks(const Plan& plan) {
  return decompose_generic(plan);
}

int index_with_collision_breaks(const Plan& plan) {
  return decompose_generic(plan).index();
}

std::vector<SegWitness> boundary_witnesses(const Plan& plan,
                                           const Decomposition& d) {
  if (d.index() < 2) {
    throw std::invalid_argument("boundary_witnesses: index must be >= 2");
  }
  const int n = static_cast<int>(plan.size());
  std::vector<SegWitness> out;
  for (int k = 1; k < d.index(); ++k) {
    const int t_cut = d.breakpoints[static_cast<std::size_t>(k)];
    const int t_prev = d.breakpoints[static_cast<std::size_t>(k) - 1];
    bool found = false;
    for (int i = 0; i < n && !found; ++i) {
      if (!plan[i].alive_at(t_cut)) continue;
      const Cell v = plan[i].at(t_cut);
      for (int j = 0; j < n && !found; ++j) {
        if (j == i) continue;
        const int hi = std::min(t_cut, plan[j].last_time());
        for (int tj = t_prev; tj <= hi; ++tj) {
          if (plan[j].at(tj) == v) {
            out.push_back(SegWitness{k, i, j, v, t_cut, tj});
            found = true;
            break;
          }
        }
      }
    }
    if (!found) {
      throw std::logic_error("boundary_witnesses: no blocking pair at cut " +
                             std::to_string(t_cut));
    }
  }
  return out;
}

bool decomposition_is_sound(const Plan& plan, const Decomposition& d) {
  const int n = static_cast<int>(plan.size());
  for (int k = 1; k <= d.index(); ++k) {
    std::unordered_map<Cell, int, CellHash> owner;
    for (int i = 0; i < n; ++i) {
      for (int t = d.window_begin(k - 1); t < d.window_end(k - 1); ++t) {
        if (!plan[i].alive_at(t)) continue;
        auto [it, inserted] = owner.emplace(plan[i].at(t), i);
        if (!inserted && it->second != i) return false;
      }
    }
  }
  return true;
}

}  // namespace xmapf
