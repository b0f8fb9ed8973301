#include "xmapf/plan.hpp"

#include <algorithm>

namespace xmapf {

int Plan::makespan() const {
  int k = -1;
  for (const auto& p : paths) k = std::max(k, p.last_time());
  return k;
}

std::optional<Conflict> first_collision(const Plan& plan) {
  const int n = static_cast<int>(plan.size());
  const int horizon = plan.makespan();
  for (int t = 0; t <= horizon; ++t) {
    // vertex collisions at t
    for (int i = 0; i < n; ++i) {
      if (!plan[i].alive_at(t)) continue;
      for (int j = i + 1; j < n; ++j) {
        if (!plan[j].alive_at(t)) continue;
        if (plan[i].at(t) == plan[j].at(t)) {
          return Conflict{VertexCollision{plan[i].agent_id, plan[j].agent_id,
                                          plan[i].at(t), t}};
        }
      }
    }
    // edge swaps arriving at t
    if (t == 0) continue;
    for (int i = 0; i < n; ++i) {
      if (!plan[i].alive_at(t)) continue;
      for (int j = i + 1; j < n; ++j) {
        if (!plan[j].alive_at(t)) continue;
        if (plan[i].at(t - 1) == plan[j].at(t) &&
            plan[i].at(t) == plan[j].at(t - 1) &&
            plan[i].at(t) != plan[i].at(t - 1)) {
          return Conflict{EdgeCollision{plan[i].agent_id, plan[j].agent_id,
                                        plan[i].at(t - 1), plan[i].at(t), t}};
        }
      }
    }
  }
  return std::nullopt;
}

bool path_satisfies(const Path& path,
                    const std::vector<Constraint>& constraints) {
  for (const auto& c : constraints) {
    if (c.agent_id != path.agent_id) continue;
    if (const auto* v = std::get_if<VertexConstraint>(&c.body)) {
      if (path.alive_at(v->time) && path.at(v->time) == v->cell) return false;
    } else {
      const auto& e = std::get<EdgeConstraint>(c.body);
      if (e.time >= 1 && path.alive_at(e.time) &&
          path.at(e.time - 1) == e.from && path.at(e.time) == e.to) {
        return false;
      }
    }
  }
  return true;
}

int sum_of_costs(const Plan& plan) {
  int soc = 0;
  for (const auto& p : plan.paths) soc += p.last_time();
  return soc;
}

}  // namespace xmapf
