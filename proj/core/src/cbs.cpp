#include "xmapf/cbs.hpp"

#include <algorithm>
#include <queue>

namespace xmapf {

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Solved: return "solved";
    case Outcome::Unsolvable: return "unsolvable";
    case Outcome::NotFound: return "not-found";
    case Outcome::Timeout: return "timeout";
  }
  return "?";
}

ConflictCheck conflict_check(const Plan& plan, int r) {
  ConflictCheck result{ConflictCheck::Kind::Valid, std::nullopt, {}};
  if (auto c = first_collision(plan)) {
    result.kind = ConflictCheck::Kind::Collision;
    result.collision = c;
    return result;
  }
  Decomposition d = greedy_decompose(plan);
  if (r != kUnbounded && d.index() > r) {
    result.kind = ConflictCheck::Kind::Segmentation;
    result.witnesses = boundary_witnesses(plan, d);
  }
  return result;
}

namespace {

struct CTNode {
  std::vector<Constraint> constraints;
  Plan plan;
  int index_key = 0;  // index with collision breaks; 0 in vanilla mode
  int soc = 0;
  std::int64_t seq = 0;
};

struct CTOrder {
  const std::vector<CTNode>* arena;
  bool operator()(int a, int b) const {
    const CTNode& na = (*arena)[static_cast<std::size_t>(a)];
    const CTNode& nb = (*arena)[static_cast<std::size_t>(b)];
    if (na.index_key != nb.index_key) return na.index_key > nb.index_key;
    if (na.soc != nb.soc) return na.soc > nb.soc;
    return na.seq > nb.seq;
  }
};

class ConstraintTreeSearch {
 public:
  ConstraintTreeSearch(const Instance& inst, int r, bool xg_mode,
                       const SolverOptions& opts)
      : inst_(inst), r_(r), xg_mode_(xg_mode), opts_(opts) {
    bound_ = opts.length_bound > 0
                 ? opts.length_bound
                 : default_length_bound(inst.world, r_);
  }

  SolveResult run() {
    const auto t_start = std::chrono::steady_clock::now();
    SolveResult result;
    result.outcome = exhausted_outcome();

    if (inst_.tasks.empty()) {
      result.outcome = Outcome::Solved;
      result.solution = Solution{Plan{}, greedy_decompose(Plan{})};
      finish(result, t_start);
      return result;
    }

    if (auto root = build_root(result.stats)) {
      push_node(std::move(*root));
    } else {
      finish(result, t_start);
      return result;
    }

    std::int64_t seq = 1;
    while (!open_.empty()) {
      if (out_of_budget(t_start, result.stats)) {
        result.outcome = Outcome::Timeout;
        break;
      }
      const int idx = open_.top();
      open_.pop();
      ++result.stats.nodes_expanded;
      // copy: the arena may reallocate while children are added
      const CTNode node = arena_[static_cast<std::size_t>(idx)];

      ConflictCheck check = conflict_check(node.plan, r_);
      if (check.kind == ConflictCheck::Kind::Valid) {
        result.outcome = Outcome::Solved;
        result.solution = Solution{node.plan, greedy_decompose(node.plan)};
        break;
      }

      std::vector<std::pair<int, Constraint>> splits;  // (agent, constraint)
      if (check.kind == ConflictCheck::Kind::Collision) {
        add_collision_splits(*check.collision, splits);
      } else {
        auto witnesses = check.witnesses;
        if (opts_.seg_branch == SegBranch::FirstBoundary && witnesses.size() > 1) {
          witnesses.resize(1);
        }
        for (const auto& w : witnesses) {
          add_vertex_split(w.i, w.cell, w.t_i, splits);
          add_vertex_split(w.j, w.cell, w.t_j, splits);
        }
      }

      for (auto& [agent, constraint] : splits) {
        if (already_constrained(node, constraint)) continue;
        CTNode child;
        child.constraints = node.constraints;
        child.constraints.push_back(constraint);
        Plan others = without_agent(node.plan, agent);
        ++result.stats.low_level_calls;
        auto path = plan_agent(agent, child.constraints, others);
        if (!path) continue;
        child.plan = node.plan;
        child.plan.paths[static_cast<std::size_t>(agent)] = std::move(*path);
        child.soc = sum_of_costs(child.plan);
        child.index_key = xg_mode_ ? index_with_collision_breaks(child.plan) : 0;
        child.seq = seq++;
        push_node(std::move(child));
        ++result.stats.nodes_generated;
      }
    }
    finish(result, t_start);
    return result;
  }

 private:
  Outcome exhausted_outcome() const {
    return (xg_mode_ && opts_.low_level == LowLevel::Sr) ? Outcome::NotFound
                                                         : Outcome::Unsolvable;
  }

  bool out_of_budget(std::chrono::steady_clock::time_point t_start,
                     const SolveStats& stats) const {
    if (opts_.expansion_budget >= 0) {
      return stats.nodes_expanded >= opts_.expansion_budget;
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
            .count();
    return elapsed > opts_.timeout_seconds;
  }

  static void finish(SolveResult& result,
                     std::chrono::steady_clock::time_point t_start) {
    result.stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
            .count();
  }

  std::optional<CTNode> build_root(SolveStats& stats) {
    CTNode root;
    // Each root call sees the partial plan of the agents planned so far,
    // except under SR: its timed obstacles would force the root to be
    // globally disjoint (one whole-horizon window), which is infeasible for
    // all but trivial instances. SR roots are planned unrestricted instead;
    // the obstacle windows only shape the per-agent replans in the tree.
    const bool root_sees_partial = opts_.low_level != LowLevel::Sr || !xg_mode_;
    for (const auto& task : inst_.tasks) {
      ++stats.low_level_calls;
      auto path = plan_agent(task.agent_id, root.constraints,
                             root_sees_partial ? root.plan : Plan{});
      if (!path) return std::nullopt;
      root.plan.paths.push_back(std::move(*path));
    }
    root.soc = sum_of_costs(root.plan);
    root.index_key = xg_mode_ ? index_with_collision_breaks(root.plan) : 0;
    root.seq = 0;
    ++stats.nodes_generated;
    return root;
  }

  std::optional<Path> plan_agent(int agent,
                                 const std::vector<Constraint>& constraints,
                                 const Plan& others) {
    LowLevelQuery q;
    q.world = &inst_.world;
    q.task = inst_.tasks[static_cast<std::size_t>(agent)];
    q.constraints = constraints;
    q.others = others;
    q.length_bound = bound_;
    if (!xg_mode_) return astar(q);
    switch (opts_.low_level) {
      case LowLevel::Astar: return astar(q);
      case LowLevel::Xg: return xg_astar(q, opts_.xg);
      case LowLevel::Wxg: return wxg_astar(q, opts_.weight, opts_.xg);
      case LowLevel::Sr: return sr_astar(q);
    }
    return std::nullopt;
  }

  /// Other agents' paths, with agent ids preserved.
  static Plan without_agent(const Plan& plan, int agent) {
    Plan others;
    for (const auto& p : plan.paths) {
      if (p.agent_id != agent) others.paths.push_back(p);
    }
    return others;
  }

  void add_collision_splits(const Conflict& c,
                            std::vector<std::pair<int, Constraint>>& splits) {
    if (const auto* v = std::get_if<VertexCollision>(&c.body)) {
      add_vertex_split(v->i, v->cell, v->time, splits);
      add_vertex_split(v->j, v->cell, v->time, splits);
    } else {
      const auto& e = std::get<EdgeCollision>(c.body);
      splits.emplace_back(
          e.i, Constraint{e.i, EdgeConstraint{e.from, e.to, e.time}});
      splits.emplace_back(
          e.j, Constraint{e.j, EdgeConstraint{e.to, e.from, e.time}});
    }
  }

  static void add_vertex_split(int agent, Cell cell, int t,
                               std::vector<std::pair<int, Constraint>>& splits) {
    if (t < 1) return;  // never forbid a start cell at time 0
    splits.emplace_back(agent, Constraint{agent, VertexConstraint{cell, t}});
  }

  static bool already_constrained(const CTNode& node, const Constraint& c) {
    return std::find(node.constraints.begin(), node.constraints.end(), c) !=
           node.constraints.end();
  }

  void push_node(CTNode&& node) {
    arena_.push_back(std::move(node));
    open_.push(static_cast<int>(arena_.size()) - 1);
  }

  const Instance& inst_;
  int r_;
  bool xg_mode_;
  SolverOptions opts_;
  int bound_ = 0;
  std::vector<CTNode> arena_;
  std::priority_queue<int, std::vector<int>, CTOrder> open_{CTOrder{&arena_}};
};

}  // namespace

SolveResult solve_cbs(const Instance& inst, const SolverOptions& opts) {
  SolverOptions vanilla = opts;
  vanilla.low_level = LowLevel::Astar;
  return ConstraintTreeSearch(inst, kUnbounded, /*xg_mode=*/false, vanilla).run();
}

SolveResult solve_xg_cbs(const Instance& inst, int r, const SolverOptions& opts) {
  if (r < 1) throw std::invalid_argument("solve_xg_cbs: bound must be >= 1");
  return ConstraintTreeSearch(inst, r, /*xg_mode=*/true, opts).run();
}

}  // namespace xmapf
