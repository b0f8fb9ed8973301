// Microbenchmarks for the solver's hot paths: decomposition, the four
// low-level planners, and end-to-end solves on sampled open grids.

#include <benchmark/benchmark.h>

#include <random>

#include "xmapf/cbs.hpp"
#include "xmapf/protocol.hpp"
#include "xmapf/segmentation.hpp"

using namespace xmapf;

namespace {

/// Collision-free plan of n short random walks on an open grid; deterministic.
Plan random_plan(int side, int n_agents, int max_t, std::uint64_t seed) {
  GridWorld world(side, side);
  std::mt19937_64 rng(seed);
  Plan plan;
  for (int a = 0; a < n_agents; ++a) {
    std::uniform_int_distribution<int> coord(0, side - 1);
    Path p{a, {}};
    Cell cur{coord(rng), coord(rng)};
    p.vertices.push_back(cur);
    for (int t = 1; t <= max_t; ++t) {
      auto nbs = world.neighbors(cur);
      Cell next = nbs[rng() % nbs.size()];
      bool clash = false;
      for (const auto& q : plan.paths) {
        if (q.alive_at(t) && q.at(t) == next) clash = true;
        if (q.alive_at(t) && q.at(t) == cur && q.at(t - 1) == next) clash = true;
      }
      if (clash) next = cur;  // waiting may still clash; re-checked below
      for (const auto& q : plan.paths) {
        if (q.alive_at(t) && q.at(t) == next) clash = true;
      }
      if (clash) break;
      p.vertices.push_back(next);
      cur = next;
    }
    plan.paths.push_back(std::move(p));
  }
  return plan;
}

void BM_greedy_decompose(benchmark::State& state) {
  Plan plan = random_plan(9, static_cast<int>(state.range(0)), 30, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(greedy_decompose(plan));
  }
}
BENCHMARK(BM_greedy_decompose)->Arg(4)->Arg(8)->Arg(16);

void BM_index_with_collision_breaks(benchmark::State& state) {
  Plan plan = random_plan(9, 8, 30, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(index_with_collision_breaks(plan));
  }
}
BENCHMARK(BM_index_with_collision_breaks);

LowLevelQuery planner_query(const Instance& inst, Plan& others_store) {
  others_store = Plan{};
  for (std::size_t a = 1; a < inst.tasks.size(); ++a) {
    LowLevelQuery q;
    q.world = &inst.world;
    q.task = inst.tasks[a];
    q.length_bound = 400;
    if (auto p = astar(q)) others_store.paths.push_back(std::move(*p));
  }
  LowLevelQuery q;
  q.world = &inst.world;
  q.task = inst.tasks[0];
  q.others = others_store;
  q.length_bound = 400;
  return q;
}

void BM_astar(benchmark::State& state) {
  Instance inst = sample_open_instance(16, 16, 4, 3);
  Plan others;
  LowLevelQuery q = planner_query(inst, others);
  for (auto _ : state) benchmark::DoNotOptimize(astar(q));
}
BENCHMARK(BM_astar);

void BM_xg_astar(benchmark::State& state) {
  Instance inst = sample_open_instance(9, 9, 3, 5);
  Plan others;
  LowLevelQuery q = planner_query(inst, others);
  q.length_bound = 40;
  XgOptions opts;
  for (auto _ : state) benchmark::DoNotOptimize(xg_astar(q, opts));
}
BENCHMARK(BM_xg_astar);

void BM_sr_astar(benchmark::State& state) {
  Instance inst = sample_open_instance(16, 16, 4, 3);
  Plan others;
  LowLevelQuery q = planner_query(inst, others);
  for (auto _ : state) benchmark::DoNotOptimize(sr_astar(q));
}
BENCHMARK(BM_sr_astar);

void BM_solve_cbs(benchmark::State& state) {
  Instance inst =
      sample_open_instance(9, 9, static_cast<int>(state.range(0)), 17);
  SolverOptions opts;
  opts.expansion_budget = 50000;
  for (auto _ : state) benchmark::DoNotOptimize(solve_cbs(inst, opts));
}
BENCHMARK(BM_solve_cbs)->Arg(2)->Arg(4)->Arg(6);

void BM_solve_xg_cbs_sr(benchmark::State& state) {
  Instance inst =
      sample_open_instance(16, 16, static_cast<int>(state.range(0)), 17);
  SolverOptions opts;
  opts.low_level = LowLevel::Sr;
  opts.expansion_budget = 50000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_xg_cbs(inst, kUnbounded, opts));
  }
}
BENCHMARK(BM_solve_xg_cbs_sr)->Arg(5)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
