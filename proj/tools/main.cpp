#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "xmapf/cbs.hpp"
#include "xmapf/plan_io.hpp"
#include "xmapf/protocol.hpp"
#include "xmapf/render.hpp"

namespace {

// 0 = solved/ok, 2 = no solution at bound (complete planner),
// 3 = not found (incomplete planner / timeout), 4 = input error
constexpr int kExitOk = 0;
constexpr int kExitUnsolvable = 2;
constexpr int kExitNotFound = 3;
constexpr int kExitInputError = 4;

bool log_enabled() {
  const char* v = std::getenv("XMAPF_LOG");
  return v && *v && std::string(v) != "0";
}

void log(const std::string& msg) {
  if (log_enabled()) std::cerr << "[xmapf] " << msg << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw xmapf::ParseError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

void write_documents(const std::vector<xmapf::RenderedDocument>& docs,
                     const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& doc : docs) {
    write_file((std::filesystem::path(dir) / doc.filename).string(), doc.svg);
  }
}

struct SolveArgs {
  std::string map_path, scen_path;
  int agents = 1;
  std::string algo = "xg-cbs";
  std::string low_level = "xg";
  double weight = 0.5;
  int bound = xmapf::kUnbounded;
  double timeout = 300.0;
  std::string plan_out, render_out, stats_json;
  bool no_cycle_pruning = false;
  bool no_fallback = false;
  int bound_b = 0;
  std::string seg_branch = "all-boundaries";
};

xmapf::LowLevel parse_low_level(const std::string& s) {
  if (s == "astar") return xmapf::LowLevel::Astar;
  if (s == "xg") return xmapf::LowLevel::Xg;
  if (s == "wxg") return xmapf::LowLevel::Wxg;
  if (s == "sr") return xmapf::LowLevel::Sr;
  throw xmapf::ParseError("unknown low-level planner: " + s);
}

int run_solve(const SolveArgs& args) {
  if (args.bound != xmapf::kUnbounded && args.bound < 1) {
    std::cerr << "error: --bound must be >= 1\n";
    return kExitInputError;
  }
  xmapf::GridWorld world = xmapf::load_map_file(args.map_path);
  xmapf::Instance inst =
      xmapf::load_scenario_file(args.scen_path, world, args.agents);

  xmapf::SolverOptions opts;
  opts.low_level = parse_low_level(args.low_level);
  opts.weight = args.weight;
  opts.xg.eliminate_cycles = !args.no_cycle_pruning;
  opts.xg.fallback_after_budget = !args.no_fallback;
  opts.length_bound = args.bound_b;
  opts.timeout_seconds = args.timeout;
  opts.seg_branch = args.seg_branch == "first-boundary"
                        ? xmapf::SegBranch::FirstBoundary
                        : xmapf::SegBranch::AllBoundaries;

  log("solving " + args.map_path + " with " + args.algo + "/" + args.low_level);
  xmapf::SolveResult res;
  if (args.algo == "cbs") {
    res = xmapf::solve_cbs(inst, opts);
  } else if (args.algo == "xg-cbs") {
    res = xmapf::solve_xg_cbs(inst, args.bound, opts);
  } else {
    std::cerr << "error: unknown --algo '" << args.algo << "'\n";
    return kExitInputError;
  }

  if (!args.stats_json.empty()) {
    nlohmann::json j;
    j["outcome"] = xmapf::to_string(res.outcome);
    j["algo"] = args.algo;
    j["low_level"] = args.low_level;
    j["agents"] = args.agents;
    j["nodes_expanded"] = res.stats.nodes_expanded;
    j["nodes_generated"] = res.stats.nodes_generated;
    j["low_level_calls"] = res.stats.low_level_calls;
    j["wall_seconds"] = res.stats.wall_seconds;
    if (res.solution) {
      j["index"] = res.solution->decomposition.index();
      j["sum_of_costs"] = xmapf::sum_of_costs(res.solution->plan);
      j["makespan"] = res.solution->plan.makespan();
    }
    write_file(args.stats_json, j.dump(2) + "\n");
  }

  if (res.outcome != xmapf::Outcome::Solved) {
    std::cout << xmapf::to_string(res.outcome) << " ("
              << res.stats.nodes_expanded << " nodes, " << res.stats.wall_seconds
              << "s)\n";
    return res.outcome == xmapf::Outcome::Unsolvable ? kExitUnsolvable
                                                     : kExitNotFound;
  }

  const auto& sol = *res.solution;
  std::cout << "solved: index=" << sol.decomposition.index()
            << " soc=" << xmapf::sum_of_costs(sol.plan)
            << " makespan=" << sol.plan.makespan()
            << " time=" << res.stats.wall_seconds << "s"
            << " planner=" << args.algo
            << (args.algo == "cbs" ? "" : "/" + args.low_level) << "\n";
  if (!args.plan_out.empty()) {
    write_file(args.plan_out, xmapf::dump_plan(sol.plan));
  }
  if (!args.render_out.empty()) {
    write_documents(
        xmapf::render_explanation(sol.plan, sol.decomposition, world, {}),
        args.render_out);
  }
  return kExitOk;
}

int run_segment(const std::string& plan_path) {
  xmapf::Plan plan = xmapf::parse_plan(read_file(plan_path));
  if (xmapf::first_collision(plan)) {
    std::cerr << "error: plan has collisions; no decomposition\n";
    return kExitInputError;
  }
  xmapf::Decomposition d = xmapf::greedy_decompose(plan);
  std::cout << "index: " << d.index() << "\n";
  std::cout << "breakpoints:";
  for (int b : d.breakpoints) std::cout << ' ' << b;
  std::cout << "\n";
  if (d.index() >= 2) {
    for (const auto& w : xmapf::boundary_witnesses(plan, d)) {
      std::cout << "witness: boundary=" << w.boundary << " i=" << w.i
                << " j=" << w.j << " cell=" << xmapf::to_string(w.cell)
                << " t_i=" << w.t_i << " t_j=" << w.t_j << "\n";
    }
  }
  return kExitOk;
}

int run_render(const std::string& plan_path, const std::string& map_path,
               const std::string& out_dir) {
  xmapf::GridWorld world = xmapf::load_map_file(map_path);
  xmapf::Plan plan = xmapf::parse_plan(read_file(plan_path));
  xmapf::Decomposition d = xmapf::greedy_decompose(plan);
  auto docs = xmapf::render_explanation(plan, d, world, {});
  write_documents(docs, out_dir);
  std::cout << "wrote " << docs.size() << " documents to " << out_dir << "\n";
  return kExitOk;
}

int run_bench(const std::string& suite_path, const std::string& out_path,
              int jobs, std::int64_t test_budget, std::uint64_t seed,
              bool seed_given, const std::string& summary_path) {
  xmapf::SuiteSpec suite = xmapf::parse_suite(read_file(suite_path));
  // Relative map/scen paths in the suite are relative to the suite file.
  const auto suite_dir = std::filesystem::path(suite_path).parent_path();
  for (auto& entry : suite.instances) {
    for (std::string* p : {&entry.map_path, &entry.scen_path}) {
      if (!p->empty() && std::filesystem::path(*p).is_relative()) {
        *p = (suite_dir / *p).string();
      }
    }
  }
  if (seed_given) suite.seed = seed;
  log("running suite " + suite_path + " on " + std::to_string(jobs) + " jobs");
  auto records = xmapf::run_suite(suite, jobs, test_budget);
  write_file(out_path, xmapf::records_to_csv(records));
  if (!summary_path.empty()) {
    write_file(summary_path, xmapf::summary_to_csv(xmapf::aggregate(records)));
  }
  std::cout << "wrote " << records.size() << " records to " << out_path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explainable multi-agent path finding via plan segmentation"};
  app.require_subcommand(1);

  SolveArgs s;
  CLI::App* solve = app.add_subcommand("solve", "Solve a MAPF instance");
  solve->add_option("--map", s.map_path, "Map file (MovingAI .map)")->required();
  solve->add_option("--scen", s.scen_path, "Scenario file (MovingAI .scen)")
      ->required();
  solve->add_option("--agents", s.agents, "Number of agents to take")
      ->required();
  solve->add_option("--algo", s.algo, "cbs | xg-cbs")
      ->check(CLI::IsMember({"cbs", "xg-cbs"}));
  solve->add_option("--low-level", s.low_level,
                    "astar | xg | wxg | sr (xg-cbs only)")
      ->check(CLI::IsMember({"astar", "xg", "wxg", "sr"}));
  solve->add_option("--weight", s.weight, "WXG weight, 0 < w < 1");
  solve->add_option("--bound", s.bound, "Segmentation index bound r (>= 1)");
  solve->add_option("--timeout", s.timeout, "Wall-clock timeout in seconds");
  solve->add_option("--plan-out", s.plan_out, "Write the plan dump here");
  solve->add_option("--render-out", s.render_out,
                    "Write per-segment SVGs to this directory");
  solve->add_option("--stats-json", s.stats_json, "Write run stats as JSON");
  solve->add_flag("--no-cycle-pruning", s.no_cycle_pruning,
                  "Disable within-segment cycle elimination (xg/wxg)");
  solve->add_flag("--no-fallback", s.no_fallback,
                  "Disable the over-budget plain-A* fallback (xg/wxg)");
  solve->add_option("--bound-b", s.bound_b,
                    "Path length bound B (0: (r+1) * passable cells)");
  solve->add_option("--seg-branch", s.seg_branch,
                    "Segmentation branching: all-boundaries | first-boundary")
      ->check(CLI::IsMember({"all-boundaries", "first-boundary"}));

  std::string seg_plan;
  CLI::App* segment =
      app.add_subcommand("segment", "Decompose a plan dump into segments");
  segment->add_option("--plan", seg_plan, "Plan dump file")->required();

  std::string render_plan, render_map, render_out = "render";
  CLI::App* render =
      app.add_subcommand("render", "Render per-segment SVGs for a plan dump");
  render->add_option("--plan", render_plan, "Plan dump file")->required();
  render->add_option("--map", render_map, "Map file")->required();
  render->add_option("--out", render_out, "Output directory");

  std::string suite_path, bench_out = "results.csv", summary_out;
  int jobs = 1;
  std::int64_t test_budget = -1;
  std::uint64_t seed = 0;
  CLI::App* bench = app.add_subcommand("bench", "Run a benchmark suite");
  bench->add_option("--suite", suite_path, "Suite config (JSON)")->required();
  bench->add_option("--out", bench_out, "Per-run records CSV");
  bench->add_option("--summary", summary_out, "Aggregated summary CSV");
  bench->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  bench->add_option("--test-budget", test_budget,
                    "Replace wall-clock timeout with a node-expansion budget");
  CLI::Option* seed_opt =
      bench->add_option("--seed", seed, "Override the suite's sampling seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (solve->parsed()) return run_solve(s);
    if (segment->parsed()) return run_segment(seg_plan);
    if (render->parsed()) return run_render(render_plan, render_map, render_out);
    return run_bench(suite_path, bench_out, jobs, test_budget, seed,
                     seed_opt->count() > 0, summary_out);
  } catch (const xmapf::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}
