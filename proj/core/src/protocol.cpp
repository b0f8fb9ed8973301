#include "xmapf/protocol.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace xmapf {

namespace {

const char* phase_name(Phase p) {
  switch (p) {
    case Phase::Baseline: return "baseline";
    case Phase::First: return "first";
    case Phase::Best: return "best";
  }
  return "?";
}

RunRecord make_record(const std::string& instance_id, const std::string& algo,
                      Phase phase, int n_agents, const SolveResult& res) {
  RunRecord rec;
  rec.instance_id = instance_id;
  rec.algorithm_id = algo;
  rec.phase = phase;
  rec.outcome = res.outcome;
  rec.n_agents = n_agents;
  rec.wall_seconds = res.stats.wall_seconds;
  rec.nodes_expanded = res.stats.nodes_expanded;
  if (res.solution) {
    rec.index = res.solution->decomposition.index();
    rec.soc = sum_of_costs(res.solution->plan);
    rec.avg_cost = n_agents > 0 ? static_cast<double>(rec.soc) / n_agents : 0.0;
    rec.makespan = res.solution->plan.makespan();
  }
  return rec;
}

}  // namespace

ProtocolResult run_protocol(const Instance& inst, const std::string& instance_id,
                            const AlgoConfig& algo, const SolverOptions& base) {
  const int n = static_cast<int>(inst.tasks.size());
  SolverOptions xg_opts = base;
  xg_opts.low_level = algo.low_level;
  xg_opts.weight = algo.weight;

  ProtocolResult out;
  SolveResult cbs = solve_cbs(inst, base);
  out.baseline = make_record(instance_id, algo.name, Phase::Baseline, n, cbs);
  out.all.push_back(out.baseline);

  const int first_bound = (cbs.outcome == Outcome::Solved)
                              ? out.baseline.index
                              : kUnbounded;
  SolveResult first = solve_xg_cbs(inst, std::max(first_bound, 1), xg_opts);
  out.first = make_record(instance_id, algo.name, Phase::First, n, first);
  out.all.push_back(out.first);

  out.best = out.first;
  out.best.phase = Phase::Best;
  bool have_success = first.outcome == Outcome::Solved;
  int last_index = have_success ? out.first.index : 0;
  while (have_success && last_index > 1) {
    SolveResult attempt = solve_xg_cbs(inst, last_index - 1, xg_opts);
    RunRecord rec = make_record(instance_id, algo.name, Phase::Best, n, attempt);
    out.all.push_back(rec);
    if (attempt.outcome != Outcome::Solved) break;
    out.best = rec;
    last_index = rec.index;
  }
  return out;
}

std::vector<SummaryRow> aggregate(const std::vector<RunRecord>& records) {
  struct Acc {
    int runs = 0, solved = 0;
    double index = 0, avg_cost = 0, seconds = 0;
  };
  std::map<std::string, Acc> groups;
  for (const auto& r : records) {
    std::string grid = r.instance_id.substr(0, r.instance_id.find('/'));
    std::string key = grid + "/" + std::to_string(r.n_agents) + "/" +
                      r.algorithm_id + "/" + phase_name(r.phase);
    Acc& a = groups[key];
    ++a.runs;
    if (r.outcome == Outcome::Solved) {
      ++a.solved;
      a.index += r.index;
      a.avg_cost += r.avg_cost;
      a.seconds += r.wall_seconds;
    }
  }
  std::vector<SummaryRow> rows;
  for (const auto& [key, a] : groups) {
    SummaryRow row;
    row.group = key;
    row.runs = a.runs;
    row.solved = a.solved;
    row.success_rate = a.runs ? static_cast<double>(a.solved) / a.runs : 0.0;
    if (a.solved) {
      row.mean_index = a.index / a.solved;
      row.mean_avg_cost = a.avg_cost / a.solved;
      row.mean_seconds = a.seconds / a.solved;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string records_to_csv(const std::vector<RunRecord>& records) {
  std::ostringstream out;
  out << "instance,algorithm,phase,outcome,agents,index,soc,avg_cost,makespan,"
         "seconds,nodes_expanded\n";
  for (const auto& r : records) {
    out << r.instance_id << ',' << r.algorithm_id << ',' << phase_name(r.phase)
        << ',' << to_string(r.outcome) << ',' << r.n_agents << ',' << r.index
        << ',' << r.soc << ',' << r.avg_cost << ',' << r.makespan << ','
        << r.wall_seconds << ',' << r.nodes_expanded << '\n';
  }
  return out.str();
}

std::string summary_to_csv(const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  out << "group,runs,solved,success_rate,mean_index,mean_avg_cost,mean_seconds\n";
  for (const auto& r : rows) {
    out << r.group << ',' << r.runs << ',' << r.solved << ',' << r.success_rate
        << ',' << r.mean_index << ',' << r.mean_avg_cost << ',' << r.mean_seconds
        << '\n';
  }
  return out.str();
}

Instance sample_open_instance(int width, int height, int n_agents,
                              std::uint64_t seed) {
  GridWorld world(width, height);
  std::vector<Cell> cells;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) cells.push_back(Cell{x, y});
  }
  if (n_agents > static_cast<int>(cells.size())) {
    throw std::invalid_argument("sample_open_instance: too many agents");
  }
  std::mt19937_64 rng(seed);
  std::vector<Cell> starts = cells, goals = cells;
  std::shuffle(starts.begin(), starts.end(), rng);
  std::shuffle(goals.begin(), goals.end(), rng);
  Instance inst{world, {}};
  for (int i = 0; i < n_agents; ++i) {
    inst.tasks.push_back(AgentTask{i, starts[static_cast<std::size_t>(i)],
                                   goals[static_cast<std::size_t>(i)]});
  }
  return inst;
}

SuiteSpec parse_suite(const std::string& json_text) {
  auto j = nlohmann::json::parse(json_text);
  SuiteSpec suite;
  suite.seed = j.value("seed", 0ull);
  suite.per_run_timeout = j.value("timeout", 300.0);
  for (const auto& e : j.at("instances")) {
    SuiteSpec::Entry entry;
    entry.map_path = e.value("map", "");
    entry.scen_path = e.value("scen", "");
    entry.width = e.value("width", 9);
    entry.height = e.value("height", 9);
    entry.n_agents = e.value("agents", 4);
    entry.repeats = e.value("repeats", 1);
    suite.instances.push_back(entry);
  }
  for (const auto& a : j.at("algorithms")) {
    AlgoConfig algo;
    algo.name = a.at("name").get<std::string>();
    std::string low = a.value("low_level", "xg");
    if (low == "astar") algo.low_level = LowLevel::Astar;
    else if (low == "xg") algo.low_level = LowLevel::Xg;
    else if (low == "wxg") algo.low_level = LowLevel::Wxg;
    else if (low == "sr") algo.low_level = LowLevel::Sr;
    else throw std::runtime_error("suite: unknown low_level '" + low + "'");
    algo.weight = a.value("weight", 0.5);
    suite.algorithms.push_back(algo);
  }
  return suite;
}

std::vector<RunRecord> run_suite(const SuiteSpec& suite, int jobs,
                                 std::int64_t expansion_budget) {
  struct Job {
    Instance inst;
    std::string id;
    AlgoConfig algo;
  };
  std::vector<Job> tasks;
  std::uint64_t sample_counter = 0;
  for (const auto& entry : suite.instances) {
    for (int rep = 0; rep < entry.repeats; ++rep) {
      Instance inst = [&] {
        if (!entry.map_path.empty()) {
          GridWorld world = load_map_file(entry.map_path);
          return load_scenario_file(entry.scen_path, world, entry.n_agents);
        }
        return sample_open_instance(entry.width, entry.height, entry.n_agents,
                                    suite.seed + sample_counter);
      }();
      ++sample_counter;
      std::string id = std::to_string(inst.world.width()) + "x" +
                       std::to_string(inst.world.height()) + "/" +
                       (entry.map_path.empty() ? "seed" : entry.map_path) + "-" +
                       std::to_string(rep);
      for (const auto& algo : suite.algorithms) {
        tasks.push_back(Job{inst, id, algo});
      }
    }
  }

  SolverOptions opts;
  opts.timeout_seconds = suite.per_run_timeout;
  opts.expansion_budget = expansion_budget;

  std::vector<std::vector<RunRecord>> per_task(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t k = next.fetch_add(1);
      if (k >= tasks.size()) return;
      ProtocolResult res =
          run_protocol(tasks[k].inst, tasks[k].id, tasks[k].algo, opts);
      per_task[k] = std::move(res.all);
    }
  };
  const int n_threads = std::max(1, jobs);
  std::vector<std::thread> pool;
  for (int k = 0; k < n_threads; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  std::vector<RunRecord> merged;
  for (auto& chunk : per_task) {
    merged.insert(merged.end(), chunk.begin(), chunk.end());
  }
  return merged;
}

}  // namespace xmapf
