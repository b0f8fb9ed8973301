#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "xmapf/cbs.hpp"

namespace xmapf {

enum class Phase { Baseline, First, Best };

struct AlgoConfig {
  std::string name;  // row label in the CSV
  LowLevel low_level = LowLevel::Xg;
  double weight = 0.5;
};

struct RunRecord {
  std::string instance_id;
  std::string algorithm_id;
  Phase phase = Phase::Baseline;
  Outcome outcome = Outcome::Timeout;
  int n_agents = 0;
  int index = 0;          // meaningful when solved
  int soc = 0;            // sum of costs
  double avg_cost = 0.0;  // soc / n_agents
  int makespan = 0;
  double wall_seconds = 0.0;
  std::int64_t nodes_expanded = 0;
};

struct ProtocolResult {
  RunRecord baseline;
  RunRecord first;
  RunRecord best;
  std::vector<RunRecord> all;  // every attempt, bound-lowering ones included
};

/// CBS baseline, then XG-CBS at the baseline index (or unbounded if the
/// baseline timed out), then repeated bound lowering until the first
/// timeout/unsolvable attempt. Timed-out attempts keep no time sample.
ProtocolResult run_protocol(const Instance& inst, const std::string& instance_id,
                            const AlgoConfig& algo, const SolverOptions& opts);

struct SummaryRow {
  std::string group;  // "<WxH>/<agents>/<algo>/<phase>"
  int runs = 0;
  int solved = 0;
  double success_rate = 0.0;
  double mean_index = 0.0;     // over solved
  double mean_avg_cost = 0.0;  // over solved
  double mean_seconds = 0.0;   // over solved
};

/// Groups by (grid label = instance_id prefix up to the first '/', agent
/// count, algorithm, phase); means are taken over solved runs only.
std::vector<SummaryRow> aggregate(const std::vector<RunRecord>& records);

std::string records_to_csv(const std::vector<RunRecord>& records);
std::string summary_to_csv(const std::vector<SummaryRow>& rows);

/// Seeded uniform sampling of distinct starts / distinct goals over passable
/// cells of an open width x height grid.
Instance sample_open_instance(int width, int height, int n_agents,
                              std::uint64_t seed);

struct SuiteSpec {
  struct Entry {
    std::string map_path;   // empty: open grid of the given size
    std::string scen_path;  // empty: sampled
    int width = 9, height = 9;
    int n_agents = 4;
    int repeats = 1;
  };
  std::vector<Entry> instances;
  std::vector<AlgoConfig> algorithms;
  double per_run_timeout = 300.0;
  std::uint64_t seed = 0;
};

SuiteSpec parse_suite(const std::string& json_text);

/// Runs the protocol for every (instance, algorithm) pair on `jobs` worker
/// threads; records are merged in (instance, algorithm, phase) order.
std::vector<RunRecord> run_suite(const SuiteSpec& suite, int jobs,
                                 std::int64_t expansion_budget = -1);

}  // namespace xmapf
