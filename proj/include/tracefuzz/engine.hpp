// engine.hpp
//
// Greybox fuzzing core: seed queue with coverage feedback, a havoc
// mutator with key-bytes dictionary insertion, nested simulated annealing
// energy over aligned-path state machines, a call-graph-distance directed
// baseline, and deterministic campaign/verdict logic on a virtual clock.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tracefuzz/align.hpp"
#include "tracefuzz/core.hpp"
#include "tracefuzz/harness.hpp"

namespace tracefuzz {

// xoshiro256** with splitmix64 seeding; fully specified so campaigns are
// reproducible across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next();
  std::uint64_t below(std::uint64_t n);  // uniform in [0, n)
  double unit();                         // uniform in [0, 1)

 private:
  std::uint64_t s_[4];
};

enum class ScheduleMode { TraceGuided, DirectedBaseline, CoverageOnly };

struct SchedulerConfig {
  std::uint64_t tx_us = 30'000'000;  // annealing pivot
  double cooling_base = 20.0;
  ScheduleMode mode = ScheduleMode::TraceGuided;
};

// One aligned sub-path; states are reached strictly in prefix order.
struct StateMachine {
  std::vector<FunctionId> states;
  std::vector<std::optional<std::uint64_t>> first_reach_us;

  explicit StateMachine(std::vector<FunctionId> s = {})
      : states(std::move(s)), first_reach_us(states.size()) {}

  std::size_t reached_count() const {
    std::size_t n = 0;
    while (n < first_reach_us.size() && first_reach_us[n]) ++n;
    return n;
  }
};

// Deepest prefix of the machine whose states were all entered (presence,
// not order). None when states[0] was not entered.
std::optional<std::size_t> seed_state(const ExecutionResult& result,
                                      const StateMachine& machine);

// cooling_base^(-(now - first_reach)/tx), clamped to (0, 1].
double temperature(std::uint64_t first_reach_us, std::uint64_t now_us,
                   const SchedulerConfig& cfg);

// Nested simulated annealing energy for one machine. A `cur` beyond the
// reached states registers the new states at `now` and returns 0.5.
double calc_energy(std::optional<std::size_t> cur, StateMachine& machine,
                   std::uint64_t now_us, const SchedulerConfig& cfg);

struct SeedEntry {
  std::vector<std::uint8_t> input;
  std::vector<std::optional<std::size_t>> reached_state;  // per machine
  std::uint64_t coverage_fingerprint = 0;
  double base_score = 1.0;
  double energy = 0.0;
  std::uint64_t discovered_at_us = 0;
  std::uint64_t exec_time_us = 0;
  double d_hat = 1.0;  // normalized call-graph distance of this seed
};

struct DistanceInfo {
  std::map<FunctionId, int> dist;  // finite distances to the vulnerable node
  int max_finite = 0;
  bool vuln_in_graph = false;
};

// Shortest-path edge counts from every node to `vulnerable`.
DistanceInfo call_graph_distances(const CallGraph& graph,
                                  const FunctionId& vulnerable);

double normalized_seed_distance(const std::set<FunctionId>& entered,
                                const DistanceInfo& distances);

// AFLGo-style anneal from exploration to exploitation; 0.5 constant when
// the vulnerable node is absent from the graph.
double directed_baseline_energy(double d_hat, bool vuln_in_graph,
                                std::uint64_t campaign_start_us,
                                std::uint64_t now_us,
                                const SchedulerConfig& cfg);

// Max over machines; falls back to the directed baseline with zero
// machines.
double seed_energy(const SeedEntry& seed, std::vector<StateMachine>& machines,
                   bool vuln_in_graph, std::uint64_t campaign_start_us,
                   std::uint64_t now_us, const SchedulerConfig& cfg);

// Inserts (or overwrites with) one dictionary row at `offset`.
std::vector<std::uint8_t> dict_apply(std::span<const std::uint8_t> input,
                                     const DictionaryRow& row,
                                     std::size_t offset, bool overwrite,
                                     std::size_t max_input_len);

// One mutation: havoc-style operator stack, or a dictionary row with
// probability dict_use_prob. Never returns the input unchanged and never
// exceeds max_input_len.
std::vector<std::uint8_t> mutate(std::span<const std::uint8_t> input,
                                 const KeyBytesDictionary& dictionary,
                                 Rng& rng, double dict_use_prob,
                                 std::size_t max_input_len);

struct CampaignConfig {
  std::uint64_t budget_us = 60'000'000;
  std::uint64_t rng_seed = 1;
  ExecutionLimits limits;
  SchedulerConfig scheduler;
  double dict_use_prob = 0.5;
  std::vector<std::vector<std::uint8_t>> initial_seeds;
  double power_scale = 16.0;
  // Enrichment campaigns keep fuzzing past vulnerable-site crashes to
  // collect more distinct stacks.
  bool stop_on_vuln_crash = true;
};

struct CrashRecord {
  FunctionId site;
  std::vector<FunctionId> stack;
  std::vector<std::uint8_t> input;
  std::uint64_t at_us = 0;
};

struct CampaignReport {
  Verdict verdict;
  std::uint64_t executions = 0;
  std::vector<std::string> event_log;
  std::vector<StateMachine> machines;  // per-machine first-reach snapshot
  std::vector<CrashRecord> crashes;    // deduplicated by (site, stack hash)
};

// Fully deterministic given cfg.rng_seed; virtual time advances by
// exec_time plus a fixed per-execution overhead. Throws std::runtime_error
// on a HarnessError from the target.
CampaignReport run_campaign(const TargetProgram& target,
                            const std::optional<AlignedTrace>& aligned,
                            const FunctionId& vulnerable,
                            const CampaignConfig& cfg);

}  // namespace tracefuzz
