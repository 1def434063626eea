#include "tracefuzz/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <deque>
#include <set>
#include <stdexcept>

namespace tracefuzz {

namespace {
constexpr std::uint64_t kPerExecOverheadUs = 10;
constexpr double kMaxPower = 128.0;
}  // namespace

// ---------------------------------------------------------------------------
// Rng

namespace {
std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}
std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
}  // namespace

Rng::Rng(std::uint64_t seed) {
  for (auto& s : s_) s = splitmix64(seed);
}

std::uint64_t Rng::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

std::uint64_t Rng::below(std::uint64_t n) { return n ? next() % n : 0; }

double Rng::unit() { return double(next() >> 11) * 0x1.0p-53; }

// ---------------------------------------------------------------------------
// State machines and energy

std::optional<std::size_t> seed_state(const ExecutionResult& result,
                                      const StateMachine& machine) {
  std::optional<std::size_t> deepest;
  for (std::size_t j = 0; j < machine.states.size(); ++j) {
    if (!result.entered_functions.count(machine.states[j])) break;
    deepest = j;
  }
  return deepest;
}

double temperature(std::uint64_t first_reach_us, std::uint64_t now_us,
                   const SchedulerConfig& cfg) {
  const double elapsed = double(now_us - first_reach_us);
  const double t = std::pow(cfg.cooling_base, -elapsed / double(cfg.tx_us));
  return std::clamp(t, 1e-300, 1.0);
}

double calc_energy(std::optional<std::size_t> cur, StateMachine& machine,
                   std::uint64_t now_us, const SchedulerConfig& cfg) {
  const std::size_t n = machine.reached_count();
  if (cur && *cur >= n) {
    for (std::size_t j = n; j <= *cur && j < machine.states.size(); ++j)
      machine.first_reach_us[j] = now_us;
    return 0.5;
  }
  double energy;
  std::size_t tail_begin;
  if (cur) {
    energy = 1.0 - 0.5 * temperature(*machine.first_reach_us[*cur], now_us, cfg);
    tail_begin = *cur + 1;
  } else {
    energy = 1.0;
    tail_begin = 0;
  }
  for (std::size_t i = tail_begin; i < n; ++i)
    energy *= 0.5 * temperature(*machine.first_reach_us[i], now_us, cfg);
  return std::clamp(energy, 0.0, 1.0);
}

DistanceInfo call_graph_distances(const CallGraph& graph,
                                  const FunctionId& vulnerable) {
  DistanceInfo info;
  info.vuln_in_graph = graph.has_node(vulnerable);
  if (!info.vuln_in_graph) return info;
  info.dist[vulnerable] = 0;
  std::deque<FunctionId> work{vulnerable};
  while (!work.empty()) {
    FunctionId cur = work.front();
    work.pop_front();
    const int d = info.dist[cur];
    for (const auto& [from, to] : graph.edges) {
      if (to == cur && !info.dist.count(from)) {
        info.dist[from] = d + 1;
        info.max_finite = std::max(info.max_finite, d + 1);
        work.push_back(from);
      }
    }
  }
  return info;
}

double normalized_seed_distance(const std::set<FunctionId>& entered,
                                const DistanceInfo& distances) {
  if (!distances.vuln_in_graph || distances.max_finite == 0) return 1.0;
  double sum = 0;
  std::size_t count = 0;
  for (const FunctionId& f : entered) {
    auto it = distances.dist.find(f);
    if (it != distances.dist.end()) {
      sum += it->second;
      ++count;
    }
  }
  if (count == 0) return 1.0;
  return std::clamp(sum / double(count) / double(distances.max_finite), 0.0, 1.0);
}

double directed_baseline_energy(double d_hat, bool vuln_in_graph,
                                std::uint64_t campaign_start_us,
                                std::uint64_t now_us,
                                const SchedulerConfig& cfg) {
  if (!vuln_in_graph) return 0.5;
  const double t = temperature(campaign_start_us, now_us, cfg);
  return std::clamp((1.0 - d_hat) * (1.0 - t) + 0.5 * t, 0.0, 1.0);
}

double seed_energy(const SeedEntry& seed, std::vector<StateMachine>& machines,
                   bool vuln_in_graph, std::uint64_t campaign_start_us,
                   std::uint64_t now_us, const SchedulerConfig& cfg) {
  if (machines.empty())
    return directed_baseline_energy(seed.d_hat, vuln_in_graph,
                                    campaign_start_us, now_us, cfg);
  double best = 0.0;
  for (std::size_t m = 0; m < machines.size(); ++m) {
    const std::optional<std::size_t> cur =
        m < seed.reached_state.size() ? seed.reached_state[m] : std::nullopt;
    best = std::max(best, calc_energy(cur, machines[m], now_us, cfg));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Mutation

std::vector<std::uint8_t> dict_apply(std::span<const std::uint8_t> input,
                                     const DictionaryRow& row,
                                     std::size_t offset, bool overwrite,
                                     std::size_t max_input_len) {
  std::vector<std::uint8_t> out(input.begin(), input.end());
  offset = std::min(offset, out.size());
  if (overwrite) {
    if (offset + row.bytes.size() > out.size())
      out.resize(offset + row.bytes.size());
    std::copy(row.bytes.begin(), row.bytes.end(), out.begin() + offset);
  } else {
    out.insert(out.begin() + offset, row.bytes.begin(), row.bytes.end());
  }
  if (out.size() > max_input_len) out.resize(max_input_len);
  return out;
}

namespace {

const std::int64_t kInteresting8[] = {-128, -1, 0, 1, 16, 32, 64, 100, 127};
const std::int64_t kInteresting16[] = {-32768, -129, 128,  255,  256,
                                       512,    1000, 1024, 4096, 32767};
const std::int64_t kInteresting32[] = {-2147483647 - 1, -100663046, -32769,
                                       32768,           65535,      65536,
                                       100663045,       2147483647};

void write_le(std::vector<std::uint8_t>& buf, std::size_t pos, std::uint64_t v,
              std::size_t width) {
  for (std::size_t i = 0; i < width; ++i)
    buf[pos + i] = std::uint8_t(v >> (8 * i));
}

std::uint64_t read_le(const std::vector<std::uint8_t>& buf, std::size_t pos,
                      std::size_t width) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < width; ++i)
    v |= std::uint64_t(buf[pos + i]) << (8 * i);
  return v;
}

std::size_t pick_width(Rng& rng, std::size_t len) {
  std::size_t w = std::size_t(1) << rng.below(3);  // 1, 2 or 4
  while (w > len) w >>= 1;
  return w;
}

void apply_basic_op(std::vector<std::uint8_t>& buf, Rng& rng,
                    std::size_t max_input_len) {
  if (buf.empty()) {
    buf.push_back(std::uint8_t(rng.below(256)));
    return;
  }
  switch (rng.below(6)) {
    case 0: {  // bit flip
      const std::size_t pos = rng.below(buf.size());
      buf[pos] ^= std::uint8_t(1u << rng.below(8));
      break;
    }
    case 1: {  // byte flip
      buf[rng.below(buf.size())] ^= 0xff;
      break;
    }
    case 2: {  // arithmetic +/- 1..35 on a 1/2/4-byte word
      const std::size_t w = pick_width(rng, buf.size());
      const std::size_t pos = rng.below(buf.size() - w + 1);
      const std::uint64_t delta = 1 + rng.below(35);
      std::uint64_t v = read_le(buf, pos, w);
      v = rng.below(2) ? v + delta : v - delta;
      write_le(buf, pos, v, w);
      break;
    }
    case 3: {  // interesting-value substitution
      const std::size_t w = pick_width(rng, buf.size());
      const std::size_t pos = rng.below(buf.size() - w + 1);
      std::int64_t v;
      if (w == 1)
        v = kInteresting8[rng.below(std::size(kInteresting8))];
      else if (w == 2)
        v = kInteresting16[rng.below(std::size(kInteresting16))];
      else
        v = kInteresting32[rng.below(std::size(kInteresting32))];
      write_le(buf, pos, std::uint64_t(v), w);
      break;
    }
    case 4: {  // block duplicate
      const std::size_t len = 1 + rng.below(std::min<std::size_t>(16, buf.size()));
      const std::size_t src = rng.below(buf.size() - len + 1);
      const std::size_t dst = rng.below(buf.size() + 1);
      std::vector<std::uint8_t> block(buf.begin() + src, buf.begin() + src + len);
      buf.insert(buf.begin() + dst, block.begin(), block.end());
      if (buf.size() > max_input_len) buf.resize(max_input_len);
      break;
    }
    case 5: {  // block delete
      const std::size_t len = 1 + rng.below(std::min<std::size_t>(16, buf.size()));
      const std::size_t pos = rng.below(buf.size() - len + 1);
      buf.erase(buf.begin() + pos, buf.begin() + pos + len);
      break;
    }
  }
}

}  // namespace

std::vector<std::uint8_t> mutate(std::span<const std::uint8_t> input,
                                 const KeyBytesDictionary& dictionary,
                                 Rng& rng, double dict_use_prob,
                                 std::size_t max_input_len) {
  if (!dictionary.rows.empty() && rng.unit() < dict_use_prob) {
    const DictionaryRow& row = dictionary.rows[rng.below(dictionary.rows.size())];
    const bool overwrite = rng.below(2) == 1;
    const std::size_t offset = rng.below(input.size() + 1);
    std::vector<std::uint8_t> out =
        dict_apply(input, row, offset, overwrite, max_input_len);
    if (out != std::vector<std::uint8_t>(input.begin(), input.end())) return out;
    // fall through when the row was already present at that spot
  }
  std::vector<std::uint8_t> out(input.begin(), input.end());
  const std::uint64_t op = rng.below(7);
  if (op < 6) {
    apply_basic_op(out, rng, max_input_len);
  } else {
    const std::uint64_t stack = 1 + rng.below(64);
    for (std::uint64_t i = 0; i < stack; ++i)
      apply_basic_op(out, rng, max_input_len);
  }
  while (out.size() == input.size() &&
         std::equal(out.begin(), out.end(), input.begin())) {
    if (out.empty())
      out.push_back(std::uint8_t(rng.below(256)));
    else
      out[rng.below(out.size())] ^= std::uint8_t(1u << rng.below(8));
  }
  if (out.size() > max_input_len) out.resize(max_input_len);
  return out;
}

// ---------------------------------------------------------------------------
// Campaign

namespace {

std::uint64_t coverage_fingerprint(const std::set<std::uint64_t>& edges) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::uint64_t e : edges) {
    h ^= e;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t stack_hash(const std::vector<FunctionId>& stack) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const FunctionId& f : stack) h = fnv1a64(f.name, h ^ 0x9e);
  return h;
}

class Campaign {
 public:
  Campaign(const TargetProgram& target, const std::optional<AlignedTrace>& aligned,
           const FunctionId& vulnerable, const CampaignConfig& cfg)
      : target_(target),
        vulnerable_(vulnerable),
        cfg_(cfg),
        rng_(cfg.rng_seed),
        distances_(call_graph_distances(target.call_graph, vulnerable)) {
    if (aligned) {
      dictionary_ = aligned->dictionary;
      if (cfg.scheduler.mode == ScheduleMode::TraceGuided) {
        for (const TracePath& p : aligned->sub_paths)
          report_.machines.emplace_back(p.nodes);
      }
    }
  }

  CampaignReport run() {
    for (const auto& seed : cfg_.initial_seeds) {
      execute_and_process(seed, /*force_retain=*/true);
      if (done_) return finish();
    }
    if (queue_.empty())
      throw std::runtime_error("campaign has no usable initial seeds");

    while (!done_ && clock_us_ < cfg_.budget_us) {
      const std::size_t idx = select_seed();
      SeedEntry& entry = queue_[idx];
      const double power_raw =
          entry.base_score * entry.energy * cfg_.power_scale;
      const std::uint64_t power =
          std::uint64_t(std::clamp(std::round(power_raw), 1.0, kMaxPower));
      const std::vector<std::uint8_t> parent = entry.input;
      for (std::uint64_t i = 0; i < power && !done_ && clock_us_ < cfg_.budget_us;
           ++i) {
        std::vector<std::uint8_t> child = mutate(
            parent, dictionary_, rng_, cfg_.dict_use_prob, cfg_.limits.max_input_len);
        execute_and_process(child, /*force_retain=*/false);
      }
    }
    return finish();
  }

 private:
  void log(const char* event, const std::string& payload) {
    report_.event_log.push_back(std::to_string(clock_us_) + " " + event + " " +
                                payload);
  }

  std::size_t select_seed() {
    double total = 0;
    for (SeedEntry& e : queue_) {
      e.base_score = base_score(e);
      e.energy = seed_energy(e, report_.machines, distances_.vuln_in_graph,
                             /*campaign_start_us=*/0, clock_us_, cfg_.scheduler);
      if (cfg_.scheduler.mode == ScheduleMode::CoverageOnly) e.energy = 0.5;
      if (cfg_.scheduler.mode == ScheduleMode::DirectedBaseline)
        e.energy = directed_baseline_energy(e.d_hat, distances_.vuln_in_graph, 0,
                                            clock_us_, cfg_.scheduler);
      total += e.energy;
    }
    if (total <= 0.0) return std::size_t(rng_.below(queue_.size()));
    double r = rng_.unit() * total;
    for (std::size_t i = 0; i < queue_.size(); ++i) {
      r -= queue_[i].energy;
      if (r <= 0.0) return i;
    }
    return queue_.size() - 1;
  }

  double base_score(const SeedEntry& e) const {
    if (exec_count_ == 0) return 1.0;
    const double avg_time = total_exec_us_ / double(exec_count_);
    const double avg_len = total_len_ / double(exec_count_);
    const double fs =
        std::clamp(avg_time / std::max<double>(1.0, double(e.exec_time_us)),
                   0.25, 4.0);
    const double fz = std::clamp(avg_len / std::max<double>(1.0, double(e.input.size())),
                                 0.25, 4.0);
    return fs * fz;
  }

  void execute_and_process(const std::vector<std::uint8_t>& input,
                           bool force_retain) {
    ExecutionResult result = run_target(target_, input, cfg_.limits);
    if (result.status == RunStatus::HarnessError)
      throw std::runtime_error("target '" + target_.id +
                               "' violated the harness contract");
    ++report_.executions;
    clock_us_ += result.exec_time_us + kPerExecOverheadUs;
    total_exec_us_ += double(result.exec_time_us);
    total_len_ += double(input.size());
    ++exec_count_;

    if (result.entered_functions.count(vulnerable_)) vulnerable_entered_ = true;

    bool advanced = false;
    std::vector<std::optional<std::size_t>> reached(report_.machines.size());
    for (std::size_t m = 0; m < report_.machines.size(); ++m) {
      StateMachine& machine = report_.machines[m];
      reached[m] = seed_state(result, machine);
      if (reached[m]) {
        const std::size_t deep = *reached[m];
        for (std::size_t j = machine.reached_count();
             j <= deep && j < machine.states.size(); ++j) {
          machine.first_reach_us[j] = clock_us_;
          advanced = true;
          log("STATE_ADVANCE", "machine=" + std::to_string(m) +
                                   " state=" + std::to_string(j) +
                                   " fn=" + machine.states[j].name);
        }
      }
    }

    bool new_edge = false;
    for (std::uint64_t e : result.coverage_edges)
      new_edge |= global_edges_.insert(e).second;

    if (result.status == RunStatus::Crash) {
      handle_crash(result, input);
      if (done_) return;
    }

    if (result.status == RunStatus::Timeout) return;
    if (result.status == RunStatus::Crash && !force_retain) return;

    if (force_retain || new_edge || advanced) {
      SeedEntry entry;
      entry.input = input;
      entry.reached_state = std::move(reached);
      entry.coverage_fingerprint = coverage_fingerprint(result.coverage_edges);
      entry.discovered_at_us = clock_us_;
      entry.exec_time_us = result.exec_time_us;
      entry.d_hat = normalized_seed_distance(result.entered_functions, distances_);
      queue_.push_back(std::move(entry));
      log("SEED_ADD", "idx=" + std::to_string(queue_.size() - 1) +
                          " len=" + std::to_string(input.size()));
    }
  }

  void handle_crash(const ExecutionResult& result,
                    const std::vector<std::uint8_t>& input) {
    const std::uint64_t key =
        stack_hash(result.crash_stack) ^ fnv1a64(result.crash_site->name);
    if (seen_crashes_.insert(key).second) {
      report_.crashes.push_back(
          {*result.crash_site, result.crash_stack, input, clock_us_});
      log("CRASH", "site=" + result.crash_site->name +
                       " depth=" + std::to_string(result.crash_stack.size()));
    }
    if (*result.crash_site == vulnerable_ && cfg_.stop_on_vuln_crash) {
      report_.verdict.kind = VerdictKind::Triggered;
      report_.verdict.poc = input;
      report_.verdict.tte_us = clock_us_;
      done_ = true;
    }
  }

  CampaignReport finish() {
    if (!done_) {
      report_.verdict.kind = vulnerable_entered_
                                 ? VerdictKind::ReachedNotTriggered
                                 : VerdictKind::NotReached;
      // enrichment campaigns report Triggered when any qualifying crash
      // was archived
      if (!cfg_.stop_on_vuln_crash) {
        for (const CrashRecord& c : report_.crashes) {
          if (c.site == vulnerable_) {
            report_.verdict.kind = VerdictKind::Triggered;
            report_.verdict.poc = c.input;
            report_.verdict.tte_us = c.at_us;
            break;
          }
        }
      }
    }
    log("VERDICT", std::string(to_string(report_.verdict.kind)) +
                       (report_.verdict.tte_us
                            ? " tte_us=" + std::to_string(*report_.verdict.tte_us)
                            : std::string(" tte_us=none")));
    return std::move(report_);
  }

  const TargetProgram& target_;
  FunctionId vulnerable_;
  CampaignConfig cfg_;
  Rng rng_;
  DistanceInfo distances_;
  KeyBytesDictionary dictionary_;

  CampaignReport report_;
  std::vector<SeedEntry> queue_;
  std::set<std::uint64_t> global_edges_;
  std::set<std::uint64_t> seen_crashes_;
  std::uint64_t clock_us_ = 0;
  double total_exec_us_ = 0;
  double total_len_ = 0;
  std::uint64_t exec_count_ = 0;
  bool vulnerable_entered_ = false;
  bool done_ = false;
};

}  // namespace

CampaignReport run_campaign(const TargetProgram& target,
                            const std::optional<AlignedTrace>& aligned,
                            const FunctionId& vulnerable,
                            const CampaignConfig& cfg) {
  if (cfg.budget_us == 0) throw std::invalid_argument("budget must be positive");
  if (cfg.initial_seeds.empty())
    throw std::invalid_argument("initial_seeds must be non-empty");
  if (cfg.dict_use_prob < 0.0 || cfg.dict_use_prob > 1.0)
    throw std::invalid_argument("dict_use_prob must be in [0,1]");
  Campaign campaign(target, aligned, vulnerable, cfg);
  return campaign.run();
}

}  // namespace tracefuzz
