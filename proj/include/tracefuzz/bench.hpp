// bench.hpp
//
// Evaluation harness: repeated campaigns per corpus pair and scheduler
// mode, mu-TTE and verdict precision/recall bookkeeping, deterministic
// CSV output. TTE is measured on the engine's virtual clock.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tracefuzz/engine.hpp"
#include "tracefuzz/harness.hpp"

namespace tracefuzz {

enum class BenchMode {
  TraceGuided,
  DirectedBaseline,
  CoverageOnly,
  NoDict,  // trace-guided with the dictionary disabled
  NoAnneal,   // directed energy with the trace-derived target and dictionary
};

const char* to_string(BenchMode mode);
std::optional<BenchMode> bench_mode_from_string(const std::string& name);

struct BenchRun {
  VerdictKind kind;
  std::optional<std::uint64_t> tte_us;
  std::vector<std::uint8_t> poc;
  std::vector<std::string> event_log;
};

struct BenchResult {
  std::string pair_id;
  BenchMode mode;
  int runs = 0;
  int successes = 0;
  std::vector<std::optional<std::uint64_t>> tte_each;
  std::optional<double> mu_tte_us;  // mean over successful runs
  std::vector<VerdictKind> verdicts;
  std::vector<BenchRun> run_details;
};

struct AccuracyTable {
  int tp = 0, fp = 0, tn = 0, fn = 0;
  std::optional<double> precision;
  std::optional<double> recall;
};

AccuracyTable accuracy_from_counts(int tp, int fp, int tn, int fn);

// A pair counts as verified for accuracy when at least this fraction of
// its runs triggered.
inline constexpr double kVerifiedRunFraction = 0.8;

struct BenchConfig {
  std::vector<std::string> pair_ids;  // empty selects the whole corpus
  std::vector<BenchMode> modes{BenchMode::TraceGuided,
                               BenchMode::DirectedBaseline};
  int runs_per_pair = 10;
  std::uint64_t budget_us = 60'000'000;
  std::uint64_t base_seed = 1;
  std::uint64_t enrich_budget_us = 10'000'000;
  double dict_use_prob = 0.5;
};

struct BenchOutput {
  std::vector<BenchResult> results;
  std::map<BenchMode, AccuracyTable> accuracy;
  std::string csv;
};

// Pure function of its config: rows are emitted in (pair, mode, run)
// order with paired seeds base_seed..base_seed+runs-1 across modes.
BenchOutput run_bench(const BenchConfig& cfg);

// Builds the trace-guided campaign inputs for one pair: extraction with
// enrichment from the pair's POC, then alignment onto the target.
AlignedTrace prepare_aligned_trace(const BenchmarkPair& pair,
                                   std::uint64_t enrich_budget_us);

inline constexpr const char* kCsvHeader =
    "pair_id,mode,runs,successes,mu_tte_us,tte_list_us,verdicts";

}  // namespace tracefuzz
