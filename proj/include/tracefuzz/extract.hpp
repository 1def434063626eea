// extract.hpp
//
// Historical trace extraction from a basic program: crash-stack harvesting
// from direct POC execution, optional campaign-based path enrichment, and
// key-bytes extraction over the provenance read log.

#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "tracefuzz/core.hpp"
#include "tracefuzz/harness.hpp"

namespace tracefuzz {

struct ExtractionConfig {
  bool enrich = false;
  std::uint64_t enrich_budget_us = 10'000'000;  // virtual
  std::uint64_t rng_seed = 1;
  std::size_t min_row_len = 2;
  std::size_t max_row_len = 32;
};

struct NotACrash : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationFailed : std::runtime_error {
  ValidationFailed(std::string msg, std::vector<Violation> v)
      : std::runtime_error(std::move(msg)), violations(std::move(v)) {}
  std::vector<Violation> violations;
};

// Crash stack of the POC run; throws NotACrash when the input does not
// crash the basic program.
TracePath extract_path_from_poc(const TargetProgram& basic,
                                std::span<const std::uint8_t> poc);

// Directed-baseline campaign against `basic` collecting distinct crash
// stacks that end at `vulnerable`. Deterministic given cfg.rng_seed.
std::vector<TracePath> enrich_paths(
    const TargetProgram& basic, const FunctionId& vulnerable,
    const std::vector<std::vector<std::uint8_t>>& seed_inputs,
    const ExtractionConfig& cfg);

// Groups provenance reads inside `reused` into maximal runs of consecutive
// input offsets per function; each run within the length bounds becomes a
// dictionary row, longer runs are split into max_row_len-sized chunks.
KeyBytesDictionary rows_from_provenance(
    const std::vector<ProvenanceRead>& reads, std::span<const std::uint8_t> poc,
    const std::set<FunctionId>& reused, std::size_t min_row_len,
    std::size_t max_row_len);

KeyBytesDictionary extract_key_bytes(const TargetProgram& basic,
                                     const std::set<FunctionId>& reused,
                                     std::span<const std::uint8_t> poc,
                                     const ExtractionConfig& cfg);

// Full extraction pipeline; the result always passes
// validate_historical_trace or ValidationFailed is thrown.
HistoricalTrace build_historical_trace(const TargetProgram& basic,
                                       std::span<const std::uint8_t> poc,
                                       const FunctionId& vulnerable,
                                       const std::set<FunctionId>& reused,
                                       const ExtractionConfig& cfg);

}  // namespace tracefuzz
