#include "tracefuzz/extract.hpp"

#include <algorithm>
#include <map>

#include "tracefuzz/engine.hpp"

namespace tracefuzz {

TracePath extract_path_from_poc(const TargetProgram& basic,
                                std::span<const std::uint8_t> poc) {
  ExecutionResult result = run_target(basic, poc);
  if (result.status != RunStatus::Crash)
    throw NotACrash("input does not crash basic target '" + basic.id + "'");
  TracePath path;
  path.nodes = result.crash_stack;
  path.vulnerable = result.crash_stack.back();
  path.origin = PathOrigin::DirectPoc;
  return path;
}

std::vector<TracePath> enrich_paths(
    const TargetProgram& basic, const FunctionId& vulnerable,
    const std::vector<std::vector<std::uint8_t>>& seed_inputs,
    const ExtractionConfig& cfg) {
  if (!cfg.enrich)
    throw std::invalid_argument("enrich_paths requires cfg.enrich");
  if (cfg.enrich_budget_us == 0)
    throw std::invalid_argument("enrich_budget must be positive");

  CampaignConfig campaign;
  campaign.budget_us = cfg.enrich_budget_us;
  campaign.rng_seed = cfg.rng_seed;
  campaign.scheduler.mode = ScheduleMode::DirectedBaseline;
  campaign.initial_seeds = seed_inputs;
  campaign.stop_on_vuln_crash = false;  // keep collecting stacks

  CampaignReport report =
      run_campaign(basic, std::nullopt, vulnerable, campaign);

  std::vector<TracePath> paths;
  for (const CrashRecord& crash : report.crashes) {
    if (crash.site != vulnerable) continue;
    TracePath path;
    path.nodes = crash.stack;
    path.vulnerable = vulnerable;
    path.origin = PathOrigin::CampaignEnriched;
    const bool dup =
        std::any_of(paths.begin(), paths.end(),
                    [&](const TracePath& p) { return p.nodes == path.nodes; });
    if (!dup) paths.push_back(std::move(path));
  }
  return paths;
}

KeyBytesDictionary rows_from_provenance(
    const std::vector<ProvenanceRead>& reads, std::span<const std::uint8_t> poc,
    const std::set<FunctionId>& reused, std::size_t min_row_len,
    std::size_t max_row_len) {
  KeyBytesDictionary dict;
  dict.min_row_len = min_row_len;
  dict.max_row_len = max_row_len;

  std::map<FunctionId, std::set<std::size_t>> offsets_by_fn;
  for (const ProvenanceRead& read : reads) {
    if (!reused.count(read.function)) continue;
    if (read.input_offset >= poc.size()) continue;
    offsets_by_fn[read.function].insert(read.input_offset);
  }

  std::set<std::vector<std::uint8_t>> seen;
  auto emit = [&](std::size_t start, std::size_t len) {
    if (len < min_row_len) return;
    std::vector<std::uint8_t> bytes(poc.begin() + start,
                                    poc.begin() + start + len);
    if (seen.insert(bytes).second)
      dict.rows.push_back({std::move(bytes), start});
  };

  for (const auto& [fn, offsets] : offsets_by_fn) {
    auto it = offsets.begin();
    while (it != offsets.end()) {
      const std::size_t start = *it;
      std::size_t end = start;
      while (it != offsets.end() && *it == end) {
        ++end;
        ++it;
      }
      // maximal run [start, end); split oversized runs into chunks
      std::size_t pos = start;
      while (end - pos > max_row_len) {
        emit(pos, max_row_len);
        pos += max_row_len;
      }
      emit(pos, end - pos);
    }
  }
  return dict;
}

KeyBytesDictionary extract_key_bytes(const TargetProgram& basic,
                                     const std::set<FunctionId>& reused,
                                     std::span<const std::uint8_t> poc,
                                     const ExtractionConfig& cfg) {
  ExecutionResult result = run_target(basic, poc);
  if (result.status != RunStatus::Crash)
    throw NotACrash("input does not crash basic target '" + basic.id + "'");
  return rows_from_provenance(result.provenance_reads, poc, reused,
                              cfg.min_row_len, cfg.max_row_len);
}

HistoricalTrace build_historical_trace(const TargetProgram& basic,
                                       std::span<const std::uint8_t> poc,
                                       const FunctionId& vulnerable,
                                       const std::set<FunctionId>& reused,
                                       const ExtractionConfig& cfg) {
  HistoricalTrace trace;
  trace.basic_program = basic.id;
  trace.vulnerable = vulnerable;
  trace.paths.push_back(extract_path_from_poc(basic, poc));
  if (cfg.enrich) {
    std::vector<std::vector<std::uint8_t>> seeds{
        {poc.begin(), poc.end()}};
    for (TracePath& path : enrich_paths(basic, vulnerable, seeds, cfg)) {
      const bool dup = std::any_of(
          trace.paths.begin(), trace.paths.end(),
          [&](const TracePath& p) { return p.nodes == path.nodes; });
      if (!dup) trace.paths.push_back(std::move(path));
    }
  }
  trace.dictionary = extract_key_bytes(basic, reused, poc, cfg);

  std::vector<Violation> violations = validate_historical_trace(trace);
  if (!violations.empty()) {
    std::string msg = "extracted trace failed validation: " +
                      violations.front().field + ": " +
                      violations.front().rule;
    throw ValidationFailed(std::move(msg), std::move(violations));
  }
  return trace;
}

}  // namespace tracefuzz
