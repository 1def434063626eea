#include "tracefuzz/bench.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tracefuzz/extract.hpp"

namespace tracefuzz {

const char* to_string(BenchMode mode) {
  switch (mode) {
    case BenchMode::TraceGuided: return "traceguided";
    case BenchMode::DirectedBaseline: return "directed";
    case BenchMode::CoverageOnly: return "coverage";
    case BenchMode::NoDict: return "nodict";
    case BenchMode::NoAnneal: return "noanneal";
  }
  return "?";
}

std::optional<BenchMode> bench_mode_from_string(const std::string& name) {
  for (BenchMode m : {BenchMode::TraceGuided, BenchMode::DirectedBaseline,
                      BenchMode::CoverageOnly, BenchMode::NoDict,
                      BenchMode::NoAnneal}) {
    if (name == to_string(m)) return m;
  }
  return std::nullopt;
}

AccuracyTable accuracy_from_counts(int tp, int fp, int tn, int fn) {
  AccuracyTable t;
  t.tp = tp;
  t.fp = fp;
  t.tn = tn;
  t.fn = fn;
  if (tp + fp > 0) t.precision = double(tp) / (tp + fp);
  if (tp + fn > 0) t.recall = double(tp) / (tp + fn);
  return t;
}

AlignedTrace prepare_aligned_trace(const BenchmarkPair& pair,
                                   std::uint64_t enrich_budget_us) {
  ExtractionConfig ext;
  ext.enrich = enrich_budget_us > 0;
  ext.enrich_budget_us = std::max<std::uint64_t>(enrich_budget_us, 1);
  ext.rng_seed = fnv1a64(pair.id);
  HistoricalTrace trace = build_historical_trace(
      pair.basic, pair.poc, pair.vulnerable, pair.basic.reused_functions, ext);
  return align_trace(trace, pair.target);
}

namespace {

bool uses_trace(BenchMode mode) {
  return mode == BenchMode::TraceGuided || mode == BenchMode::NoDict ||
         mode == BenchMode::NoAnneal;
}

BenchRun run_one(const BenchmarkPair& pair, BenchMode mode,
                 const std::optional<AlignedTrace>& aligned,
                 std::uint64_t seed, const BenchConfig& cfg) {
  CampaignConfig campaign;
  campaign.budget_us = cfg.budget_us;
  campaign.rng_seed = seed;
  campaign.initial_seeds = {pair.initial_seed};
  campaign.dict_use_prob =
      mode == BenchMode::NoDict ? 0.0 : cfg.dict_use_prob;
  switch (mode) {
    case BenchMode::TraceGuided:
    case BenchMode::NoDict:
      campaign.scheduler.mode = ScheduleMode::TraceGuided;
      break;
    case BenchMode::DirectedBaseline:
    case BenchMode::NoAnneal:
      campaign.scheduler.mode = ScheduleMode::DirectedBaseline;
      break;
    case BenchMode::CoverageOnly:
      campaign.scheduler.mode = ScheduleMode::CoverageOnly;
      break;
  }
  const FunctionId vulnerable =
      aligned ? aligned->vulnerable
              : FunctionId{pair.target.id, pair.vulnerable.name};
  CampaignReport report =
      run_campaign(pair.target, uses_trace(mode) ? aligned : std::nullopt,
                   vulnerable, campaign);
  BenchRun run;
  run.kind = report.verdict.kind;
  run.tte_us = report.verdict.tte_us;
  if (report.verdict.poc) run.poc = *report.verdict.poc;
  run.event_log = std::move(report.event_log);
  return run;
}

char verdict_letter(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Triggered: return 'T';
    case VerdictKind::ReachedNotTriggered: return 'R';
    case VerdictKind::NotReached: return 'N';
  }
  return '?';
}

std::string format_us(std::optional<double> v) {
  if (!v) return "NA";
  return std::to_string(std::llround(*v));
}

}  // namespace

BenchOutput run_bench(const BenchConfig& cfg) {
  if (cfg.runs_per_pair < 1)
    throw std::invalid_argument("runs_per_pair must be >= 1");
  std::vector<const BenchmarkPair*> pairs;
  if (cfg.pair_ids.empty()) {
    for (const BenchmarkPair& p : corpus()) pairs.push_back(&p);
  } else {
    for (const std::string& id : cfg.pair_ids) {
      const BenchmarkPair* p = find_pair(id);
      if (!p) throw std::invalid_argument("unknown pair id '" + id + "'");
      pairs.push_back(p);
    }
  }

  BenchOutput out;
  const bool need_trace = std::any_of(cfg.modes.begin(), cfg.modes.end(),
                                      [](BenchMode m) { return uses_trace(m); });

  for (const BenchmarkPair* pair : pairs) {
    std::optional<AlignedTrace> aligned;
    if (need_trace) {
      try {
        aligned = prepare_aligned_trace(*pair, cfg.enrich_budget_us);
      } catch (const NoViablePath&) {
        // unguided; trace-guided modes fall back to the directed baseline
      }
    }
    for (BenchMode mode : cfg.modes) {
      BenchResult result;
      result.pair_id = pair->id;
      result.mode = mode;
      result.runs = cfg.runs_per_pair;
      double tte_sum = 0;
      for (int r = 0; r < cfg.runs_per_pair; ++r) {
        BenchRun run =
            run_one(*pair, mode, aligned, cfg.base_seed + std::uint64_t(r), cfg);
        result.verdicts.push_back(run.kind);
        if (run.kind == VerdictKind::Triggered) {
          ++result.successes;
          tte_sum += double(*run.tte_us);
          result.tte_each.push_back(run.tte_us);
        } else {
          result.tte_each.push_back(std::nullopt);
        }
        result.run_details.push_back(std::move(run));
      }
      if (result.successes > 0)
        result.mu_tte_us = tte_sum / result.successes;
      out.results.push_back(std::move(result));
    }
  }

  // accuracy per mode against pair ground truth
  for (BenchMode mode : cfg.modes) {
    int tp = 0, fp = 0, tn = 0, fn = 0;
    for (const BenchResult& r : out.results) {
      if (r.mode != mode) continue;
      const BenchmarkPair* pair = find_pair(r.pair_id);
      const bool verified =
          r.successes >=
          int(std::ceil(kVerifiedRunFraction * double(r.runs)));
      const bool any_trigger = r.successes > 0;
      if (pair->expected == VerdictKind::Triggered) {
        verified ? ++tp : ++fn;
      } else {
        any_trigger ? ++fp : ++tn;
      }
    }
    out.accuracy[mode] = accuracy_from_counts(tp, fp, tn, fn);
  }

  // CSV
  std::ostringstream csv;
  csv << kCsvHeader << "\n";
  for (const BenchResult& r : out.results) {
    csv << r.pair_id << "," << to_string(r.mode) << "," << r.runs << ","
        << r.successes << "," << format_us(r.mu_tte_us) << ",";
    for (std::size_t i = 0; i < r.tte_each.size(); ++i) {
      if (i) csv << ";";
      csv << (r.tte_each[i] ? std::to_string(*r.tte_each[i]) : "NA");
    }
    csv << ",";
    for (std::size_t i = 0; i < r.verdicts.size(); ++i) {
      if (i) csv << ";";
      csv << verdict_letter(r.verdicts[i]);
    }
    csv << "\n";
  }

  // per-mode sum of mu-TTE over pairs solved in every run; partially
  // solved (pair, mode) cells are excluded and counted
  std::map<BenchMode, std::pair<double, int>> sums;  // mode -> (sum, included)
  std::map<BenchMode, int> excluded;
  for (const BenchResult& r : out.results) {
    const BenchmarkPair* pair = find_pair(r.pair_id);
    if (pair->expected != VerdictKind::Triggered) continue;
    if (r.successes == r.runs) {
      sums[r.mode].first += *r.mu_tte_us;
      sums[r.mode].second += 1;
    } else {
      excluded[r.mode] += 1;
    }
  }
  for (BenchMode mode : cfg.modes) {
    const auto [sum, included] = sums[mode];
    csv << "summary," << to_string(mode) << "," << included << ",0,"
        << (included > 0 ? format_us(sum) : "NA")
        << ",excluded=" << excluded[mode] << ",\n";
  }
  for (BenchMode a : cfg.modes) {
    for (BenchMode b : cfg.modes) {
      if (a == b) continue;
      // ratio of the other mode's mu-TTE to this mode's, over pairs fully
      // solved by both
      double sum_a = 0, sum_b = 0;
      int common = 0;
      for (const BenchResult& ra : out.results) {
        if (ra.mode != a || ra.successes != ra.runs) continue;
        const BenchmarkPair* pair = find_pair(ra.pair_id);
        if (pair->expected != VerdictKind::Triggered) continue;
        for (const BenchResult& rb : out.results) {
          if (rb.mode == b && rb.pair_id == ra.pair_id &&
              rb.successes == rb.runs) {
            sum_a += *ra.mu_tte_us;
            sum_b += *rb.mu_tte_us;
            ++common;
          }
        }
      }
      csv << "speedup," << to_string(a) << "-over-" << to_string(b) << ","
          << common << ",0,";
      if (common > 0 && sum_a > 0) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", sum_b / sum_a);
        csv << buf;
      } else {
        csv << "NA";
      }
      csv << ",,\n";
    }
  }
  for (BenchMode mode : cfg.modes) {
    const AccuracyTable& t = out.accuracy[mode];
    char buf[128];
    std::snprintf(buf, sizeof buf, "tp=%d;fp=%d;tn=%d;fn=%d;precision=%s;recall=%s",
                  t.tp, t.fp, t.tn, t.fn,
                  t.precision ? std::to_string(*t.precision).c_str() : "NA",
                  t.recall ? std::to_string(*t.recall).c_str() : "NA");
    csv << "accuracy," << to_string(mode) << ",0,0,," << buf << ",\n";
  }
  out.csv = csv.str();
  return out;
}

}  // namespace tracefuzz
