#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "tracefuzz/engine.hpp"
#include "tracefuzz/extract.hpp"
#include "tracefuzz/harness.hpp"

using namespace tracefuzz;

namespace {

using Bytes = std::vector<std::uint8_t>;

FunctionId fid(const std::string& name) { return {"basic", name}; }

ProvenanceRead read_at(const FunctionId& fn, std::size_t offset,
                       const Bytes& poc) {
  return {fn, offset, poc[offset]};
}

// Independent reference for key-byte extraction: walk each offset, grow a
// run while the next offset is present, then cut it into max-sized pieces.
std::vector<DictionaryRow> oracle_rows(
    const std::vector<ProvenanceRead>& reads, const Bytes& poc,
    const std::set<FunctionId>& reused, std::size_t min_len,
    std::size_t max_len) {
  std::map<FunctionId, std::set<std::size_t>> by_fn;
  for (const auto& r : reads)
    if (reused.count(r.function) && r.input_offset < poc.size())
      by_fn[r.function].insert(r.input_offset);

  std::vector<DictionaryRow> rows;
  std::set<Bytes> seen;
  for (const auto& [fn, offs] : by_fn) {
    for (std::size_t o : offs) {
      if (offs.count(o - 1) && o != 0) continue;  // not a run start
      std::size_t end = o;
      while (offs.count(end)) ++end;
      std::size_t pos = o;
      while (end - pos > 0) {
        const std::size_t take = std::min(max_len, end - pos);
        if (take < min_len) break;  // trailing fragment below minimum
        // a piece shorter than max only survives when it ends the run
        if (take < max_len && pos + take != end) break;
        Bytes bytes(poc.begin() + pos, poc.begin() + pos + take);
        if (seen.insert(bytes).second) rows.push_back({bytes, pos});
        pos += take;
      }
    }
  }
  return rows;
}

std::multiset<std::pair<Bytes, std::size_t>> as_multiset(
    const std::vector<DictionaryRow>& rows) {
  std::multiset<std::pair<Bytes, std::size_t>> out;
  for (const auto& r : rows) out.insert({r.bytes, r.source_offset});
  return out;
}

// All distinct crash stacks ending at `vulnerable` over inputs of length
// at most two, by exhaustive enumeration.
std::set<std::vector<FunctionId>> enumerate_crash_stacks(
    const TargetProgram& prog, const FunctionId& vulnerable) {
  std::set<std::vector<FunctionId>> stacks;
  auto probe = [&](const Bytes& in) {
    const ExecutionResult r = run_target(prog, in);
    if (r.status == RunStatus::Crash && *r.crash_site == vulnerable)
      stacks.insert(r.crash_stack);
  };
  probe({});
  for (int a = 0; a < 256; ++a) {
    probe({std::uint8_t(a)});
    for (int b = 0; b < 256; ++b) probe({std::uint8_t(a), std::uint8_t(b)});
  }
  return stacks;
}

}  // namespace

TEST_CASE("poc path extraction mirrors the crash stack") {
  for (const auto& pair : corpus()) {
    CAPTURE(pair.id);
    const TracePath path = extract_path_from_poc(pair.basic, pair.poc);
    const ExecutionResult r = run_target(pair.basic, pair.poc);
    CHECK(path.nodes == r.crash_stack);
    CHECK(path.vulnerable == pair.vulnerable);
    CHECK(path.origin == PathOrigin::DirectPoc);
  }
}

TEST_CASE("benign input raises NotACrash") {
  const BenchmarkPair* pair = find_pair("magic-guard");
  REQUIRE(pair);
  CHECK_THROWS_AS(extract_path_from_poc(pair->basic, pair->initial_seed),
                  NotACrash);
  ExtractionConfig cfg;
  CHECK_THROWS_AS(
      extract_key_bytes(pair->basic, pair->basic.reused_functions,
                        pair->initial_seed, cfg),
      NotACrash);
}

TEST_CASE("key-byte rows from worked provenance examples") {
  const Bytes poc = {0x41, 0x42, 0x43, 0x44, 0x45, 0x46, 0x47, 0x48};
  const FunctionId fa = fid("reader_a"), fb = fid("reader_b");
  const std::set<FunctionId> reused = {fa, fb};

  SUBCASE("one consecutive run becomes one row") {
    const std::vector<ProvenanceRead> reads = {
        read_at(fa, 2, poc), read_at(fa, 3, poc), read_at(fa, 4, poc)};
    const auto dict = rows_from_provenance(reads, poc, reused, 2, 32);
    REQUIRE(dict.rows.size() == 1);
    CHECK(dict.rows[0].bytes == Bytes{0x43, 0x44, 0x45});
    CHECK(dict.rows[0].source_offset == 2);
  }
  SUBCASE("gapped offsets split into separate rows") {
    const std::vector<ProvenanceRead> reads = {
        read_at(fa, 0, poc), read_at(fa, 1, poc), read_at(fa, 5, poc),
        read_at(fa, 6, poc), read_at(fa, 7, poc)};
    const auto dict = rows_from_provenance(reads, poc, reused, 2, 32);
    REQUIRE(dict.rows.size() == 2);
    CHECK(dict.rows[0].bytes == Bytes{0x41, 0x42});
    CHECK(dict.rows[0].source_offset == 0);
    CHECK(dict.rows[1].bytes == Bytes{0x46, 0x47, 0x48});
    CHECK(dict.rows[1].source_offset == 5);
  }
  SUBCASE("runs below the minimum length are dropped") {
    const std::vector<ProvenanceRead> reads = {read_at(fa, 3, poc)};
    CHECK(rows_from_provenance(reads, poc, reused, 2, 32).rows.empty());
  }
  SUBCASE("reads outside the reused set are ignored") {
    const std::vector<ProvenanceRead> reads = {
        read_at(fid("other"), 2, poc), read_at(fid("other"), 3, poc)};
    CHECK(rows_from_provenance(reads, poc, reused, 2, 32).rows.empty());
  }
  SUBCASE("oversized runs split into max-sized chunks") {
    std::vector<ProvenanceRead> reads;
    for (std::size_t o = 0; o < 8; ++o) reads.push_back(read_at(fa, o, poc));
    const auto dict = rows_from_provenance(reads, poc, reused, 2, 3);
    REQUIRE(dict.rows.size() == 3);
    CHECK(dict.rows[0].bytes == Bytes{0x41, 0x42, 0x43});
    CHECK(dict.rows[1].bytes == Bytes{0x44, 0x45, 0x46});
    CHECK(dict.rows[2].bytes == Bytes{0x47, 0x48});
    CHECK(dict.rows[2].source_offset == 6);
  }
  SUBCASE("a trailing chunk below the minimum is dropped") {
    std::vector<ProvenanceRead> reads;
    for (std::size_t o = 0; o < 7; ++o) reads.push_back(read_at(fa, o, poc));
    const auto dict = rows_from_provenance(reads, poc, reused, 2, 3);
    REQUIRE(dict.rows.size() == 2);
    CHECK(dict.rows[1].bytes == Bytes{0x44, 0x45, 0x46});
  }
  SUBCASE("identical byte content across functions is deduplicated") {
    const std::vector<ProvenanceRead> reads = {
        read_at(fa, 2, poc), read_at(fa, 3, poc), read_at(fb, 2, poc),
        read_at(fb, 3, poc)};
    CHECK(rows_from_provenance(reads, poc, reused, 2, 32).rows.size() == 1);
  }
}

TEST_CASE("key-byte extraction matches a reference implementation on "
          "randomized provenance logs") {
  Rng rng(1234);
  const FunctionId fa = fid("fa"), fb = fid("fb"), fc = fid("fc");
  const std::set<FunctionId> reused = {fa, fb};
  const std::vector<FunctionId> fns = {fa, fb, fc};
  for (int iter = 0; iter < 100; ++iter) {
    Bytes poc(8 + rng.below(33));
    for (auto& b : poc) b = std::uint8_t(rng.below(256));
    std::vector<ProvenanceRead> reads;
    const std::size_t n = rng.below(60);
    for (std::size_t i = 0; i < n; ++i) {
      const FunctionId& fn = fns[rng.below(fns.size())];
      const std::size_t off = rng.below(poc.size());
      reads.push_back(read_at(fn, off, poc));
    }
    const std::size_t min_len = 2;
    const std::size_t max_len = 2 + rng.below(6);
    const auto dict =
        rows_from_provenance(reads, poc, reused, min_len, max_len);
    CHECK(as_multiset(dict.rows) ==
          as_multiset(oracle_rows(reads, poc, reused, min_len, max_len)));
  }
}

TEST_CASE("enrichment recovers every short crash stack of the routing "
          "example") {
  const BenchmarkPair* pair = find_pair("router-suite");
  REQUIRE(pair);
  const auto expected = enumerate_crash_stacks(pair->basic, pair->vulnerable);
  REQUIRE(expected.size() == 2);

  ExtractionConfig cfg;
  cfg.enrich = true;
  const auto paths =
      enrich_paths(pair->basic, pair->vulnerable, {pair->poc}, cfg);
  std::set<std::vector<FunctionId>> found;
  for (const TracePath& p : paths) {
    CHECK(p.origin == PathOrigin::CampaignEnriched);
    found.insert(p.nodes);
  }
  CHECK(found == expected);
}

TEST_CASE("enrichment rejects bad configuration") {
  const BenchmarkPair* pair = find_pair("router-suite");
  REQUIRE(pair);
  ExtractionConfig cfg;
  CHECK_THROWS_AS(
      enrich_paths(pair->basic, pair->vulnerable, {pair->poc}, cfg),
      std::invalid_argument);
  cfg.enrich = true;
  cfg.enrich_budget_us = 0;
  CHECK_THROWS_AS(
      enrich_paths(pair->basic, pair->vulnerable, {pair->poc}, cfg),
      std::invalid_argument);
}

TEST_CASE("full trace build without enrichment yields one direct path") {
  for (const auto& pair : corpus()) {
    CAPTURE(pair.id);
    ExtractionConfig cfg;
    const HistoricalTrace trace = build_historical_trace(
        pair.basic, pair.poc, pair.vulnerable, pair.basic.reused_functions,
        cfg);
    CHECK(validate_historical_trace(trace).empty());
    REQUIRE(trace.paths.size() == 1);
    CHECK(trace.paths[0].origin == PathOrigin::DirectPoc);
    CHECK(trace.vulnerable == pair.vulnerable);
  }
}

TEST_CASE("full trace build with enrichment finds additional paths") {
  for (const char* id : {"router-suite", "demangle-suite"}) {
    CAPTURE(id);
    const BenchmarkPair* pair = find_pair(id);
    REQUIRE(pair);
    ExtractionConfig cfg;
    cfg.enrich = true;
    const HistoricalTrace trace = build_historical_trace(
        pair->basic, pair->poc, pair->vulnerable, pair->basic.reused_functions,
        cfg);
    CHECK(trace.paths.size() >= 2);
    CHECK(trace.paths[0].origin == PathOrigin::DirectPoc);
    // every path is distinct and ends at the vulnerable function
    std::set<std::vector<FunctionId>> nodes;
    for (const TracePath& p : trace.paths) {
      CHECK(p.nodes.back() == pair->vulnerable);
      CHECK(nodes.insert(p.nodes).second);
    }
  }
}

TEST_CASE("declaring the wrong vulnerable function fails validation") {
  const BenchmarkPair* pair = find_pair("magic-guard");
  REQUIRE(pair);
  ExtractionConfig cfg;
  CHECK_THROWS_AS(
      build_historical_trace(pair->basic, pair->poc,
                             {pair->basic.id, "not_the_site"},
                             pair->basic.reused_functions, cfg),
      ValidationFailed);
}

TEST_CASE("extraction is deterministic") {
  const BenchmarkPair* pair = find_pair("demangle-suite");
  REQUIRE(pair);
  ExtractionConfig cfg;
  cfg.enrich = true;
  cfg.rng_seed = 77;
  const auto a = build_historical_trace(pair->basic, pair->poc,
                                        pair->vulnerable,
                                        pair->basic.reused_functions, cfg);
  const auto b = build_historical_trace(pair->basic, pair->poc,
                                        pair->vulnerable,
                                        pair->basic.reused_functions, cfg);
  CHECK(a == b);
}
