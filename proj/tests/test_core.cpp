#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>
#include <vector>

#include "doctest.h"
#include "tracefuzz/core.hpp"
#include "tracefuzz/engine.hpp"
#include "tracefuzz/trace_io.hpp"

using namespace tracefuzz;

namespace {

FunctionId fid(const std::string& name) { return {"prog", name}; }

TracePath path(std::vector<std::string> names,
               PathOrigin origin = PathOrigin::DirectPoc) {
  TracePath p;
  for (auto& n : names) p.nodes.push_back(fid(n));
  p.vulnerable = p.nodes.back();
  p.origin = origin;
  return p;
}

HistoricalTrace sample_trace() {
  HistoricalTrace t;
  t.basic_program = "prog";
  t.vulnerable = fid("vuln");
  t.paths = {path({"main", "parse", "vuln"})};
  t.dictionary.rows = {{{0x41, 0x42}, 0}, {{0x01, 0x02, 0x03}, 5}};
  return t;
}

bool has_violation(const HistoricalTrace& t, const std::string& field) {
  for (const Violation& v : validate_historical_trace(t))
    if (v.field == field) return true;
  return false;
}

}  // namespace

TEST_CASE("valid trace passes validation") {
  CHECK(validate_historical_trace(sample_trace()).empty());
}

TEST_CASE("validation rejects structural breakage") {
  SUBCASE("wrong format version") {
    auto t = sample_trace();
    t.format_version = 2;
    CHECK(has_violation(t, "format_version"));
  }
  SUBCASE("empty program name") {
    auto t = sample_trace();
    t.basic_program.clear();
    CHECK(has_violation(t, "basic_program"));
  }
  SUBCASE("no paths and no dictionary") {
    auto t = sample_trace();
    t.paths.clear();
    t.dictionary.rows.clear();
    CHECK_FALSE(validate_historical_trace(t).empty());
  }
  SUBCASE("path not ending at the vulnerable function") {
    auto t = sample_trace();
    t.paths[0].nodes.push_back(fid("extra"));
    CHECK_FALSE(validate_historical_trace(t).empty());
  }
  SUBCASE("path vulnerable differs from trace vulnerable") {
    auto t = sample_trace();
    t.paths = {path({"main", "other"})};
    CHECK_FALSE(validate_historical_trace(t).empty());
  }
  SUBCASE("consecutive duplicate nodes") {
    auto t = sample_trace();
    t.paths = {path({"main", "parse", "parse", "vuln"})};
    CHECK_FALSE(validate_historical_trace(t).empty());
  }
  SUBCASE("row shorter than min_row_len") {
    auto t = sample_trace();
    t.dictionary.rows.push_back({{0x41}, 0});
    CHECK_FALSE(validate_historical_trace(t).empty());
  }
  SUBCASE("duplicate dictionary rows") {
    auto t = sample_trace();
    t.dictionary.rows.push_back(t.dictionary.rows[0]);
    CHECK_FALSE(validate_historical_trace(t).empty());
  }
}

TEST_CASE("hex codec round-trips and stays lowercase") {
  std::vector<std::uint8_t> bytes = {0x00, 0x0f, 0xab, 0xff};
  CHECK(hex_encode(bytes) == "000fabff");
  CHECK(hex_decode("000fabff") == bytes);
  CHECK_THROWS_AS(hex_decode("0g"), TraceFormatError);
  CHECK_THROWS_AS(hex_decode("abc"), TraceFormatError);
}

TEST_CASE("trace serialization round-trips") {
  const HistoricalTrace t = sample_trace();
  CHECK(parse_trace(serialize_trace(t)) == t);
}

TEST_CASE("serialization round-trips randomized traces") {
  Rng rng(42);
  for (int i = 0; i < 50; ++i) {
    HistoricalTrace t;
    t.basic_program = "p" + std::to_string(rng.below(100));
    t.vulnerable = {t.basic_program, "v" + std::to_string(rng.below(10))};
    const std::size_t n_paths = rng.below(4);
    for (std::size_t p = 0; p < n_paths; ++p) {
      TracePath tp;
      const std::size_t len = 1 + rng.below(5);
      for (std::size_t k = 0; k < len; ++k)
        tp.nodes.push_back(
            {t.basic_program, "f" + std::to_string(rng.next())});
      tp.nodes.push_back(t.vulnerable);
      tp.vulnerable = t.vulnerable;
      tp.origin = rng.below(2) ? PathOrigin::CampaignEnriched
                               : PathOrigin::DirectPoc;
      t.paths.push_back(std::move(tp));
    }
    const std::size_t n_rows = rng.below(4);
    for (std::size_t r = 0; r < n_rows; ++r) {
      DictionaryRow row;
      const std::size_t len = 2 + rng.below(8);
      for (std::size_t k = 0; k < len; ++k)
        row.bytes.push_back(std::uint8_t(rng.below(256)));
      row.source_offset = rng.below(64);
      t.dictionary.rows.push_back(std::move(row));
    }
    CHECK(parse_trace(serialize_trace(t)) == t);
  }
}

TEST_CASE("parser rejects unknown format versions and garbage") {
  HistoricalTrace t = sample_trace();
  t.format_version = 99;
  CHECK_THROWS_AS(parse_trace(serialize_trace(t)), TraceFormatError);
  CHECK_THROWS_AS(parse_trace("not json"), TraceFormatError);
  CHECK_THROWS_AS(parse_trace("{}"), TraceFormatError);
}

TEST_CASE("aligned-trace files carry the dropped-path count") {
  const std::string text = serialize_trace(sample_trace(), 3);
  CHECK(text.find("dropped_paths") != std::string::npos);
  CHECK(parse_trace(text) == sample_trace());
}

TEST_CASE("call graph reachability") {
  CallGraph g;
  g.entry = fid("main");
  g.nodes = {fid("main"), fid("a"), fid("b"), fid("island")};
  g.edges = {{fid("main"), fid("a")}, {fid("a"), fid("b")}};
  const auto reach = g.reachable_from_entry();
  CHECK(reach.count(fid("main")));
  CHECK(reach.count(fid("b")));
  CHECK_FALSE(reach.count(fid("island")));
}

TEST_CASE("enum names used by the file format") {
  CHECK(std::string(to_string(PathOrigin::DirectPoc)) == "direct_poc");
  CHECK(std::string(to_string(PathOrigin::CampaignEnriched)) ==
        "campaign_enriched");
  CHECK(std::string(to_string(VerdictKind::Triggered)) == "Triggered");
}
