#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "tracefuzz/bench.hpp"
#include "tracefuzz/cli.hpp"
#include "tracefuzz/harness.hpp"
#include "tracefuzz/trace_io.hpp"

using namespace tracefuzz;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / "tracefuzz_cli_tests";
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string write_bytes(const std::string& name,
                        const std::vector<std::uint8_t>& bytes) {
  const fs::path p = work_dir() / name;
  std::ofstream f(p, std::ios::binary);
  f.write(reinterpret_cast<const char*>(bytes.data()),
          std::streamsize(bytes.size()));
  return p.string();
}

std::string write_text(const std::string& name, const std::string& text) {
  const fs::path p = work_dir() / name;
  std::ofstream f(p, std::ios::binary);
  f << text;
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("list-targets prints every corpus pair id") {
  const CliResult r = cli({"list-targets"});
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::vector<std::string> ids;
  for (std::string line; std::getline(lines, line);) ids.push_back(line);
  REQUIRE(ids.size() == corpus().size());
  for (std::size_t i = 0; i < ids.size(); ++i) CHECK(ids[i] == corpus()[i].id);
}

TEST_CASE("bad invocations exit with status 2") {
  CHECK(cli({}).exit_code == 2);
  CHECK(cli({"no-such-command"}).exit_code == 2);
  CHECK(cli({"extract-trace"}).exit_code == 2);  // missing required options
}

TEST_CASE("--help prints usage and succeeds") {
  const CliResult r = cli({"--help"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("list-targets") != std::string::npos);
}

TEST_CASE("extract-trace end to end") {
  const BenchmarkPair* pair = find_pair("magic-guard");
  REQUIRE(pair);
  const std::string poc = write_bytes("magic.poc", pair->poc);
  const std::string out_path = (work_dir() / "magic.trace").string();

  SUBCASE("a crashing input yields a readable trace file") {
    const CliResult r =
        cli({"extract-trace", "magic-guard", "--poc", poc, "--out", out_path});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("paths: 1") != std::string::npos);
    const HistoricalTrace trace = read_trace_file(out_path);
    CHECK(trace.basic_program == pair->basic.id);
    CHECK_FALSE(trace.dictionary.rows.empty());
  }
  SUBCASE("a benign input exits with status 1") {
    const std::string benign = write_bytes("benign.poc", pair->initial_seed);
    const CliResult r = cli(
        {"extract-trace", "magic-guard", "--poc", benign, "--out", out_path});
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("does not crash") != std::string::npos);
  }
  SUBCASE("an unknown pair exits with status 2") {
    CHECK(cli({"extract-trace", "nope", "--poc", poc, "--out", out_path})
              .exit_code == 2);
  }
}

TEST_CASE("align and fuzz consume extracted traces") {
  const BenchmarkPair* pair = find_pair("magic-guard");
  REQUIRE(pair);
  const std::string poc = write_bytes("mg.poc", pair->poc);
  const std::string trace_path = (work_dir() / "mg.trace").string();
  REQUIRE(cli({"extract-trace", "magic-guard", "--poc", poc, "--out",
               trace_path})
              .exit_code == 0);

  const std::string aligned_path = (work_dir() / "mg.aligned").string();
  const CliResult ar = cli(
      {"align", "magic-guard", "--trace", trace_path, "--out", aligned_path});
  CHECK(ar.exit_code == 0);
  CHECK(ar.out.find("sub-paths:") != std::string::npos);
  const HistoricalTrace aligned = read_trace_file(aligned_path);
  CHECK(aligned.basic_program == pair->target.id);

  SUBCASE("aligning against an unknown pair fails") {
    CHECK(cli({"align", "nope", "--trace", trace_path, "--out", aligned_path})
              .exit_code == 2);
  }
  SUBCASE("a missing trace file fails") {
    CHECK(cli({"align", "magic-guard", "--trace", "/no/such/file", "--out",
               aligned_path})
              .exit_code == 2);
  }

  SUBCASE("trace-guided fuzzing triggers and writes artifacts") {
    const std::string out_dir = (work_dir() / "mg_run").string();
    const CliResult fr = cli({"fuzz", "magic-guard", "--trace", aligned_path,
                              "--budget", "60", "--seed", "1", "--out",
                              out_dir});
    CHECK(fr.exit_code == 0);
    CHECK(fr.out.find("verdict: Triggered") != std::string::npos);
    CHECK(slurp(out_dir + "/events.log").find("VERDICT Triggered") !=
          std::string::npos);
    // the saved proof-of-crash replays against the target
    const std::string poc_text = slurp(out_dir + "/poc.bin");
    const std::vector<std::uint8_t> poc_bytes(poc_text.begin(),
                                              poc_text.end());
    const ExecutionResult replay = run_target(pair->target, poc_bytes);
    REQUIRE(replay.status == RunStatus::Crash);
    CHECK(replay.crash_site->name == pair->vulnerable.name);
  }
  SUBCASE("trace-guided mode without a trace is rejected") {
    CHECK(cli({"fuzz", "magic-guard"}).exit_code == 2);
  }
  SUBCASE("an unknown mode is rejected") {
    CHECK(cli({"fuzz", "magic-guard", "--trace", aligned_path, "--mode",
               "psychic"})
              .exit_code == 2);
  }
}

TEST_CASE("fuzzing an unreachable site exits with the NotReached status") {
  const std::string out_dir = (work_dir() / "pdf_run").string();
  const CliResult r = cli({"fuzz", "pdf-absent", "--mode", "directed",
                           "--budget", "0.5", "--out", out_dir});
  CHECK(r.exit_code == 11);
  CHECK(r.out.find("verdict: NotReached") != std::string::npos);
}

TEST_CASE("bench produces a deterministic CSV that report renders") {
  const std::string csv_path = (work_dir() / "bench.csv").string();
  const std::vector<std::string> args = {
      "bench",   "--pairs", "swf-suite", "--modes", "traceguided",
      "--runs",  "2",       "--budget",  "5",       "--seed",
      "7",       "--out",   csv_path};
  const CliResult a = cli(args);
  REQUIRE(a.exit_code == 0);
  const std::string csv_a = slurp(csv_path);
  CHECK(csv_a.rfind(kCsvHeader, 0) == 0);
  CHECK(csv_a.find("swf-suite,traceguided,2,") != std::string::npos);

  const CliResult b = cli(args);
  REQUIRE(b.exit_code == 0);
  CHECK(slurp(csv_path) == csv_a);  // byte-identical on repeat
  CHECK(a.out == b.out);

  SUBCASE("report renders the table") {
    const CliResult r = cli({"report", csv_path});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("swf-suite") != std::string::npos);
    CHECK(r.out.find("2/2") != std::string::npos);
  }
  SUBCASE("report rejects unknown bench modes") {
    CHECK(cli({"bench", "--modes", "warp", "--out", csv_path}).exit_code == 2);
  }
}

TEST_CASE("report rejects malformed input") {
  CHECK(cli({"report", "/no/such/file.csv"}).exit_code == 2);
  CHECK(cli({"report", write_text("garbage.csv", "hello\nworld\n")})
            .exit_code == 2);
  CHECK(cli({"report", write_text("empty.csv", "")}).exit_code == 2);
  CHECK(cli({"report",
             write_text("headeronly.csv", std::string(kCsvHeader) + "\n")})
            .exit_code == 2);
  CHECK(cli({"report", write_text("shortrow.csv",
                                  std::string(kCsvHeader) + "\na,b,c\n")})
            .exit_code == 2);
}
