#include "tracefuzz/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "tracefuzz/bench.hpp"
#include "tracefuzz/extract.hpp"
#include "tracefuzz/trace_io.hpp"

namespace tracefuzz {

namespace {

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string s = ss.str();
  return {s.begin(), s.end()};
}

void write_file_bytes(const std::string& path,
                      const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            std::streamsize(bytes.size()));
}

void write_file_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

int cmd_list_targets(std::ostream& out) {
  for (const BenchmarkPair& pair : corpus()) out << pair.id << "\n";
  return 0;
}

struct ExtractArgs {
  std::string pair_id, poc_path, out_path;
  bool enrich = false;
  double enrich_budget_s = 10.0;
  std::uint64_t seed = 1;
  std::size_t min_row_len = 2, max_row_len = 32;
};

int cmd_extract_trace(const ExtractArgs& a, std::ostream& out,
                      std::ostream& err) {
  const BenchmarkPair* pair = find_pair(a.pair_id);
  if (!pair) {
    err << "unknown target '" << a.pair_id << "'\n";
    return 2;
  }
  ExtractionConfig cfg;
  cfg.enrich = a.enrich;
  cfg.enrich_budget_us = std::uint64_t(a.enrich_budget_s * 1e6);
  cfg.rng_seed = a.seed;
  cfg.min_row_len = a.min_row_len;
  cfg.max_row_len = a.max_row_len;
  try {
    const std::vector<std::uint8_t> poc = read_file_bytes(a.poc_path);
    HistoricalTrace trace = build_historical_trace(
        pair->basic, poc, pair->vulnerable, pair->basic.reused_functions, cfg);
    write_trace_file(a.out_path, trace);
    out << "paths: " << trace.paths.size()
        << " dictionary rows: " << trace.dictionary.rows.size() << "\n";
    return 0;
  } catch (const NotACrash&) {
    err << "input does not crash basic target\n";
    return 1;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 2;
  }
}

int cmd_align(const std::string& trace_path, const std::string& pair_id,
              const std::string& out_path, std::ostream& out,
              std::ostream& err) {
  const BenchmarkPair* pair = find_pair(pair_id);
  if (!pair) {
    err << "unknown target '" << pair_id << "'\n";
    return 2;
  }
  try {
    HistoricalTrace trace = read_trace_file(trace_path);
    AlignedTrace aligned = align_trace(trace, pair->target);
    HistoricalTrace as_trace;
    as_trace.basic_program = pair->target.id;
    as_trace.vulnerable = aligned.vulnerable;
    as_trace.paths = aligned.sub_paths;
    as_trace.dictionary = aligned.dictionary;
    write_trace_file(out_path, as_trace, aligned.dropped_paths);
    out << "sub-paths: " << aligned.sub_paths.size()
        << " dropped: " << aligned.dropped_paths << "\n";
    return 0;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 2;
  }
}

struct FuzzArgs {
  std::string pair_id, trace_path, vuln_name, out_dir = ".";
  double budget_s = 60.0;
  std::uint64_t seed = 1;
  std::string mode = "traceguided";
};

int cmd_fuzz(const FuzzArgs& a, std::ostream& out, std::ostream& err) {
  const BenchmarkPair* pair = find_pair(a.pair_id);
  if (!pair) {
    err << "unknown target '" << a.pair_id << "'\n";
    return 2;
  }
  CampaignConfig cfg;
  cfg.budget_us = std::uint64_t(a.budget_s * 1e6);
  cfg.rng_seed = a.seed;
  cfg.initial_seeds = {pair->initial_seed};
  std::optional<AlignedTrace> aligned;
  if (a.mode == "traceguided") {
    cfg.scheduler.mode = ScheduleMode::TraceGuided;
    if (a.trace_path.empty()) {
      err << "mode traceguided requires --trace\n";
      return 2;
    }
  } else if (a.mode == "directed") {
    cfg.scheduler.mode = ScheduleMode::DirectedBaseline;
  } else if (a.mode == "coverage") {
    cfg.scheduler.mode = ScheduleMode::CoverageOnly;
  } else {
    err << "unknown mode '" << a.mode << "'\n";
    return 2;
  }
  try {
    std::string vuln_name = a.vuln_name;
    if (!a.trace_path.empty()) {
      HistoricalTrace trace = read_trace_file(a.trace_path);
      const std::vector<Violation> violations = validate_historical_trace(trace);
      if (!violations.empty()) {
        err << "invalid trace: " << violations.front().field << ": "
            << violations.front().rule << "\n";
        return 2;
      }
      aligned = align_trace(trace, pair->target);
      if (vuln_name.empty()) vuln_name = aligned->vulnerable.name;
    }
    if (vuln_name.empty()) vuln_name = pair->vulnerable.name;
    const FunctionId vulnerable{pair->target.id, vuln_name};

    CampaignReport report = run_campaign(pair->target, aligned, vulnerable, cfg);

    std::filesystem::create_directories(a.out_dir);
    std::string log_text;
    for (const std::string& line : report.event_log) log_text += line + "\n";
    write_file_text(a.out_dir + "/events.log", log_text);
    out << "verdict: " << to_string(report.verdict.kind)
        << " executions: " << report.executions;
    if (report.verdict.tte_us) out << " tte_us: " << *report.verdict.tte_us;
    out << "\n";
    if (report.verdict.poc) {
      write_file_bytes(a.out_dir + "/poc.bin", *report.verdict.poc);
      out << "poc: " << a.out_dir << "/poc.bin\n";
    }
    switch (report.verdict.kind) {
      case VerdictKind::Triggered: return 0;
      case VerdictKind::ReachedNotTriggered: return 10;
      case VerdictKind::NotReached: return 11;
    }
    return 2;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 2;
  }
}

struct BenchArgs {
  std::string pairs, modes = "traceguided,directed", out_path = "bench.csv";
  std::string logs_dir;
  int runs = 10;
  double budget_s = 60.0;
  std::uint64_t seed = 1;
};

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  BenchConfig cfg;
  if (!a.pairs.empty()) cfg.pair_ids = split(a.pairs, ',');
  cfg.modes.clear();
  for (const std::string& name : split(a.modes, ',')) {
    std::optional<BenchMode> mode = bench_mode_from_string(name);
    if (!mode) {
      err << "unknown mode '" << name << "'\n";
      return 2;
    }
    cfg.modes.push_back(*mode);
  }
  cfg.runs_per_pair = a.runs;
  cfg.budget_us = std::uint64_t(a.budget_s * 1e6);
  cfg.base_seed = a.seed;
  try {
    BenchOutput result = run_bench(cfg);
    write_file_text(a.out_path, result.csv);
    if (!a.logs_dir.empty()) {
      std::filesystem::create_directories(a.logs_dir);
      for (const BenchResult& r : result.results) {
        for (std::size_t i = 0; i < r.run_details.size(); ++i) {
          std::string text;
          for (const std::string& line : r.run_details[i].event_log)
            text += line + "\n";
          write_file_text(a.logs_dir + "/" + r.pair_id + "_" +
                              to_string(r.mode) + "_" + std::to_string(i) +
                              ".log",
                          text);
        }
      }
    }
    out << result.csv;
    return 0;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 2;
  }
}

int cmd_report(const std::string& csv_path, std::ostream& out,
               std::ostream& err) {
  std::ifstream in(csv_path);
  if (!in) {
    err << "cannot open '" << csv_path << "'\n";
    return 2;
  }
  std::string header;
  if (!std::getline(in, header) || header != kCsvHeader) {
    err << "malformed CSV: bad header\n";
    return 2;
  }
  struct Cell {
    int runs = 0, successes = 0;
    std::optional<double> mu_tte_us;
  };
  std::map<std::string, std::map<std::string, Cell>> table;  // pair -> mode
  std::string line;
  int data_rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> fields = split(line, ',');
    if (fields.empty() || fields[0] == "summary" || fields[0] == "speedup" ||
        fields[0] == "accuracy" || fields[0] == "pair_id") {
      continue;  // aggregate rows and repeated headers carry no cells
    }
    if (fields.size() < 7) {
      err << "malformed CSV: short row\n";
      return 2;
    }
    Cell cell;
    try {
      cell.runs = std::stoi(fields[2]);
      cell.successes = std::stoi(fields[3]);
      if (fields[4] != "NA") cell.mu_tte_us = std::stod(fields[4]);
    } catch (const std::exception&) {
      err << "malformed CSV: bad numeric field\n";
      return 2;
    }
    table[fields[0]][fields[1]] = cell;
    ++data_rows;
  }
  if (data_rows == 0) {
    err << "malformed CSV: no data rows\n";
    return 2;
  }

  out << std::left << std::setw(18) << "pair" << std::setw(16) << "mode"
      << std::setw(10) << "solved" << std::setw(14) << "mu_tte_s"
      << "speedup_vs_directed\n";
  for (const auto& [pair_id, modes] : table) {
    auto directed = modes.find("directed");
    for (const auto& [mode, cell] : modes) {
      out << std::left << std::setw(18) << pair_id << std::setw(16) << mode
          << std::setw(10)
          << (std::to_string(cell.successes) + "/" + std::to_string(cell.runs));
      if (cell.mu_tte_us) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", *cell.mu_tte_us / 1e6);
        out << std::setw(14) << buf;
      } else {
        out << std::setw(14) << "N.A.";
      }
      if (mode != "directed" && directed != modes.end() &&
          directed->second.mu_tte_us && cell.mu_tte_us) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2fx",
                      *directed->second.mu_tte_us / *cell.mu_tte_us);
        out << buf;
      } else if (mode != "directed") {
        out << "N.A.";
      }
      out << "\n";
    }
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"trace-transfer greybox fuzzing framework", "tracefuzz"};
  app.require_subcommand(1);

  auto* list_cmd = app.add_subcommand("list-targets", "list corpus pair ids");

  ExtractArgs extract_args;
  auto* extract_cmd =
      app.add_subcommand("extract-trace", "extract a historical trace");
  extract_cmd->add_option("pair", extract_args.pair_id)->required();
  extract_cmd->add_option("--poc", extract_args.poc_path)->required();
  extract_cmd->add_option("--out", extract_args.out_path)->required();
  extract_cmd->add_flag("--enrich", extract_args.enrich);
  extract_cmd->add_option("--enrich-budget", extract_args.enrich_budget_s);
  extract_cmd->add_option("--seed", extract_args.seed);
  extract_cmd->add_option("--min-row-len", extract_args.min_row_len);
  extract_cmd->add_option("--max-row-len", extract_args.max_row_len);

  std::string align_trace_path, align_pair, align_out;
  auto* align_cmd =
      app.add_subcommand("align", "align a trace onto a target program");
  align_cmd->add_option("pair", align_pair)->required();
  align_cmd->add_option("--trace", align_trace_path)->required();
  align_cmd->add_option("--out", align_out)->required();

  FuzzArgs fuzz_args;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "run one verification campaign");
  fuzz_cmd->add_option("pair", fuzz_args.pair_id)->required();
  fuzz_cmd->add_option("--trace", fuzz_args.trace_path);
  fuzz_cmd->add_option("--vuln", fuzz_args.vuln_name);
  fuzz_cmd->add_option("--budget", fuzz_args.budget_s);
  fuzz_cmd->add_option("--seed", fuzz_args.seed);
  fuzz_cmd->add_option("--mode", fuzz_args.mode);
  fuzz_cmd->add_option("--out", fuzz_args.out_dir);

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "benchmark modes over pairs");
  bench_cmd->add_option("--pairs", bench_args.pairs);
  bench_cmd->add_option("--modes", bench_args.modes);
  bench_cmd->add_option("--runs", bench_args.runs);
  bench_cmd->add_option("--budget", bench_args.budget_s);
  bench_cmd->add_option("--seed", bench_args.seed);
  bench_cmd->add_option("--out", bench_args.out_path);
  bench_cmd->add_option("--logs", bench_args.logs_dir);

  std::string report_csv;
  auto* report_cmd =
      app.add_subcommand("report", "human-readable table from a bench CSV");
  report_cmd->add_option("csv", report_csv)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  if (list_cmd->parsed()) return cmd_list_targets(out);
  if (extract_cmd->parsed()) return cmd_extract_trace(extract_args, out, err);
  if (align_cmd->parsed())
    return cmd_align(align_trace_path, align_pair, align_out, out, err);
  if (fuzz_cmd->parsed()) return cmd_fuzz(fuzz_args, out, err);
  if (bench_cmd->parsed()) return cmd_bench(bench_args, out, err);
  if (report_cmd->parsed()) return cmd_report(report_csv, out, err);
  return 2;
}

}  // namespace tracefuzz
