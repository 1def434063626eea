// core.hpp
//
// Shared domain types: function identities, call graphs, historical traces
// and execution results. Everything here is an immutable value type after
// construction and safe to share across threads.

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace tracefuzz {

struct FunctionId {
  std::string program;
  std::string name;

  auto operator<=>(const FunctionId&) const = default;
};

struct CallGraph {
  FunctionId entry;
  std::set<FunctionId> nodes;
  std::set<std::pair<FunctionId, FunctionId>> edges;

  bool has_node(const FunctionId& f) const { return nodes.count(f) != 0; }
  bool has_edge(const FunctionId& a, const FunctionId& b) const {
    return edges.count({a, b}) != 0;
  }

  // Nodes reachable from the entry by following edges (entry included).
  std::set<FunctionId> reachable_from_entry() const;
};

enum class PathOrigin { DirectPoc, CampaignEnriched };

// One ordered function-call path from some node down to the vulnerable
// function. The last node always equals `vulnerable`.
struct TracePath {
  std::vector<FunctionId> nodes;
  FunctionId vulnerable;
  PathOrigin origin = PathOrigin::DirectPoc;

  bool operator==(const TracePath&) const = default;
};

struct DictionaryRow {
  std::vector<std::uint8_t> bytes;
  std::size_t source_offset = 0;

  bool operator==(const DictionaryRow&) const = default;
};

// Rows of consecutive input bytes that flowed unchanged into reused-code
// comparisons. Used as a mutation dictionary.
struct KeyBytesDictionary {
  std::vector<DictionaryRow> rows;
  std::size_t min_row_len = 2;
  std::size_t max_row_len = 32;

  bool empty() const { return rows.empty(); }
  bool operator==(const KeyBytesDictionary&) const = default;
};

inline constexpr int kTraceFormatVersion = 1;

struct HistoricalTrace {
  std::string basic_program;
  FunctionId vulnerable;
  std::vector<TracePath> paths;
  KeyBytesDictionary dictionary;
  int format_version = kTraceFormatVersion;

  bool operator==(const HistoricalTrace&) const = default;
};

enum class RunStatus { Normal, Crash, Timeout, HarnessError };

struct ProvenanceRead {
  FunctionId function;
  std::size_t input_offset = 0;
  std::uint8_t value = 0;

  bool operator==(const ProvenanceRead&) const = default;
};

// One deterministic run of a target program.
struct ExecutionResult {
  RunStatus status = RunStatus::Normal;
  std::optional<FunctionId> crash_site;
  std::set<FunctionId> entered_functions;
  std::set<std::uint64_t> coverage_edges;
  std::vector<FunctionId> crash_stack;  // empty unless status == Crash
  std::vector<ProvenanceRead> provenance_reads;
  std::uint64_t exec_time_us = 0;

  bool operator==(const ExecutionResult&) const = default;
};

enum class VerdictKind { Triggered, ReachedNotTriggered, NotReached };

struct Verdict {
  VerdictKind kind = VerdictKind::NotReached;
  std::optional<std::vector<std::uint8_t>> poc;  // present iff Triggered
  std::optional<std::uint64_t> tte_us;           // present iff Triggered
};

struct Violation {
  std::string field;
  std::string rule;
};

// Report-returning validation; never aborts. Empty report iff all the
// type invariants of HistoricalTrace and its parts hold.
std::vector<Violation> validate_historical_trace(const HistoricalTrace& trace);

const char* to_string(VerdictKind kind);
const char* to_string(PathOrigin origin);

}  // namespace tracefuzz
