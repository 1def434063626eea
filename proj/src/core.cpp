#include "tracefuzz/core.hpp"

#include <deque>
#include <map>

namespace tracefuzz {

std::set<FunctionId> CallGraph::reachable_from_entry() const {
  std::set<FunctionId> seen;
  if (!has_node(entry)) return seen;
  std::deque<FunctionId> work{entry};
  seen.insert(entry);
  while (!work.empty()) {
    FunctionId cur = work.front();
    work.pop_front();
    for (const auto& [from, to] : edges) {
      if (from == cur && seen.insert(to).second) work.push_back(to);
    }
  }
  return seen;
}

const char* to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Triggered: return "Triggered";
    case VerdictKind::ReachedNotTriggered: return "ReachedNotTriggered";
    case VerdictKind::NotReached: return "NotReached";
  }
  return "?";
}

const char* to_string(PathOrigin origin) {
  switch (origin) {
    case PathOrigin::DirectPoc: return "direct_poc";
    case PathOrigin::CampaignEnriched: return "campaign_enriched";
  }
  return "?";
}

std::vector<Violation> validate_historical_trace(const HistoricalTrace& trace) {
  std::vector<Violation> out;
  auto add = [&](std::string field, std::string rule) {
    out.push_back({std::move(field), std::move(rule)});
  };

  if (trace.format_version != kTraceFormatVersion)
    add("format_version", "unknown format version");
  if (trace.basic_program.empty())
    add("basic_program", "empty program identifier");
  if (trace.vulnerable.name.empty())
    add("vulnerable", "empty function name");
  if (trace.paths.empty() && trace.dictionary.rows.empty())
    add("paths/dictionary", "all-empty trace");

  for (std::size_t p = 0; p < trace.paths.size(); ++p) {
    const TracePath& path = trace.paths[p];
    const std::string where = "paths[" + std::to_string(p) + "]";
    if (path.nodes.empty()) {
      add(where, "empty path");
      continue;
    }
    for (const FunctionId& f : path.nodes) {
      if (f.name.empty()) add(where, "empty function name");
    }
    if (path.nodes.back() != path.vulnerable)
      add(where, "path terminus mismatch");
    if (path.vulnerable != trace.vulnerable)
      add(where, "path vulnerable differs from trace vulnerable");
    for (std::size_t i = 1; i < path.nodes.size(); ++i) {
      if (path.nodes[i] == path.nodes[i - 1]) {
        add(where, "duplicate consecutive nodes");
        break;
      }
    }
  }

  const KeyBytesDictionary& dict = trace.dictionary;
  if (dict.min_row_len < 1 || dict.min_row_len > dict.max_row_len)
    add("dictionary", "row length bounds must satisfy 1 <= min <= max");
  std::map<std::vector<std::uint8_t>, int> seen;
  for (std::size_t r = 0; r < dict.rows.size(); ++r) {
    const std::string where = "dictionary[" + std::to_string(r) + "]";
    const DictionaryRow& row = dict.rows[r];
    if (row.bytes.size() < dict.min_row_len || row.bytes.size() > dict.max_row_len)
      add(where, "row length outside [min_row_len, max_row_len]");
    if (++seen[row.bytes] > 1) add(where, "duplicate row content");
  }
  return out;
}

}  // namespace tracefuzz
