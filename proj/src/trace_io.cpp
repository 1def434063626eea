#include "tracefuzz/trace_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace tracefuzz {

using nlohmann::json;

std::string hex_encode(const std::vector<std::uint8_t>& bytes) {
  static const char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xf]);
  }
  return out;
}

std::vector<std::uint8_t> hex_decode(const std::string& hex) {
  if (hex.size() % 2 != 0)
    throw TraceFormatError("hex string has odd length");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
  };
  std::vector<std::uint8_t> out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    int hi = nibble(hex[i]), lo = nibble(hex[i + 1]);
    if (hi < 0 || lo < 0)
      throw TraceFormatError("invalid hex digit in dictionary bytes");
    out.push_back(static_cast<std::uint8_t>(hi << 4 | lo));
  }
  return out;
}

std::string serialize_trace(const HistoricalTrace& trace,
                            std::optional<std::size_t> dropped_paths) {
  json j;
  j["format_version"] = trace.format_version;
  j["basic_program"] = trace.basic_program;
  j["vulnerable"] = trace.vulnerable.name;
  json paths = json::array();
  for (const TracePath& p : trace.paths) {
    json names = json::array();
    for (const FunctionId& f : p.nodes) names.push_back(f.name);
    paths.push_back({{"origin", to_string(p.origin)}, {"nodes", names}});
  }
  j["paths"] = paths;
  json dict = json::array();
  for (const DictionaryRow& row : trace.dictionary.rows) {
    dict.push_back({{"bytes", hex_encode(row.bytes)},
                    {"source_offset", row.source_offset}});
  }
  j["dictionary"] = dict;
  j["min_row_len"] = trace.dictionary.min_row_len;
  j["max_row_len"] = trace.dictionary.max_row_len;
  if (dropped_paths) j["dropped_paths"] = *dropped_paths;
  return j.dump(2) + "\n";
}

HistoricalTrace parse_trace(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw TraceFormatError(std::string("malformed trace file: ") + e.what());
  }
  try {
    HistoricalTrace trace;
    trace.format_version = j.at("format_version").get<int>();
    if (trace.format_version != kTraceFormatVersion)
      throw TraceFormatError("unknown format_version " +
                             std::to_string(trace.format_version));
    trace.basic_program = j.at("basic_program").get<std::string>();
    trace.vulnerable = {trace.basic_program, j.at("vulnerable").get<std::string>()};
    for (const json& jp : j.at("paths")) {
      TracePath p;
      std::string origin = jp.at("origin").get<std::string>();
      if (origin == to_string(PathOrigin::DirectPoc)) {
        p.origin = PathOrigin::DirectPoc;
      } else if (origin == to_string(PathOrigin::CampaignEnriched)) {
        p.origin = PathOrigin::CampaignEnriched;
      } else {
        throw TraceFormatError("unknown path origin '" + origin + "'");
      }
      for (const json& name : jp.at("nodes"))
        p.nodes.push_back({trace.basic_program, name.get<std::string>()});
      p.vulnerable = trace.vulnerable;
      trace.paths.push_back(std::move(p));
    }
    for (const json& jr : j.at("dictionary")) {
      DictionaryRow row;
      row.bytes = hex_decode(jr.at("bytes").get<std::string>());
      row.source_offset = jr.at("source_offset").get<std::size_t>();
      trace.dictionary.rows.push_back(std::move(row));
    }
    if (j.contains("min_row_len"))
      trace.dictionary.min_row_len = j.at("min_row_len").get<std::size_t>();
    if (j.contains("max_row_len"))
      trace.dictionary.max_row_len = j.at("max_row_len").get<std::size_t>();
    return trace;
  } catch (const json::exception& e) {
    throw TraceFormatError(std::string("malformed trace file: ") + e.what());
  }
}

void write_trace_file(const std::string& path, const HistoricalTrace& trace,
                      std::optional<std::size_t> dropped_paths) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw TraceFormatError("cannot open '" + path + "' for writing");
  out << serialize_trace(trace, dropped_paths);
}

HistoricalTrace read_trace_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TraceFormatError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_trace(ss.str());
}

}  // namespace tracefuzz
