// trace_io.hpp
//
// Trace file format: one HistoricalTrace per file as UTF-8 JSON.
// Dictionary bytes are encoded as lowercase hex, two digits per byte.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tracefuzz/core.hpp"

namespace tracefuzz {

struct TraceFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string hex_encode(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> hex_decode(const std::string& hex);  // throws TraceFormatError

// `dropped_paths` is written only for aligned-trace files.
std::string serialize_trace(const HistoricalTrace& trace,
                            std::optional<std::size_t> dropped_paths = std::nullopt);

// Throws TraceFormatError on malformed input or unknown format_version.
// Does not run validate_historical_trace; callers decide how strict to be.
HistoricalTrace parse_trace(const std::string& text);

void write_trace_file(const std::string& path, const HistoricalTrace& trace,
                      std::optional<std::size_t> dropped_paths = std::nullopt);
HistoricalTrace read_trace_file(const std::string& path);

}  // namespace tracefuzz
