// harness.hpp
//
// Deterministic in-process execution contract that stands in for
// instrumented binaries. A target program is a procedure written against
// RunContext: it announces function entries, reads input bytes (with or
// without provenance labels) and raises crashes at explicit abort points.
// run_target turns one invocation into an ExecutionResult.

#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tracefuzz/core.hpp"

namespace tracefuzz {

struct ExecutionLimits {
  std::uint64_t max_steps = 1'000'000;
  std::size_t max_input_len = 4096;
};

inline std::uint64_t fnv1a64(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

// Hash of one (caller-site, destination) pair; collisions are tolerated.
inline std::uint64_t edge_hash(std::string_view caller, std::string_view callee) {
  return fnv1a64(callee, fnv1a64(caller) ^ 0x9e3779b97f4a7c15ull);
}

class RunContext;
struct TargetProgram {
  std::string id;
  CallGraph call_graph;
  std::set<FunctionId> reused_functions;
  std::function<void(RunContext&)> body;

  FunctionId fn(std::string name) const { return {id, std::move(name)}; }
};

namespace detail {
struct CrashSignal {};
struct TimeoutSignal {};
struct ContractViolation {
  std::string what;
};
}  // namespace detail

class RunContext {
 public:
  RunContext(const TargetProgram& program, std::span<const std::uint8_t> input,
             const ExecutionLimits& limits);

  // Announces entry into `name` for the duration of `fn`. Records the
  // function entry, the coverage edge from the current caller, and one
  // step. The stack is left in place when a crash unwinds through it.
  template <typename F>
  void call(std::string_view name, F&& fn) {
    enter(name);
    std::forward<F>(fn)();
    leave();
  }

  std::size_t input_size() const { return input_.size(); }
  bool has_byte(std::size_t offset) const { return offset < input_.size(); }

  // Provenance-labelled read: the byte is used unchanged. Recorded when
  // the current function belongs to the reused code region.
  std::uint8_t input_byte(std::size_t offset);

  // Read whose value is transformed before use; never recorded.
  std::uint8_t input_byte_opaque(std::size_t offset);

  void step(std::uint64_t n = 1);
  [[noreturn]] void crash();

 private:
  friend ExecutionResult run_target(const TargetProgram&,
                                    std::span<const std::uint8_t>,
                                    const ExecutionLimits&);

  void enter(std::string_view name);
  void leave();
  std::uint8_t raw_byte(std::size_t offset);

  const TargetProgram& program_;
  std::span<const std::uint8_t> input_;
  ExecutionLimits limits_;
  std::uint64_t steps_ = 0;
  std::vector<FunctionId> stack_;
  ExecutionResult result_;
};

// Deterministic: identical (program, input, limits) yield identical results.
ExecutionResult run_target(const TargetProgram& program,
                           std::span<const std::uint8_t> input,
                           const ExecutionLimits& limits = {});

inline CallGraph static_call_graph(const TargetProgram& program) {
  return program.call_graph;
}

struct BenchmarkPair {
  std::string id;
  TargetProgram basic;
  TargetProgram target;
  std::vector<std::uint8_t> poc;          // crashes `basic` at `vulnerable`
  FunctionId vulnerable;                  // basic-side identity
  VerdictKind expected;                   // Triggered or NotReached
  std::vector<std::uint8_t> initial_seed; // benign starting input for the target
  std::string note;                       // input convention the pair mimics
};

// Compiled-in benchmark corpus; stable ordering.
const std::vector<BenchmarkPair>& corpus();
const BenchmarkPair* find_pair(const std::string& id);

}  // namespace tracefuzz
