#include "tracefuzz/harness.hpp"

namespace tracefuzz {

namespace {
// Virtual cost model: fixed dispatch cost plus a per-step charge. Keeps
// TTE measurements machine-independent.
constexpr std::uint64_t kExecBaseUs = 60;
constexpr std::uint64_t kUsPerStep = 2;
}  // namespace

RunContext::RunContext(const TargetProgram& program,
                       std::span<const std::uint8_t> input,
                       const ExecutionLimits& limits)
    : program_(program), input_(input), limits_(limits) {}

void RunContext::step(std::uint64_t n) {
  steps_ += n;
  if (steps_ > limits_.max_steps) throw detail::TimeoutSignal{};
}

void RunContext::enter(std::string_view name) {
  step();
  FunctionId callee{program_.id, std::string(name)};
  if (!program_.call_graph.has_node(callee))
    throw detail::ContractViolation{"entered function not in call graph: " +
                                    callee.name};
  if (stack_.empty()) {
    if (callee != program_.call_graph.entry)
      throw detail::ContractViolation{"first entered function is not the entry"};
    result_.coverage_edges.insert(edge_hash("", callee.name));
  } else {
    if (!program_.call_graph.has_edge(stack_.back(), callee))
      throw detail::ContractViolation{"dynamic edge missing from static graph: " +
                                      stack_.back().name + " -> " + callee.name};
    result_.coverage_edges.insert(edge_hash(stack_.back().name, callee.name));
  }
  result_.entered_functions.insert(callee);
  stack_.push_back(std::move(callee));
}

void RunContext::leave() { stack_.pop_back(); }

std::uint8_t RunContext::raw_byte(std::size_t offset) {
  step();
  if (offset >= input_.size())
    throw detail::ContractViolation{"input read out of bounds"};
  return input_[offset];
}

std::uint8_t RunContext::input_byte(std::size_t offset) {
  std::uint8_t value = raw_byte(offset);
  if (!stack_.empty() && program_.reused_functions.count(stack_.back()))
    result_.provenance_reads.push_back({stack_.back(), offset, value});
  return value;
}

std::uint8_t RunContext::input_byte_opaque(std::size_t offset) {
  return raw_byte(offset);
}

void RunContext::crash() {
  if (stack_.empty())
    throw detail::ContractViolation{"crash outside any function"};
  result_.status = RunStatus::Crash;
  result_.crash_stack = stack_;
  result_.crash_site = stack_.back();
  throw detail::CrashSignal{};
}

ExecutionResult run_target(const TargetProgram& program,
                           std::span<const std::uint8_t> input,
                           const ExecutionLimits& limits) {
  if (input.size() > limits.max_input_len) {
    ExecutionResult r;
    r.status = RunStatus::HarnessError;
    r.exec_time_us = kExecBaseUs;
    return r;
  }
  RunContext ctx(program, input, limits);
  try {
    program.body(ctx);
    if (!ctx.stack_.empty())
      throw detail::ContractViolation{"unbalanced function stack"};
  } catch (const detail::CrashSignal&) {
    // result already carries the crash stack
  } catch (const detail::TimeoutSignal&) {
    ctx.result_.status = RunStatus::Timeout;
    ctx.result_.crash_stack.clear();
    ctx.result_.crash_site.reset();
  } catch (const detail::ContractViolation&) {
    ctx.result_ = ExecutionResult{};
    ctx.result_.status = RunStatus::HarnessError;
  }
  ctx.result_.exec_time_us = kExecBaseUs + kUsPerStep * ctx.steps_;
  return ctx.result_;
}

const BenchmarkPair* find_pair(const std::string& id) {
  for (const BenchmarkPair& pair : corpus()) {
    if (pair.id == id) return &pair;
  }
  return nullptr;
}

}  // namespace tracefuzz
