// align.hpp
//
// FCG alignment: map a basic program's trace paths onto the target call
// graph. Function matching is pluggable; the default matches by name with
// an optional degree/neighborhood fallback for renamed functions.

#pragma once

#include <map>
#include <optional>
#include <stdexcept>

#include "tracefuzz/core.hpp"
#include "tracefuzz/harness.hpp"

namespace tracefuzz {

enum class MatchStrategy { ExactName, HeuristicFallback };

struct FunctionMatcher {
  MatchStrategy strategy = MatchStrategy::ExactName;
  double similarity_threshold = 0.8;  // HeuristicFallback only
};

using FunctionMapping = std::map<FunctionId, std::optional<FunctionId>>;

// Injective: no two basic functions map to the same target function.
// ExactName maps f to g iff their names are equal. HeuristicFallback
// additionally maps each unmatched f to the unique unclaimed target node
// whose degree/matched-neighbor similarity reaches the threshold; ties
// resolve to no match.
FunctionMapping match_functions(const CallGraph& basic_graph,
                                const CallGraph& target_graph,
                                const FunctionMatcher& matcher);

// Similarity score used by HeuristicFallback; exposed so tests can brute
// force candidate assignments against the same metric.
double match_similarity(const FunctionId& f, const CallGraph& basic_graph,
                        const FunctionId& g, const CallGraph& target_graph,
                        const FunctionMapping& name_matches);

// Longest suffix of the translated path whose nodes all matched, whose
// consecutive nodes are connected in the target graph, and which ends at
// the mapped vulnerable function. None when the vulnerable function is
// unmatched.
std::optional<TracePath> derive_sub_path(const TracePath& path,
                                         const FunctionMapping& mapping,
                                         const CallGraph& target_graph);

struct AlignedTrace {
  std::vector<TracePath> sub_paths;   // nodes are target FunctionIds
  KeyBytesDictionary dictionary;      // passed through unchanged
  std::size_t dropped_paths = 0;
  FunctionId vulnerable;              // target-side identity
};

struct NoViablePath : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Throws NoViablePath when no sub-path survives and the dictionary is
// empty; fuzzing would be unguided.
AlignedTrace align_trace(const HistoricalTrace& trace,
                         const TargetProgram& target,
                         const FunctionMatcher& matcher = {});

}  // namespace tracefuzz
