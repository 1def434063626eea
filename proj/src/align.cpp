#include "tracefuzz/align.hpp"

#include <algorithm>
#include <set>

namespace tracefuzz {

namespace {

int out_degree(const CallGraph& g, const FunctionId& f) {
  int n = 0;
  for (const auto& e : g.edges) n += e.first == f;
  return n;
}

int in_degree(const CallGraph& g, const FunctionId& f) {
  int n = 0;
  for (const auto& e : g.edges) n += e.second == f;
  return n;
}

std::set<FunctionId> neighbors(const CallGraph& g, const FunctionId& f) {
  std::set<FunctionId> out;
  for (const auto& e : g.edges) {
    if (e.first == f) out.insert(e.second);
    if (e.second == f) out.insert(e.first);
  }
  return out;
}

}  // namespace

double match_similarity(const FunctionId& f, const CallGraph& basic_graph,
                        const FunctionId& g, const CallGraph& target_graph,
                        const FunctionMapping& name_matches) {
  const int of = out_degree(basic_graph, f), og = out_degree(target_graph, g);
  const int inf = in_degree(basic_graph, f), ing = in_degree(target_graph, g);
  const int total = of + og + inf + ing;
  const double deg_sim =
      total == 0 ? 1.0
                 : 1.0 - double(std::abs(of - og) + std::abs(inf - ing)) / total;

  // translate f's already-matched neighbors into the target and compare
  std::set<FunctionId> f_mapped;
  for (const FunctionId& n : neighbors(basic_graph, f)) {
    auto it = name_matches.find(n);
    if (it != name_matches.end() && it->second) f_mapped.insert(*it->second);
  }
  std::set<FunctionId> g_near = neighbors(target_graph, g);
  std::set<FunctionId> g_matched;
  for (const FunctionId& n : g_near) {
    for (const auto& [bf, tg] : name_matches) {
      if (tg && *tg == n) {
        g_matched.insert(n);
        break;
      }
    }
  }
  double jaccard = 1.0;
  if (!f_mapped.empty() || !g_matched.empty()) {
    std::size_t inter = 0;
    for (const FunctionId& n : f_mapped) inter += g_matched.count(n);
    const std::size_t uni = f_mapped.size() + g_matched.size() - inter;
    jaccard = uni == 0 ? 1.0 : double(inter) / uni;
  }
  return 0.5 * deg_sim + 0.5 * jaccard;
}

FunctionMapping match_functions(const CallGraph& basic_graph,
                                const CallGraph& target_graph,
                                const FunctionMatcher& matcher) {
  FunctionMapping mapping;
  std::set<FunctionId> claimed;

  for (const FunctionId& f : basic_graph.nodes) {
    std::optional<FunctionId> hit;
    for (const FunctionId& g : target_graph.nodes) {
      if (g.name == f.name) {
        hit = g;
        break;
      }
    }
    if (hit) claimed.insert(*hit);
    mapping[f] = hit;
  }
  if (matcher.strategy == MatchStrategy::ExactName) return mapping;

  // name matches act as anchors for the neighborhood comparison
  const FunctionMapping anchors = mapping;
  for (const FunctionId& f : basic_graph.nodes) {
    if (mapping[f]) continue;
    std::vector<FunctionId> candidates;
    for (const FunctionId& g : target_graph.nodes) {
      if (claimed.count(g)) continue;
      if (match_similarity(f, basic_graph, g, target_graph, anchors) >=
          matcher.similarity_threshold)
        candidates.push_back(g);
    }
    if (candidates.size() == 1) {
      mapping[f] = candidates.front();
      claimed.insert(candidates.front());
    }
  }
  return mapping;
}

std::optional<TracePath> derive_sub_path(const TracePath& path,
                                         const FunctionMapping& mapping,
                                         const CallGraph& target_graph) {
  if (path.nodes.empty()) return std::nullopt;

  std::vector<std::optional<FunctionId>> translated;
  translated.reserve(path.nodes.size());
  for (const FunctionId& f : path.nodes) {
    auto it = mapping.find(f);
    translated.push_back(it == mapping.end() ? std::nullopt : it->second);
  }
  const std::optional<FunctionId>& vuln = translated.back();
  if (!vuln || !target_graph.has_node(*vuln)) return std::nullopt;

  std::size_t start = translated.size() - 1;
  while (start > 0 && translated[start - 1] &&
         target_graph.has_edge(*translated[start - 1], *translated[start]))
    --start;

  TracePath sub;
  for (std::size_t i = start; i < translated.size(); ++i)
    sub.nodes.push_back(*translated[i]);
  sub.vulnerable = *vuln;
  sub.origin = path.origin;
  return sub;
}

AlignedTrace align_trace(const HistoricalTrace& trace,
                         const TargetProgram& target,
                         const FunctionMatcher& matcher) {
  CallGraph basic_graph;
  basic_graph.entry = {trace.basic_program, ""};
  for (const TracePath& p : trace.paths) {
    for (std::size_t i = 0; i < p.nodes.size(); ++i) {
      basic_graph.nodes.insert(p.nodes[i]);
      if (i > 0) basic_graph.edges.insert({p.nodes[i - 1], p.nodes[i]});
    }
  }
  basic_graph.nodes.insert(trace.vulnerable);

  const FunctionMapping mapping =
      match_functions(basic_graph, target.call_graph, matcher);

  AlignedTrace aligned;
  auto vuln_it = mapping.find(trace.vulnerable);
  if (vuln_it != mapping.end() && vuln_it->second) {
    aligned.vulnerable = *vuln_it->second;
  } else {
    aligned.vulnerable = {target.id, trace.vulnerable.name};
  }
  aligned.dictionary = trace.dictionary;

  for (const TracePath& p : trace.paths) {
    std::optional<TracePath> sub = derive_sub_path(p, mapping, target.call_graph);
    if (!sub) {
      ++aligned.dropped_paths;
      continue;
    }
    const bool dup = std::any_of(
        aligned.sub_paths.begin(), aligned.sub_paths.end(),
        [&](const TracePath& q) { return q.nodes == sub->nodes; });
    if (!dup) aligned.sub_paths.push_back(std::move(*sub));
  }

  if (aligned.sub_paths.empty() && aligned.dictionary.rows.empty())
    throw NoViablePath("no aligned sub-path and empty dictionary for target '" +
                       target.id + "'");
  return aligned;
}

}  // namespace tracefuzz
