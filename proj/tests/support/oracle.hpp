#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "csmv/formula.hpp"
#include "csmv/system.hpp"

namespace testutil {

// Reference reachability computed the slow way: enumerate every environment
// subset at every discovered state vector and follow every combination of
// enabled transitions, evaluating guards directly against the broadcast set.
// No symbolic machinery (restrict/conjoin/edge_guard) is involved, so this is
// an independent check of compose.
struct BruteForceGraph {
  std::vector<std::vector<std::string>> nodes;  // discovery order
  std::map<std::vector<std::string>, std::size_t> index;
  // (from, to) -> environment subsets under which the move is possible
  std::map<std::pair<std::size_t, std::size_t>, std::set<csmv::SymbolSet>>
      witnesses;
};

inline std::vector<csmv::SymbolSet> all_subsets(const csmv::SymbolSet& symbols) {
  const std::vector<std::string> v(symbols.begin(), symbols.end());
  std::vector<csmv::SymbolSet> out;
  for (std::size_t mask = 0; mask < (std::size_t(1) << v.size()); ++mask) {
    csmv::SymbolSet subset;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (mask & (std::size_t(1) << i)) subset.insert(v[i]);
    out.push_back(std::move(subset));
  }
  return out;
}

inline BruteForceGraph brute_force_reachability(const csmv::SystemModel& s) {
  const auto env_subsets = all_subsets(s.environment_symbols());
  BruteForceGraph g;

  std::vector<std::string> init;
  for (const auto& m : s.machines) init.push_back(m.initial);
  g.index[init] = 0;
  g.nodes.push_back(init);

  for (std::size_t cur = 0; cur < g.nodes.size(); ++cur) {
    const std::vector<std::string> from = g.nodes[cur];
    csmv::SymbolSet outputs;
    for (std::size_t i = 0; i < s.machines.size(); ++i) {
      const csmv::CsmState* st = s.machines[i].find_state(from[i]);
      outputs.insert(st->outputs.begin(), st->outputs.end());
    }

    for (const auto& env : env_subsets) {
      csmv::SymbolSet global = outputs;
      global.insert(env.begin(), env.end());

      std::vector<std::vector<std::string>> choices(s.machines.size());
      bool stuck = false;
      for (std::size_t i = 0; i < s.machines.size(); ++i) {
        for (const auto& t : s.machines[i].transitions)
          if (t.from == from[i] && csmv::eval(t.guard, global))
            choices[i].push_back(t.to);
        if (choices[i].empty()) stuck = true;
      }
      if (stuck) continue;  // incomplete machine; compose refuses these anyway

      std::vector<std::size_t> pick(s.machines.size(), 0);
      for (;;) {
        std::vector<std::string> next;
        for (std::size_t i = 0; i < pick.size(); ++i)
          next.push_back(choices[i][pick[i]]);
        auto [it, fresh] = g.index.try_emplace(next, g.nodes.size());
        if (fresh) g.nodes.push_back(next);
        g.witnesses[{cur, it->second}].insert(env);

        std::size_t i = pick.size();
        for (;;) {
          if (i == 0) goto env_done;
          --i;
          if (++pick[i] < choices[i].size()) break;
          pick[i] = 0;
        }
      }
    env_done:;
    }
  }
  return g;
}

// Environment subsets satisfying a guard (guards over environment symbols).
inline std::set<csmv::SymbolSet> truth_set(
    const csmv::Formula& f, const std::vector<csmv::SymbolSet>& env_subsets) {
  std::set<csmv::SymbolSet> out;
  for (const auto& env : env_subsets)
    if (csmv::eval(f, env)) out.insert(env);
  return out;
}

// Every way the composed graph could disagree with the brute-force reference,
// as human-readable descriptions; empty means they agree exactly.
inline std::vector<std::string> compare_graph_to_brute_force(
    const csmv::SystemModel& s, const csmv::ReachabilityGraph& g) {
  std::vector<std::string> problems;
  const BruteForceGraph ref = brute_force_reachability(s);
  const auto env_subsets = all_subsets(s.environment_symbols());

  auto vec_name = [](const std::vector<std::string>& vec) {
    std::string out;
    for (const auto& c : vec) {
      if (!out.empty()) out += ",";
      out += c;
    }
    return "(" + out + ")";
  };

  if (g.nodes.size() != ref.nodes.size())
    problems.push_back("node count " + std::to_string(g.nodes.size()) +
                       " differs from reference " +
                       std::to_string(ref.nodes.size()));

  std::map<std::vector<std::string>, std::size_t> graph_index;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    graph_index[g.nodes[i].components] = i;
    if (!ref.index.count(g.nodes[i].components))
      problems.push_back("node " + vec_name(g.nodes[i].components) +
                         " is not reachable per the reference");
  }
  for (const auto& vec : ref.nodes)
    if (!graph_index.count(vec))
      problems.push_back("reachable vector " + vec_name(vec) +
                         " is missing from the graph");
  if (!problems.empty()) return problems;  // edge checks need matching nodes

  // Edge relation plus exact guard truth sets.
  std::map<std::pair<std::size_t, std::size_t>, csmv::Formula> graph_edges;
  for (const auto& e : g.edges) {
    const std::size_t from = ref.index.at(g.nodes[e.from].components);
    const std::size_t to = ref.index.at(g.nodes[e.to].components);
    if (graph_edges.count({from, to}))
      problems.push_back("duplicate edge " + vec_name(g.nodes[e.from].components) +
                         " -> " + vec_name(g.nodes[e.to].components));
    graph_edges[{from, to}] = e.guard;
  }

  for (const auto& [key, env_set] : ref.witnesses) {
    auto it = graph_edges.find(key);
    if (it == graph_edges.end()) {
      problems.push_back("missing edge " + vec_name(ref.nodes[key.first]) +
                         " -> " + vec_name(ref.nodes[key.second]));
      continue;
    }
    if (truth_set(it->second, env_subsets) != env_set)
      problems.push_back("guard of " + vec_name(ref.nodes[key.first]) + " -> " +
                         vec_name(ref.nodes[key.second]) +
                         " has the wrong truth set");
  }
  for (const auto& [key, guard] : graph_edges)
    if (!ref.witnesses.count(key))
      problems.push_back("extra edge " + vec_name(ref.nodes[key.first]) +
                         " -> " + vec_name(ref.nodes[key.second]));

  return problems;
}

}  // namespace testutil
