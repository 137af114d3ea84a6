#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "csmv/system.hpp"

namespace csmv {

// Glob match with '*' (any run) and '?' (any one character).
bool matches_pattern(const std::string& name, const std::string& pattern);

// All strongly connected components, each sorted by node index, the list
// ordered by minimal member. Deterministic.
std::vector<std::vector<std::size_t>> strongly_connected_components(
    const ReachabilityGraph& g);

// Components with no edge leaving them. Once entered, the system stays.
std::vector<std::vector<std::size_t>> find_terminal_sccs(const ReachabilityGraph& g);

struct DeadlockInfo {
  std::vector<std::size_t> nodes;        // the trapped component
  std::vector<std::size_t> entry_edges;  // edges from outside into it
  std::vector<std::size_t> path_edges;   // one shortest path from the initial node
};

struct AnalysisReport {
  // Nodes whose only outgoing edges are self-loops (or that have none).
  std::vector<std::size_t> terminal_nodes;
  std::vector<std::vector<std::size_t>> terminal_sccs;
  // Terminal SCCs whose member names all match some accepting pattern.
  std::vector<std::vector<std::size_t>> accepting;
  // The remaining terminal SCCs: traps the system can never leave.
  std::vector<DeadlockInfo> deadlocks;
};

// Splits the terminal SCCs into accepting ones and deadlocks and attaches
// entry edges plus one shortest witness path to each deadlock. An empty
// pattern list accepts nothing; an empty pattern string is an error.
AnalysisReport classify_deadlocks(const ReachabilityGraph& g,
                                  const std::vector<std::string>& accepting_patterns);

// Up to k shortest paths (as edge-index lists) from the initial node to
// `target`, all of minimal length, enumerated deterministically. The path to
// the initial node itself is the single empty path.
std::vector<std::vector<std::size_t>> witness_paths(const ReachabilityGraph& g,
                                                    std::size_t target,
                                                    std::size_t k);

struct GraphDiff {
  bool comparable = true;  // false when the machine lists differ
  std::vector<std::string> nodes_only_in_first;
  std::vector<std::string> nodes_only_in_second;
  std::vector<std::pair<std::string, std::string>> edges_only_in_first;
  std::vector<std::pair<std::string, std::string>> edges_only_in_second;
  // Edges present in both whose guards are not truth-table equivalent.
  std::vector<std::pair<std::string, std::string>> guard_mismatches;

  bool identical() const {
    return comparable && nodes_only_in_first.empty() && nodes_only_in_second.empty() &&
           edges_only_in_first.empty() && edges_only_in_second.empty() &&
           guard_mismatches.empty();
  }
};

// Compares nodes by composite name and edges by endpoint names.
GraphDiff diff_graphs(const ReachabilityGraph& a, const ReachabilityGraph& b,
                      std::size_t atom_cap = kDefaultAtomCap);

}  // namespace csmv
