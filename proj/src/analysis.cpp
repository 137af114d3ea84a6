#include "csmv/analysis.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace csmv {

bool matches_pattern(const std::string& name, const std::string& pattern) {
  // Two-pointer glob with star backtracking.
  std::size_t n = 0, p = 0;
  std::size_t star = std::string::npos, star_n = 0;
  while (n < name.size()) {
    if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == name[n])) {
      ++n;
      ++p;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      star_n = n;
    } else if (star != std::string::npos) {
      p = star + 1;
      n = ++star_n;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

namespace {

std::vector<std::vector<std::size_t>> adjacency(const ReachabilityGraph& g) {
  std::vector<std::vector<std::size_t>> out(g.nodes.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    out[g.edges[e].from].push_back(e);
  return out;
}

}  // namespace

std::vector<std::vector<std::size_t>> strongly_connected_components(
    const ReachabilityGraph& g) {
  const std::size_t n = g.nodes.size();
  const auto adj = adjacency(g);

  // Iterative Tarjan; explicit stack of (node, next-edge-position) frames.
  std::vector<int> index(n, -1), lowlink(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> components;
  int counter = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<std::pair<std::size_t, std::size_t>> frames{{root, 0}};
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      if (pos == 0) {
        index[v] = lowlink[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      bool descended = false;
      while (pos < adj[v].size()) {
        const std::size_t w = g.edges[adj[v][pos]].to;
        ++pos;
        if (index[w] == -1) {
          frames.emplace_back(w, 0);
          descended = true;
          break;
        }
        if (on_stack[w]) lowlink[v] = std::min(lowlink[v], index[w]);
      }
      if (descended) continue;
      if (lowlink[v] == index[v]) {
        std::vector<std::size_t> component;
        for (;;) {
          const std::size_t w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component.push_back(w);
          if (w == v) break;
        }
        std::sort(component.begin(), component.end());
        components.push_back(std::move(component));
      }
      const std::size_t child = v;
      frames.pop_back();
      if (!frames.empty())
        lowlink[frames.back().first] =
            std::min(lowlink[frames.back().first], lowlink[child]);
    }
  }

  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return components;
}

std::vector<std::vector<std::size_t>> find_terminal_sccs(const ReachabilityGraph& g) {
  const auto components = strongly_connected_components(g);
  std::vector<std::size_t> component_of(g.nodes.size(), 0);
  for (std::size_t c = 0; c < components.size(); ++c)
    for (auto v : components[c]) component_of[v] = c;

  std::vector<bool> has_exit(components.size(), false);
  for (const auto& e : g.edges)
    if (component_of[e.from] != component_of[e.to]) has_exit[component_of[e.from]] = true;

  std::vector<std::vector<std::size_t>> terminal;
  for (std::size_t c = 0; c < components.size(); ++c)
    if (!has_exit[c]) terminal.push_back(components[c]);
  return terminal;
}

std::vector<std::vector<std::size_t>> witness_paths(const ReachabilityGraph& g,
                                                    std::size_t target,
                                                    std::size_t k) {
  if (target >= g.nodes.size()) throw Error("witness target node out of range");
  if (k == 0) return {};
  const std::size_t n = g.nodes.size();
  const auto adj = adjacency(g);

  const std::size_t unreachable = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(n, unreachable);
  std::queue<std::size_t> bfs;
  dist[g.initial] = 0;
  bfs.push(g.initial);
  while (!bfs.empty()) {
    const std::size_t v = bfs.front();
    bfs.pop();
    for (auto e : adj[v]) {
      const std::size_t w = g.edges[e].to;
      if (dist[w] == unreachable) {
        dist[w] = dist[v] + 1;
        bfs.push(w);
      }
    }
  }
  if (dist[target] == unreachable)
    throw Error("node '" + g.nodes[target].name + "' is not reachable from the initial node");

  // Distance from each node to the target, over reversed edges.
  std::vector<std::vector<std::size_t>> radj(n);
  for (std::size_t e = 0; e < g.edges.size(); ++e) radj[g.edges[e].to].push_back(e);
  std::vector<std::size_t> rdist(n, unreachable);
  rdist[target] = 0;
  bfs.push(target);
  while (!bfs.empty()) {
    const std::size_t v = bfs.front();
    bfs.pop();
    for (auto e : radj[v]) {
      const std::size_t w = g.edges[e].from;
      if (rdist[w] == unreachable) {
        rdist[w] = rdist[v] + 1;
        bfs.push(w);
      }
    }
  }

  // Walk only edges that stay on some shortest path; depth-first in edge-index
  // order, which makes the enumeration deterministic.
  std::vector<std::vector<std::size_t>> paths;
  std::vector<std::size_t> current;
  const std::size_t total = dist[target];
  auto extend = [&](auto&& self, std::size_t v) -> bool {
    if (v == target) {
      paths.push_back(current);
      return paths.size() >= k;
    }
    for (auto e : adj[v]) {
      const std::size_t w = g.edges[e].to;
      if (rdist[w] == unreachable) continue;
      if (dist[v] + 1 + rdist[w] != total) continue;
      current.push_back(e);
      if (self(self, w)) return true;
      current.pop_back();
    }
    return false;
  };
  extend(extend, g.initial);
  return paths;
}

AnalysisReport classify_deadlocks(const ReachabilityGraph& g,
                                  const std::vector<std::string>& accepting_patterns) {
  for (const auto& p : accepting_patterns)
    if (p.empty()) throw Error("empty accepting pattern");

  AnalysisReport report;

  for (std::size_t v = 0; v < g.nodes.size(); ++v) {
    bool leaves = false;
    for (const auto& e : g.edges)
      if (e.from == v && e.to != v) {
        leaves = true;
        break;
      }
    if (!leaves) report.terminal_nodes.push_back(v);
  }

  report.terminal_sccs = find_terminal_sccs(g);

  const std::size_t unreachable = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(g.nodes.size(), unreachable);
  {
    const auto adj = adjacency(g);
    std::queue<std::size_t> bfs;
    dist[g.initial] = 0;
    bfs.push(g.initial);
    while (!bfs.empty()) {
      const std::size_t v = bfs.front();
      bfs.pop();
      for (auto e : adj[v]) {
        const std::size_t w = g.edges[e].to;
        if (dist[w] == unreachable) {
          dist[w] = dist[v] + 1;
          bfs.push(w);
        }
      }
    }
  }

  for (const auto& scc : report.terminal_sccs) {
    bool accepted = !accepting_patterns.empty();
    for (auto v : scc) {
      bool node_matches = false;
      for (const auto& p : accepting_patterns)
        if (matches_pattern(g.nodes[v].name, p)) {
          node_matches = true;
          break;
        }
      if (!node_matches) {
        accepted = false;
        break;
      }
    }
    if (accepted) {
      report.accepting.push_back(scc);
      continue;
    }

    DeadlockInfo info;
    info.nodes = scc;
    std::set<std::size_t> members(scc.begin(), scc.end());
    for (std::size_t e = 0; e < g.edges.size(); ++e)
      if (!members.count(g.edges[e].from) && members.count(g.edges[e].to))
        info.entry_edges.push_back(e);

    // Witness the nearest member; ties fall to the smaller node index.
    std::size_t best = scc.front();
    for (auto v : scc)
      if (dist[v] < dist[best]) best = v;
    const auto paths = witness_paths(g, best, 1);
    if (!paths.empty()) info.path_edges = paths.front();
    report.deadlocks.push_back(std::move(info));
  }

  return report;
}

GraphDiff diff_graphs(const ReachabilityGraph& a, const ReachabilityGraph& b,
                      std::size_t atom_cap) {
  GraphDiff diff;
  if (a.machine_names != b.machine_names) {
    diff.comparable = false;
    return diff;
  }

  std::set<std::string> names_a, names_b;
  for (const auto& n : a.nodes) names_a.insert(n.name);
  for (const auto& n : b.nodes) names_b.insert(n.name);
  for (const auto& n : names_a)
    if (!names_b.count(n)) diff.nodes_only_in_first.push_back(n);
  for (const auto& n : names_b)
    if (!names_a.count(n)) diff.nodes_only_in_second.push_back(n);

  std::map<std::pair<std::string, std::string>, Formula> edges_a, edges_b;
  for (const auto& e : a.edges)
    edges_a.emplace(std::make_pair(a.nodes[e.from].name, a.nodes[e.to].name), e.guard);
  for (const auto& e : b.edges)
    edges_b.emplace(std::make_pair(b.nodes[e.from].name, b.nodes[e.to].name), e.guard);

  for (const auto& [key, guard] : edges_a) {
    auto it = edges_b.find(key);
    if (it == edges_b.end())
      diff.edges_only_in_first.push_back(key);
    else if (!equivalent(guard, it->second, atom_cap))
      diff.guard_mismatches.push_back(key);
  }
  for (const auto& [key, guard] : edges_b)
    if (!edges_a.count(key)) diff.edges_only_in_second.push_back(key);

  return diff;
}

}  // namespace csmv
