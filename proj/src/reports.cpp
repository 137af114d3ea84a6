#include "csmv/reports.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace csmv {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string symbol_set(const SymbolSet& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& x : s) {
    if (!first) out += ", ";
    out += x;
    first = false;
  }
  return out + "}";
}

std::string component_names(const ReachabilityGraph& g,
                            const std::vector<std::size_t>& ids) {
  std::string out = "{ ";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ", ";
    out += g.nodes[ids[i]].name;
  }
  return out + " }";
}

bool is_accepting_component(const AnalysisReport& r,
                            const std::vector<std::size_t>& scc) {
  return std::find(r.accepting.begin(), r.accepting.end(), scc) !=
         r.accepting.end();
}

bool is_deadlock_component(const AnalysisReport& r,
                           const std::vector<std::size_t>& scc) {
  for (const auto& d : r.deadlocks)
    if (d.nodes == scc) return true;
  return false;
}

void print_edge(std::ostringstream& out, const ReachabilityGraph& g,
                std::size_t edge_index) {
  const auto& e = g.edges[edge_index];
  out << g.nodes[e.from].name << " -> " << g.nodes[e.to].name << " : "
      << render_formula(e.guard);
}

ordered_json edge_json(const ReachabilityGraph& g, std::size_t edge_index) {
  const auto& e = g.edges[edge_index];
  ordered_json j;
  j["from"] = g.nodes[e.from].name;
  j["to"] = g.nodes[e.to].name;
  j["guard"] = render_formula(e.guard);
  return j;
}

std::vector<std::string> node_names(const ReachabilityGraph& g,
                                    const std::vector<std::size_t>& ids) {
  std::vector<std::string> names;
  for (std::size_t id : ids) names.push_back(g.nodes[id].name);
  return names;
}

}  // namespace

std::string analysis_to_text(const ReachabilityGraph& g,
                             const AnalysisReport& r) {
  std::ostringstream out;
  out << "nodes: " << g.nodes.size() << "\n";
  out << "edges: " << g.edges.size() << "\n";
  if (!g.nodes.empty()) out << "initial: " << g.nodes[g.initial].name << "\n";

  out << "terminal components: " << r.terminal_sccs.size() << "\n";
  for (const auto& scc : r.terminal_sccs) {
    out << "  " << component_names(g, scc);
    if (is_accepting_component(r, scc))
      out << " accepting";
    else if (is_deadlock_component(r, scc))
      out << " deadlock";
    out << "\n";
  }

  out << "deadlocks: " << r.deadlocks.size() << "\n";
  for (std::size_t i = 0; i < r.deadlocks.size(); ++i) {
    const DeadlockInfo& d = r.deadlocks[i];
    out << "deadlock " << i + 1 << ": " << component_names(g, d.nodes) << "\n";
    out << "  entry edges: " << d.entry_edges.size() << "\n";
    for (std::size_t e : d.entry_edges) {
      out << "    ";
      print_edge(out, g, e);
      out << "\n";
    }
    const bool starts_inside =
        std::find(d.nodes.begin(), d.nodes.end(), g.initial) != d.nodes.end();
    if (d.path_edges.empty() && !starts_inside) {
      out << "  witness: none\n";
    } else {
      out << "  witness (" << d.path_edges.size() << " steps)";
      if (starts_inside && d.path_edges.empty()) {
        out << ": starts in the component\n";
      } else {
        out << ":\n";
        for (std::size_t e : d.path_edges) {
          out << "    ";
          print_edge(out, g, e);
          out << "\n";
        }
      }
    }
  }
  return out.str();
}

std::string analysis_to_json(const ReachabilityGraph& g,
                             const AnalysisReport& r) {
  ordered_json doc;
  doc["format"] = "csmv-analysis";
  doc["version"] = 1;
  doc["nodes"] = g.nodes.size();
  doc["edges"] = g.edges.size();
  doc["initial"] = g.nodes.empty() ? "" : g.nodes[g.initial].name;
  doc["terminal_nodes"] = node_names(g, r.terminal_nodes);

  ordered_json components = ordered_json::array();
  for (const auto& scc : r.terminal_sccs) {
    ordered_json c;
    c["nodes"] = node_names(g, scc);
    c["accepting"] = is_accepting_component(r, scc);
    c["deadlock"] = is_deadlock_component(r, scc);
    components.push_back(std::move(c));
  }
  doc["terminal_components"] = std::move(components);

  ordered_json deadlocks = ordered_json::array();
  for (const auto& d : r.deadlocks) {
    ordered_json j;
    j["nodes"] = node_names(g, d.nodes);
    ordered_json entries = ordered_json::array();
    for (std::size_t e : d.entry_edges) entries.push_back(edge_json(g, e));
    j["entry_edges"] = std::move(entries);
    ordered_json witness = ordered_json::array();
    for (std::size_t e : d.path_edges) witness.push_back(edge_json(g, e));
    j["witness"] = std::move(witness);
    deadlocks.push_back(std::move(j));
  }
  doc["deadlocks"] = std::move(deadlocks);
  return doc.dump(2) + "\n";
}

std::string trace_to_text(const SystemModel& s, const Trace& t) {
  std::ostringstream out;
  out << "initial:";
  for (const auto& name : t.initial) out << " " << name;
  out << "\n";
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const TraceStep& step = t.steps[i];
    out << "step " << i + 1 << ":\n";
    out << "  environment: " << symbol_set(step.env) << "\n";
    out << "  broadcast: " << symbol_set(step.global_set) << "\n";
    for (std::size_t m = 0; m < s.machines.size(); ++m)
      out << "  " << s.machines[m].name << ": " << step.before[m] << " -> "
          << step.after[m] << "\n";
  }
  return out.str();
}

std::string trace_to_json(const SystemModel& s, const Trace& t) {
  ordered_json doc;
  doc["format"] = "csmv-trace";
  doc["version"] = 1;
  ordered_json machines = ordered_json::array();
  for (const auto& m : s.machines) machines.push_back(m.name);
  doc["machines"] = std::move(machines);
  doc["initial"] = t.initial;

  ordered_json steps = ordered_json::array();
  for (const TraceStep& step : t.steps) {
    ordered_json j;
    j["environment"] = std::vector<std::string>(step.env.begin(), step.env.end());
    j["broadcast"] =
        std::vector<std::string>(step.global_set.begin(), step.global_set.end());
    j["before"] = step.before;
    j["chosen"] = step.chosen;
    j["after"] = step.after;
    steps.push_back(std::move(j));
  }
  doc["steps"] = std::move(steps);
  return doc.dump(2) + "\n";
}

std::string diff_to_text(const GraphDiff& d) {
  if (!d.comparable) return "graphs are not comparable: machine lists differ\n";
  if (d.identical()) return "graphs are identical\n";

  std::ostringstream out;
  auto list_nodes = [&](const char* title, const std::vector<std::string>& v) {
    if (v.empty()) return;
    out << title << ":\n";
    for (const auto& n : v) out << "  " << n << "\n";
  };
  auto list_edges = [&](const char* title,
                        const std::vector<std::pair<std::string, std::string>>& v) {
    if (v.empty()) return;
    out << title << ":\n";
    for (const auto& [from, to] : v) out << "  " << from << " -> " << to << "\n";
  };
  list_nodes("nodes only in first", d.nodes_only_in_first);
  list_nodes("nodes only in second", d.nodes_only_in_second);
  list_edges("edges only in first", d.edges_only_in_first);
  list_edges("edges only in second", d.edges_only_in_second);
  list_edges("guard mismatches", d.guard_mismatches);
  return out.str();
}

std::string validation_to_text(const ValidationReport& r) {
  if (r.errors.empty() && r.warnings.empty()) return "ok\n";
  std::ostringstream out;
  for (const auto& e : r.errors) out << "error: " << e << "\n";
  for (const auto& w : r.warnings) out << "warning: " << w << "\n";
  return out.str();
}

}  // namespace csmv
