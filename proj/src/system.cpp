#include "csmv/system.hpp"

#include <deque>
#include <map>
#include <unordered_map>
#include <utility>

namespace csmv {

SymbolSet SystemModel::internal_symbols() const {
  SymbolSet internal = declared_internal;
  for (const auto& m : machines)
    internal.insert(m.output_alphabet.begin(), m.output_alphabet.end());
  for (const auto& sym : declared_environment) internal.erase(sym);
  return internal;
}

SymbolSet SystemModel::environment_symbols() const {
  SymbolSet env = declared_environment;
  for (const auto& m : machines)
    env.insert(m.input_alphabet.begin(), m.input_alphabet.end());
  for (const auto& sym : internal_symbols()) env.erase(sym);
  return env;
}

ValidationReport validate_system(const SystemModel& s, std::size_t atom_cap) {
  ValidationReport report;
  if (s.machines.empty())
    report.errors.push_back("system '" + s.name + "' has no member machines");

  std::set<std::string> names;
  for (const auto& m : s.machines)
    if (!names.insert(m.name).second)
      report.errors.push_back("duplicate machine name '" + m.name + "'");

  for (const auto& m : s.machines) {
    const auto mr = validate_csm(m, atom_cap);
    for (const auto& e : mr.errors)
      report.errors.push_back("machine '" + m.name + "': " + e);
    for (const auto& w : mr.warnings)
      report.warnings.push_back("machine '" + m.name + "': " + w);
  }

  for (const auto& sym : s.declared_environment)
    for (const auto& m : s.machines)
      if (m.output_alphabet.count(sym))
        report.warnings.push_back("symbol '" + sym + "' is produced by machine '" +
                                  m.name + "' but declared environment");

  return report;
}

SystemModel with_closure(const SystemModel& s, std::size_t atom_cap) {
  SystemModel closed = s;
  for (auto& m : closed.machines) {
    bool complete = true;
    for (const auto& st : m.states)
      if (!state_is_complete(m, st.name, atom_cap)) {
        complete = false;
        break;
      }
    if (!complete) m = completeness_closure(m, atom_cap);
  }
  return closed;
}

SymbolSet system_output(const SystemModel& s, const std::vector<std::string>& vec) {
  if (vec.size() != s.machines.size())
    throw Error("state vector has " + std::to_string(vec.size()) +
                " components but the system has " +
                std::to_string(s.machines.size()) + " machines");
  SymbolSet out;
  for (std::size_t i = 0; i < vec.size(); ++i) {
    const CsmState* st = s.machines[i].find_state(vec[i]);
    if (!st)
      throw Error("machine '" + s.machines[i].name + "' has no state '" + vec[i] +
                  "'");
    out.insert(st->outputs.begin(), st->outputs.end());
  }
  return out;
}

namespace {

Formula reduce_guard(const std::vector<Formula>& guards,
                     const Assignment& internal_values) {
  return restrict(conjoin(guards), internal_values);
}

Assignment internal_assignment(const SymbolSet& internal, const SymbolSet& outputs) {
  Assignment values;
  for (const auto& sym : internal) values[sym] = outputs.count(sym) > 0;
  return values;
}

}  // namespace

Formula edge_guard(const SystemModel& s, const std::vector<std::string>& from,
                   const std::vector<const CsmTransition*>& chosen) {
  if (chosen.size() != s.machines.size())
    throw Error("expected one chosen transition per machine");
  std::vector<Formula> guards;
  guards.reserve(chosen.size());
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    if (!chosen[i] || chosen[i]->from != from[i])
      throw Error("chosen transition for machine '" + s.machines[i].name +
                  "' does not depart from '" + from[i] + "'");
    guards.push_back(chosen[i]->guard);
  }
  const Assignment values =
      internal_assignment(s.internal_symbols(), system_output(s, from));
  return reduce_guard(guards, values);
}

std::size_t ReachabilityGraph::find_node(const std::string& name) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].name == name) return i;
  return npos;
}

ReachabilityGraph compose(const SystemModel& s, const ComposeOptions& opt) {
  const auto report = validate_system(s, opt.atom_cap);
  if (!report.ok()) throw Error("cannot compose: " + report.errors.front());

  SystemModel sys = s;
  for (auto& m : sys.machines)
    for (const auto& st : m.states)
      if (!state_is_complete(m, st.name, opt.atom_cap)) {
        if (!opt.close_incomplete)
          throw Error("machine '" + m.name + "' is incomplete at state '" +
                      st.name + "'; apply the completeness closure first");
        m = completeness_closure(m, opt.atom_cap);
        break;
      }

  const SymbolSet internal = sys.internal_symbols();

  // Joined names collide only if a component name contains the separator; in
  // that case every component is qualified by its machine.
  bool qualify = false;
  for (const auto& m : sys.machines)
    for (const auto& st : m.states)
      if (st.name.find('_') != std::string::npos) qualify = true;
  auto composite_name = [&](const std::vector<std::string>& vec) {
    std::string name;
    for (std::size_t i = 0; i < vec.size(); ++i) {
      if (i) name += '_';
      if (qualify) {
        name += sys.machines[i].name;
        name += '.';
      }
      name += vec[i];
    }
    return name;
  };

  // Outgoing transition indices per machine per state, in declared order.
  std::vector<std::unordered_map<std::string, std::vector<std::size_t>>> outgoing(
      sys.machines.size());
  for (std::size_t i = 0; i < sys.machines.size(); ++i)
    for (const auto& st : sys.machines[i].states)
      outgoing[i][st.name] = sys.machines[i].outgoing(st.name);

  ReachabilityGraph g;
  for (const auto& m : sys.machines) g.machine_names.push_back(m.name);
  g.accepting_patterns = sys.accepting_patterns;

  std::map<std::vector<std::string>, std::size_t> index;
  std::deque<std::size_t> frontier;
  auto intern_node = [&](const std::vector<std::string>& vec) {
    auto it = index.find(vec);
    if (it != index.end()) return it->second;
    const std::size_t id = g.nodes.size();
    g.nodes.push_back({vec, composite_name(vec), system_output(sys, vec)});
    index.emplace(vec, id);
    frontier.push_back(id);
    return id;
  };

  std::vector<std::string> start;
  for (const auto& m : sys.machines) start.push_back(m.initial);
  g.initial = intern_node(start);

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_at;

  while (!frontier.empty()) {
    const std::size_t node = frontier.front();
    frontier.pop_front();
    const std::vector<std::string> vec = g.nodes[node].components;
    const Assignment values = internal_assignment(internal, g.nodes[node].outputs);

    std::vector<const std::vector<std::size_t>*> choices;
    for (std::size_t i = 0; i < sys.machines.size(); ++i)
      choices.push_back(&outgoing[i].at(vec[i]));

    // Odometer over the per-machine choices, first machine most significant.
    std::vector<std::size_t> pick(sys.machines.size(), 0);
    for (;;) {
      std::vector<Formula> guards;
      std::vector<std::string> target(sys.machines.size());
      for (std::size_t i = 0; i < sys.machines.size(); ++i) {
        const CsmTransition& t = sys.machines[i].transitions[(*choices[i])[pick[i]]];
        guards.push_back(t.guard);
        target[i] = t.to;
      }
      Formula guard = reduce_guard(guards, values);
      if (!guard.is_false() && is_satisfiable(guard, opt.atom_cap)) {
        const std::size_t to = intern_node(target);
        const auto key = std::make_pair(node, to);
        auto it = edge_at.find(key);
        if (it == edge_at.end()) {
          edge_at.emplace(key, g.edges.size());
          g.edges.push_back({node, to, std::move(guard)});
        } else {
          Formula& merged = g.edges[it->second].guard;
          merged = Formula::disjunction({std::move(merged), std::move(guard)});
        }
      }

      std::size_t i = sys.machines.size();
      while (i > 0) {
        --i;
        if (++pick[i] < choices[i]->size()) break;
        pick[i] = 0;
        if (i == 0) goto node_done;
      }
    }
  node_done:;
  }

  return g;
}

}  // namespace csmv
