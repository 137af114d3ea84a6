#include "csmv/statechart.hpp"

#include <set>
#include <utility>

namespace csmv {

Formula StatechartTransition::trigger_guard() const {
  if (event) {
    Formula e = Formula::atom(*event);
    if (condition) return Formula::conjunction({std::move(e), *condition});
    return e;
  }
  if (condition) return *condition;
  throw Error("statechart transition " + from + " -> " + to + " has no trigger");
}

std::string ack_symbol(const Symbol& message) { return "ACK" + message; }

namespace {

void check_disjoint(const SymbolSet& a, const SymbolSet& b,
                    const std::string& what, ValidationReport& report) {
  for (const auto& s : a)
    if (b.count(s))
      report.errors.push_back("symbol '" + s + "' is declared both " + what);
}

// How many intermediate states the transformation inserts for this edge.
std::size_t inserted_count(const StatechartTransition& t, const MessageDecl& d) {
  std::size_t n = 0;
  if (t.event && d.messages.count(*t.event)) ++n;
  if (!t.actions.empty()) ++n;
  return n;
}

}  // namespace

ValidationReport validate_statechart(const Statechart& s, const MessageDecl& d) {
  ValidationReport report;

  check_disjoint(d.messages, d.environment_events, "message and environment event",
                 report);
  check_disjoint(d.messages, d.conditions, "message and condition", report);
  check_disjoint(d.messages, d.external_actions, "message and external action",
                 report);
  check_disjoint(d.environment_events, d.conditions,
                 "environment event and condition", report);
  check_disjoint(d.environment_events, d.external_actions,
                 "environment event and external action", report);
  check_disjoint(d.conditions, d.external_actions,
                 "condition and external action", report);

  std::set<std::string> names;
  for (const auto& st : s.states)
    if (!names.insert(st).second)
      report.errors.push_back("duplicate state name '" + st + "'");

  if (s.initial.empty())
    report.errors.push_back("no initial state declared");
  else if (!names.count(s.initial))
    report.errors.push_back("initial state '" + s.initial + "' does not exist");

  std::set<std::string> taken_names = names;
  for (std::size_t i = 0; i < s.transitions.size(); ++i) {
    const auto& t = s.transitions[i];
    const std::string where =
        "transition " + std::to_string(i) + " (" + t.from + " -> " + t.to + ")";
    if (!names.count(t.from))
      report.errors.push_back(where + ": unknown source state");
    if (!names.count(t.to))
      report.errors.push_back(where + ": unknown target state");

    if (!t.event && !t.condition)
      report.errors.push_back(where + ": no trigger (need an event or a condition)");
    if (t.event) {
      const auto& e = *t.event;
      if (d.conditions.count(e) || d.external_actions.count(e))
        report.errors.push_back(where + ": '" + e +
                                "' is not an event (check its classification)");
      else if (!d.messages.count(e) && !d.environment_events.count(e))
        report.errors.push_back(where + ": event '" + e + "' is not classified");
    }
    if (t.condition)
      for (const auto& a : atoms(*t.condition))
        if (!d.conditions.count(a))
          report.errors.push_back(where + ": condition atom '" + a +
                                  "' is not a declared condition");
    for (const auto& a : t.actions) {
      if (d.environment_events.count(a) || d.conditions.count(a))
        report.errors.push_back(where + ": '" + a +
                                "' is not an action (check its classification)");
      else if (!d.messages.count(a) && !d.external_actions.count(a))
        report.errors.push_back(where + ": action '" + a + "' is not classified");
    }

    const std::size_t slots = inserted_count(t, d);
    if (t.inserted_names.size() > slots)
      report.errors.push_back(where + ": " +
                              std::to_string(t.inserted_names.size()) +
                              " inserted-state names given but the edge inserts " +
                              std::to_string(slots) + " state(s)");
    for (const auto& n : t.inserted_names)
      if (!taken_names.insert(n).second)
        report.errors.push_back(where + ": inserted-state name '" + n +
                                "' is already in use");
  }

  if (!report.errors.empty()) return report;

  std::set<std::string> reachable{s.initial};
  std::vector<std::string> stack{s.initial};
  while (!stack.empty()) {
    const std::string current = stack.back();
    stack.pop_back();
    for (const auto& t : s.transitions)
      if (t.from == current && reachable.insert(t.to).second)
        stack.push_back(t.to);
  }
  for (const auto& st : s.states)
    if (!reachable.count(st))
      report.warnings.push_back("state '" + st + "' is unreachable from '" +
                                s.initial + "'");

  return report;
}

TransformResult to_csm(const Statechart& s, const MessageDecl& d,
                       std::size_t atom_cap) {
  const auto report = validate_statechart(s, d);
  if (!report.ok())
    throw Error("statechart '" + s.name + "': " + report.errors.front());

  TransformResult result;
  Csm& m = result.machine;
  m.name = s.name;
  m.initial = s.initial;

  std::set<std::string> used_names;
  for (const auto& st : s.states) {
    m.states.push_back({st, {}});
    used_names.insert(st);
  }

  for (const auto& t : s.transitions) {
    if (t.event) {
      m.input_alphabet.insert(*t.event);
      if (d.messages.count(*t.event))
        m.output_alphabet.insert(ack_symbol(*t.event));
    }
    if (t.condition)
      for (const auto& a : atoms(*t.condition)) m.input_alphabet.insert(a);
    for (const auto& a : t.actions) {
      m.output_alphabet.insert(a);
      if (d.messages.count(a)) m.input_alphabet.insert(ack_symbol(a));
    }
  }

  auto fresh_name = [&used_names](const std::string& base) {
    std::string candidate = base;
    int n = 2;
    while (used_names.count(candidate)) candidate = base + std::to_string(n++);
    used_names.insert(candidate);
    return candidate;
  };

  for (const auto& t : s.transitions) {
    std::vector<std::size_t> chain;
    std::size_t name_cursor = 0;
    auto take_name = [&](const std::string& fallback) -> std::string {
      if (name_cursor < t.inserted_names.size())
        return t.inserted_names[name_cursor++];  // uniqueness checked by validate
      return fresh_name(fallback);
    };
    auto add_state = [&](const std::string& name, SymbolSet outputs) {
      used_names.insert(name);
      m.states.push_back({name, std::move(outputs)});
      result.inserted_states.push_back(name);
    };

    std::string cursor = t.from;
    Formula pending = t.trigger_guard();

    if (t.event && d.messages.count(*t.event)) {
      // Receiving a message must be acknowledged: emit ACK for one step.
      const std::string ack_state = take_name(t.from + "__ack_" + *t.event);
      add_state(ack_state, {ack_symbol(*t.event)});
      chain.push_back(m.transitions.size());
      m.transitions.push_back({cursor, std::move(pending), ack_state});
      cursor = ack_state;
      pending = Formula::constant(true);
    }

    bool waits = false;
    if (!t.actions.empty()) {
      const std::string act_state = take_name(t.from + "__" + t.to + "__act");
      add_state(act_state, SymbolSet(t.actions.begin(), t.actions.end()));
      chain.push_back(m.transitions.size());
      m.transitions.push_back({cursor, std::move(pending), act_state});
      cursor = act_state;
      // Sending a message is followed by waiting for its acknowledgement;
      // purely external actions leave immediately.
      std::vector<Formula> acks;
      for (const auto& a : t.actions)
        if (d.messages.count(a)) acks.push_back(Formula::atom(ack_symbol(a)));
      pending = Formula::conjunction(std::move(acks));
      waits = !pending.is_true();
    }

    chain.push_back(m.transitions.size());
    m.transitions.push_back({cursor, pending, t.to});
    if (waits) {
      chain.push_back(m.transitions.size());
      m.transitions.push_back({cursor, Formula::negation(pending), cursor});
    }
    result.edge_transitions.push_back(std::move(chain));
  }

  // Each source state keeps its configuration until some trigger fires.
  for (const auto& st : s.states) {
    std::vector<Formula> triggers;
    for (const auto& t : s.transitions)
      if (t.from == st) triggers.push_back(t.trigger_guard());
    Formula stay = Formula::negation(Formula::disjunction(std::move(triggers)));
    if (stay.is_false()) continue;
    if (!is_satisfiable(stay, atom_cap)) continue;
    result.stay_loops.push_back(m.transitions.size());
    m.transitions.push_back({st, std::move(stay), st});
  }

  return result;
}

Csm augment_outputs(const Csm& m, const std::string& state, const SymbolSet& extra) {
  Csm out = m;
  for (auto& st : out.states) {
    if (st.name != state) continue;
    st.outputs.insert(extra.begin(), extra.end());
    out.output_alphabet.insert(extra.begin(), extra.end());
    return out;
  }
  throw Error("machine '" + m.name + "' has no state '" + state + "'");
}

}  // namespace csmv
