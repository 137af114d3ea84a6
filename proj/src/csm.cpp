#include "csmv/csm.hpp"

#include <set>
#include <string>

namespace csmv {

const CsmState* Csm::find_state(const std::string& state_name) const {
  for (const auto& st : states)
    if (st.name == state_name) return &st;
  return nullptr;
}

std::vector<std::size_t> Csm::outgoing(const std::string& state_name) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < transitions.size(); ++i)
    if (transitions[i].from == state_name) out.push_back(i);
  return out;
}

ValidationReport validate_csm(const Csm& m, std::size_t atom_cap) {
  ValidationReport report;

  std::set<std::string> names;
  for (const auto& st : m.states)
    if (!names.insert(st.name).second)
      report.errors.push_back("duplicate state name '" + st.name + "'");

  if (m.initial.empty())
    report.errors.push_back("no initial state declared");
  else if (!names.count(m.initial))
    report.errors.push_back("initial state '" + m.initial + "' does not exist");

  for (const auto& st : m.states)
    for (const auto& out : st.outputs)
      if (!m.output_alphabet.count(out))
        report.errors.push_back("state '" + st.name + "' emits '" + out +
                                "', which is not in the output alphabet");

  for (std::size_t i = 0; i < m.transitions.size(); ++i) {
    const auto& t = m.transitions[i];
    const std::string where =
        "transition " + std::to_string(i) + " (" + t.from + " -> " + t.to + ")";
    if (!names.count(t.from))
      report.errors.push_back(where + ": unknown source state");
    if (!names.count(t.to))
      report.errors.push_back(where + ": unknown target state");
    for (const auto& a : atoms(t.guard))
      if (!m.input_alphabet.count(a))
        report.errors.push_back(where + ": guard atom '" + a +
                                "' is not in the input alphabet");
    if (t.guard.is_false()) {
      report.errors.push_back(
          where + ": guard is 0; such transitions never fire and must be removed");
    } else {
      try {
        if (!is_satisfiable(t.guard, atom_cap))
          report.errors.push_back(where + ": guard '" + render_formula(t.guard) +
                                  "' is unsatisfiable");
      } catch (const AtomCapError&) {
        report.warnings.push_back(where +
                                  ": guard satisfiability not checked (atom cap)");
      }
    }
  }

  // The structural passes below assume a well-formed machine.
  if (!report.errors.empty()) return report;

  const auto reachable = local_reachable_states(m, atom_cap);
  for (const auto& st : m.states)
    if (!reachable.count(st.name))
      report.warnings.push_back("state '" + st.name + "' is unreachable from '" +
                                m.initial + "'");

  for (const auto& st : m.states) {
    const auto out = m.outgoing(st.name);
    std::vector<Formula> guards;
    guards.reserve(out.size());
    for (auto idx : out) guards.push_back(m.transitions[idx].guard);

    try {
      if (!is_tautology(Formula::disjunction(guards), atom_cap))
        report.warnings.push_back(
            "state '" + st.name +
            "' is incomplete: its outgoing guards do not cover every input subset");
    } catch (const AtomCapError&) {
      report.warnings.push_back("state '" + st.name +
                                "' completeness not checked (atom cap)");
    }

    for (std::size_t i = 0; i < out.size(); ++i)
      for (std::size_t j = i + 1; j < out.size(); ++j) {
        try {
          if (is_satisfiable(conjoin({m.transitions[out[i]].guard,
                                      m.transitions[out[j]].guard}),
                             atom_cap))
            report.warnings.push_back(
                "state '" + st.name + "': transitions " + std::to_string(out[i]) +
                " and " + std::to_string(out[j]) +
                " overlap (nondeterministic choice)");
        } catch (const AtomCapError&) {
          // Too large to check; overlap is only advisory anyway.
        }
      }
  }

  return report;
}

bool state_is_complete(const Csm& m, const std::string& state_name,
                       std::size_t atom_cap) {
  std::vector<Formula> guards;
  for (auto idx : m.outgoing(state_name)) guards.push_back(m.transitions[idx].guard);
  return is_tautology(Formula::disjunction(std::move(guards)), atom_cap);
}

Csm completeness_closure(const Csm& m, std::size_t atom_cap) {
  const auto report = validate_csm(m, atom_cap);
  if (!report.ok())
    throw Error("completeness closure of '" + m.name +
                "' requires a valid machine: " + report.errors.front());

  Csm closed = m;
  for (const auto& st : m.states) {
    std::vector<Formula> guards;
    for (auto idx : m.outgoing(st.name)) guards.push_back(m.transitions[idx].guard);
    Formula stay = Formula::negation(Formula::disjunction(std::move(guards)));
    if (stay.is_false()) continue;
    if (!is_satisfiable(stay, atom_cap)) continue;  // already complete
    closed.transitions.push_back({st.name, stay, st.name});
  }
  return closed;
}

std::set<std::string> local_reachable_states(const Csm& m, std::size_t atom_cap) {
  std::set<std::string> seen;
  if (!m.find_state(m.initial)) return seen;
  std::vector<std::string> stack{m.initial};
  seen.insert(m.initial);
  while (!stack.empty()) {
    const std::string current = stack.back();
    stack.pop_back();
    for (const auto& t : m.transitions) {
      if (t.from != current || seen.count(t.to) || !m.find_state(t.to)) continue;
      bool sat = true;
      try {
        sat = is_satisfiable(t.guard, atom_cap);
      } catch (const AtomCapError&) {
        sat = true;  // cannot decide; assume traversable
      }
      if (sat) {
        seen.insert(t.to);
        stack.push_back(t.to);
      }
    }
  }
  return seen;
}

}  // namespace csmv
