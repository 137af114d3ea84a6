#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "csmv/csm.hpp"
#include "csmv/formula.hpp"

namespace csmv {

// One statechart transition. The trigger is either an event (with an optional
// condition rider, covering "on e, if c" edges) or a bare condition formula;
// exactly one of the two shapes must be present. Actions are emitted when the
// transition is taken; `inserted_names` optionally names the intermediate
// states the transformation introduces for this edge, in chain order
// (acknowledge-send state first, then action state).
struct StatechartTransition {
  std::string from;
  std::string to;
  std::optional<Symbol> event;
  std::optional<Formula> condition;
  std::vector<Symbol> actions;
  std::vector<std::string> inserted_names;

  // The formula that takes the edge: event, event*condition, or condition.
  Formula trigger_guard() const;

  friend bool operator==(const StatechartTransition&,
                         const StatechartTransition&) = default;
};

struct Statechart {
  std::string name;
  std::vector<std::string> states;
  std::string initial;
  std::vector<StatechartTransition> transitions;

  friend bool operator==(const Statechart&, const Statechart&) = default;
};

// Classifies every symbol a statechart may use. Messages travel between
// machines and get acknowledged; environment events come from outside;
// conditions are logical flags tested in formulas; external actions leave the
// system without acknowledgement. The four sets must be pairwise disjoint.
struct MessageDecl {
  SymbolSet messages;
  SymbolSet environment_events;
  SymbolSet conditions;
  SymbolSet external_actions;

  friend bool operator==(const MessageDecl&, const MessageDecl&) = default;
};

// The acknowledgement symbol paired with a message.
std::string ack_symbol(const Symbol& message);

// Errors: duplicate/unknown states, missing initial, transitions without a
// trigger, symbols not classified by the declaration (or classified in the
// wrong role), overlapping declaration sets, unusable inserted-state names.
// Warnings: states unreachable along statechart edges.
ValidationReport validate_statechart(const Statechart& s, const MessageDecl& d);

struct TransformResult {
  Csm machine;
  // Names of the intermediate states the transformation introduced.
  std::vector<std::string> inserted_states;
  // For each source transition, the CSM transitions realizing it, in chain
  // order: entry edge, exit edge, then the acknowledgement-wait self-loop if
  // one was needed.
  std::vector<std::vector<std::size_t>> edge_transitions;
  // Indices of the stay self-loops added to the source states.
  std::vector<std::size_t> stay_loops;
};

// Statechart-to-CSM transformation with the acknowledgement handshake:
// receiving a message event inserts a state that emits ACK<event> for one step;
// emitted message actions are followed by a wait for ACK<action>; environment
// events, conditions and external actions need neither. Every source state
// gets a stay self-loop guarded by the negated sum of its outgoing triggers
// (omitted when that is unsatisfiable), so the result is complete.
TransformResult to_csm(const Statechart& s, const MessageDecl& d,
                       std::size_t atom_cap = kDefaultAtomCap);

// Returns a copy of the machine with `extra` added to the state's output set,
// extending the output alphabet as needed. Used to repair handshake deadlocks
// by emitting an acknowledgement "for any case".
Csm augment_outputs(const Csm& m, const std::string& state, const SymbolSet& extra);

}  // namespace csmv
