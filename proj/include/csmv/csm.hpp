#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "csmv/formula.hpp"

namespace csmv {

// Moore-style state: outputs are emitted for as long as the machine sits here.
struct CsmState {
  std::string name;
  SymbolSet outputs;

  friend bool operator==(const CsmState&, const CsmState&) = default;
};

struct CsmTransition {
  std::string from;
  Formula guard;
  std::string to;

  friend bool operator==(const CsmTransition&, const CsmTransition&) = default;
};

// Behavioral pattern of one concurrent state machine. A transition fires on
// exactly the subsets of the input alphabet that satisfy its guard; the input
// and output alphabets may overlap (a machine hears its own outputs).
struct Csm {
  std::string name;
  SymbolSet input_alphabet;
  SymbolSet output_alphabet;
  std::vector<CsmState> states;
  std::string initial;
  std::vector<CsmTransition> transitions;

  const CsmState* find_state(const std::string& state_name) const;
  // Indices into `transitions`, in declared order.
  std::vector<std::size_t> outgoing(const std::string& state_name) const;

  friend bool operator==(const Csm&, const Csm&) = default;
};

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;

  bool ok() const { return errors.empty(); }
};

// Errors: duplicate state names, missing/unknown initial state, dangling
// transition endpoints, guard atoms outside the input alphabet, outputs
// outside the output alphabet, and guards that can never fire (the constant 0
// or any unsatisfiable formula). Warnings: unreachable states, incomplete
// states (outgoing guards do not cover every input subset), and overlapping
// guards (nondeterminism, which is legal).
ValidationReport validate_csm(const Csm& m, std::size_t atom_cap = kDefaultAtomCap);

// True when the disjunction of the state's outgoing guards is a tautology.
bool state_is_complete(const Csm& m, const std::string& state_name,
                       std::size_t atom_cap = kDefaultAtomCap);

// Adds to every incomplete state a self-loop guarded by the negated sum of its
// outgoing guards, making the machine complete. Requires an error-free
// machine; idempotent.
Csm completeness_closure(const Csm& m, std::size_t atom_cap = kDefaultAtomCap);

// States reachable from the initial state via transitions whose guards are
// satisfiable. Tolerates invalid machines (unknown endpoints are skipped).
std::set<std::string> local_reachable_states(const Csm& m,
                                             std::size_t atom_cap = kDefaultAtomCap);

}  // namespace csmv
