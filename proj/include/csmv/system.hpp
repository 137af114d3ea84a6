#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "csmv/csm.hpp"
#include "csmv/formula.hpp"

namespace csmv {

// A closed system of machines composed by synchronous broadcast. Any symbol
// some member outputs is internal everywhere and cannot be injected by the
// environment; the declared sets below override that default (a symbol listed
// in `declared_environment` stays external even if a machine produces it).
struct SystemModel {
  std::string name;
  std::vector<Csm> machines;
  SymbolSet declared_internal;
  SymbolSet declared_environment;
  std::vector<std::string> accepting_patterns;

  SymbolSet internal_symbols() const;
  SymbolSet environment_symbols() const;

  friend bool operator==(const SystemModel&, const SystemModel&) = default;
};

ValidationReport validate_system(const SystemModel& s,
                                 std::size_t atom_cap = kDefaultAtomCap);

// Applies the completeness closure to every member that needs it.
SystemModel with_closure(const SystemModel& s,
                         std::size_t atom_cap = kDefaultAtomCap);

// Union of the outputs of the states in `vec` (one state name per machine).
SymbolSet system_output(const SystemModel& s, const std::vector<std::string>& vec);

// Product of the chosen guards with every internal symbol fixed to whether the
// `from` vector currently emits it; the result mentions environment symbols
// only. `chosen` holds one transition per machine, departing from `from`.
Formula edge_guard(const SystemModel& s, const std::vector<std::string>& from,
                   const std::vector<const CsmTransition*>& chosen);

struct SystemState {
  std::vector<std::string> components;  // one state name per machine
  std::string name;                     // component names joined with '_'
  SymbolSet outputs;

  friend bool operator==(const SystemState&, const SystemState&) = default;
};

struct ReachabilityGraph {
  struct Edge {
    std::size_t from = 0;
    std::size_t to = 0;
    Formula guard;

    friend bool operator==(const Edge&, const Edge&) = default;
  };

  std::vector<std::string> machine_names;
  std::vector<SystemState> nodes;  // BFS discovery order; nodes[initial] first
  std::size_t initial = 0;
  std::vector<Edge> edges;
  std::vector<std::string> accepting_patterns;

  std::size_t find_node(const std::string& name) const;  // npos when absent
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  friend bool operator==(const ReachabilityGraph&, const ReachabilityGraph&) = default;
};

struct ComposeOptions {
  bool close_incomplete = false;
  std::size_t atom_cap = kDefaultAtomCap;
};

// Breadth-first exploration of the synchronous product. Per step the global
// symbol set is the environment's choice plus everything the current vector
// outputs; each machine takes some transition whose guard that set satisfies.
// Edges keep only satisfiable reduced guards; parallel edges between the same
// node pair merge by disjunction; self-loops are retained. Deterministic:
// identical inputs yield identical graphs. Throws on invalid members, and on
// incomplete members unless `close_incomplete` is set.
ReachabilityGraph compose(const SystemModel& s, const ComposeOptions& opt = {});

}  // namespace csmv
