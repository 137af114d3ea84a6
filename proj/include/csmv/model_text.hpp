#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "csmv/csm.hpp"
#include "csmv/statechart.hpp"
#include "csmv/system.hpp"

namespace csmv {

// A `system` section: member machines by name, in composition order, plus
// optional overrides of the internal/environment symbol split.
struct SystemDecl {
  std::string name;
  std::vector<std::string> members;
  SymbolSet internal_override;
  SymbolSet environment_override;

  friend bool operator==(const SystemDecl&, const SystemDecl&) = default;
};

// Everything a model file declares. Line-oriented format, `#` comments,
// blocks closed by `end`, first line `csmv 1`:
//
//   csm <name>          inputs/outputs lists, `state <n> [/ out,...]`,
//                       `init <n>`, `trans <a> -> <b> : <guard>`
//   statechart <name>   `state`, `init`, and
//                       `trans <a> -> <b> : on <ev> [if <f>] [/ act,...] [as <n>,...]`
//                       or `... : if <f> [/ act,...] [as <n>,...]`
//   messages            message/environment/condition/external symbol lists
//   system <name>       `member <machine>`, optional internal/environment lists
//   accepting           one glob pattern per line
struct ParsedModel {
  int version = 1;
  std::vector<Csm> csms;
  std::vector<Statechart> statecharts;
  std::optional<MessageDecl> messages;
  std::vector<SystemDecl> systems;
  std::vector<std::string> accepting_patterns;

  bool empty() const {
    return csms.empty() && statecharts.empty() && !messages && systems.empty() &&
           accepting_patterns.empty();
  }

  friend bool operator==(const ParsedModel&, const ParsedModel&) = default;
};

// Throws ModelParseError (with the offending line) on syntax errors, duplicate
// names, unknown state references, missing declarations, and guards equal to 0.
ParsedModel parse_model(std::string_view text);

// Canonical deterministic rendering; parse_model(render_model(m)) == m.
std::string render_model(const ParsedModel& m);

// Resolves a system declaration against the file's machines. An empty name
// picks the file's only system. Statechart members must be transformed first.
SystemModel build_system(const ParsedModel& m, const std::string& system_name = "");

// Transforms every statechart into its CSM (consuming the messages section)
// and carries existing machines, systems and accepting patterns over.
ParsedModel transform_model(const ParsedModel& m);

// Environment sequences: one symbol set per line, comma-separated; an empty
// line is the empty set; lines starting with '#' are skipped entirely.
std::vector<SymbolSet> parse_env_sequence(std::string_view text);

}  // namespace csmv
