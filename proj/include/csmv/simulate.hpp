#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "csmv/system.hpp"

namespace csmv {

enum class ChoicePolicy {
  kEnumerateAll,   // return every combined choice
  kSeededRandom,   // pick one, reproducibly from the seed
  kFirstDeclared,  // pick each machine's first enabled transition
};

// One combined choice: per machine the index (into its transition list) of the
// transition taken, and the resulting state vector.
struct StepOption {
  std::vector<std::size_t> chosen;
  std::vector<std::string> next;

  friend bool operator==(const StepOption&, const StepOption&) = default;
};

struct StepRecord {
  SymbolSet env;
  std::vector<std::string> before;
  SymbolSet global_set;  // env plus everything `before` outputs
  std::vector<StepOption> options;  // all of them, or the single pick
};

// One synchronous broadcast step from `from` under the environment's symbol
// choice. Throws when `env` contains an internal symbol, when the vector is
// invalid, and when some machine has no enabled transition (impossible for
// complete machines, so it is reported as an internal consistency failure).
StepRecord step(const SystemModel& s, const std::vector<std::string>& from,
                const SymbolSet& env, ChoicePolicy policy = ChoicePolicy::kEnumerateAll,
                std::uint64_t seed = 0);

struct TraceStep {
  SymbolSet env;
  std::vector<std::string> before;
  SymbolSet global_set;
  std::vector<std::size_t> chosen;
  std::vector<std::string> after;
};

struct Trace {
  std::vector<std::string> initial;
  std::vector<TraceStep> steps;
};

// Folds step over the sequence. With kEnumerateAll any branching step is an
// error; use kSeededRandom or kFirstDeclared to resolve nondeterminism.
Trace run(const SystemModel& s, const std::vector<SymbolSet>& env_sequence,
          ChoicePolicy policy = ChoicePolicy::kFirstDeclared,
          std::uint64_t seed = 0);

}  // namespace csmv
