#include "csmv/simulate.hpp"

#include <random>

namespace csmv {

namespace {

StepRecord step_impl(const SystemModel& s, const std::vector<std::string>& from,
                     const SymbolSet& env, ChoicePolicy policy,
                     std::mt19937_64* rng) {
  const SymbolSet internal = s.internal_symbols();
  for (const auto& sym : env)
    if (internal.count(sym))
      throw Error("environment step injects internal symbol '" + sym + "'");

  StepRecord record;
  record.env = env;
  record.before = from;
  record.global_set = system_output(s, from);  // validates the vector
  record.global_set.insert(env.begin(), env.end());

  std::vector<std::vector<std::size_t>> enabled(s.machines.size());
  for (std::size_t i = 0; i < s.machines.size(); ++i) {
    const Csm& m = s.machines[i];
    for (auto idx : m.outgoing(from[i]))
      if (eval(m.transitions[idx].guard, record.global_set))
        enabled[i].push_back(idx);
    if (enabled[i].empty())
      throw Error("machine '" + m.name + "' has no enabled transition in state '" +
                  from[i] + "' (incomplete machine?)");
  }

  auto option_from = [&](const std::vector<std::size_t>& pick) {
    StepOption opt;
    opt.chosen.resize(s.machines.size());
    opt.next.resize(s.machines.size());
    for (std::size_t i = 0; i < s.machines.size(); ++i) {
      opt.chosen[i] = enabled[i][pick[i]];
      opt.next[i] = s.machines[i].transitions[opt.chosen[i]].to;
    }
    return opt;
  };

  switch (policy) {
    case ChoicePolicy::kFirstDeclared:
      record.options.push_back(option_from(std::vector<std::size_t>(s.machines.size(), 0)));
      break;
    case ChoicePolicy::kSeededRandom: {
      std::vector<std::size_t> pick(s.machines.size());
      for (std::size_t i = 0; i < s.machines.size(); ++i) {
        std::uniform_int_distribution<std::size_t> dist(0, enabled[i].size() - 1);
        pick[i] = dist(*rng);
      }
      record.options.push_back(option_from(pick));
      break;
    }
    case ChoicePolicy::kEnumerateAll: {
      std::vector<std::size_t> pick(s.machines.size(), 0);
      for (;;) {
        record.options.push_back(option_from(pick));
        std::size_t i = s.machines.size();
        bool done = false;
        while (i > 0) {
          --i;
          if (++pick[i] < enabled[i].size()) break;
          pick[i] = 0;
          if (i == 0) done = true;
        }
        if (done) break;
      }
      break;
    }
  }
  return record;
}

}  // namespace

StepRecord step(const SystemModel& s, const std::vector<std::string>& from,
                const SymbolSet& env, ChoicePolicy policy, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return step_impl(s, from, env, policy, &rng);
}

Trace run(const SystemModel& s, const std::vector<SymbolSet>& env_sequence,
          ChoicePolicy policy, std::uint64_t seed) {
  Trace trace;
  for (const auto& m : s.machines) trace.initial.push_back(m.initial);

  std::mt19937_64 rng(seed);
  std::vector<std::string> current = trace.initial;
  for (std::size_t k = 0; k < env_sequence.size(); ++k) {
    StepRecord record = step_impl(s, current, env_sequence[k], policy, &rng);
    if (record.options.size() != 1)
      throw Error("nondeterministic choice at step " + std::to_string(k + 1) +
                  "; resolve it with the seeded-random or first-declared policy");
    const StepOption& opt = record.options.front();
    trace.steps.push_back({record.env, record.before, record.global_set, opt.chosen,
                           opt.next});
    current = opt.next;
  }
  return trace;
}

}  // namespace csmv
