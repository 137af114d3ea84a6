#include <random>
#include <set>
#include <string>
#include <vector>

#include "csmv/errors.hpp"
#include "csmv/model_text.hpp"
#include "csmv/simulate.hpp"
#include "csmv/system.hpp"
#include "support/oracle.hpp"
#include "support/random_gen.hpp"
#include "support/testutil.hpp"
#include "doctest.h"

using namespace csmv;

namespace {

// Every state vector the simulator can reach in one step under `env`.
std::set<std::vector<std::string>> step_targets(const SystemModel& s,
                                                const std::vector<std::string>& from,
                                                const SymbolSet& env) {
  std::set<std::vector<std::string>> out;
  for (const auto& opt : step(s, from, env, ChoicePolicy::kEnumerateAll).options)
    out.insert(opt.next);
  return out;
}

// The composed graph and the step function must allow exactly the same moves
// from every reachable vector under every environment choice.
void check_bisimulation(const SystemModel& s, const ReachabilityGraph& g) {
  const auto env_subsets = testutil::all_subsets(s.environment_symbols());
  for (std::size_t v = 0; v < g.nodes.size(); ++v) {
    for (const auto& env : env_subsets) {
      std::set<std::vector<std::string>> graph_targets;
      for (const auto& e : g.edges)
        if (e.from == v && eval(e.guard, env))
          graph_targets.insert(g.nodes[e.to].components);
      CAPTURE(g.nodes[v].name);
      CHECK(step_targets(s, g.nodes[v].components, env) == graph_targets);
    }
  }
}

}  // namespace

TEST_CASE("simulate: steps follow the broadcast semantics") {
  const SystemModel s = testutil::make_m1_system();

  StepRecord r = step(s, {"wait"}, {});
  CHECK(r.before == std::vector<std::string>{"wait"});
  CHECK(r.global_set.empty());
  REQUIRE(r.options.size() == 1);
  CHECK(r.options[0].next == std::vector<std::string>{"wait"});
  CHECK(r.options[0].chosen == std::vector<std::size_t>{1});

  r = step(s, {"wait"}, {"start"});
  CHECK(r.options[0].next == std::vector<std::string>{"run"});
  CHECK(r.options[0].chosen == std::vector<std::size_t>{0});
  CHECK(step_targets(s, {"wait"}, {"start", "end"}) ==
        std::set<std::vector<std::string>>{{"run"}});
  CHECK(step_targets(s, {"wait"}, {"end"}) ==
        std::set<std::vector<std::string>>{{"wait"}});

  // The running state broadcasts its output into the global set.
  r = step(s, {"run"}, {"end"});
  CHECK(r.global_set == SymbolSet{"end", "go"});
  CHECK(r.options[0].next == std::vector<std::string>{"wait"});
  CHECK(step_targets(s, {"run"}, {}) ==
        std::set<std::vector<std::string>>{{"run"}});
}

TEST_CASE("simulate: the environment cannot inject internal symbols") {
  const SystemModel s = testutil::make_m1_system();
  CHECK_THROWS_WITH_AS(step(s, {"wait"}, {"go"}),
                       "environment step injects internal symbol 'go'", Error);
}

TEST_CASE("simulate: a machine with no enabled transition is reported") {
  SystemModel s = testutil::make_m1_system();
  s.machines[0].transitions.erase(s.machines[0].transitions.begin() + 1);
  CHECK_THROWS_WITH_AS(step(s, {"wait"}, {}),
                       "machine 'M1' has no enabled transition in state 'wait' "
                       "(incomplete machine?)",
                       Error);
}

TEST_CASE("simulate: policies resolve nondeterministic choices") {
  // Two always-on transitions out of `a` make every step a branch.
  Csm m;
  m.name = "N";
  m.input_alphabet = {};
  m.states = {{"a", {}}, {"b", {}}};
  m.initial = "a";
  m.transitions = {
      {"a", Formula::constant(true), "a"},
      {"a", Formula::constant(true), "b"},
      {"b", Formula::constant(true), "b"},
  };
  SystemModel s;
  s.name = "branchy";
  s.machines = {m};

  const StepRecord all = step(s, {"a"}, {}, ChoicePolicy::kEnumerateAll);
  REQUIRE(all.options.size() == 2);
  CHECK(all.options[0] == StepOption{{0}, {"a"}});
  CHECK(all.options[1] == StepOption{{1}, {"b"}});

  const StepRecord first = step(s, {"a"}, {}, ChoicePolicy::kFirstDeclared);
  REQUIRE(first.options.size() == 1);
  CHECK(first.options[0] == StepOption{{0}, {"a"}});

  const StepRecord r1 = step(s, {"a"}, {}, ChoicePolicy::kSeededRandom, 7);
  const StepRecord r2 = step(s, {"a"}, {}, ChoicePolicy::kSeededRandom, 7);
  REQUIRE(r1.options.size() == 1);
  CHECK(r1.options == r2.options);
  CHECK((r1.options[0].next == std::vector<std::string>{"a"} ||
         r1.options[0].next == std::vector<std::string>{"b"}));

  CHECK_THROWS_WITH_AS(run(s, {{}}, ChoicePolicy::kEnumerateAll),
                       "nondeterministic choice at step 1; resolve it with the "
                       "seeded-random or first-declared policy",
                       Error);
  const Trace picked = run(s, {{}, {}}, ChoicePolicy::kFirstDeclared);
  CHECK(picked.steps.size() == 2);
}

TEST_CASE("simulate: runs fold steps over an environment sequence") {
  const SystemModel s = testutil::make_m1_system();
  const std::vector<SymbolSet> seq = parse_env_sequence(
      testutil::read_file(testutil::fixture_path("envs/m1-demo.env")));
  REQUIRE(seq == std::vector<SymbolSet>{{"start"}, {"start", "end"}, {"end"}, {}});

  const Trace trace = run(s, seq);
  CHECK(trace.initial == std::vector<std::string>{"wait"});
  REQUIRE(trace.steps.size() == 4);
  CHECK(trace.steps[0].after == std::vector<std::string>{"run"});
  CHECK(trace.steps[0].global_set == SymbolSet{"start"});
  CHECK(trace.steps[1].before == std::vector<std::string>{"run"});
  CHECK(trace.steps[1].global_set == SymbolSet{"end", "go", "start"});
  CHECK(trace.steps[1].after == std::vector<std::string>{"wait"});
  CHECK(trace.steps[2].after == std::vector<std::string>{"wait"});
  CHECK(trace.steps[3].after == std::vector<std::string>{"wait"});

  // A deterministic system runs under the exhaustive policy as well.
  const Trace exhaustive = run(s, seq, ChoicePolicy::kEnumerateAll);
  CHECK(exhaustive.steps.size() == 4);
  CHECK(exhaustive.steps[3].after == trace.steps[3].after);
}

TEST_CASE("simulate: the step function and the composed graph allow the same moves") {
  const SystemModel fixture = testutil::load_design_system("design-original");
  check_bisimulation(fixture, compose(fixture));

  std::mt19937_64 rng(991);
  for (int round = 0; round < 25; ++round) {
    CAPTURE(round);
    const SystemModel s = testutil::random_system(rng);
    check_bisimulation(s, compose(s));
  }
}
