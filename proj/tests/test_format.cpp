#include <string>
#include <vector>

#include "csmv/dot_export.hpp"
#include "csmv/errors.hpp"
#include "csmv/graph_json.hpp"
#include "csmv/model_text.hpp"
#include "csmv/statechart.hpp"
#include "csmv/system.hpp"
#include "support/testutil.hpp"
#include "doctest.h"

using namespace csmv;

namespace {

void expect_parse_error(const std::string& text, const std::string& message,
                        std::size_t line) {
  CAPTURE(message);
  try {
    parse_model(text);
    FAIL_CHECK("no error raised");
  } catch (const ModelParseError& e) {
    CHECK(std::string(e.what()) ==
          "line " + std::to_string(line) + ": " + message);
    CHECK(e.line == line);
  }
}

const char* kFullModel = R"(csmv 1

csm A
  inputs x, y
  outputs z, w
  state s0
  state s1 / z, w
  init s0
  trans s0 -> s1 : x * !y
  trans s0 -> s0 : !(x * !y)
  trans s1 -> s1 : 1
end

statechart B
  state P
  state Q
  init P
  trans P -> Q : on Msg if c1 * !c2 / Act, Out as Recv, Emit
  trans Q -> P : if c1 + c2
  trans Q -> Q : on Tick / Show
end

messages
  message Msg, Out
  environment Tick
  condition c1, c2
  external Act, Show
end

system sys
  member A
  internal z
  environment x
end

accepting
  s1_*
  *_P
end
)";

}  // namespace

TEST_CASE("format: parsing the statechart fixture") {
  const ParsedModel m = parse_model(testutil::read_file(
      testutil::fixture_path("design-original/statecharts.csmv")));
  CHECK(m.version == 1);
  CHECK(m.csms.empty());
  REQUIRE(m.statecharts.size() == 2);
  CHECK(m.statecharts[0].name == "DIM");
  CHECK(m.statecharts[0].states.size() == 4);
  CHECK(m.statecharts[0].transitions.size() == 6);
  CHECK(m.statecharts[0].transitions[0].inserted_names ==
        std::vector<std::string>{"SendGo"});
  CHECK(m.statecharts[1].name == "CCM");
  REQUIRE(m.messages.has_value());
  CHECK(m.messages->messages == SymbolSet{"DecisionRequest", "Go", "StopIteration"});
  CHECK(m.messages->conditions == SymbolSet{"CC_DP", "CC_OC", "M_OF"});
  CHECK(m.messages->external_actions == SymbolSet{"VisualizeP"});
  REQUIRE(m.systems.size() == 1);
  CHECK(m.systems[0].name == "design");
  CHECK(m.systems[0].members == std::vector<std::string>{"DIM", "CCM"});
  CHECK(m.accepting_patterns == std::vector<std::string>{"EndDes_*"});
}

TEST_CASE("format: parsing the machine fixture") {
  const ParsedModel m = parse_model(testutil::read_file(
      testutil::fixture_path("design-original/system.csmv")));
  CHECK(m.statecharts.empty());
  CHECK(!m.messages.has_value());
  REQUIRE(m.csms.size() == 2);
  CHECK(m.csms[0].name == "DIM");
  CHECK(m.csms[0].states.size() == 9);
  CHECK(m.csms[0].transitions.size() == 18);
  CHECK(m.csms[0].input_alphabet.size() == 8);
  CHECK(m.csms[1].name == "CCM");
  CHECK(m.csms[1].states.size() == 5);
  CHECK(m.csms[1].transitions.size() == 9);
}

TEST_CASE("format: rendering and reparsing is the identity") {
  const std::vector<std::string> sources = {
      testutil::read_file(
          testutil::fixture_path("design-original/statecharts.csmv")),
      testutil::read_file(
          testutil::fixture_path("design-original/system.csmv")),
      testutil::read_file(
          testutil::fixture_path("design-repaired/system.csmv")),
      testutil::read_file(testutil::fixture_path("m1.csmv")),
      kFullModel,
  };
  for (std::size_t i = 0; i < sources.size(); ++i) {
    CAPTURE(i);
    const ParsedModel m = parse_model(sources[i]);
    const std::string canon = render_model(m);
    CHECK(parse_model(canon) == m);
    // The canonical form is a fixed point.
    CHECK(render_model(parse_model(canon)) == canon);
  }
}

TEST_CASE("format: the full grammar survives a round trip") {
  const ParsedModel m = parse_model(kFullModel);
  REQUIRE(m.csms.size() == 1);
  CHECK(m.csms[0].output_alphabet == SymbolSet{"w", "z"});
  CHECK(m.csms[0].states[1].outputs == SymbolSet{"w", "z"});
  REQUIRE(m.statecharts.size() == 1);
  const StatechartTransition& t = m.statecharts[0].transitions[0];
  CHECK(t.event == "Msg");
  REQUIRE(t.condition.has_value());
  CHECK(*t.condition == parse_formula("c1 * !c2"));
  CHECK(t.actions == std::vector<Symbol>{"Act", "Out"});
  CHECK(t.inserted_names == std::vector<std::string>{"Recv", "Emit"});
  CHECK(!m.statecharts[0].transitions[1].event.has_value());
  CHECK(m.statecharts[0].transitions[2].actions == std::vector<Symbol>{"Show"});
  REQUIRE(m.systems.size() == 1);
  CHECK(m.systems[0].internal_override == SymbolSet{"z"});
  CHECK(m.systems[0].environment_override == SymbolSet{"x"});
  CHECK(m.accepting_patterns == std::vector<std::string>{"s1_*", "*_P"});
}

TEST_CASE("format: the committed machine fixture is the rendered transformation") {
  const ParsedModel source = parse_model(testutil::read_file(
      testutil::fixture_path("design-original/statecharts.csmv")));
  const ParsedModel transformed = transform_model(source);
  CHECK(transformed.csms.size() == 2);
  CHECK(transformed.statecharts.empty());
  CHECK(!transformed.messages.has_value());
  CHECK(transformed.systems == source.systems);
  CHECK(transformed.accepting_patterns == source.accepting_patterns);
  CHECK(render_model(transformed) ==
        testutil::read_file(testutil::fixture_path("design-original/system.csmv")));
}

TEST_CASE("format: transformation preconditions") {
  const ParsedModel machines = parse_model(testutil::read_file(
      testutil::fixture_path("design-original/system.csmv")));
  CHECK_THROWS_WITH_AS(transform_model(machines),
                       "no statechart sections to transform", Error);

  ParsedModel no_messages = parse_model(testutil::read_file(
      testutil::fixture_path("design-original/statecharts.csmv")));
  no_messages.messages.reset();
  CHECK_THROWS_WITH_AS(transform_model(no_messages),
                       "statechart transformation requires a messages section",
                       Error);
}

TEST_CASE("format: parse errors carry their line number") {
  expect_parse_error("", "empty model file", 1);
  expect_parse_error("# notes only\n", "empty model file", 1);
  expect_parse_error("csm A", "expected the format header 'csmv 1'", 1);
  expect_parse_error("csmv 2", "unsupported format version '2'", 1);
  expect_parse_error("csmv 1", "model file declares no entities", 1);
  expect_parse_error("csmv 1\nwidget W", "unknown section 'widget'", 2);
  expect_parse_error("csmv 1\ncsm", "expected 'csm <name>'", 2);
  expect_parse_error("csmv 1\nmessages extra", "'messages' takes no name", 2);
  expect_parse_error("csmv 1\ncsm A\ninputs\noutputs\nstate s\ninit s",
                     "csm 'A' is missing its 'end'", 2);
  expect_parse_error("csmv 1\ncsm A\nstate s\ninit s\nend",
                     "csm 'A' must declare inputs and outputs", 2);
  expect_parse_error("csmv 1\ncsm A\ninputs\noutputs\nstate s\nend",
                     "csm 'A' has no 'init' line", 2);
  expect_parse_error("csmv 1\ncsm A\ninputs\noutputs\nstate s\ninit z\nend",
                     "initial state 'z' is not declared", 6);
  expect_parse_error("csmv 1\ncsm A\ninputs\noutputs\nstate s\nstate s\ninit s\nend",
                     "duplicate state 's'", 6);
  expect_parse_error(
      "csmv 1\ncsm A\ninputs\noutputs\nstate s\ninit s\ntrans s -> t : 1\nend",
      "unknown state 't'", 7);
  expect_parse_error(
      "csmv 1\ncsm A\ninputs x\noutputs\nstate s\ninit s\ntrans s -> s : x * 0\nend",
      "transition guard is 0; such transitions never fire", 7);
  expect_parse_error("csmv 1\ncsm A\ninputs\noutputs\nstate s\ninit s\nend now",
                     "'end' takes no arguments", 7);
  expect_parse_error("csmv 1\ncsm A\ninputs\noutputs\nstate s\ninit s\ninit s\nend",
                     "duplicate 'init' line", 7);
  expect_parse_error(
      "csmv 1\ncsm A\ninputs\noutputs\nstate s\ninit s\nend\nstatechart A\nstate p\ninit p\nend",
      "duplicate machine name 'A'", 8);
  expect_parse_error(
      "csmv 1\nstatechart B\nstate p\nstate q\ninit p\ntrans p -> q : p / x\nend",
      "expected 'on <event>' or 'if <formula>'", 6);
  expect_parse_error(
      "csmv 1\nstatechart B\nstate p\nstate q\ninit p\ntrans p -> q : if 0\nend",
      "trigger condition is 0; the edge can never fire", 6);
  expect_parse_error(
      "csmv 1\nstatechart B\nstate p\nstate q\ninit p\ntrans p -> q : on E as ,\nend",
      "empty entry in state list", 6);
  expect_parse_error(
      "csmv 1\nstatechart B\nstate p\nstate q\ninit p\ntrans p -> q : on E stray\nend",
      "expected 'if <formula>' after the event", 6);
  expect_parse_error(
      "csmv 1\nstatechart B\nstate p\nstate q\ninit p\ntrans p -> q : on E /\nend",
      "expected actions after '/'", 6);
  expect_parse_error("csmv 1\nsystem s\nend", "system 's' has no members", 2);
  expect_parse_error("csmv 1\nsystem s\nmember A\nmember A\nend",
                     "duplicate member 'A'", 4);
  expect_parse_error("csmv 1\nsystem s\nmember A\nend\nsystem s\nmember A\nend",
                     "duplicate system name 's'", 5);
  expect_parse_error("csmv 1\naccepting\ntwo words\nend",
                     "expected one pattern per line", 3);
  expect_parse_error("csmv 1\nmessages\nmessage Go\nend\nmessages\nend",
                     "duplicate messages section", 5);
  expect_parse_error("csmv 1\ncsm A\ninputs 9bad\noutputs\nstate s\ninit s\nend",
                     "'9bad' is not a valid symbol name", 3);
  expect_parse_error("csmv 1\ncsm A\ninputs x,,y\noutputs\nstate s\ninit s\nend",
                     "empty entry in symbol list", 3);
  expect_parse_error("csmv 1\ncsm A\ninputs\noutputs\nstate s\ninit s\ntrans s : 1\nend",
                     "expected '<from> -> <to> : ...'", 7);
}

TEST_CASE("format: malformed guards report the guard position") {
  try {
    parse_model("csmv 1\ncsm A\ninputs x\noutputs\nstate s\ninit s\ntrans s -> s : x + \nend");
    FAIL_CHECK("no error raised");
  } catch (const ModelParseError& e) {
    CHECK(e.line == 7);
    CHECK(std::string(e.what()).find("line 7: bad guard: ") == 0);
  }
}

TEST_CASE("format: environment sequences") {
  const auto steps = parse_env_sequence("a\n\nb, c\n# note\nd\n");
  CHECK(steps == std::vector<SymbolSet>{{"a"}, {}, {"b", "c"}, {"d"}});

  CHECK(parse_env_sequence("").empty());
  CHECK(parse_env_sequence("# only a comment\n").empty());
  CHECK(parse_env_sequence("x") == std::vector<SymbolSet>{{"x"}});
  // A trailing newline does not append a phantom step.
  CHECK(parse_env_sequence("x\n") == std::vector<SymbolSet>{{"x"}});

  try {
    parse_env_sequence("a\n# c\n9x\n");
    FAIL_CHECK("no error raised");
  } catch (const ModelParseError& e) {
    CHECK(std::string(e.what()) == "line 3: '9x' is not a valid symbol name");
  }
}

TEST_CASE("format: picking a system out of a parsed model") {
  const ParsedModel m = parse_model(testutil::read_file(
      testutil::fixture_path("design-original/system.csmv")));
  const SystemModel by_default = build_system(m);
  const SystemModel by_name = build_system(m, "design");
  CHECK(by_default == by_name);
  CHECK(by_name.name == "design");
  CHECK(by_name.machines.size() == 2);
  CHECK(by_name.accepting_patterns == std::vector<std::string>{"EndDes_*"});

  CHECK_THROWS_WITH_AS(build_system(m, "ghost"), "no system named 'ghost'", Error);

  ParsedModel none = m;
  none.systems.clear();
  CHECK_THROWS_WITH_AS(build_system(none), "the model file declares no system",
                       Error);

  ParsedModel several = m;
  several.systems.push_back({"other", {"CCM"}, {}, {}});
  CHECK_THROWS_WITH_AS(build_system(several),
                       "the model file declares several systems; pick one by name",
                       Error);
  CHECK(build_system(several, "other").machines.size() == 1);

  ParsedModel charts = parse_model(testutil::read_file(
      testutil::fixture_path("design-original/statecharts.csmv")));
  CHECK_THROWS_WITH_AS(
      build_system(charts),
      "system member 'DIM' is a statechart; transform it to a machine first",
      Error);

  ParsedModel missing = m;
  missing.systems[0].members.push_back("Z");
  CHECK_THROWS_WITH_AS(build_system(missing), "system member 'Z' is not declared",
                       Error);
}

TEST_CASE("format: graph documents round-trip byte for byte") {
  const std::string model_bytes = testutil::read_file(
      testutil::fixture_path("design-original/system.csmv"));
  const ReachabilityGraph g =
      compose(build_system(parse_model(model_bytes)));

  const std::string doc = graph_to_json(g, fingerprint(model_bytes));
  CHECK(graph_to_json(g, fingerprint(model_bytes)) == doc);
  const ReachabilityGraph back = graph_from_json(doc);
  CHECK(back == g);
  CHECK(graph_to_json(back, fingerprint(model_bytes)) == doc);

  // Layout spot checks for downstream consumers.
  CHECK(doc.find("\"format\": \"csmv-graph\"") != std::string::npos);
  CHECK(doc.find("\"version\": 1") != std::string::npos);
  CHECK(doc.find("\"model_hash\": \"" + fingerprint(model_bytes) + "\"") !=
        std::string::npos);
  CHECK(doc.find("\"tool\": \"csmv\"") != std::string::npos);
  CHECK(doc.back() == '\n');

  // Without a hash the metadata block omits the field.
  CHECK(graph_to_json(g).find("model_hash") == std::string::npos);
}

TEST_CASE("format: damaged graph documents are rejected") {
  auto expect_bad = [](const std::string& text, const std::string& expected) {
    CAPTURE(text);
    try {
      graph_from_json(text);
      FAIL_CHECK("no error raised");
    } catch (const Error& e) {
      const std::string what = e.what();
      CHECK(what.find("bad graph document: ") == 0);
      if (!expected.empty()) CHECK(what == expected);
    }
  };

  expect_bad("not json at all", "");
  expect_bad("{}", "bad graph document: missing the 'csmv-graph' format tag");
  expect_bad(R"({"format": "csmv-graph", "version": 7})",
             "bad graph document: unsupported version");
  expect_bad(R"({"format": "csmv-graph", "version": 1, "machines": ["M"],
                 "initial": 0, "nodes": [{"name": "a_b", "components": ["a", "b"],
                 "outputs": []}], "edges": []})",
             "bad graph document: node 'a_b' has the wrong number of components");
  expect_bad(R"({"format": "csmv-graph", "version": 1, "machines": ["M"],
                 "initial": 4, "nodes": [{"name": "a", "components": ["a"],
                 "outputs": []}], "edges": []})",
             "bad graph document: initial index out of range");
  expect_bad(R"({"format": "csmv-graph", "version": 1, "machines": ["M"],
                 "initial": 0, "nodes": [{"name": "a", "components": ["a"],
                 "outputs": []}], "edges": [{"from": 0, "to": 3, "guard": "1"}]})",
             "bad graph document: edge endpoint out of range");
  try {
    graph_from_json(
        R"({"format": "csmv-graph", "version": 1, "machines": ["M"],
            "initial": 0, "nodes": [{"name": "a", "components": ["a"],
            "outputs": []}], "edges": [{"from": 0, "to": 0, "guard": "+("}]})");
    FAIL_CHECK("no error raised");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("bad graph document: bad edge guard: ") == 0);
  }
}

TEST_CASE("format: fingerprints are stable 64-bit hashes") {
  CHECK(fingerprint("") == "cbf29ce484222325");
  CHECK(fingerprint("abc") == "e71fa2190541574b");
  CHECK(fingerprint("a") == "af63dc4c8601ec8c");
  CHECK(fingerprint("b") == "af63df4c8601f1a5");
  CHECK(fingerprint("abc") == fingerprint("abc"));
  CHECK(fingerprint("abc") != fingerprint("abd"));
  CHECK(fingerprint("abc").size() == 16);
}

TEST_CASE("format: dot export shows names, outputs, and markings") {
  const ReachabilityGraph g = compose(testutil::make_m1_system());
  const std::string dot = graph_to_dot(g);
  CHECK(dot.find("digraph reachability {") == 0);
  CHECK(dot.find("rankdir=TB;") != std::string::npos);
  CHECK(dot.find("n0 [label=\"wait\\n{}\", penwidth=2];") != std::string::npos);
  CHECK(dot.find("n1 [label=\"run\\n{go}\"];") != std::string::npos);
  CHECK(dot.find("n0 -> n1 [label=\"start\"];") != std::string::npos);
  CHECK(dot.find("n1 -> n1 [label=\"!end\"];") != std::string::npos);
  CHECK(dot.find("style=filled") == std::string::npos);

  const std::string marked = graph_to_dot(g, {1});
  CHECK(marked.find("n1 [label=\"run\\n{go}\", style=filled, fillcolor=black, "
                    "fontcolor=white];") != std::string::npos);
}
