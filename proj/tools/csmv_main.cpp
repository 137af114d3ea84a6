#include <cctype>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "csmv/analysis.hpp"
#include "csmv/dot_export.hpp"
#include "csmv/errors.hpp"
#include "csmv/graph_json.hpp"
#include "csmv/model_text.hpp"
#include "csmv/reports.hpp"
#include "csmv/simulate.hpp"
#include "csmv/system.hpp"
#include "csmv/version.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw csmv::Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw csmv::Error("cannot write '" + out_path + "'");
  out << text;
}

bool looks_like_json(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{';
  }
  return false;
}

struct LoadedGraph {
  csmv::ReachabilityGraph graph;
  std::string source_hash;  // of the raw input file
};

LoadedGraph load_graph(const std::string& path, const std::string& system_name,
                       bool close_incomplete, std::size_t atom_cap) {
  const std::string text = read_file(path);
  LoadedGraph out;
  out.source_hash = csmv::fingerprint(text);
  if (looks_like_json(text)) {
    out.graph = csmv::graph_from_json(text);
  } else {
    const csmv::ParsedModel model = csmv::parse_model(text);
    const csmv::SystemModel sys = csmv::build_system(model, system_name);
    out.graph = csmv::compose(sys, {close_incomplete, atom_cap});
  }
  return out;
}

int run_check(const std::string& path, std::size_t atom_cap) {
  const csmv::ParsedModel model = csmv::parse_model(read_file(path));
  bool all_ok = true;
  std::ostringstream out;

  auto report = [&](const std::string& header, const csmv::ValidationReport& r) {
    if (r.ok() && r.warnings.empty()) {
      out << header << ": ok\n";
    } else {
      out << header << ":\n";
      std::istringstream lines(csmv::validation_to_text(r));
      std::string line;
      while (std::getline(lines, line)) out << "  " << line << "\n";
    }
    if (!r.ok()) all_ok = false;
  };

  for (const auto& m : model.csms)
    report("csm " + m.name, csmv::validate_csm(m, atom_cap));

  for (const auto& s : model.statecharts) {
    if (!model.messages) {
      out << "statechart " << s.name << ":\n"
          << "  error: no messages section classifies its symbols\n";
      all_ok = false;
      continue;
    }
    report("statechart " + s.name, csmv::validate_statechart(s, *model.messages));
  }

  for (const auto& decl : model.systems) {
    bool pending = false, resolved = true;
    for (const auto& member : decl.members) {
      bool is_csm = false, is_chart = false;
      for (const auto& m : model.csms) is_csm |= m.name == member;
      for (const auto& s : model.statecharts) is_chart |= s.name == member;
      pending |= is_chart;
      if (!is_csm && !is_chart) {
        out << "system " << decl.name << ":\n  error: member '" << member
            << "' is not declared\n";
        all_ok = false;
        resolved = false;
      }
    }
    if (!resolved) continue;
    if (pending) {
      out << "system " << decl.name
          << ": ok (members awaiting transformation)\n";
      continue;
    }
    try {
      const csmv::SystemModel sys = csmv::build_system(model, decl.name);
      report("system " + decl.name, csmv::validate_system(sys, atom_cap));
    } catch (const csmv::Error& e) {
      out << "system " << decl.name << ":\n  error: " << e.what() << "\n";
      all_ok = false;
    }
  }

  std::cout << out.str();
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"modeling, composition, and verification of concurrent state machines"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(csmv::kToolName) + " " +
                                        csmv::kToolVersion);

  std::string model_path, second_path, env_path, out_path, system_name;
  std::string format, policy_name = "first";
  std::vector<std::string> accepting_override;
  std::uint64_t seed = 0;
  std::uint64_t atom_cap = csmv::kDefaultAtomCap;
  std::size_t max_steps = 0;
  bool close_incomplete = false;
  bool mark_deadlocks = false;

  auto add_cap = [&](CLI::App* cmd) {
    cmd->add_option("--atom-cap", atom_cap,
                    "truth-table size limit (number of atoms)");
  };
  auto add_compose_opts = [&](CLI::App* cmd) {
    cmd->add_option("--system", system_name, "system to use (default: the only one)");
    cmd->add_flag("--close-incomplete", close_incomplete,
                  "apply the completeness closure before composing");
    add_cap(cmd);
  };
  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("-o,--output", out_path, "write to a file instead of stdout");
  };

  CLI::App* check = app.add_subcommand(
      "check", "validate every machine, statechart, and system in a model file");
  check->add_option("model", model_path, "model file")->required();
  add_cap(check);

  CLI::App* transform = app.add_subcommand(
      "transform", "replace each statechart with its machine translation");
  transform->add_option("model", model_path, "model file")->required();
  add_output(transform);

  CLI::App* compose_cmd =
      app.add_subcommand("compose", "build the reachability graph of a system");
  compose_cmd->add_option("model", model_path, "model file")->required();
  add_compose_opts(compose_cmd);
  compose_cmd->add_option("--format", format, "json (default) or dot")
      ->check(CLI::IsMember({"json", "dot"}));
  add_output(compose_cmd);

  CLI::App* analyze = app.add_subcommand(
      "analyze", "find terminal components and deadlock traps");
  analyze->add_option("input", model_path, "model file or graph document")
      ->required();
  add_compose_opts(analyze);
  analyze->add_option("--accepting", accepting_override,
                      "accepting state pattern (repeatable; overrides the model)");
  analyze->add_option("--format", format, "text (default) or json")
      ->check(CLI::IsMember({"text", "json"}));
  add_output(analyze);

  CLI::App* simulate =
      app.add_subcommand("simulate", "run a system over an environment sequence");
  simulate->add_option("model", model_path, "model file")->required();
  simulate->add_option("env", env_path, "environment sequence file")->required();
  simulate->add_option("--system", system_name, "system to use (default: the only one)");
  simulate->add_flag("--close-incomplete", close_incomplete,
                     "apply the completeness closure before running");
  simulate->add_option("--policy", policy_name,
                       "nondeterminism policy: first (default), random, all")
      ->check(CLI::IsMember({"first", "random", "all"}));
  simulate->add_option("--seed", seed, "seed for the random policy");
  simulate->add_option("--max-steps", max_steps,
                       "stop after this many steps (default: whole sequence)");
  simulate->add_option("--format", format, "text (default) or json")
      ->check(CLI::IsMember({"text", "json"}));
  add_output(simulate);

  CLI::App* export_cmd =
      app.add_subcommand("export", "render a reachability graph for graphviz");
  export_cmd->add_option("input", model_path, "model file or graph document")
      ->required();
  add_compose_opts(export_cmd);
  export_cmd->add_option("--format", format, "dot (default) or json")
      ->check(CLI::IsMember({"dot", "json"}));
  export_cmd->add_flag("--mark-deadlocks", mark_deadlocks,
                       "fill nodes of deadlocked components");
  add_output(export_cmd);

  CLI::App* diff =
      app.add_subcommand("diff", "compare two reachability graphs");
  diff->add_option("first", model_path, "model file or graph document")->required();
  diff->add_option("second", second_path, "model file or graph document")
      ->required();
  diff->add_option("--system", system_name, "system to use (default: the only one)");
  diff->add_flag("--close-incomplete", close_incomplete,
                 "apply the completeness closure before composing");
  add_cap(diff);

  CLI11_PARSE(app, argc, argv);

  const std::size_t cap = static_cast<std::size_t>(atom_cap);
  try {
    if (*check) return run_check(model_path, cap);

    if (*transform) {
      const csmv::ParsedModel model = csmv::parse_model(read_file(model_path));
      emit(csmv::render_model(csmv::transform_model(model)), out_path);
      return 0;
    }

    if (*compose_cmd) {
      const std::string text = read_file(model_path);
      const csmv::ParsedModel model = csmv::parse_model(text);
      const csmv::SystemModel sys = csmv::build_system(model, system_name);
      const csmv::ReachabilityGraph g = csmv::compose(sys, {close_incomplete, cap});
      std::cerr << "composed " << g.nodes.size() << " nodes, " << g.edges.size()
                << " edges\n";
      if (format == "dot")
        emit(csmv::graph_to_dot(g), out_path);
      else
        emit(csmv::graph_to_json(g, csmv::fingerprint(text)), out_path);
      return 0;
    }

    if (*analyze) {
      LoadedGraph in = load_graph(model_path, system_name, close_incomplete, cap);
      if (!accepting_override.empty())
        in.graph.accepting_patterns = accepting_override;
      const csmv::AnalysisReport report =
          csmv::classify_deadlocks(in.graph, in.graph.accepting_patterns);
      emit(format == "json" ? csmv::analysis_to_json(in.graph, report)
                            : csmv::analysis_to_text(in.graph, report),
           out_path);
      return report.deadlocks.empty() ? 0 : 2;
    }

    if (*simulate) {
      const csmv::ParsedModel model = csmv::parse_model(read_file(model_path));
      csmv::SystemModel sys = csmv::build_system(model, system_name);
      if (close_incomplete) sys = csmv::with_closure(sys);
      std::vector<csmv::SymbolSet> env = csmv::parse_env_sequence(read_file(env_path));
      if (max_steps && env.size() > max_steps) env.resize(max_steps);
      csmv::ChoicePolicy policy = csmv::ChoicePolicy::kFirstDeclared;
      if (policy_name == "random") policy = csmv::ChoicePolicy::kSeededRandom;
      if (policy_name == "all") policy = csmv::ChoicePolicy::kEnumerateAll;
      const csmv::Trace trace = csmv::run(sys, env, policy, seed);
      emit(format == "json" ? csmv::trace_to_json(sys, trace)
                            : csmv::trace_to_text(sys, trace),
           out_path);
      return 0;
    }

    if (*export_cmd) {
      LoadedGraph in = load_graph(model_path, system_name, close_incomplete, cap);
      if (format == "json") {
        emit(csmv::graph_to_json(in.graph, in.source_hash), out_path);
        return 0;
      }
      std::set<std::size_t> marked;
      if (mark_deadlocks) {
        const csmv::AnalysisReport report =
            csmv::classify_deadlocks(in.graph, in.graph.accepting_patterns);
        for (const auto& d : report.deadlocks)
          marked.insert(d.nodes.begin(), d.nodes.end());
      }
      emit(csmv::graph_to_dot(in.graph, marked), out_path);
      return 0;
    }

    if (*diff) {
      const LoadedGraph a =
          load_graph(model_path, system_name, close_incomplete, cap);
      const LoadedGraph b =
          load_graph(second_path, system_name, close_incomplete, cap);
      const csmv::GraphDiff d = csmv::diff_graphs(a.graph, b.graph, cap);
      std::cout << csmv::diff_to_text(d);
      return d.comparable && d.identical() ? 0 : 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
