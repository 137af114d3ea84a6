#include "csmv/graph_json.hpp"

#include <cstdint>

#include "csmv/errors.hpp"
#include "csmv/version.hpp"
#include "json.hpp"

namespace csmv {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json to_array(const SymbolSet& symbols) {
  ordered_json a = ordered_json::array();
  for (const auto& s : symbols) a.push_back(s);
  return a;
}

}  // namespace

std::string graph_to_json(const ReachabilityGraph& g,
                          const std::string& model_hash) {
  ordered_json doc;
  doc["format"] = "csmv-graph";
  doc["version"] = 1;
  doc["machines"] = g.machine_names;
  doc["initial"] = g.initial;
  doc["accepting"] = g.accepting_patterns;

  ordered_json nodes = ordered_json::array();
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const SystemState& n = g.nodes[i];
    ordered_json node;
    node["index"] = i;
    node["name"] = n.name;
    node["components"] = n.components;
    node["outputs"] = to_array(n.outputs);
    nodes.push_back(std::move(node));
  }
  doc["nodes"] = std::move(nodes);

  ordered_json edges = ordered_json::array();
  for (const auto& e : g.edges) {
    ordered_json edge;
    edge["from"] = e.from;
    edge["to"] = e.to;
    edge["guard"] = render_formula(e.guard);
    edges.push_back(std::move(edge));
  }
  doc["edges"] = std::move(edges);

  ordered_json meta;
  if (!model_hash.empty()) meta["model_hash"] = model_hash;
  meta["tool"] = kToolName;
  meta["tool_version"] = kToolVersion;
  doc["metadata"] = std::move(meta);

  return doc.dump(2) + "\n";
}

ReachabilityGraph graph_from_json(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::exception& e) {
    throw Error(std::string("bad graph document: ") + e.what());
  }

  try {
    if (!doc.is_object() || doc.value("format", "") != "csmv-graph")
      throw Error("bad graph document: missing the 'csmv-graph' format tag");
    if (doc.value("version", 0) != 1)
      throw Error("bad graph document: unsupported version");

    ReachabilityGraph g;
    g.machine_names = doc.at("machines").get<std::vector<std::string>>();
    g.accepting_patterns =
        doc.value("accepting", std::vector<std::string>{});

    for (const auto& node : doc.at("nodes")) {
      SystemState s;
      s.name = node.at("name").get<std::string>();
      s.components = node.at("components").get<std::vector<std::string>>();
      if (s.components.size() != g.machine_names.size())
        throw Error("bad graph document: node '" + s.name +
                    "' has the wrong number of components");
      for (const auto& o : node.at("outputs"))
        s.outputs.insert(o.get<std::string>());
      g.nodes.push_back(std::move(s));
    }

    g.initial = doc.at("initial").get<std::size_t>();
    if (g.initial >= g.nodes.size())
      throw Error("bad graph document: initial index out of range");

    for (const auto& edge : doc.at("edges")) {
      ReachabilityGraph::Edge e;
      e.from = edge.at("from").get<std::size_t>();
      e.to = edge.at("to").get<std::size_t>();
      if (e.from >= g.nodes.size() || e.to >= g.nodes.size())
        throw Error("bad graph document: edge endpoint out of range");
      try {
        e.guard = parse_formula(edge.at("guard").get<std::string>());
      } catch (const FormulaParseError& ex) {
        throw Error(std::string("bad graph document: bad edge guard: ") +
                    ex.what());
      }
      g.edges.push_back(std::move(e));
    }
    return g;
  } catch (const ordered_json::exception& e) {
    throw Error(std::string("bad graph document: ") + e.what());
  }
}

std::string fingerprint(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace csmv
