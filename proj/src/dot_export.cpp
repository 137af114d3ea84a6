#include "csmv/dot_export.hpp"

#include <sstream>

namespace csmv {

namespace {

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string graph_to_dot(const ReachabilityGraph& g,
                         const std::set<std::size_t>& marked) {
  std::ostringstream out;
  out << "digraph reachability {\n";
  out << "  rankdir=TB;\n";
  out << "  node [shape=box, fontname=\"Helvetica\"];\n";

  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const SystemState& n = g.nodes[i];
    std::string label = escape(n.name) + "\\n{";
    bool first = true;
    for (const auto& o : n.outputs) {
      if (!first) label += ", ";
      label += escape(o);
      first = false;
    }
    label += "}";
    out << "  n" << i << " [label=\"" << label << "\"";
    if (i == g.initial) out << ", penwidth=2";
    if (marked.count(i))
      out << ", style=filled, fillcolor=black, fontcolor=white";
    out << "];\n";
  }

  for (const auto& e : g.edges)
    out << "  n" << e.from << " -> n" << e.to << " [label=\""
        << escape(render_formula(e.guard)) << "\"];\n";

  out << "}\n";
  return out.str();
}

}  // namespace csmv
