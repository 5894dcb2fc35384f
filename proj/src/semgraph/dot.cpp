#include <sstream>

#include "drr/semgraph/graph.hpp"

namespace drr::semgraph {

std::string to_dot(const DependencyGraph& graph) {
  std::ostringstream out;
  out << "digraph semantic_dependencies {\n  node [shape=box, fontname=monospace];\n";
  for (const auto& [id, n] : graph.nodes) {
    out << "  n" << id << " [label=\"" << to_string(n.kind);
    if (!n.name.empty()) out << " " << n.name;
    out << " [" << n.span.begin << "," << n.span.end << ")\"";
    if (n.roles.conditioner_only()) out << ", style=dashed";
    out << "];\n";
  }
  for (const auto& e : graph.edges)
    out << "  n" << e.user << " -> n" << e.provider << " [label=\"" << frontend::to_string(e.kind)
        << "\"];\n";
  std::size_t i = 0;
  for (const auto& g : graph.groups) {
    out << "  subgraph cluster_" << i++ << " {\n    label=\"" << to_string(g.kind)
        << "\"; style=dotted;\n   ";
    for (auto m : g.members) out << " n" << m << ";";
    out << "\n  }\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace drr::semgraph
