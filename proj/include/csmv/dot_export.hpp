#pragma once

#include <cstddef>
#include <set>
#include <string>

#include "csmv/system.hpp"

namespace csmv {

// Renders a reachability graph in Graphviz dot syntax.  Node labels carry the
// composite name and the output set; the initial node is drawn with a heavier
// border.  `marked` nodes (e.g. deadlocked ones) are filled black.
std::string graph_to_dot(const ReachabilityGraph& g,
                         const std::set<std::size_t>& marked = {});

}  // namespace csmv
