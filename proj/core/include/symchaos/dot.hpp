#pragma once

#include <string>

#include "symchaos/sft.hpp"

namespace symchaos {

// Graphviz text for a presentation: vertices in index order, edges in
// adjacency order, edge labels carrying symbol names.  Output depends only
// on the presentation, never on run state.
std::string to_dot(const Sft& X, const std::string& graph_name = "shift");

}  // namespace symchaos
