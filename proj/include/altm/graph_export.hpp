// Pivot-graph exports: Graphviz dot for eyeballs, JSON for tools.

#pragma once

#include <string>

#include "altm/machine.hpp"
#include "altm/semantics.hpp"

namespace altm::exports {

enum class Format { Dot, Structured };

/// Serializes a solved graph. Deterministic: identical inputs give
/// identical bytes. Dot renders existential nodes as diamonds, universal
/// as boxes, verdicts as fill colors, truncated nodes dashed, the root
/// double-bordered. Structured output is JSON carrying the same
/// information; see README for the schema.
std::string export_graph(const Machine& m, const PivotGraph& g, const SolveResult& s,
                         Format format);

}  // namespace altm::exports
