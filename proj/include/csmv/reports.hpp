#pragma once

#include <string>

#include "csmv/analysis.hpp"
#include "csmv/csm.hpp"
#include "csmv/simulate.hpp"
#include "csmv/system.hpp"

namespace csmv {

// Human-readable summary of an analysis: node/edge counts, terminal
// components with their accepting/deadlock classification, and for every
// deadlock its entry edges plus one shortest witness path.
std::string analysis_to_text(const ReachabilityGraph& g,
                             const AnalysisReport& r);

// The same information as a stable JSON document
// ("format": "csmv-analysis", "version": 1).
std::string analysis_to_json(const ReachabilityGraph& g,
                             const AnalysisReport& r);

// Step-by-step narration of a trace; machine names come from the system.
std::string trace_to_text(const SystemModel& s, const Trace& t);

// The trace as a stable JSON document ("format": "csmv-trace", "version": 1).
std::string trace_to_json(const SystemModel& s, const Trace& t);

// Listing of a graph comparison; "graphs are identical" when nothing differs.
std::string diff_to_text(const GraphDiff& d);

// "ok" or an indented error:/warning: listing.
std::string validation_to_text(const ValidationReport& r);

}  // namespace csmv
