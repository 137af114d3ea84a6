#pragma once

#include <string>
#include <string_view>

#include "csmv/system.hpp"

namespace csmv {

// Serializes a reachability graph as a stable JSON document.  The layout is
// versioned ("format": "csmv-graph", "version": 1) and key order is fixed, so
// identical graphs render byte-identically.  `model_hash` is an opaque
// fingerprint of whatever input produced the graph; pass "" to omit it.
std::string graph_to_json(const ReachabilityGraph& g,
                          const std::string& model_hash = "");

// Parses a document produced by graph_to_json.  Throws Error on documents
// with the wrong format tag, an unsupported version, or out-of-range indices.
ReachabilityGraph graph_from_json(std::string_view text);

// 64-bit FNV-1a over the raw bytes, rendered as 16 hex digits.  Used to
// fingerprint model files inside graph documents.
std::string fingerprint(std::string_view bytes);

}  // namespace csmv
