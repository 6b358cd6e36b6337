#pragma once

// JSON encodings of every engine type. Parsers throw Error("InvalidJson")
// on schema violations; emitters produce values that parse back equal.

#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "sgk/atomic.hpp"
#include "sgk/coloring.hpp"
#include "sgk/error.hpp"
#include "sgk/graph.hpp"
#include "sgk/path.hpp"
#include "sgk/phase.hpp"
#include "sgk/series.hpp"
#include "sgk/trunc.hpp"

namespace sgk::json {

using nlohmann::json;

GraphData graph_data_from_json(const json& j);
json to_json(const GraphData& g);
Graph graph_from_json(const json& j);  // validates
json to_json(const Graph& g);

ColorWord word_from_json(const json& j);

Path path_from_json(const Graph& g, const json& j);
json to_json(const Graph& g, const Path& mu);
// Whitespace-separated edge ids in written order, or a single vertex id.
Path path_from_string(const Graph& g, const std::string& s);

Phase phase_from_json(const json& j);  // {"num","den"} or {"re","im"}
json to_json(const Phase& p);

FormalElement formal_from_json(const Graph& g, const json& j);  // {"terms":[...]}
json to_json(const Graph& g, const FormalElement& a);

AtomicData atomic_data_from_json(const json& j);
json to_json(const AtomicData& a);

CanonicalFamily canonical_from_json(const json& j);  // {"graph", "canonical"}
json to_json(const CanonicalFamily& f);
json to_json(const Graph& g, const CanonicalAtomic& f);

// A CanonicalFamily when the document has a "canonical" key, else explicit
// data (partial presentations allowed; classification rejects them).
AtomicInput atomic_input_from_json(const json& j);

Coloring coloring_from_json(const Graph& g, const json& j);  // {"d", "color"}
json to_json(const Graph& g, const Coloring& c);

json to_json(const ValidationReport& r);
json to_json(const Error& e);
json to_json(const Graph& g, const AtomDecomposition& d);
json to_json(const Graph& g, const WoldReport& w, const ExplicitAtomic* a);
json to_json(const ConditionMReport& r);
json to_json(const RelationReport& r);
json to_json(const Multiplicity& m);

}  // namespace sgk::json
