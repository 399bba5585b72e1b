#pragma once

// JSON file formats.
//
// Instance:
//   {
//     "constraints": [{"name": "OR", "arity": 2, "table": "0111"}],
//     "variables": ["x", "y"],
//     "constants_allowed": false,
//     "applications": [{"constraint": "OR", "args": ["x", "$1"]}]
//   }
// "table" lists C(s) for s = 0...0 up to 1...1 with the first argument most
// significant. "$0" and "$1" are the constants.
//
// Graph:          {"n": 3, "edges": [[0, 1], [1, 2]]}
// Colored graph:  {"n": 3, "edges": [[0, 1]], "colors": [0, 0, 1]}

#include <filesystem>
#include <string>

#include <json.hpp>

#include "boolcsp/core.hpp"
#include "boolcsp/graph.hpp"
#include "boolcsp/reductions.hpp"

namespace boolcsp::io {

using nlohmann::json;

Instance instance_from_json(const json& j);
json to_json(const Instance& s);

GraphInput graph_from_json(const json& j);
json to_json(const GraphInput& g);

ColoredGraph colored_graph_from_json(const json& j);
json to_json(const ColoredGraph& g);

/// Canonical text: two-space indentation, trailing newline.
std::string dump(const json& j);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

Instance read_instance(const std::filesystem::path& path);
GraphInput read_graph(const std::filesystem::path& path);

/// Rewrites both instances over a common constraint set (merged by name) and
/// the union of their universes (a's variables first, then b's new ones).
/// A name declared with two different tables throws Error(parse).
std::pair<Instance, Instance> align(const Instance& a, const Instance& b);

/// Rewrites both instances over the merged constraint set only.
std::pair<Instance, Instance> align_constraints(const Instance& a, const Instance& b);

} // namespace boolcsp::io
