#pragma once

#include "json.hpp"

#include <string>

#include "nbwalk/graph.hpp"

namespace nbwalk {

// Builds a graph from its JSON description, e.g.
//   {"type":"lattice","d":2}
//   {"type":"subdivided_lattice","d":2,"t":1}
//   {"type":"regular_tree","k":3}
//   {"type":"biregular_tree","k1":4,"k2":3}
//   {"type":"explicit","adjacency":{"0":[1,2],...}}
//   {"type":"subdivided","base":<spec>,"t":1}
//   {"type":"counterexample"}
// plus the conveniences {"type":"complete","n":4} and
// {"type":"complete_bipartite","a":3,"b":4}.
GraphPtr graph_from_json(const nlohmann::json& spec);
GraphPtr graph_from_json_text(const std::string& text);

}  // namespace nbwalk
