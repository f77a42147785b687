#pragma once

// JSON input formats.
//
//   poset      {"n": 3, "covers": [[0,1],[0,2]]}     i strictly below j; closure taken
//   set        {"n": 4}
//   forest     {"parent": [null, 0, 0]}
//   signature  {"colors": ["x"], "ops": [{"name": "m", "out": "x", "in": ["x","x"]}]}
//   P-tree     {"op": "m", "children": ["edge", {"op": "m", "children": ["edge","edge"]}]}
//              a bare edge is {"edge": "<colour>"}, or "edge" over a one-colour signature;
//              a JSON array of P-trees is a forest
//
// Every rejection names the JSON path of the offending value.

#include "decomp/forest.hpp"
#include "decomp/poset.hpp"
#include "decomp/ptree.hpp"

#include "json.hpp"

#include <memory>
#include <stdexcept>
#include <string>

namespace decomp {

class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Parses JSON text; syntax errors report the byte offset.
nlohmann::json parse_json(const std::string& text);
// A path to a JSON file, or inline JSON starting with '{', '[' or '"'.
nlohmann::json load_json_argument(const std::string& arg);

Poset poset_from_json(const nlohmann::json& j);
FiniteSetObj set_from_json(const nlohmann::json& j);
RootedForest forest_from_json(const nlohmann::json& j);
Signature signature_from_json(const nlohmann::json& j);
PForest ptree_from_json(const nlohmann::json& j, const std::shared_ptr<const Signature>& sig);

}  // namespace decomp
