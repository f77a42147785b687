#include "decomp/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace decomp {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw InputError(path + ": " + what); }

const json& member(const json& j, const std::string& path, const char* name) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(name);
  if (it == j.end()) fail(path, std::string("missing \"") + name + "\"");
  return *it;
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  const auto v = j.get<long long>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) fail(path, "integer out of range");
  return static_cast<int>(v);
}

int element_count(const json& j, const std::string& path) {
  const int n = as_int(member(j, path, "n"), path + ".n");
  if (n < 0) fail(path + ".n", "negative size");
  if (n > kMaxElements) fail(path + ".n", "more than " + std::to_string(kMaxElements) + " elements");
  return n;
}

const std::string& as_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get_ref<const std::string&>();
}

}  // namespace

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

json load_json_argument(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[' || arg[first] == '"')) return parse_json(arg);
  std::ifstream in(arg);
  if (!in) throw InputError("cannot open input file " + arg);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

Poset poset_from_json(const json& j) {
  const int n = element_count(j, "$");
  const json& covers = member(j, "$", "covers");
  if (!covers.is_array()) fail("$.covers", "expected an array");
  std::vector<std::pair<int, int>> below;
  for (std::size_t k = 0; k < covers.size(); ++k) {
    const std::string path = "$.covers[" + std::to_string(k) + "]";
    const json& c = covers[k];
    if (!c.is_array() || c.size() != 2) fail(path, "expected a pair [i, j]");
    const int a = as_int(c[0], path + "[0]");
    const int b = as_int(c[1], path + "[1]");
    if (a < 0 || a >= n) fail(path + "[0]", "element " + std::to_string(a) + " outside 0.." + std::to_string(n - 1));
    if (b < 0 || b >= n) fail(path + "[1]", "element " + std::to_string(b) + " outside 0.." + std::to_string(n - 1));
    below.emplace_back(a, b);
  }
  // from_relations names the first pair (by index) that closes a cycle.
  for (std::size_t k = 1; k <= below.size(); ++k) {
    try {
      Poset::from_relations(n, std::span(below.data(), k));
    } catch (const InvalidStructureError& e) {
      fail("$.covers[" + std::to_string(k - 1) + "]", e.what());
    }
  }
  return Poset::from_relations(n, below);
}

FiniteSetObj set_from_json(const json& j) { return FiniteSetObj{element_count(j, "$")}; }

RootedForest forest_from_json(const json& j) {
  const json& parent = member(j, "$", "parent");
  if (!parent.is_array()) fail("$.parent", "expected an array");
  if (parent.size() > static_cast<std::size_t>(kMaxElements)) fail("$.parent", "too many nodes");
  std::vector<int> p;
  for (std::size_t k = 0; k < parent.size(); ++k) {
    const std::string path = "$.parent[" + std::to_string(k) + "]";
    if (parent[k].is_null()) {
      p.push_back(-1);
      continue;
    }
    const int v = as_int(parent[k], path);
    if (v < 0 || v >= static_cast<int>(parent.size())) fail(path, "parent index " + std::to_string(v) + " out of range");
    p.push_back(v);
  }
  try {
    return RootedForest::make(std::move(p));
  } catch (const InvalidStructureError& e) {
    fail("$.parent", e.what());
  }
}

Signature signature_from_json(const json& j) {
  const json& colors = member(j, "$", "colors");
  if (!colors.is_array()) fail("$.colors", "expected an array");
  std::vector<std::string> names;
  for (std::size_t k = 0; k < colors.size(); ++k) names.push_back(as_string(colors[k], "$.colors[" + std::to_string(k) + "]"));
  auto color = [&](const json& c, const std::string& path) {
    const std::string& s = as_string(c, path);
    for (std::size_t k = 0; k < names.size(); ++k)
      if (names[k] == s) return static_cast<int>(k);
    fail(path, "unknown colour \"" + s + "\"");
  };
  const json& ops = member(j, "$", "ops");
  if (!ops.is_array()) fail("$.ops", "expected an array");
  std::vector<Signature::Op> out;
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const std::string path = "$.ops[" + std::to_string(k) + "]";
    Signature::Op op;
    op.name = as_string(member(ops[k], path, "name"), path + ".name");
    op.out = color(member(ops[k], path, "out"), path + ".out");
    const json& in = member(ops[k], path, "in");
    if (!in.is_array()) fail(path + ".in", "expected an array");
    for (std::size_t s = 0; s < in.size(); ++s) op.in.push_back(color(in[s], path + ".in[" + std::to_string(s) + "]"));
    out.push_back(std::move(op));
  }
  try {
    return Signature::make(std::move(names), std::move(out));
  } catch (const InvalidStructureError& e) {
    fail("$", e.what());
  }
}

namespace {

struct TreeBuilder {
  const Signature& sig;
  std::vector<PForest::Node> nodes;
  std::vector<int> bare;

  int bare_color(const json& j, const std::string& path) {
    if (j.is_string()) {
      if (j.get<std::string>() != "edge") fail(path, "expected \"edge\" or a node");
      if (sig.colors.size() != 1) fail(path, "a bare \"edge\" needs a colour: use {\"edge\": \"<colour>\"}");
      return 0;
    }
    const std::string& name = as_string(member(j, path, "edge"), path + ".edge");
    try {
      return sig.color_index(name);
    } catch (const InvalidStructureError&) {
      fail(path + ".edge", "unknown colour \"" + name + "\"");
    }
  }

  // Adds the node at j below (parent, slot); returns its output colour.
  int node(const json& j, const std::string& path, int parent, int slot) {
    const std::string& name = as_string(member(j, path, "op"), path + ".op");
    int op = -1;
    try {
      op = sig.op_index(name);
    } catch (const InvalidStructureError&) {
      fail(path + ".op", "unknown operation \"" + name + "\"");
    }
    if (static_cast<int>(nodes.size()) >= kMaxElements) fail(path, "too many nodes");
    const int id = static_cast<int>(nodes.size());
    nodes.push_back(PForest::Node{op, parent, slot});
    const auto& in = sig.ops[op].in;
    const json& children = member(j, path, "children");
    if (!children.is_array()) fail(path + ".children", "expected an array");
    if (children.size() != in.size())
      fail(path + ".children", "operation " + name + " has arity " + std::to_string(in.size()) + ", got " +
                                   std::to_string(children.size()) + " children");
    for (std::size_t s = 0; s < children.size(); ++s) {
      const std::string cpath = path + ".children[" + std::to_string(s) + "]";
      const json& c = children[s];
      if (c.is_string()) {
        if (c.get<std::string>() != "edge") fail(cpath, "expected \"edge\" or a node");
        continue;
      }
      const int got = node(c, cpath, id, static_cast<int>(s));
      if (got != in[s])
        fail(cpath, "output colour " + sig.colors[got] + " does not match input colour " + sig.colors[in[s]]);
    }
    return sig.ops[op].out;
  }

  void component(const json& j, const std::string& path) {
    if (j.is_string() || (j.is_object() && j.contains("edge")))
      bare.push_back(bare_color(j, path));
    else
      node(j, path, -1, 0);
  }
};

}  // namespace

PForest ptree_from_json(const json& j, const std::shared_ptr<const Signature>& sig) {
  TreeBuilder b{*sig, {}, {}};
  if (j.is_array()) {
    for (std::size_t k = 0; k < j.size(); ++k) b.component(j[k], "$[" + std::to_string(k) + "]");
  } else {
    b.component(j, "$");
  }
  try {
    return PForest(sig, std::move(b.nodes), std::move(b.bare));
  } catch (const InvalidStructureError& e) {
    fail("$", e.what());
  }
}

}  // namespace decomp
