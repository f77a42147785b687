#include "decomp/ptree.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace decomp {

namespace {

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

std::uint64_t factorial(int k) {
  std::uint64_t r = 1;
  for (int i = 2; i <= k; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

}  // namespace

Signature Signature::make(std::vector<std::string> colors, std::vector<Op> ops) {
  if (colors.empty()) throw InvalidStructureError("signature has no colours");
  std::set<std::string> seen;
  for (const auto& c : colors) {
    if (!valid_name(c)) throw InvalidStructureError("invalid colour name '" + c + "'");
    if (!seen.insert(c).second) throw InvalidStructureError("duplicate colour '" + c + "'");
  }
  seen.clear();
  const int nc = static_cast<int>(colors.size());
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const Op& op = ops[k];
    const std::string where = "operation #" + std::to_string(k) + " ('" + op.name + "')";
    if (!valid_name(op.name)) throw InvalidStructureError(where + ": invalid name");
    if (!seen.insert(op.name).second) throw InvalidStructureError(where + ": duplicate name");
    if (op.out < 0 || op.out >= nc) throw InvalidStructureError(where + ": output colour out of range");
    for (int c : op.in)
      if (c < 0 || c >= nc) throw InvalidStructureError(where + ": input colour out of range");
  }
  return Signature{std::move(colors), std::move(ops)};
}

int Signature::color_index(const std::string& name) const {
  auto it = std::find(colors.begin(), colors.end(), name);
  if (it == colors.end()) throw InvalidStructureError("unknown colour '" + name + "'");
  return static_cast<int>(it - colors.begin());
}

int Signature::op_index(const std::string& name) const {
  for (std::size_t k = 0; k < ops.size(); ++k)
    if (ops[k].name == name) return static_cast<int>(k);
  throw InvalidStructureError("unknown operation '" + name + "'");
}

int Signature::max_arity() const {
  std::size_t m = 0;
  for (const Op& op : ops) m = std::max(m, op.in.size());
  return static_cast<int>(m);
}

Signature binary_signature() { return Signature::make({"x"}, {{"m", 0, {0, 0}}}); }

Signature mixed_signature() {
  return Signature::make({"a", "b"}, {{"f", 0, {0, 1}}, {"g", 1, {0}}, {"h", 1, {}}});
}

PForest::PForest(std::shared_ptr<const Signature> sig, std::vector<Node> nodes, std::vector<int> bare_edges)
    : sig_(std::move(sig)), nodes_(std::move(nodes)), bare_(std::move(bare_edges)) {
  if (!sig_) throw InvalidStructureError("forest without a signature");
  const int n = size();
  if (n > kMaxElements) throw InvalidStructureError("forest has too many nodes");
  const int nc = static_cast<int>(sig_->colors.size());
  for (int c : bare_)
    if (c < 0 || c >= nc) throw InvalidStructureError("bare edge colour out of range");
  children_.resize(n);
  for (int v = 0; v < n; ++v) {
    const Node& node = nodes_[v];
    if (node.op < 0 || node.op >= static_cast<int>(sig_->ops.size()))
      throw InvalidStructureError("node " + std::to_string(v) + ": operation index out of range");
    children_[v].assign(sig_->ops[node.op].in.size(), -1);
  }
  for (int v = 0; v < n; ++v) {
    const Node& node = nodes_[v];
    const std::string where = "node " + std::to_string(v);
    if (node.parent == -1) continue;
    if (node.parent < 0 || node.parent >= n) throw InvalidStructureError(where + ": parent out of range");
    const auto& in = sig_->ops[nodes_[node.parent].op].in;
    if (node.slot < 0 || node.slot >= static_cast<int>(in.size()))
      throw InvalidStructureError(where + ": slot out of range");
    if (in[node.slot] != sig_->ops[node.op].out)
      throw InvalidStructureError(where + ": output colour does not match the parent's input slot");
    int& cell = children_[node.parent][node.slot];
    if (cell != -1) throw InvalidStructureError(where + ": slot already filled");
    cell = v;
    int steps = 0;
    for (int y = node.parent; y != -1; y = nodes_[y].parent)
      if (++steps > n) throw InvalidStructureError(where + ": lies on a parent cycle");
  }
}

PForest PForest::bare_edge(std::shared_ptr<const Signature> sig, int color) {
  return PForest(std::move(sig), {}, {color});
}

PForest PForest::corolla(std::shared_ptr<const Signature> sig, int op) {
  return PForest(std::move(sig), {Node{op, -1, 0}}, {});
}

int PForest::component_count() const {
  int roots = static_cast<int>(bare_.size());
  for (const Node& v : nodes_) roots += v.parent == -1;
  return roots;
}

Poset PForest::poset() const {
  std::vector<std::pair<int, int>> rel;
  for (int v = 0; v < size(); ++v)
    if (nodes_[v].parent >= 0) rel.emplace_back(v, nodes_[v].parent);
  return Poset::from_relations(size(), rel);
}

std::string PForest::serialize(int r, const std::vector<int>* layer) const {
  const Signature::Op& op = sig_->ops[nodes_[r].op];
  std::string s = op.name;
  if (layer) s += "@" + std::to_string((*layer)[r]);
  s += "(";
  for (std::size_t k = 0; k < op.in.size(); ++k) {
    if (k) s += ",";
    const int c = children_[r][k];
    s += c == -1 ? "|" + sig_->colors[op.in[k]] : serialize(c, layer);
  }
  s += ")";
  return s;
}

PForest forest_sum(const PForest& a, const PForest& b) {
  if (a.signature_ptr() != b.signature_ptr() &&
      (a.signature().colors != b.signature().colors || a.signature().ops.size() != b.signature().ops.size()))
    throw InvalidStructureError("forests over different signatures");
  std::vector<PForest::Node> nodes = a.nodes();
  const int off = a.size();
  for (PForest::Node v : b.nodes()) {
    if (v.parent >= 0) v.parent += off;
    nodes.push_back(v);
  }
  std::vector<int> bare = a.bare_edges();
  bare.insert(bare.end(), b.bare_edges().begin(), b.bare_edges().end());
  return PForest(a.signature_ptr(), std::move(nodes), std::move(bare));
}

LayeredPForest band(const LayeredPForest& l, int lo, int hi) {
  const PForest& f = l.forest;
  const int top = l.depth + 1;
  std::vector<int> index(f.size(), -1);
  std::vector<PForest::Node> nodes;
  std::vector<int> layer;
  for (int v = 0; v < f.size(); ++v)
    if (l.layer[v] >= lo && l.layer[v] <= hi) {
      index[v] = static_cast<int>(nodes.size());
      nodes.push_back(f.nodes()[v]);
      layer.push_back(l.layer[v] - lo + 1);
    }
  for (PForest::Node& v : nodes) {
    if (v.parent >= 0 && index[v.parent] >= 0) {
      v.parent = index[v.parent];
    } else {
      v.parent = -1;
      v.slot = 0;
    }
  }
  // Edges crossing the whole band: leafward end before layer lo, rootward end after hi.
  std::vector<int> bare;
  auto through = [&](int upper, int lower) { return upper < lo && lower > hi; };
  for (int c : f.bare_edges())
    if (through(0, top)) bare.push_back(c);
  for (int v = 0; v < f.size(); ++v) {
    const int lower = f.nodes()[v].parent == -1 ? top : l.layer[f.nodes()[v].parent];
    if (through(l.layer[v], lower)) bare.push_back(f.output_color(v));
    const auto& in = f.signature().ops[f.nodes()[v].op].in;
    for (std::size_t k = 0; k < in.size(); ++k)
      if (f.child(v, static_cast<int>(k)) == -1 && through(0, l.layer[v])) bare.push_back(in[k]);
  }
  return LayeredPForest{PForest(f.signature_ptr(), std::move(nodes), std::move(bare)), std::max(0, hi - lo + 1),
                        std::move(layer)};
}

PForest band_forest(const LayeredPForest& l, int lo, int hi) { return band(l, lo, hi).forest; }

namespace {

IsoClass forest_class(const PForest& f, const std::vector<int>* layer, int depth) {
  std::vector<std::string> parts;
  for (int c : f.bare_edges()) parts.push_back("|" + f.signature().colors[c]);
  for (int v = 0; v < f.size(); ++v)
    if (f.nodes()[v].parent == -1) parts.push_back(f.serialize(v, layer));
  std::sort(parts.begin(), parts.end());
  std::uint64_t aut = 1;
  for (std::size_t i = 0; i < parts.size();) {
    std::size_t j = i;
    while (j < parts.size() && parts[j] == parts[i]) ++j;
    aut *= factorial(static_cast<int>(j - i));
    i = j;
  }
  std::string key = layer ? "T^" + std::to_string(depth) + "[" : "T[";
  for (std::size_t i = 0; i < parts.size(); ++i) key += (i ? "," : "") + parts[i];
  key += "]";
  return IsoClass{key, aut, f.size()};
}

}  // namespace

IsoClass canonical_form(const PForest& f) { return forest_class(f, nullptr, 0); }

IsoClass canonical_form(const LayeredPForest& l) { return forest_class(l.forest, &l.layer, l.depth); }

std::vector<PForest> enumerate_ptrees(const std::shared_ptr<const Signature>& sig, int max_nodes) {
  if (max_nodes < 0) throw BoundExceededError("negative node bound");
  if (max_nodes > 8) throw BoundExceededError("P-tree enumeration is limited to 8 nodes");
  // trees[c][n]: all trees with root colour c and exactly n nodes.
  const int nc = static_cast<int>(sig->colors.size());
  std::vector<std::vector<std::vector<PForest>>> trees(nc, std::vector<std::vector<PForest>>(max_nodes + 1));
  for (int c = 0; c < nc; ++c) trees[c][0].push_back(PForest::bare_edge(sig, c));
  auto graft = [&](int op, const std::vector<const PForest*>& kids) {
    std::vector<PForest::Node> nodes{PForest::Node{op, -1, 0}};
    for (std::size_t k = 0; k < kids.size(); ++k) {
      const PForest& t = *kids[k];
      const int off = static_cast<int>(nodes.size());
      for (PForest::Node v : t.nodes()) {
        if (v.parent >= 0) {
          v.parent += off;
        } else {
          v.parent = 0;
          v.slot = static_cast<int>(k);
        }
        nodes.push_back(v);
      }
    }
    return PForest(sig, std::move(nodes), {});
  };
  for (int n = 1; n <= max_nodes; ++n)
    for (int op = 0; op < static_cast<int>(sig->ops.size()); ++op) {
      const auto& in = sig->ops[op].in;
      std::vector<const PForest*> kids(in.size());
      // Distribute n−1 nodes over the inputs; a bare edge fills an input with 0 nodes.
      std::function<void(std::size_t, int)> fill = [&](std::size_t k, int left) {
        if (k == in.size()) {
          if (left == 0) trees[sig->ops[op].out][n].push_back(graft(op, kids));
          return;
        }
        for (int m = 0; m <= left; ++m)
          for (const PForest& t : trees[in[k]][m]) {
            kids[k] = &t;
            fill(k + 1, left - m);
          }
      };
      fill(0, n - 1);
    }
  std::map<std::string, PForest> byKey;
  for (int c = 0; c < nc; ++c)
    for (auto& level : trees[c])
      for (auto& t : level) byKey.try_emplace(canonical_form(t).key, t);
  std::vector<PForest> out;
  for (auto& [k, t] : byKey) out.push_back(t);
  return out;
}

std::vector<PTreeCut> tree_cuts(const PForest& t) {
  std::vector<PTreeCut> out;
  const Poset p = t.poset();
  for_each_layering(p, 2, [&](const std::vector<int>& layer) {
    const LayeredPForest l{t, 2, layer};
    out.push_back(PTreeCut{band_forest(l, 1, 1), band_forest(l, 2, 2)});
  });
  return out;
}

std::vector<PForest> ptree_corpus(const std::shared_ptr<const Signature>& sig, int max_nodes) {
  std::map<std::string, PForest> seen;
  std::vector<PForest> todo;
  for (PForest& t : enumerate_ptrees(sig, max_nodes)) todo.push_back(std::move(t));
  while (!todo.empty()) {
    PForest f = std::move(todo.back());
    todo.pop_back();
    if (!seen.try_emplace(canonical_form(f).key, f).second) continue;
    for (PTreeCut& cut : tree_cuts(f)) {
      todo.push_back(std::move(cut.crown));
      todo.push_back(std::move(cut.root_part));
    }
  }
  std::vector<PForest> out;
  for (auto& [k, f] : seen) out.push_back(f);
  return out;
}

bool is_corolla_forest(const PForest& f) {
  return std::all_of(f.nodes().begin(), f.nodes().end(), [](const PForest::Node& v) { return v.parent == -1; });
}

}  // namespace decomp
