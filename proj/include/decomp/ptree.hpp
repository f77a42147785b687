#pragma once

// Trees decorated by a finitary signature (P-trees) and finite forests of them.
//
// A signature has colours and operations; an operation has one output colour
// and an ordered list of input colours.  A P-tree is either a bare edge of
// some colour or a node labelled by an operation whose input slots hold
// either a leaf edge or a child P-tree of the matching output colour.
//
// P-trees are rigid, so a forest's automorphisms only permute equal
// components.  Nodes are ordered leafwards-first: x < y when x lies strictly
// above y (further from the root).  Layer 1 of a layering is therefore the
// crown, and a 2-layering is a cut with the crown as its first piece.

#include "decomp/poset.hpp"

#include <memory>
#include <string>
#include <vector>

namespace decomp {

struct Signature {
  struct Op {
    std::string name;
    int out = 0;
    std::vector<int> in;
  };
  std::vector<std::string> colors;
  std::vector<Op> ops;

  // Validates names (nonempty, [A-Za-z0-9_]), uniqueness and colour indices.
  static Signature make(std::vector<std::string> colors, std::vector<Op> ops);

  int color_index(const std::string& name) const;  // throws InvalidStructureError
  int op_index(const std::string& name) const;
  int max_arity() const;
};

// One colour x and one binary operation m: x <- (x, x).
Signature binary_signature();
// Colours a, b; f: a <- (a, b), g: b <- (a), h: b <- ().
Signature mixed_signature();

class PForest {
 public:
  struct Node {
    int op = 0;
    int parent = -1;  // -1: the node's output is a root edge
    int slot = 0;     // input slot of the parent that this node fills
  };

  PForest() = default;
  PForest(std::shared_ptr<const Signature> sig, std::vector<Node> nodes, std::vector<int> bare_edges);

  static PForest bare_edge(std::shared_ptr<const Signature> sig, int color);
  static PForest corolla(std::shared_ptr<const Signature> sig, int op);

  const Signature& signature() const { return *sig_; }
  const std::shared_ptr<const Signature>& signature_ptr() const { return sig_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<int>& bare_edges() const { return bare_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  int child(int node, int slot) const { return children_[node][slot]; }  // -1 for a leaf
  int output_color(int node) const { return sig_->ops[nodes_[node].op].out; }
  int component_count() const;
  bool is_tree() const { return component_count() == 1; }

  Poset poset() const;

  // Component trees rooted at node r (including descendants).
  std::string serialize(int r, const std::vector<int>* layer) const;

 private:
  std::shared_ptr<const Signature> sig_;
  std::vector<Node> nodes_;
  std::vector<int> bare_;
  std::vector<std::vector<int>> children_;
};

// Disjoint union; signatures must coincide.
PForest forest_sum(const PForest& a, const PForest& b);

struct LayeredPForest {
  PForest forest;
  int depth = 0;
  std::vector<int> layer;  // per node, 1..depth, monotone for poset()
};

// The part of the forest between levels lo−1 and hi: nodes in layers lo..hi,
// plus the edges passing through as bare edges.  With hi = lo − 1 this is the
// forest of edges crossing that level.  Layers are renumbered from 1.
LayeredPForest band(const LayeredPForest& l, int lo, int hi);
PForest band_forest(const LayeredPForest& l, int lo, int hi);

IsoClass canonical_form(const PForest& f);
IsoClass canonical_form(const LayeredPForest& l);

// All P-trees (single components, bare edges included) with at most
// max_nodes nodes, ordered by key.
std::vector<PForest> enumerate_ptrees(const std::shared_ptr<const Signature>& sig, int max_nodes);

// Trees with at most max_nodes nodes together with every piece of every
// layering of them; ordered by key.
std::vector<PForest> ptree_corpus(const std::shared_ptr<const Signature>& sig, int max_nodes);

struct PTreeCut {
  PForest crown;
  PForest root_part;
};
// One cut per 2-layering of the node order.
std::vector<PTreeCut> tree_cuts(const PForest& t);

// Every component is a single node or a bare edge.
bool is_corolla_forest(const PForest& f);

}  // namespace decomp
