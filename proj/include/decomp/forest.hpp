#pragma once

// Rooted forests, oriented with roots minimal: x < y iff x is a proper
// ancestor of y.  Down-closed subsets are then ancestor-closed, so a cut of a
// forest is a 2-layering of its underlying poset.

#include "decomp/poset.hpp"

#include <utility>
#include <vector>

namespace decomp {

struct RootedForest {
  std::vector<int> parent;  // -1 for roots

  // Rejects out-of-range parents and cycles, naming the offending node.
  static RootedForest make(std::vector<int> parent);
  // Inverse of poset(); p must be a forest order (every down-set a chain).
  static RootedForest from_poset(const Poset& p);

  int size() const { return static_cast<int>(parent.size()); }
  Poset poset() const;
  bool operator==(const RootedForest&) const = default;
};

bool is_forest_order(const Poset& p);

IsoClass canonical_form(const RootedForest& f);

// One representative per iso class, sizes 0..n_max (n_max <= 7), ordered by
// size then key.
std::vector<RootedForest> enumerate_forests(int n_max);

struct ForestCut {
  RootedForest crown;
  RootedForest root_part;
};

// Every admissible cut, one per ancestor-closed subset (the root part).
std::vector<ForestCut> tree_cuts(const RootedForest& f);

}  // namespace decomp
