#pragma once

// Finite posets, finite sets and their layerings.
//
// Elements are 0..n-1 and the strict order is kept as bitmasks, so a poset
// has at most kMaxElements elements.  Layers are numbered 1..depth from bottom
// to top; a layering is monotone (x < y implies layer(x) <= layer(y)) and its
// layers may be empty.

#include "decomp/groupoid.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace decomp {

using Mask = std::uint32_t;
inline constexpr int kMaxElements = 24;

inline constexpr Mask bit(int i) { return Mask{1} << i; }
inline constexpr Mask full_mask(int n) { return n == 0 ? Mask{0} : (~Mask{0} >> (32 - n)); }

class InvalidStructureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class BoundExceededError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class Poset {
 public:
  Poset() = default;
  // The discrete poset on n elements.
  explicit Poset(int n);

  // Built from "i strictly below j" pairs; the transitive closure is taken.
  // Cycles, self-loops and out-of-range indices are rejected with the index
  // of the offending pair.
  static Poset from_relations(int n, std::span<const std::pair<int, int>> below);
  static Poset discrete(int n) { return Poset(n); }
  static Poset chain(int n);

  int size() const { return n_; }
  bool less(int i, int j) const { return (above_[i] >> j) & 1U; }
  bool comparable(int i, int j) const { return less(i, j) || less(j, i); }
  Mask up_set(int i) const { return above_[i]; }
  Mask down_set(int i) const { return below_[i]; }
  bool has_relations() const;

  // Adds j as a new element lying above exactly the elements of `down`
  // (which must be down-closed).
  Poset with_new_maximal(Mask down) const;

  // Relabels element i as perm[i].
  Poset relabeled(std::span<const int> perm) const;

  std::vector<std::pair<int, int>> cover_relations() const;

  friend bool operator==(const Poset&, const Poset&) = default;

 private:
  int n_ = 0;
  std::vector<Mask> above_;
  std::vector<Mask> below_;
};

struct FiniteSetObj {
  int n = 0;
  Poset as_poset() const { return Poset::discrete(n); }
};

// A monotone map base → {1..depth}.  Sets are layered as discrete posets.
struct Layering {
  Poset base;
  int depth = 0;
  std::vector<int> layer_of;

  // Validates monotonicity and layer range.
  static Layering make(Poset base, int depth, std::vector<int> layer_of);

  int size() const { return base.size(); }
  Mask layer(int i) const;  // elements of layer i (1-based)
  Mask layers(int lo, int hi) const;
  friend bool operator==(const Layering&, const Layering&) = default;
};

// Canonical forms.  Posets get keys "P<n>{covers}", sets "S<n>", layered
// posets "P<n>^<depth>[layers]{covers}" and layered sets
// "S^<depth>[layer sizes]".  The prefix letter can be overridden ('F' for
// forests).
IsoClass canonical_form(const Poset& p, char prefix = 'P');
IsoClass canonical_form(const FiniteSetObj& s);
IsoClass canonical_form(const Layering& l, char prefix = 'P');
IsoClass canonical_set_layering(const Layering& l);

// Orders of Aut(p) restricted along `keep`: the number of distinct
// restrictions of colour-preserving automorphisms to the elements of keep.
std::uint64_t restricted_automorphism_count(const Poset& p, std::span<const int> colors, Mask keep);

// One representative per isomorphism class, sizes 0..n_max, in order of size
// then key.  n_max <= 7.
std::vector<Poset> enumerate_posets(int n_max);

// All monotone maps to {1..depth}; for depth 0 exactly one layering iff p is empty.
std::vector<Layering> layerings(const Poset& p, int depth);
std::vector<Layering> layerings(const FiniteSetObj& s, int depth);
void for_each_layering(const Poset& p, int depth,
                       const std::function<void(const std::vector<int>&)>& visit);

// Layerings with every layer nonempty (monotone surjections onto {1..depth}).
Integer nonempty_layerings_count(const Poset& p, int depth);
Integer nonempty_layerings_count(const FiniteSetObj& s, int depth);

std::vector<Mask> down_closed_subsets(const Poset& p);
bool is_down_closed(const Poset& p, Mask s);
bool is_convex(const Poset& p, Mask s);

// Induced order on the elements of s, relabelled in increasing index order.
Poset restrict(const Poset& p, Mask s);
// Elements of a come first, then those of b; no relations across.
Poset disjoint_union(const Poset& a, const Poset& b);
Mask isolated_points(const Poset& p);
bool is_discrete(const Poset& p);
// Elements of layer i that are comparable to no element of the whole base.
Mask discrete_part_of_layer(const Layering& l, int i);

// Layered restriction: keeps layers lo..hi, renumbered from 1.
Layering restrict_layers(const Layering& l, int lo, int hi);
// Induced layering on the elements of s, same depth.
Layering restrict_layering(const Layering& l, Mask s);

// Simplicial structure on k-layerings: d_0 deletes layer 1, d_k deletes
// layer k, inner d_i joins layers i and i+1; s_i inserts an empty layer
// above layer i.
Layering layering_face(const Layering& l, int i);
Layering layering_degeneracy(const Layering& l, int i);

int popcount(Mask m);
std::vector<int> elements_of(Mask m);

}  // namespace decomp
