#include "decomp/poset.hpp"

#include "decomp/canonical.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace decomp {

int popcount(Mask m) { return __builtin_popcount(m); }

std::vector<int> elements_of(Mask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(__builtin_ctz(m));
    m &= m - 1;
  }
  return out;
}

Poset::Poset(int n) : n_(n), above_(n, 0), below_(n, 0) {
  if (n < 0 || n > kMaxElements)
    throw InvalidStructureError("poset size " + std::to_string(n) + " outside 0.." +
                                std::to_string(kMaxElements));
}

Poset Poset::from_relations(int n, std::span<const std::pair<int, int>> below) {
  Poset p(n);
  for (std::size_t k = 0; k < below.size(); ++k) {
    const auto [i, j] = below[k];
    const std::string where = "relation #" + std::to_string(k) + " (" + std::to_string(i) + "<" +
                              std::to_string(j) + ")";
    if (i < 0 || j < 0 || i >= n || j >= n)
      throw InvalidStructureError(where + ": element index out of range");
    if (i == j) throw InvalidStructureError(where + ": element below itself");
    if (p.less(j, i)) throw InvalidStructureError(where + ": creates a cycle (not antisymmetric)");
    if (p.less(i, j)) continue;
    const Mask lower = p.below_[i] | bit(i);
    const Mask upper = p.above_[j] | bit(j);
    for (int a : elements_of(lower)) p.above_[a] |= upper;
    for (int b : elements_of(upper)) p.below_[b] |= lower;
  }
  return p;
}

Poset Poset::chain(int n) {
  std::vector<std::pair<int, int>> rel;
  for (int i = 0; i + 1 < n; ++i) rel.emplace_back(i, i + 1);
  return from_relations(n, rel);
}

bool Poset::has_relations() const {
  return std::any_of(above_.begin(), above_.end(), [](Mask m) { return m != 0; });
}

Poset Poset::with_new_maximal(Mask down) const {
  if (!is_down_closed(*this, down)) throw InvalidStructureError("new element's down-set is not down-closed");
  Poset p(n_ + 1);
  for (int i = 0; i < n_; ++i) {
    p.above_[i] = above_[i];
    p.below_[i] = below_[i];
  }
  for (int d : elements_of(down)) p.above_[d] |= bit(n_);
  p.below_[n_] = down;
  return p;
}

Poset Poset::relabeled(std::span<const int> perm) const {
  Poset p(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (less(i, j)) {
        p.above_[perm[i]] |= bit(perm[j]);
        p.below_[perm[j]] |= bit(perm[i]);
      }
  return p;
}

std::vector<std::pair<int, int>> Poset::cover_relations() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n_; ++i)
    for (int j : elements_of(above_[i]))
      if ((above_[i] & below_[j]) == 0) out.emplace_back(i, j);
  return out;
}

Layering Layering::make(Poset base, int depth, std::vector<int> layer_of) {
  if (depth < 0) throw InvalidStructureError("negative layering depth");
  if (static_cast<int>(layer_of.size()) != base.size())
    throw InvalidStructureError("layer vector does not match structure size");
  for (int x = 0; x < base.size(); ++x) {
    if (layer_of[x] < 1 || layer_of[x] > depth)
      throw InvalidStructureError("element " + std::to_string(x) + " has layer " +
                                  std::to_string(layer_of[x]) + " outside 1.." + std::to_string(depth));
    for (int y : elements_of(base.up_set(x)))
      if (layer_of[x] > layer_of[y])
        throw InvalidStructureError("layering not monotone at " + std::to_string(x) + "<" + std::to_string(y));
  }
  return Layering{std::move(base), depth, std::move(layer_of)};
}

Mask Layering::layer(int i) const { return layers(i, i); }

Mask Layering::layers(int lo, int hi) const {
  Mask m = 0;
  for (int x = 0; x < base.size(); ++x)
    if (layer_of[x] >= lo && layer_of[x] <= hi) m |= bit(x);
  return m;
}

namespace {

std::string key_from_labeling(const Poset& p, const std::vector<int>& order, char prefix,
                              const std::vector<int>* colors, int depth) {
  const int n = p.size();
  std::vector<int> pos(n);
  for (int k = 0; k < n; ++k) pos[order[k]] = k;
  std::string key(1, prefix);
  key += std::to_string(n);
  if (colors) {
    key += "^" + std::to_string(depth) + "[";
    for (int k = 0; k < n; ++k) {
      if (k) key += ',';
      key += std::to_string((*colors)[order[k]]);
    }
    key += "]";
  }
  std::vector<std::pair<int, int>> covers;
  for (auto [i, j] : p.cover_relations()) covers.emplace_back(pos[i], pos[j]);
  std::sort(covers.begin(), covers.end());
  key += "{";
  for (std::size_t k = 0; k < covers.size(); ++k) {
    if (k) key += ',';
    key += std::to_string(covers[k].first) + "<" + std::to_string(covers[k].second);
  }
  key += "}";
  return key;
}

std::uint64_t factorial(int k) {
  std::uint64_t r = 1;
  for (int i = 2; i <= k; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

}  // namespace

IsoClass canonical_form(const Poset& p, char prefix) {
  const std::vector<int> colors(p.size(), 0);
  const CanonicalLabeling lab = canonical_labeling(p, colors);
  return IsoClass{key_from_labeling(p, lab.order, prefix, nullptr, 0), lab.aut_order, p.size()};
}

IsoClass canonical_form(const FiniteSetObj& s) {
  return IsoClass{"S" + std::to_string(s.n), factorial(s.n), s.n};
}

IsoClass canonical_form(const Layering& l, char prefix) {
  const CanonicalLabeling lab = canonical_labeling(l.base, l.layer_of);
  return IsoClass{key_from_labeling(l.base, lab.order, prefix, &l.layer_of, l.depth), lab.aut_order,
                  l.size()};
}

IsoClass canonical_set_layering(const Layering& l) {
  if (l.base.has_relations()) throw InvalidStructureError("set layering over a non-discrete base");
  std::string key = "S^" + std::to_string(l.depth) + "[";
  std::uint64_t aut = 1;
  for (int i = 1; i <= l.depth; ++i) {
    const int c = popcount(l.layer(i));
    if (i > 1) key += ',';
    key += std::to_string(c);
    aut *= factorial(c);
  }
  key += "]";
  return IsoClass{key, aut, l.size()};
}

std::uint64_t restricted_automorphism_count(const Poset& p, std::span<const int> colors, Mask keep) {
  const std::vector<int> kept = elements_of(keep);
  std::set<std::vector<int>> images;
  for (const auto& perm : automorphisms(p, colors)) {
    std::vector<int> img;
    img.reserve(kept.size());
    for (int x : kept) img.push_back(perm[x]);
    images.insert(std::move(img));
  }
  return images.size();
}

std::vector<Poset> enumerate_posets(int n_max) {
  if (n_max < 0) throw BoundExceededError("negative size bound");
  if (n_max > 7) throw BoundExceededError("poset enumeration is limited to 7 elements");
  std::vector<Poset> out;
  std::vector<Poset> level{Poset(0)};
  out.push_back(Poset(0));
  for (int n = 1; n <= n_max; ++n) {
    std::map<std::string, Poset> next;
    for (const Poset& p : level)
      for (Mask d : down_closed_subsets(p)) {
        Poset q = p.with_new_maximal(d);
        std::string key = canonical_form(q).key;
        next.try_emplace(std::move(key), std::move(q));
      }
    level.clear();
    for (auto& [k, q] : next) level.push_back(q);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

namespace {

// Elements sorted so that everything below x comes before x.
std::vector<int> linear_extension(const Poset& p) {
  std::vector<int> order(p.size());
  for (int i = 0; i < p.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return popcount(p.down_set(a)) < popcount(p.down_set(b));
  });
  return order;
}

}  // namespace

void for_each_layering(const Poset& p, int depth, const std::function<void(const std::vector<int>&)>& visit) {
  if (depth < 0) throw InvalidStructureError("negative layering depth");
  const int n = p.size();
  if (depth == 0) {
    if (n == 0) visit({});
    return;
  }
  const std::vector<int> order = linear_extension(p);
  std::vector<int> layer(n, 0);
  std::function<void(int)> assign = [&](int k) {
    if (k == n) {
      visit(layer);
      return;
    }
    const int x = order[k];
    int lo = 1;
    for (int y : elements_of(p.down_set(x))) lo = std::max(lo, layer[y]);
    for (int l = lo; l <= depth; ++l) {
      layer[x] = l;
      assign(k + 1);
    }
    layer[x] = 0;
  };
  assign(0);
}

std::vector<Layering> layerings(const Poset& p, int depth) {
  std::vector<Layering> out;
  for_each_layering(p, depth, [&](const std::vector<int>& l) { out.push_back(Layering{p, depth, l}); });
  return out;
}

std::vector<Layering> layerings(const FiniteSetObj& s, int depth) { return layerings(s.as_poset(), depth); }

Integer nonempty_layerings_count(const Poset& p, int depth) {
  if (depth < 0) throw InvalidStructureError("negative layering depth");
  // Chains ∅ = D_0 ⊊ D_1 ⊊ ... ⊊ D_depth = P of down-closed sets.
  const std::vector<Mask> ideals = down_closed_subsets(p);
  std::map<Mask, Integer> ways;
  ways[0] = 1;
  for (int step = 0; step < depth; ++step) {
    std::map<Mask, Integer> next;
    for (const auto& [lower, count] : ways)
      for (Mask upper : ideals)
        if (upper != lower && (upper & lower) == lower) next[upper] += count;
    ways = std::move(next);
  }
  auto it = ways.find(full_mask(p.size()));
  return it == ways.end() ? Integer(0) : it->second;
}

Integer nonempty_layerings_count(const FiniteSetObj& s, int depth) {
  return nonempty_layerings_count(s.as_poset(), depth);
}

bool is_down_closed(const Poset& p, Mask s) {
  for (int x : elements_of(s))
    if ((p.down_set(x) & ~s) != 0) return false;
  return true;
}

bool is_convex(const Poset& p, Mask s) {
  for (int x : elements_of(s))
    for (int y : elements_of(s))
      if ((p.up_set(x) & p.down_set(y) & ~s) != 0) return false;
  return true;
}

std::vector<Mask> down_closed_subsets(const Poset& p) {
  std::vector<Mask> out;
  const int n = p.size();
  const std::vector<int> order = linear_extension(p);
  // Decide membership along a linear extension; x may join only if its down-set already did.
  std::function<void(int, Mask)> grow = [&](int k, Mask s) {
    if (k == n) {
      out.push_back(s);
      return;
    }
    const int x = order[k];
    grow(k + 1, s);
    if ((p.down_set(x) & ~s) == 0) grow(k + 1, s | bit(x));
  };
  grow(0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

Poset restrict(const Poset& p, Mask s) {
  const std::vector<int> kept = elements_of(s & full_mask(p.size()));
  std::vector<std::pair<int, int>> rel;
  for (std::size_t a = 0; a < kept.size(); ++a)
    for (std::size_t b = 0; b < kept.size(); ++b)
      if (p.less(kept[a], kept[b])) rel.emplace_back(static_cast<int>(a), static_cast<int>(b));
  return Poset::from_relations(static_cast<int>(kept.size()), rel);
}

Poset disjoint_union(const Poset& a, const Poset& b) {
  std::vector<std::pair<int, int>> rel;
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j)
      if (a.less(i, j)) rel.emplace_back(i, j);
  const int off = a.size();
  for (int i = 0; i < b.size(); ++i)
    for (int j = 0; j < b.size(); ++j)
      if (b.less(i, j)) rel.emplace_back(off + i, off + j);
  return Poset::from_relations(a.size() + b.size(), rel);
}

Mask isolated_points(const Poset& p) {
  Mask m = 0;
  for (int x = 0; x < p.size(); ++x)
    if (p.up_set(x) == 0 && p.down_set(x) == 0) m |= bit(x);
  return m;
}

bool is_discrete(const Poset& p) { return !p.has_relations(); }

Mask discrete_part_of_layer(const Layering& l, int i) {
  if (i < 1 || i > l.depth)
    throw std::out_of_range("layer index " + std::to_string(i) + " outside 1.." + std::to_string(l.depth));
  return l.layer(i) & isolated_points(l.base);
}

Layering restrict_layers(const Layering& l, int lo, int hi) {
  const Mask keep = hi < lo ? Mask{0} : l.layers(lo, hi);
  Layering out;
  out.base = restrict(l.base, keep);
  out.depth = hi < lo ? 0 : hi - lo + 1;
  for (int x : elements_of(keep)) out.layer_of.push_back(l.layer_of[x] - lo + 1);
  return out;
}

Layering restrict_layering(const Layering& l, Mask s) {
  Layering out;
  out.base = restrict(l.base, s);
  out.depth = l.depth;
  for (int x : elements_of(s)) out.layer_of.push_back(l.layer_of[x]);
  return out;
}

Layering layering_face(const Layering& l, int i) {
  const int k = l.depth;
  if (i == 0) return restrict_layers(l, 2, k);
  if (i == k) return restrict_layers(l, 1, k - 1);
  Layering out = l;
  out.depth = k - 1;
  for (int& x : out.layer_of)
    if (x > i) --x;
  return out;
}

Layering layering_degeneracy(const Layering& l, int i) {
  Layering out = l;
  ++out.depth;
  for (int& x : out.layer_of)
    if (x > i) ++x;
  return out;
}

}  // namespace decomp
