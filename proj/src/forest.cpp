#include "decomp/forest.hpp"

#include <map>

namespace decomp {

RootedForest RootedForest::make(std::vector<int> parent) {
  const int n = static_cast<int>(parent.size());
  if (n > kMaxElements) throw InvalidStructureError("forest has more than " + std::to_string(kMaxElements) + " nodes");
  for (int x = 0; x < n; ++x) {
    if (parent[x] < -1 || parent[x] >= n)
      throw InvalidStructureError("node " + std::to_string(x) + ": parent index " + std::to_string(parent[x]) +
                                  " out of range");
    int steps = 0;
    for (int y = parent[x]; y != -1; y = parent[y])
      if (++steps > n) throw InvalidStructureError("node " + std::to_string(x) + " lies on a parent cycle");
  }
  return RootedForest{std::move(parent)};
}

Poset RootedForest::poset() const {
  std::vector<std::pair<int, int>> rel;
  for (int x = 0; x < size(); ++x)
    if (parent[x] >= 0) rel.emplace_back(parent[x], x);
  return Poset::from_relations(size(), rel);
}

bool is_forest_order(const Poset& p) {
  for (int x = 0; x < p.size(); ++x) {
    const std::vector<int> below = elements_of(p.down_set(x));
    for (int a : below)
      for (int b : below)
        if (a != b && !p.comparable(a, b)) return false;
  }
  return true;
}

RootedForest RootedForest::from_poset(const Poset& p) {
  if (!is_forest_order(p)) throw InvalidStructureError("poset is not a forest order");
  std::vector<int> parent(p.size(), -1);
  for (int x = 0; x < p.size(); ++x)
    for (int a : elements_of(p.down_set(x)))
      if ((p.up_set(a) & p.down_set(x)) == 0) parent[x] = a;
  return RootedForest{std::move(parent)};
}

IsoClass canonical_form(const RootedForest& f) { return canonical_form(f.poset(), 'F'); }

std::vector<RootedForest> enumerate_forests(int n_max) {
  if (n_max < 0) throw BoundExceededError("negative size bound");
  if (n_max > 7) throw BoundExceededError("forest enumeration is limited to 7 nodes");
  std::vector<RootedForest> out{RootedForest{}};
  std::vector<Poset> level{Poset(0)};
  for (int n = 1; n <= n_max; ++n) {
    std::map<std::string, Poset> next;
    for (const Poset& p : level) {
      // A new leaf is attached under some node, or becomes a new root.
      std::vector<Mask> downs{0};
      for (int x = 0; x < p.size(); ++x) downs.push_back(p.down_set(x) | bit(x));
      for (Mask d : downs) {
        Poset q = p.with_new_maximal(d);
        next.try_emplace(canonical_form(q, 'F').key, std::move(q));
      }
    }
    level.clear();
    for (auto& [k, q] : next) {
      level.push_back(q);
      out.push_back(RootedForest::from_poset(q));
    }
  }
  return out;
}

std::vector<ForestCut> tree_cuts(const RootedForest& f) {
  const Poset p = f.poset();
  std::vector<ForestCut> out;
  for (Mask s : down_closed_subsets(p)) {
    const Mask rest = full_mask(p.size()) & ~s;
    out.push_back(ForestCut{RootedForest::from_poset(restrict(p, rest)), RootedForest::from_poset(restrict(p, s))});
  }
  return out;
}

}  // namespace decomp
