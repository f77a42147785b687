#include "decomp/bicomodule.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

namespace decomp {

namespace {

std::string bidegree(int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

void require(bool ok, const std::string& what) {
  if (!ok) throw std::out_of_range(what);
}

Layering set_layering(int depth, std::vector<int> layer_of) {
  const int n = static_cast<int>(layer_of.size());
  return Layering{Poset::discrete(n), depth, std::move(layer_of)};
}

Layering empty_layering(int depth) { return Layering{Poset{}, depth, {}}; }

// The layered set with `n` new elements in a fresh first poset layer, the
// old layers shifted up by one.
Layering prepend_layer(const Layering& p, int n, AbacusVariant variant) {
  Poset base = disjoint_union(Poset::discrete(n), p.base);
  if (variant == AbacusVariant::ordinal_sum && n > 0 && p.size() > 0) {
    std::vector<std::pair<int, int>> below;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < p.size(); ++b) below.emplace_back(a, n + b);
    for (auto [a, b] : p.base.cover_relations()) below.emplace_back(n + a, n + b);
    base = Poset::from_relations(n + p.size(), below);
  }
  std::vector<int> layer(n, 1);
  for (int x : p.layer_of) layer.push_back(x + 1);
  return Layering{std::move(base), p.depth + 1, std::move(layer)};
}

}  // namespace

LayeredPair LayeredPair::make(std::optional<Layering> set_part, Layering poset_part) {
  if (set_part) {
    if (set_part->base.has_relations()) throw InvalidStructureError("set part carries order relations");
    Layering::make(set_part->base, set_part->depth, set_part->layer_of);
  }
  Layering::make(poset_part.base, poset_part.depth, poset_part.layer_of);
  if (!set_part && poset_part.depth < 0) throw InvalidStructureError("augmentation row needs a poset layering");
  return LayeredPair{std::move(set_part), std::move(poset_part)};
}

IsoClass canonical_form(const LayeredPair& x) {
  IsoClass p = canonical_form(x.poset_part, 'P');
  if (!x.set_part) return IsoClass{"- ; " + p.key, p.aut_order, p.grade};
  IsoClass s = canonical_set_layering(*x.set_part);
  return IsoClass{s.key + " ; " + p.key, s.aut_order * p.aut_order, s.grade + p.grade};
}

namespace pair_maps {

LayeredPair hface(const LayeredPair& x, int k) {
  const int j = x.col();
  require(j >= 1 && k >= 0 && k <= j, "d_" + std::to_string(k) + " on B" + bidegree(x.row(), j));
  const int shift = x.set_part ? 1 : 0;
  return LayeredPair{x.set_part, layering_face(x.poset_part, k + shift)};
}

LayeredPair hdegeneracy(const LayeredPair& x, int k) {
  const int j = x.col();
  const int lowest = x.set_part ? -1 : 0;
  require(j >= 0 && k >= lowest && k <= j, "s_" + std::to_string(k) + " on B" + bidegree(x.row(), j));
  const int shift = x.set_part ? 1 : 0;
  return LayeredPair{x.set_part, layering_degeneracy(x.poset_part, k + shift)};
}

LayeredPair vface(const LayeredPair& x, int k) {
  const int i = x.row();
  require(i >= 1 && k >= 0 && k <= i, "e_" + std::to_string(k) + " on B" + bidegree(i, x.col()));
  return LayeredPair{layering_face(*x.set_part, k), x.poset_part};
}

LayeredPair vdegeneracy(const LayeredPair& x, int k) {
  const int i = x.row();
  require(i >= 0 && k >= 0 && k <= i, "t_" + std::to_string(k) + " on B" + bidegree(i, x.col()));
  return LayeredPair{layering_degeneracy(*x.set_part, k), x.poset_part};
}

LayeredPair abacus(const LayeredPair& x, AbacusVariant variant) {
  const int i = x.row();
  require(i >= 0, "abacus map on B" + bidegree(i, x.col()));
  if (i == 0) return LayeredPair{std::nullopt, x.poset_part};
  const Layering& s = *x.set_part;
  const int moved = popcount(s.layer(i));
  return LayeredPair{restrict_layers(s, 1, i - 1), prepend_layer(x.poset_part, moved, variant)};
}

LayeredPair modified_top_face(const LayeredPair& x) {
  const int i = x.row();
  require(i >= 1 && x.col() >= 0, "modified top face on B" + bidegree(i, x.col()));
  const Layering& s = *x.set_part;
  const int moved = popcount(s.layer(i));
  const Layering& p = x.poset_part;
  std::vector<int> layer(moved, 1);
  layer.insert(layer.end(), p.layer_of.begin(), p.layer_of.end());
  return LayeredPair{restrict_layers(s, 1, i - 1),
                     Layering{disjoint_union(Poset::discrete(moved), p.base), p.depth, std::move(layer)}};
}

LayeredPair u(const LayeredPair& x) {
  require(x.set_part && x.col() == 0, "u on B" + bidegree(x.row(), x.col()));
  return LayeredPair{x.set_part, empty_layering(0)};
}

LayeredPair v(const LayeredPair& x) {
  require(x.row() == 0, "v on B" + bidegree(x.row(), x.col()));
  return LayeredPair{std::nullopt, layering_face(x.poset_part, 0)};
}

LayeredPair s_minus_one(const LayeredPair& x) { return hdegeneracy(x, -1); }

LayeredPair t_top_plus_one(const LayeredPair& x) {
  const int i = x.row();
  require(i >= 0 && x.col() >= 0, "t_top+1 on B" + bidegree(i, x.col()));
  const Layering& p = x.poset_part;
  const Mask d = discrete_part_of_layer(p, 1);
  std::vector<int> layer = x.set_part->layer_of;
  layer.insert(layer.end(), popcount(d), i + 1);
  return LayeredPair{set_layering(i + 1, std::move(layer)), restrict_layering(p, full_mask(p.size()) & ~d)};
}

}  // namespace pair_maps

SimplicialInstance Bisimplicial::row(int i) const {
  SimplicialInstance x;
  const Bisimplicial b = *this;
  x.name = name + " row " + std::to_string(i);
  x.objects = [b, i](int k, int bound) { return b.objects(i, k, bound); };
  x.face_key = [b, i](int k, int idx, const std::string& key) { return b.hface(i, k, idx, key); };
  x.degeneracy_key = [b, i](int k, int idx, const std::string& key) { return b.hdegeneracy(i, k, idx, key); };
  x.class_of = b.class_of;
  x.representative = b.representative;
  x.layerings_of = [](const std::string&, int) -> std::vector<std::string> {
    throw std::logic_error("layerings are not defined on a row");
  };
  return x;
}

SimplicialInstance Bisimplicial::column(int j) const {
  SimplicialInstance x;
  const Bisimplicial b = *this;
  x.name = name + " column " + std::to_string(j);
  x.objects = [b, j](int k, int bound) { return b.objects(k, j, bound); };
  x.face_key = [b, j](int k, int idx, const std::string& key) { return b.vface(k, j, idx, key); };
  x.degeneracy_key = [b, j](int k, int idx, const std::string& key) { return b.vdegeneracy(k, j, idx, key); };
  x.class_of = b.class_of;
  x.representative = b.representative;
  x.layerings_of = [](const std::string&, int) -> std::vector<std::string> {
    throw std::logic_error("layerings are not defined on a column");
  };
  return x;
}

GroupoidMap Bisimplicial::hface_map(int i, int j, int k, int bound) const {
  FiniteGroupoid dom = objects(i, j, bound);
  std::map<std::string, std::string> on;
  for (const IsoClass& c : dom.classes()) on[c.key] = hface(i, j, k, c.key);
  return GroupoidMap(std::move(dom), objects(i, j - 1, bound), std::move(on));
}

GroupoidMap Bisimplicial::vface_map(int i, int j, int k, int bound) const {
  FiniteGroupoid dom = objects(i, j, bound);
  std::map<std::string, std::string> on;
  for (const IsoClass& c : dom.classes()) on[c.key] = vface(i, j, k, c.key);
  return GroupoidMap(std::move(dom), objects(i - 1, j, bound), std::move(on));
}

Bisimplicial modify(const Bisimplicial& b, const AbacusMap& f) {
  Bisimplicial m = b;
  m.name = "modified " + b.name;
  m.vface = [b, f](int i, int j, int k, const std::string& key) {
    if (j >= 0 && k == i) return b.hface(i - 1, j + 1, 0, f(i - 1, j, key));
    return b.vface(i, j, k, key);
  };
  return m;
}

namespace {

constexpr int kPairSizeLimit = 6;

class PairRegistry {
 public:
  IsoClass add(const LayeredPair& x) {
    IsoClass c = canonical_form(x);
    std::lock_guard<std::mutex> lock(mutex_);
    reps_.try_emplace(c.key, x, c);
    return c;
  }

  std::pair<LayeredPair, IsoClass> get(const std::string& key) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = reps_.find(key);
    if (it == reps_.end()) throw UnknownClassError(key);
    return it->second;
  }

  FiniteGroupoid objects(int i, int j, int bound) {
    if (i < -1 || j < -1 || (i == -1 && j == -1)) throw std::out_of_range("bidegree " + bidegree(i, j));
    if (bound < 0 || bound > kPairSizeLimit)
      throw BoundExceededError("layered pairs: size bound " + std::to_string(bound) + " outside 0.." +
                               std::to_string(kPairSizeLimit));
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = groups_.find({i, j, bound});
      if (it != groups_.end()) return it->second;
    }
    const SimplicialInstance C = instance_C();
    std::map<std::string, IsoClass> classes;
    auto visit = [&](const LayeredPair& x) {
      IsoClass c = add(x);
      classes.try_emplace(c.key, c);
    };
    if (i == -1) {
      for (const IsoClass& p : C.objects(j, bound).classes())
        visit(LayeredPair{std::nullopt, std::any_cast<Layering>(C.representative(p.key))});
    } else {
      const SimplicialInstance I = instance_I();
      for (const IsoClass& s : I.objects(i, bound).classes())
        for (const IsoClass& p : C.objects(j + 1, bound - s.grade).classes())
          visit(LayeredPair{std::any_cast<Layering>(I.representative(s.key)),
                            std::any_cast<Layering>(C.representative(p.key))});
    }
    std::vector<IsoClass> list;
    for (auto& [key, c] : classes) list.push_back(c);
    FiniteGroupoid g(std::move(list), bound);
    std::lock_guard<std::mutex> lock(mutex_);
    return groups_.try_emplace({i, j, bound}, std::move(g)).first->second;
  }

  std::optional<std::string> recall(const std::string& memo_key) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = memo_.find(memo_key);
    if (it == memo_.end()) return std::nullopt;
    return it->second;
  }

  void remember(const std::string& memo_key, const std::string& value) {
    std::lock_guard<std::mutex> lock(mutex_);
    memo_.emplace(memo_key, value);
  }

 private:
  mutable std::mutex mutex_;
  std::map<std::string, std::pair<LayeredPair, IsoClass>> reps_;
  std::map<std::string, std::string> memo_;
  std::map<std::tuple<int, int, int>, FiniteGroupoid> groups_;
};

PairRegistry& registry() {
  static PairRegistry r;
  return r;
}

// Applies an object-level map to the representative at bidegree (i,j).
// Results are memoised per map tag.
template <class Fn>
std::string through(const std::string& tag, int i, int j, const std::string& key, Fn fn) {
  const std::string memo_key = tag + bidegree(i, j) + "|" + key;
  if (auto hit = registry().recall(memo_key)) return *hit;
  LayeredPair x = registry().get(key).first;
  if (x.row() != i || x.col() != j) throw std::invalid_argument(key + " does not lie in B" + bidegree(i, j));
  std::string out = registry().add(fn(x)).key;
  registry().remember(memo_key, out);
  return out;
}

}  // namespace

Bisimplicial layered_sets_and_posets() {
  using namespace pair_maps;
  Bisimplicial b;
  b.name = "I box Dec_bot C";
  b.objects = [](int i, int j, int bound) { return registry().objects(i, j, bound); };
  b.hface = [](int i, int j, int k, const std::string& key) {
    return through("d" + std::to_string(k), i, j, key, [k](const LayeredPair& x) { return hface(x, k); });
  };
  b.hdegeneracy = [](int i, int j, int k, const std::string& key) {
    return through("s" + std::to_string(k), i, j, key, [k](const LayeredPair& x) { return hdegeneracy(x, k); });
  };
  b.vface = [](int i, int j, int k, const std::string& key) {
    return through("e" + std::to_string(k), i, j, key, [k](const LayeredPair& x) { return vface(x, k); });
  };
  b.vdegeneracy = [](int i, int j, int k, const std::string& key) {
    return through("t" + std::to_string(k), i, j, key, [k](const LayeredPair& x) { return vdegeneracy(x, k); });
  };
  b.u = [](int i, const std::string& key) { return through("u", i, 0, key, pair_maps::u); };
  b.v = [](int j, const std::string& key) { return through("v", 0, j, key, pair_maps::v); };
  b.right_pointing = [](int i, int j, const std::string& key) { return through("s-1", i, j, key, s_minus_one); };
  b.left_pointing = [](int i, int j, const std::string& key) { return through("t+", i, j, key, t_top_plus_one); };
  b.class_of = [](const std::string& key) { return registry().get(key).second; };
  b.representative = [](const std::string& key) { return std::any(registry().get(key).first); };
  return b;
}

AbacusMap layered_abacus(AbacusVariant variant) {
  return [variant](int i, int j, const std::string& key) {
    return through(variant == AbacusVariant::ordinal_sum ? "f<" : "f+", i + 1, j, key, [variant](const LayeredPair& x) { return pair_maps::abacus(x, variant); });
  };
}

Bisimplicial layered_bicomodule(AbacusVariant variant) {
  const Bisimplicial b = layered_sets_and_posets();
  if (variant != AbacusVariant::disjoint_union) {
    Bisimplicial m = modify(b, layered_abacus(variant));
    m.name += " (ordinal sum)";
    return m;
  }
  // The top face written out directly rather than as d̲₀ ∘ f, so that the
  // abacus checks compare two independent descriptions.
  Bisimplicial m = b;
  m.name = "B";
  m.vface = [b](int i, int j, int k, const std::string& key) {
    if (j >= 0 && k == i) return through("e~", i, j, key, pair_maps::modified_top_face);
    return b.vface(i, j, k, key);
  };
  return m;
}

namespace {

// One pointwise identity family; records the first failure.
struct Identity {
  CheckEntry entry;

  explicit Identity(std::string id) { entry.id = std::move(id); }

  void test(bool ok, int i, int j, const std::string& key, const std::string& detail = {}) {
    ++entry.checked;
    if (ok || !entry.pass) return;
    entry.pass = false;
    entry.witness = key;
    entry.error = "at B" + bidegree(i, j) + (detail.empty() ? "" : ", " + detail);
  }
};

std::vector<std::string> keys_of(const Bisimplicial& b, int i, int j, int bound) {
  std::vector<std::string> out;
  for (const IsoClass& c : b.objects(i, j, bound).classes()) out.push_back(c.key);
  return out;
}

CheckEntry square_entry(const Square& sq) {
  CheckEntry e;
  e.id = sq.id;
  try {
    PullbackVerdict v = check_pullback_at_cardinality(sq);
    e.pass = v.pass;
    e.witness = v.witness;
    e.checked = v.checked;
  } catch (const NonCommutingSquareError& err) {
    e.pass = false;
    e.error = std::string("non-commuting square: ") + err.what();
  }
  return e;
}

GroupoidMap keyed_map(const Bisimplicial& b, int i, int j, int ti, int tj, int bound,
                      const std::function<std::string(const std::string&)>& fn) {
  FiniteGroupoid dom = b.objects(i, j, bound);
  std::map<std::string, std::string> on;
  for (const IsoClass& c : dom.classes()) on[c.key] = fn(c.key);
  // Every map used here is faithful on automorphisms.
  auto aut = [dom](const std::string& key) { return dom.at(key).aut_order; };
  return GroupoidMap(dom, b.objects(ti, tj, bound), std::move(on), aut);
}

// f_{i,j}: B_{i+1,j} → B_{i,j+1} as a groupoid map.
GroupoidMap abacus_map(const Bisimplicial& b, const AbacusMap& f, int i, int j, int bound) {
  return keyed_map(b, i + 1, j, i, j + 1, bound, [&](const std::string& key) { return f(i, j, key); });
}

void prefix_ids(Report& r, const std::string& prefix) {
  for (CheckEntry& e : r.squares) e.id = prefix + e.id;
}

void add_identity_entries(Report& r, const std::string& prefix, const Bisimplicial& b, const AbacusMap& f,
                          const BisimplicialBounds& bd) {
  const int S = bd.size;
  // (a) f_{i,•}: B_{i+1,•} → Dec_⊥ B_{i,•} is simplicial.
  Identity a_face(prefix + "(a) f d_k = d_{k+1} f");
  Identity a_deg(prefix + "(a) f s_k = s_{k+1} f");
  Identity a_aug(prefix + "(a) d_1 f_{i,0} = f_{i,-1} u");
  Identity a_aug2(prefix + "(a) u f_{i,-1} = e_top");
  for (int i = -1; i + 1 <= bd.max_i; ++i) {
    for (int j = 0; j <= bd.max_j; ++j)
      for (const std::string& x : keys_of(b, i + 1, j, S)) {
        const std::string fx = f(i, j, x);
        for (int k = 0; k <= j; ++k) {
          if (j >= 1)
            a_face.test(f(i, j - 1, b.hface(i + 1, j, k, x)) == b.hface(i, j + 1, k + 1, fx), i + 1, j, x,
                        "k=" + std::to_string(k));
          a_deg.test(f(i, j + 1, b.hdegeneracy(i + 1, j, k, x)) == b.hdegeneracy(i, j + 1, k + 1, fx), i + 1, j, x,
                     "k=" + std::to_string(k));
        }
        if (j == 0 && i >= 0) a_aug.test(b.hface(i, 1, 1, fx) == f(i, -1, b.u(i + 1, x)), i + 1, 0, x);
      }
    if (i >= 0)
      for (const std::string& y : keys_of(b, i + 1, -1, S))
        a_aug2.test(b.u(i, f(i, -1, y)) == b.vface(i + 1, -1, i + 1, y), i + 1, -1, y);
  }
  // (b) f_{•,j}: Dec_⊤ B_{•,j} → B_{•,j+1} is simplicial except for the top face.
  Identity b_face(prefix + "(b) e_k f = f e_k (k < top)");
  Identity b_deg(prefix + "(b) t_k f = f t_k");
  Identity b_aug(prefix + "(b) v f_{0,j} = f_{-1,j} e_0");
  Identity b_aug2(prefix + "(b) v = d_0 f_{-1,j}");
  for (int j = -1; j <= bd.max_j; ++j) {
    for (int i = 0; i + 1 <= bd.max_i; ++i)
      for (const std::string& x : keys_of(b, i + 1, j, S)) {
        const std::string fx = f(i, j, x);
        for (int k = 0; k < i; ++k)
          b_face.test(b.vface(i, j + 1, k, fx) == f(i - 1, j, b.vface(i + 1, j, k, x)), i + 1, j, x,
                      "k=" + std::to_string(k));
        for (int k = 0; k <= i; ++k)
          b_deg.test(b.vdegeneracy(i, j + 1, k, fx) == f(i + 1, j, b.vdegeneracy(i + 1, j, k, x)), i + 1, j, x,
                     "k=" + std::to_string(k));
      }
    if (j < 0) continue;
    for (const std::string& x : keys_of(b, 1, j, S))
      b_aug.test(b.v(j + 1, f(0, j, x)) == f(-1, j, b.vface(1, j, 0, x)), 1, j, x);
    for (const std::string& y : keys_of(b, 0, j, S)) b_aug2.test(b.v(j, y) == b.hface(-1, j + 1, 0, f(-1, j, y)), 0, j, y);
  }
  // (c) d_⊥ f t_⊤ = id.
  Identity c(prefix + "(c) d_0 f t_top = id");
  for (int i = 0; i + 1 <= bd.max_i; ++i)
    for (int j = 0; j <= bd.max_j; ++j)
      for (const std::string& x : keys_of(b, i, j, S))
        c.test(b.hface(i, j + 1, 0, f(i, j, b.vdegeneracy(i, j, i, x))) == x, i, j, x);
  for (Identity* e : {&a_face, &a_deg, &a_aug, &a_aug2, &b_face, &b_deg, &b_aug, &b_aug2, &c})
    r.squares.push_back(e->entry);
}

}  // namespace

Report check_abacus_axioms(const Bisimplicial& b, const AbacusMap& f, BisimplicialBounds bd) {
  Report r{b.name, "abacus", {}};
  const int S = bd.size;
  add_identity_entries(r, "", b, f, bd);
  // (d) perfectness.
  Identity d_join("(d) f e_{top-1} = d_0 f f");
  Identity d_top("(d) e_top = d_0 f");
  for (int j = 0; j <= bd.max_j; ++j) {
    for (int i = 0; i + 2 <= bd.max_i; ++i)
      for (const std::string& x : keys_of(b, i + 2, j, S))
        d_join.test(f(i, j, b.vface(i + 2, j, i + 1, x)) == b.hface(i, j + 2, 0, f(i, j + 1, f(i + 1, j, x))), i + 2, j,
                    x);
    for (int i = 1; i <= bd.max_i; ++i)
      for (const std::string& x : keys_of(b, i, j, S))
        d_top.test(b.vface(i, j, i, x) == b.hface(i - 1, j + 1, 0, f(i - 1, j, x)), i, j, x);
  }
  r.squares.push_back(d_join.entry);
  r.squares.push_back(d_top.entry);
  // (e) idempotence: modifying again changes no map, and f stays an abacus map.
  const Bisimplicial once = modify(b, f);
  const Bisimplicial twice = modify(once, f);
  Identity e("(e) modification is idempotent");
  for (int i = 1; i <= bd.max_i; ++i)
    for (int j = -1; j <= bd.max_j; ++j)
      for (const std::string& x : keys_of(b, i, j, S))
        for (int k = 0; k <= i; ++k)
          e.test(twice.vface(i, j, k, x) == once.vface(i, j, k, x), i, j, x, "e_" + std::to_string(k));
  r.squares.push_back(e.entry);
  add_identity_entries(r, "(e) after modification: ", once, f, bd);
  r.canonicalize();
  return r;
}

Report check_modified_bisimplicial(const Bisimplicial& b, BisimplicialBounds bd) {
  Report r{b.name, "bisimplicial", {}};
  const int S = bd.size;
  for (int i = -1; i <= bd.max_i; ++i) {
    Report row = check_simplicial_identities(b.row(i), S, bd.max_j);
    prefix_ids(row, "row " + std::to_string(i) + ": ");
    r.append(row);
  }
  for (int j = -1; j <= bd.max_j; ++j) {
    Report col = check_simplicial_identities(b.column(j), S, bd.max_i);
    prefix_ids(col, "column " + std::to_string(j) + ": ");
    r.append(col);
  }
  // Horizontal maps commute with vertical maps.
  Identity de("d_k e_l = e_l d_k");
  Identity se("s_k e_l = e_l s_k");
  Identity dt("d_k t_l = t_l d_k");
  Identity st("s_k t_l = t_l s_k");
  for (int i = 0; i <= bd.max_i; ++i)
    for (int j = 0; j <= bd.max_j; ++j)
      for (const std::string& x : keys_of(b, i, j, S)) {
        auto idx = [](int k, int l) { return "k=" + std::to_string(k) + ",l=" + std::to_string(l); };
        for (int l = 0; l <= i; ++l)
          for (int k = 0; k <= j; ++k) {
            if (i >= 1 && j >= 1)
              de.test(b.vface(i, j - 1, l, b.hface(i, j, k, x)) == b.hface(i - 1, j, k, b.vface(i, j, l, x)), i, j, x,
                      idx(k, l));
            if (i >= 1)
              se.test(b.vface(i, j + 1, l, b.hdegeneracy(i, j, k, x)) == b.hdegeneracy(i - 1, j, k, b.vface(i, j, l, x)),
                      i, j, x, idx(k, l));
            if (j >= 1)
              dt.test(b.vdegeneracy(i, j - 1, l, b.hface(i, j, k, x)) ==
                          b.hface(i + 1, j, k, b.vdegeneracy(i, j, l, x)),
                      i, j, x, idx(k, l));
            st.test(b.vdegeneracy(i, j + 1, l, b.hdegeneracy(i, j, k, x)) ==
                        b.hdegeneracy(i + 1, j, k, b.vdegeneracy(i, j, l, x)),
                    i, j, x, idx(k, l));
          }
      }
  // The pointings are sections of the bottom horizontal and top vertical faces.
  Identity left("e_top t_top+1 = id");
  Identity right("d_0 s_-1 = id");
  for (int i = 0; i <= bd.max_i; ++i)
    for (int j = 0; j <= bd.max_j; ++j)
      for (const std::string& x : keys_of(b, i, j, S)) {
        left.test(b.vface(i + 1, j, i + 1, b.left_pointing(i, j, x)) == x, i, j, x);
        right.test(b.hface(i, j + 1, 0, b.right_pointing(i, j, x)) == x, i, j, x);
      }
  for (Identity* e : {&de, &se, &dt, &st, &left, &right}) r.squares.push_back(e->entry);
  r.canonicalize();
  return r;
}

Report check_fibrations(const Bisimplicial& b, const AbacusMap& f, BisimplicialBounds bd) {
  Report r{b.name, "fibrations", {}};
  const int S = bd.size;
  auto e0 = [&](int i, int j) { return b.vface_map(i, j, 0, S); };
  auto dtop = [&](int i, int j) { return b.hface_map(i, j, j, S); };
  // f_{•,j} against e₀.
  for (int n = 1; n + 1 <= bd.max_i; ++n)
    for (int j = -1; j + 1 <= bd.max_j; ++j)
      r.squares.push_back(square_entry(Square{"right fibration: f against e_0 (n=" + std::to_string(n) +
                                                  ",j=" + std::to_string(j) + ")",
                                              abacus_map(b, f, n, j, S), e0(n + 1, j), e0(n, j + 1),
                                              abacus_map(b, f, n - 1, j, S)}));
  // f_{i,•} against d̲_⊤.
  for (int i = -1; i + 1 <= bd.max_i; ++i)
    for (int j = 0; j + 2 <= bd.max_j; ++j)
      r.squares.push_back(square_entry(Square{"left fibration: f against d_top (i=" + std::to_string(i) +
                                                  ",j=" + std::to_string(j) + ")",
                                              abacus_map(b, f, i, j + 1, S), dtop(i + 1, j + 1), dtop(i, j + 2),
                                              abacus_map(b, f, i, j, S)}));
  r.canonicalize();
  return r;
}

Report check_bicomodule_configuration(const Bisimplicial& b, BisimplicialBounds bd) {
  Report r{b.name, "bicomodule", {}};
  const int S = bd.size;
  for (int i = 0; i <= bd.max_i; ++i) {
    Report row = check_segal(b.row(i), S, bd.max_j);
    prefix_ids(row, "row " + std::to_string(i) + ": ");
    r.append(row);
  }
  for (int j = 0; j <= bd.max_j; ++j) {
    Report col = check_segal(b.column(j), S, bd.max_i);
    prefix_ids(col, "column " + std::to_string(j) + ": ");
    r.append(col);
  }
  r.squares.push_back(square_entry(Square{"stability: e_0 against d_0", b.hface_map(1, 1, 0, S), b.vface_map(1, 1, 0, S),
                                          b.vface_map(1, 0, 0, S), b.hface_map(0, 1, 0, S)}));
  r.squares.push_back(square_entry(Square{"stability: e_top against d_top", b.vface_map(1, 1, 1, S),
                                          b.hface_map(1, 1, 1, S), b.hface_map(0, 1, 1, S), b.vface_map(1, 0, 1, S)}));
  SimplicialMap u_map{"u", b.column(0), b.column(-1), [b](int k, const std::string& key) { return b.u(k, key); }};
  SimplicialMap v_map{"v", b.row(0), b.row(-1), [b](int k, const std::string& key) { return b.v(k, key); }};
  Report u_culf = check_culf(u_map, S, bd.max_i);
  prefix_ids(u_culf, "u culf: ");
  r.append(u_culf);
  Report v_culf = check_culf(v_map, S, bd.max_j);
  prefix_ids(v_culf, "v culf: ");
  r.append(v_culf);
  Identity ue("u e_top = e_top u");
  for (int i = 1; i <= bd.max_i; ++i)
    for (const std::string& x : keys_of(b, i, 0, S))
      ue.test(b.u(i - 1, b.vface(i, 0, i, x)) == b.vface(i, -1, i, b.u(i, x)), i, 0, x);
  Identity ve("v e_0 = v e_1");
  for (int j = 0; j <= bd.max_j; ++j)
    for (const std::string& x : keys_of(b, 1, j, S)) ve.test(b.v(j, b.vface(1, j, 0, x)) == b.v(j, b.vface(1, j, 1, x)), 1, j, x);
  r.squares.push_back(ue.entry);
  r.squares.push_back(ve.entry);
  r.canonicalize();
  return r;
}

namespace {

LayeredPair pair_rep(const Bisimplicial& b, const std::string& key) {
  return std::any_cast<LayeredPair>(b.representative(key));
}

Layering one_layer(const Poset& p) { return Layering{p, 1, std::vector<int>(p.size(), 1)}; }

// The B₀₀ key of a finite poset.
std::string b00_key(const Poset& p) { return canonical_form(LayeredPair{set_layering(0, {}), one_layer(p)}).key; }

}  // namespace

Report check_mobius_bicomodule(const Bisimplicial& b, BisimplicialBounds bd) {
  Report r{b.name, "mobius-bicomodule", {}};
  const int S = bd.size;
  CheckEntry mono_s{"s_-1 is a monomorphism", true, {}, {}, 0};
  CheckEntry mono_t{"t_top+1 is a monomorphism", true, {}, {}, 0};
  Identity fibre("t_top+1 fibre: empty iff the bottom discrete part is nonempty, else contractible");
  for (int i = 0; i <= bd.max_i; ++i)
    for (int j = 0; j <= bd.max_j; ++j) {
      if (j + 1 <= bd.max_j) {
        ++mono_s.checked;
        GroupoidMap s = keyed_map(b, i, j, i, j + 1, S, [&](const std::string& x) { return b.right_pointing(i, j, x); });
        if (!is_monomorphism(s) && mono_s.pass) {
          mono_s.pass = false;
          mono_s.error = "at B" + bidegree(i, j);
        }
      }
      if (i + 1 <= bd.max_i) {
        ++mono_t.checked;
        GroupoidMap t = keyed_map(b, i, j, i + 1, j, S, [&](const std::string& x) { return b.left_pointing(i, j, x); });
        if (!is_monomorphism(t) && mono_t.pass) {
          mono_t.pass = false;
          mono_t.error = "at B" + bidegree(i, j);
        }
        for (const IsoClass& y : t.codomain().classes()) {
          const LayeredPair p = pair_rep(b, y.key);
          const bool blocked = discrete_part_of_layer(p.poset_part, 1) != 0;
          fibre.test(fiber_cardinality(t, y) == (blocked ? 0 : 1), i + 1, j, y.key);
        }
      }
    }
  r.squares.push_back(mono_s);
  r.squares.push_back(mono_t);
  r.squares.push_back(fibre.entry);

  // Nondegenerate simplices over a fixed P, one degree past |P|: along the
  // iterated d̲₀ in row 0 and along the iterated ẽ_⊤ in column 0.
  Identity row_vanish("row 0: no nondegenerate n-simplex over P for n = |P|+1");
  Identity col_vanish("column 0: no nondegenerate n-simplex over P for n = |P|+1");
  Identity returns("candidates lie over P");
  const int vanish_bound = std::min(S, 4);
  for (const std::string& pk : keys_of(b, 0, 0, vanish_bound)) {
    const Poset base = pair_rep(b, pk).poset_part.base;
    const int n = base.size() + 1;
    std::size_t found = 0;
    for_each_layering(base, n + 1, [&](const std::vector<int>& layer) {
      const std::string x = registry().add(LayeredPair{set_layering(0, {}), Layering{base, n + 1, layer}}).key;
      std::string down = x;
      for (int deg = n; deg >= 1; --deg) down = b.hface(0, deg, 0, down);
      returns.test(down == pk, 0, n, x, "iterated d_0");
      bool nondegenerate = b.right_pointing(0, n - 1, b.hface(0, n, 0, x)) != x;
      for (int k = 0; k < n && nondegenerate; ++k)
        nondegenerate = b.hdegeneracy(0, n - 1, k, b.hface(0, n, k, x)) != x;
      found += nondegenerate;
    });
    row_vanish.test(found == 0, 0, n, pk, std::to_string(found) + " found");

    // Column 0: pairs (T → n̲, P − T) with T a set of isolated points of P.
    const Mask iso = isolated_points(base);
    const std::vector<int> iso_elems = elements_of(iso);
    found = 0;
    std::vector<int> assign(iso_elems.size(), 0);
    std::function<void(std::size_t)> go = [&](std::size_t at) {
      if (at < iso_elems.size()) {
        for (int l = 0; l <= n; ++l) {
          assign[at] = l;
          go(at + 1);
        }
        return;
      }
      std::vector<int> set_layers;
      Mask moved = 0;
      for (std::size_t t = 0; t < iso_elems.size(); ++t)
        if (assign[t] > 0) {
          set_layers.push_back(assign[t]);
          moved |= bit(iso_elems[t]);
        }
      const LayeredPair y{set_layering(n, set_layers), one_layer(restrict(base, full_mask(base.size()) & ~moved))};
      const std::string x = registry().add(y).key;
      std::string down = x;
      for (int deg = n; deg >= 1; --deg) down = b.vface(deg, 0, deg, down);
      returns.test(down == pk, n, 0, x, "iterated top face");
      bool nondegenerate = b.left_pointing(n - 1, 0, b.vface(n, 0, n, x)) != x;
      for (int k = 0; k < n && nondegenerate; ++k)
        nondegenerate = b.vdegeneracy(n - 1, 0, k, b.vface(n, 0, k, x)) != x;
      found += nondegenerate;
    };
    go(0);
    col_vanish.test(found == 0, n, 0, pk, std::to_string(found) + " found");
  }
  r.squares.push_back(row_vanish.entry);
  r.squares.push_back(col_vanish.entry);
  r.squares.push_back(returns.entry);
  r.canonicalize();
  return r;
}

namespace {

std::string set_key(int n) { return canonical_set_layering(set_layering(1, std::vector<int>(n, 1))).key; }
std::string poset_key(const Poset& p) { return canonical_form(one_layer(p), 'P').key; }

}  // namespace

FormalSum gamma_left(const Poset& p) {
  FormalSum out;
  const Mask iso = isolated_points(p);
  const Mask all = full_mask(p.size());
  // Every subset of the isolated points, by the standard submask walk.
  for (Mask s = iso;; s = (s - 1) & iso) {
    out.add(tensor_key({set_key(popcount(s)), poset_key(restrict(p, all & ~s))}), 1);
    if (s == 0) break;
  }
  return out;
}

FormalSum gamma_right(const Poset& p) {
  FormalSum out;
  const Mask all = full_mask(p.size());
  for (Mask d : down_closed_subsets(p)) out.add(tensor_key({poset_key(restrict(p, d)), poset_key(restrict(p, all & ~d))}), 1);
  return out;
}

namespace {

// |Aut P| · Σ 1/|Aut x| over the classes x of B_{i,j} sent to P by `down`,
// each contributing the term named by `term`.
FormalSum span_sum(const Bisimplicial& b, const Poset& p, int i, int j,
                   const std::function<std::string(const std::string&)>& down,
                   const std::function<std::string(const std::string&)>& term) {
  const std::string target = b00_key(p);
  b.objects(0, 0, p.size());
  const Rational aut_p(static_cast<long long>(b.class_of(target).aut_order));
  FormalSum out;
  for (const IsoClass& x : b.objects(i, j, p.size()).classes()) {
    if (x.grade != p.size() || down(x.key) != target) continue;
    out.add(term(x.key), aut_p / Rational(static_cast<long long>(x.aut_order)));
  }
  return out;
}

std::string keep_poset_key(const Bisimplicial& b, const std::string& key) {
  return canonical_form(pair_rep(b, key).poset_part, 'P').key;
}

}  // namespace

FormalSum gamma_left_by_span(const Bisimplicial& b, const Poset& p) {
  return span_sum(
      b, p, 1, 0, [&](const std::string& x) { return b.vface(1, 0, 1, x); },
      [&](const std::string& x) {
        const std::string set = canonical_set_layering(*pair_rep(b, b.u(1, x)).set_part).key;
        return tensor_key({set, keep_poset_key(b, b.vface(1, 0, 0, x))});
      });
}

FormalSum gamma_right_by_span(const Bisimplicial& b, const Poset& p) {
  return span_sum(
      b, p, 0, 1, [&](const std::string& x) { return b.hface(0, 1, 0, x); },
      [&](const std::string& x) {
        return tensor_key({keep_poset_key(b, b.hface(0, 1, 1, x)), keep_poset_key(b, b.v(1, x))});
      });
}

Functional delta_L() {
  Functional d;
  d.set(poset_key(Poset{}), 1);
  return d;
}

Functional delta_R() { return delta_L(); }

MobiusTables mobius_tables(int size_bound) {
  MobiusTables t;
  t.size_bound = size_bound;
  const SimplicialInstance I = instance_I();
  const SimplicialInstance C = instance_C();
  t.mu_I = mobius_functional(I, corpus(I, size_bound));
  t.mu_C = mobius_functional(C, corpus(C, size_bound));
  return t;
}

RotaResult rota_check(const Poset& p, const MobiusTables& tables) {
  if (p.size() > tables.size_bound)
    throw BoundExceededError("poset of size " + std::to_string(p.size()) + " outside the Möbius tables");
  RotaResult r;
  r.key = poset_key(p);
  const Functional dR = delta_R();
  const Functional dL = delta_L();
  for (const auto& [t, c] : gamma_left(p).terms()) {
    const auto parts = split_tensor(t);
    r.lhs += c * tables.mu_I(parts[0]) * dR(parts[1]);
  }
  for (const auto& [t, c] : gamma_right(p).terms()) {
    const auto parts = split_tensor(t);
    r.rhs += c * dL(parts[0]) * tables.mu_C(parts[1]);
  }
  r.closed_form = mobius_closed_form(instance_C(), r.key);
  r.mu_C = tables.mu_C(r.key);
  r.equal = r.lhs == r.rhs && r.rhs == r.closed_form;
  return r;
}

std::vector<RotaResult> rota_over_corpus(int size_bound, int threads) {
  return rota_over_corpus(mobius_tables(size_bound), threads);
}

std::vector<RotaResult> rota_over_corpus(const MobiusTables& tables, int threads) {
  const std::vector<Poset> posets = enumerate_posets(tables.size_bound);
  std::vector<RotaResult> out(posets.size());
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(posets.size())));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    try {
      for (std::size_t k = next++; k < posets.size(); k = next++) out[k] = rota_check(posets[k], tables);
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  std::sort(out.begin(), out.end(), [](const RotaResult& a, const RotaResult& b) { return a.key < b.key; });
  return out;
}

Report verify_rota(const std::vector<RotaResult>& results, int span_bound) {
  Report r{"C", "rota", {}};
  CheckEntry rota{"rota formula: lhs = rhs = closed form", true, {}, {}, 0};
  CheckEntry left{"left side equals (-1)^n on discrete posets and 0 otherwise", true, {}, {}, 0};
  CheckEntry right{"right side equals mu^C", true, {}, {}, 0};
  auto fail = [](CheckEntry& e, const std::string& key) {
    if (e.pass) e.witness = key;
    e.pass = false;
  };
  for (const RotaResult& x : results) {
    ++rota.checked;
    ++left.checked;
    ++right.checked;
    if (!x.equal) fail(rota, x.key);
    if (x.lhs != x.closed_form) fail(left, x.key);
    if (x.rhs != x.mu_C) fail(right, x.key);
  }
  CheckEntry span_l{"gamma_l read off its span", true, {}, {}, 0};
  CheckEntry span_r{"gamma_r read off its span", true, {}, {}, 0};
  CheckEntry coproduct_r{"gamma_r equals the coproduct of C", true, {}, {}, 0};
  const Bisimplicial b = layered_bicomodule();
  const SimplicialInstance C = instance_C();
  corpus(C, span_bound);
  for (const Poset& p : enumerate_posets(span_bound)) {
    const std::string key = poset_key(p);
    ++span_l.checked;
    ++span_r.checked;
    ++coproduct_r.checked;
    const FormalSum gr = gamma_right(p);
    if (gamma_left_by_span(b, p) != gamma_left(p)) fail(span_l, key);
    if (gamma_right_by_span(b, p) != gr) fail(span_r, key);
    if (coproduct(C, key) != gr) fail(coproduct_r, key);
  }
  r.squares = {rota, left, right, span_l, span_r, coproduct_r};
  r.canonicalize();
  return r;
}

nlohmann::ordered_json to_json(const RotaResult& r) {
  nlohmann::ordered_json j;
  j["key"] = r.key;
  j["lhs"] = to_string(r.lhs);
  j["rhs"] = to_string(r.rhs);
  j["closed_form"] = to_string(r.closed_form);
  j["equal"] = r.equal;
  return j;
}

}  // namespace decomp
