#include "decomp/forest.hpp"
#include "decomp/simplicial.hpp"

#include <map>
#include <mutex>

namespace decomp {

namespace {

template <class Obj>
struct Family {
  std::string name;
  int size_limit = 7;
  std::function<void(int k, int bound, const std::function<void(const Obj&)>&)> enumerate;
  std::function<IsoClass(const Obj&)> canon;
  std::function<int(const Obj&)> depth;
  std::function<Obj(const Obj&, int i)> face;
  std::function<Obj(const Obj&, int i)> degeneracy;
  // All k-layerings of the structure underlying a 1-layered object.
  std::function<void(const Obj&, int k, const std::function<void(const Obj&)>&)> relayer;
};

template <class Obj>
class Registry {
 public:
  explicit Registry(std::shared_ptr<const Family<Obj>> fam) : fam_(std::move(fam)) {}

  IsoClass add(const Obj& o) {
    IsoClass c = fam_->canon(o);
    std::lock_guard<std::mutex> lock(reps_mutex_);
    reps_.try_emplace(c.key, o, c);
    return c;
  }

  std::pair<Obj, IsoClass> get(const std::string& key) const {
    std::lock_guard<std::mutex> lock(reps_mutex_);
    auto it = reps_.find(key);
    if (it == reps_.end()) throw UnknownClassError(key);
    return it->second;
  }

  FiniteGroupoid objects(int k, int bound) {
    if (k < 0) throw std::out_of_range("negative degree");
    if (bound < 0) throw BoundExceededError("negative size bound");
    if (bound > fam_->size_limit)
      throw BoundExceededError(fam_->name + ": size bound " + std::to_string(bound) + " exceeds " +
                               std::to_string(fam_->size_limit));
    {
      std::lock_guard<std::mutex> lock(groups_mutex_);
      auto it = groups_.find({k, bound});
      if (it != groups_.end()) return it->second;
    }
    std::map<std::string, IsoClass> classes;
    fam_->enumerate(k, bound, [&](const Obj& o) {
      IsoClass c = add(o);
      classes.try_emplace(c.key, c);
    });
    std::vector<IsoClass> list;
    for (auto& [key, c] : classes) list.push_back(c);
    FiniteGroupoid g(std::move(list), bound);
    std::lock_guard<std::mutex> lock(groups_mutex_);
    return groups_.try_emplace({k, bound}, std::move(g)).first->second;
  }

 private:
  std::shared_ptr<const Family<Obj>> fam_;
  mutable std::mutex reps_mutex_;
  std::map<std::string, std::pair<Obj, IsoClass>> reps_;
  std::mutex groups_mutex_;
  std::map<std::pair<int, int>, FiniteGroupoid> groups_;
};

template <class Obj>
SimplicialInstance make_instance(Family<Obj> family) {
  auto fam = std::make_shared<const Family<Obj>>(std::move(family));
  auto reg = std::make_shared<Registry<Obj>>(fam);
  auto fetch = [fam, reg](int k, const std::string& key) {
    Obj o = reg->get(key).first;
    if (fam->depth(o) != k)
      throw std::invalid_argument(key + " is not a degree-" + std::to_string(k) + " simplex");
    return o;
  };
  SimplicialInstance x;
  x.name = fam->name;
  x.objects = [reg](int k, int bound) { return reg->objects(k, bound); };
  x.face_key = [fam, reg, fetch](int k, int i, const std::string& key) {
    if (k < 1 || i < 0 || i > k) throw std::out_of_range("face d_" + std::to_string(i) + " in degree " + std::to_string(k));
    return reg->add(fam->face(fetch(k, key), i)).key;
  };
  x.degeneracy_key = [fam, reg, fetch](int k, int i, const std::string& key) {
    if (i < 0 || i > k) throw std::out_of_range("degeneracy s_" + std::to_string(i) + " in degree " + std::to_string(k));
    return reg->add(fam->degeneracy(fetch(k, key), i)).key;
  };
  x.class_of = [reg](const std::string& key) { return reg->get(key).second; };
  x.layerings_of = [fam, reg, fetch](const std::string& key, int k) {
    std::vector<std::string> out;
    fam->relayer(fetch(1, key), k, [&](const Obj& o) { out.push_back(reg->add(o).key); });
    return out;
  };
  x.representative = [reg](const std::string& key) { return std::any(reg->get(key).first); };
  x.intern = [reg](const std::any& a) { return reg->add(std::any_cast<const Obj&>(a)).key; };
  return x;
}

void relayer_layering(const Layering& l, int k, const std::function<void(const Layering&)>& visit) {
  for_each_layering(l.base, k, [&](const std::vector<int>& layer) { visit(Layering{l.base, k, layer}); });
}

Family<Layering> layered_poset_family(std::string name, char prefix, std::function<std::vector<Poset>(int)> bases,
                                      int size_limit) {
  Family<Layering> f;
  f.name = std::move(name);
  f.size_limit = size_limit;
  f.enumerate = [bases](int k, int bound, const std::function<void(const Layering&)>& visit) {
    for (const Poset& p : bases(bound))
      for_each_layering(p, k, [&](const std::vector<int>& layer) { visit(Layering{p, k, layer}); });
  };
  f.canon = [prefix](const Layering& l) { return canonical_form(l, prefix); };
  f.depth = [](const Layering& l) { return l.depth; };
  f.face = layering_face;
  f.degeneracy = layering_degeneracy;
  f.relayer = relayer_layering;
  return f;
}

}  // namespace

SimplicialInstance instance_C() {
  static const SimplicialInstance x =
      make_instance(layered_poset_family("C", 'P', [](int bound) { return enumerate_posets(bound); }, 7));
  return x;
}

SimplicialInstance instance_forests() {
  static const SimplicialInstance x = make_instance(layered_poset_family(
      "forests", 'F',
      [](int bound) {
        std::vector<Poset> out;
        for (const RootedForest& f : enumerate_forests(bound)) out.push_back(f.poset());
        return out;
      },
      7));
  return x;
}

SimplicialInstance instance_I() {
  static const SimplicialInstance x = [] {
    Family<Layering> f;
    f.name = "I";
    f.size_limit = 12;
    f.enumerate = [](int k, int bound, const std::function<void(const Layering&)>& visit) {
      // Weak compositions of n into k parts, elements assigned in increasing order.
      for (int n = 0; n <= bound; ++n) {
        std::vector<int> sizes(k, 0);
        std::function<void(int, int)> go = [&](int part, int left) {
          if (part == k) {
            if (left != 0) return;
            std::vector<int> layer;
            for (int i = 0; i < k; ++i) layer.insert(layer.end(), sizes[i], i + 1);
            visit(Layering{Poset::discrete(n), k, layer});
            return;
          }
          for (int c = 0; c <= left; ++c) {
            sizes[part] = c;
            go(part + 1, left - c);
          }
        };
        go(0, n);
      }
    };
    f.canon = canonical_set_layering;
    f.depth = [](const Layering& l) { return l.depth; };
    f.face = layering_face;
    f.degeneracy = layering_degeneracy;
    f.relayer = relayer_layering;
    return make_instance(std::move(f));
  }();
  return x;
}

namespace {

LayeredPForest ptree_face(const LayeredPForest& l, int i) {
  const int k = l.depth;
  if (i == 0) return band(l, 2, k);
  if (i == k) return band(l, 1, k - 1);
  LayeredPForest out = l;
  out.depth = k - 1;
  for (int& x : out.layer)
    if (x > i) --x;
  return out;
}

LayeredPForest ptree_degeneracy(const LayeredPForest& l, int i) {
  LayeredPForest out = l;
  ++out.depth;
  for (int& x : out.layer)
    if (x > i) ++x;
  return out;
}

}  // namespace

SimplicialInstance instance_ptrees(std::shared_ptr<const Signature> sig) {
  Family<LayeredPForest> f;
  f.name = "ptrees";
  f.size_limit = 6;
  auto corpus_cache = std::make_shared<std::map<int, std::vector<PForest>>>();
  auto corpus_mutex = std::make_shared<std::mutex>();
  f.enumerate = [sig, corpus_cache, corpus_mutex](int k, int bound,
                                                   const std::function<void(const LayeredPForest&)>& visit) {
    std::vector<PForest> corpus;
    {
      std::lock_guard<std::mutex> lock(*corpus_mutex);
      auto it = corpus_cache->find(bound);
      if (it == corpus_cache->end()) it = corpus_cache->emplace(bound, ptree_corpus(sig, bound)).first;
      corpus = it->second;
    }
    for (const PForest& t : corpus)
      for_each_layering(t.poset(), k, [&](const std::vector<int>& layer) { visit(LayeredPForest{t, k, layer}); });
  };
  f.canon = [](const LayeredPForest& l) { return canonical_form(l); };
  f.depth = [](const LayeredPForest& l) { return l.depth; };
  f.face = ptree_face;
  f.degeneracy = ptree_degeneracy;
  f.relayer = [](const LayeredPForest& l, int k, const std::function<void(const LayeredPForest&)>& visit) {
    for_each_layering(l.forest.poset(), k,
                      [&](const std::vector<int>& layer) { visit(LayeredPForest{l.forest, k, layer}); });
  };
  return make_instance(std::move(f));
}

}  // namespace decomp
