#include "decomp/simplicial.hpp"

#include <set>

namespace decomp {

GroupoidMap SimplicialInstance::face(int k, int i, int bound) const {
  FiniteGroupoid dom = objects(k, bound);
  std::map<std::string, std::string> on;
  for (const IsoClass& c : dom.classes()) on[c.key] = face_key(k, i, c.key);
  return GroupoidMap(std::move(dom), objects(k - 1, bound), std::move(on));
}

GroupoidMap SimplicialInstance::degeneracy(int k, int i, int bound) const {
  FiniteGroupoid dom = objects(k, bound);
  std::map<std::string, std::string> on;
  for (const IsoClass& c : dom.classes()) on[c.key] = degeneracy_key(k, i, c.key);
  // Inserting an empty layer is faithful on automorphisms.
  auto aut = [dom](const std::string& key) { return dom.at(key).aut_order; };
  return GroupoidMap(dom, objects(k + 1, bound), std::move(on), aut);
}

std::string SimplicialInstance::layer_key(int k, int i, const std::string& key) const {
  if (i < 1 || i > k) throw std::out_of_range("layer " + std::to_string(i) + " of a degree-" + std::to_string(k) + " simplex");
  std::string cur = key;
  int deg = k;
  for (int t = 1; t < i; ++t) cur = face_key(deg--, 0, cur);
  while (deg > 1) {
    cur = face_key(deg, deg, cur);
    --deg;
  }
  return cur;
}

bool SimplicialInstance::is_degenerate(const std::string& key) const {
  return degeneracy_key(0, 0, face_key(1, 0, key)) == key;
}

SimplicialInstance decalage(const SimplicialInstance& base, DecalageSide side) {
  SimplicialInstance x = base;
  const bool lower = side == DecalageSide::lower;
  x.name = std::string(lower ? "Dec_bot(" : "Dec_top(") + base.name + ")";
  x.max_degree = base.max_degree - 1;
  x.objects = [base](int k, int bound) { return base.objects(k + 1, bound); };
  const int shift = lower ? 1 : 0;
  x.face_key = [base, shift](int k, int i, const std::string& key) {
    if (i < 0 || i > k) throw std::out_of_range("face index out of range");
    return base.face_key(k + 1, i + shift, key);
  };
  x.degeneracy_key = [base, shift](int k, int i, const std::string& key) {
    if (i < 0 || i > k) throw std::out_of_range("degeneracy index out of range");
    return base.degeneracy_key(k + 1, i + shift, key);
  };
  x.layerings_of = [](const std::string&, int) -> std::vector<std::string> {
    throw std::logic_error("layerings are not defined on a décalage");
  };
  return x;
}

GroupoidMap SimplicialMap::component(int k, int bound) const {
  FiniteGroupoid dom = source.objects(k, bound);
  std::map<std::string, std::string> on;
  for (const IsoClass& c : dom.classes()) on[c.key] = on_key(k, c.key);
  return GroupoidMap(std::move(dom), target.objects(k, bound), std::move(on));
}

SimplicialMap decalage_map(const SimplicialInstance& base, DecalageSide side) {
  const bool lower = side == DecalageSide::lower;
  SimplicialMap g;
  g.name = lower ? "d_bot" : "d_top";
  g.source = decalage(base, side);
  g.target = base;
  g.on_key = [base, lower](int k, const std::string& key) { return base.face_key(k + 1, lower ? 0 : k + 1, key); };
  return g;
}

SimplicialMap forest_to_poset_map() {
  SimplicialMap g;
  g.name = "forest->poset";
  g.source = instance_forests();
  g.target = instance_C();
  const SimplicialInstance src = g.source;
  g.on_key = [src](int, const std::string& key) {
    return canonical_form(std::any_cast<Layering>(src.representative(key)), 'P').key;
  };
  return g;
}

SimplicialMap poset_to_set_map() {
  SimplicialMap g;
  g.name = "poset->set";
  g.source = instance_C();
  g.target = instance_I();
  const SimplicialInstance src = g.source;
  g.on_key = [src](int, const std::string& key) {
    Layering l = std::any_cast<Layering>(src.representative(key));
    return canonical_set_layering(Layering{Poset::discrete(l.size()), l.depth, l.layer_of}).key;
  };
  return g;
}

namespace {

CheckEntry run_square(const Square& sq) {
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

std::string tag(const std::string& base, std::initializer_list<std::pair<const char*, int>> params) {
  std::string s = base + " (";
  bool first = true;
  for (auto [name, v] : params) {
    if (!first) s += ",";
    first = false;
    s += std::string(name) + "=" + std::to_string(v);
  }
  return s + ")";
}

}  // namespace

Report check_decomposition_space(const SimplicialInstance& x, int size_bound, int degree_bound) {
  Report r{x.name, "decomposition-space", {}};
  const int S = size_bound;
  for (int n = 0; n + 2 <= degree_bound; ++n)
    for (int k = 0; k <= n; ++k) {
      r.squares.push_back(run_square(Square{tag("s_{k+1} vs d_bot", {{"n", n}, {"k", k}}), x.degeneracy(n + 1, k + 1, S),
                                            x.face(n + 1, 0, S), x.face(n + 2, 0, S), x.degeneracy(n, k, S)}));
      r.squares.push_back(run_square(Square{tag("s_k vs d_top", {{"n", n}, {"k", k}}), x.degeneracy(n + 1, k, S),
                                            x.face(n + 1, n + 1, S), x.face(n + 2, n + 2, S), x.degeneracy(n, k, S)}));
      if (n + 3 > degree_bound) continue;
      r.squares.push_back(run_square(Square{tag("d_{k+2} vs d_bot", {{"n", n}, {"k", k}}), x.face(n + 3, k + 2, S),
                                            x.face(n + 3, 0, S), x.face(n + 2, 0, S), x.face(n + 2, k + 1, S)}));
      r.squares.push_back(run_square(Square{tag("d_{k+1} vs d_top", {{"n", n}, {"k", k}}), x.face(n + 3, k + 1, S),
                                            x.face(n + 3, n + 3, S), x.face(n + 2, n + 2, S), x.face(n + 2, k + 1, S)}));
    }
  r.canonicalize();
  return r;
}

Report check_segal(const SimplicialInstance& x, int size_bound, int degree_bound) {
  Report r{x.name, "segal", {}};
  const int S = size_bound;
  for (int n = 1; n + 1 <= degree_bound; ++n)
    r.squares.push_back(run_square(
        Square{tag("segal", {{"n", n}}), x.face(n + 1, n + 1, S), x.face(n + 1, 0, S), x.face(n, 0, S), x.face(n, n, S)}));
  r.canonicalize();
  return r;
}

bool check_complete(const SimplicialInstance& x, int size_bound) {
  return is_monomorphism(x.degeneracy(0, 0, size_bound));
}

Report check_culf(const SimplicialMap& g, int size_bound, int degree_bound) {
  Report r{g.name, "culf", {}};
  const int S = size_bound;
  // Simpliciality on every face and degeneracy, pointwise.  Materialising the
  // target registers every key the map can produce.
  for (int k = 0; k <= degree_bound; ++k) g.target.objects(k, S);
  for (int k = 0; k <= degree_bound; ++k) {
    CheckEntry e;
    e.id = tag("simplicial", {{"k", k}});
    for (const IsoClass& c : g.source.objects(k, S).classes()) {
      ++e.checked;
      const std::string gc = g.on_key(k, c.key);
      for (int i = 0; i <= k && e.pass; ++i) {
        if (k >= 1 && g.on_key(k - 1, g.source.face_key(k, i, c.key)) != g.target.face_key(k, i, gc)) {
          e.pass = false;
          e.witness = c.key;
          e.error = "does not commute with d_" + std::to_string(i);
        }
        if (e.pass && k + 1 <= degree_bound &&
            g.on_key(k + 1, g.source.degeneracy_key(k, i, c.key)) != g.target.degeneracy_key(k, i, gc)) {
          e.pass = false;
          e.witness = c.key;
          e.error = "does not commute with s_" + std::to_string(i);
        }
      }
      if (!e.pass) break;
    }
    r.squares.push_back(e);
  }
  for (int k = 2; k <= degree_bound; ++k)
    for (int i = 1; i < k; ++i)
      r.squares.push_back(run_square(Square{tag("active d_i", {{"k", k}, {"i", i}}), g.source.face(k, i, S),
                                            g.component(k, S), g.component(k - 1, S), g.target.face(k, i, S)}));
  for (int k = 0; k + 1 <= degree_bound; ++k)
    for (int i = 0; i <= k; ++i)
      r.squares.push_back(run_square(Square{tag("active s_i", {{"k", k}, {"i", i}}), g.source.degeneracy(k, i, S),
                                            g.component(k, S), g.component(k + 1, S), g.target.degeneracy(k, i, S)}));
  r.canonicalize();
  return r;
}

Report check_simplicial_identities(const SimplicialInstance& x, int size_bound, int degree_bound) {
  Report r{x.name, "simplicial-identities", {}};
  auto d = [&](int k, int i, const std::string& key) { return x.face_key(k, i, key); };
  auto s = [&](int k, int i, const std::string& key) { return x.degeneracy_key(k, i, key); };
  for (int k = 0; k <= degree_bound; ++k) {
    CheckEntry dd{tag("d_i d_j = d_{j-1} d_i", {{"k", k}}), true, {}, {}, 0};
    CheckEntry ss{tag("s_i s_j = s_{j+1} s_i", {{"k", k}}), true, {}, {}, 0};
    CheckEntry ds{tag("d_i s_j", {{"k", k}}), true, {}, {}, 0};
    auto fail = [](CheckEntry& e, const std::string& key, const std::string& what) {
      if (!e.pass) return;
      e.pass = false;
      e.witness = key;
      e.error = what;
    };
    for (const IsoClass& c : x.objects(k, size_bound).classes()) {
      const std::string& a = c.key;
      if (k >= 2)
        for (int j = 1; j <= k; ++j)
          for (int i = 0; i < j; ++i) {
            ++dd.checked;
            if (d(k - 1, i, d(k, j, a)) != d(k - 1, j - 1, d(k, i, a)))
              fail(dd, a, "i=" + std::to_string(i) + ",j=" + std::to_string(j));
          }
      if (k + 2 <= degree_bound)
        for (int j = 0; j <= k; ++j)
          for (int i = 0; i <= j; ++i) {
            ++ss.checked;
            if (s(k + 1, i, s(k, j, a)) != s(k + 1, j + 1, s(k, i, a)))
              fail(ss, a, "i=" + std::to_string(i) + ",j=" + std::to_string(j));
          }
      if (k + 1 <= degree_bound)
        for (int j = 0; j <= k; ++j)
          for (int i = 0; i <= k + 1; ++i) {
            ++ds.checked;
            const std::string lhs = d(k + 1, i, s(k, j, a));
            std::string rhs;
            if (i < j)
              rhs = s(k - 1, j - 1, d(k, i, a));
            else if (i == j || i == j + 1)
              rhs = a;
            else
              rhs = s(k - 1, j, d(k, i - 1, a));
            if (lhs != rhs) fail(ds, a, "i=" + std::to_string(i) + ",j=" + std::to_string(j));
          }
    }
    if (dd.checked) r.squares.push_back(dd);
    if (ss.checked) r.squares.push_back(ss);
    if (ds.checked) r.squares.push_back(ds);
  }
  r.canonicalize();
  return r;
}

Report check_finite_length(const SimplicialInstance& x, int size_bound, int extra) {
  Report r{x.name, "finite-length", {}};
  CheckEntry e{"no nondegenerate k-simplex over a size-n object for k > n", true, {}, {}, 0};
  for (const IsoClass& c : x.objects(1, size_bound).classes())
    for (int k = c.grade + 1; k <= c.grade + extra; ++k) {
      ++e.checked;
      for (const std::string& l : x.layerings_of(c.key, k)) {
        bool nondegenerate = true;
        for (int i = 1; i <= k && nondegenerate; ++i) nondegenerate = !x.is_degenerate(x.layer_key(k, i, l));
        if (nondegenerate && e.pass) {
          e.pass = false;
          e.witness = c.key;
        }
      }
    }
  r.squares.push_back(e);
  return r;
}

SimplicialInstance mutate_drop_class(const SimplicialInstance& x, int k, const std::string& key) {
  SimplicialInstance y = x;
  y.name = x.name + "[drop " + key + "]";
  y.objects = [x, k, key](int m, int bound) {
    FiniteGroupoid g = x.objects(m, bound);
    if (m < k) return g;
    std::set<std::string> removed{key};
    for (int level = k + 1; level <= m; ++level) {
      std::set<std::string> next;
      for (const IsoClass& c : x.objects(level, bound).classes())
        for (int i = 0; i <= level; ++i)
          if (removed.count(x.face_key(level, i, c.key))) {
            next.insert(c.key);
            break;
          }
      removed = std::move(next);
    }
    std::vector<IsoClass> kept;
    for (const IsoClass& c : g.classes())
      if (!removed.count(c.key)) kept.push_back(c);
    return FiniteGroupoid(std::move(kept), g.grade_bound());
  };
  return y;
}

SimplicialInstance mutate_duplicate_s0(const SimplicialInstance& x, const std::string& key) {
  SimplicialInstance y = x;
  const std::string clone = key + "'";
  y.name = x.name + "[duplicate s0 at " + key + "]";
  y.objects = [x, key, clone](int m, int bound) {
    FiniteGroupoid g = x.objects(m, bound);
    if (m != 0 || !g.contains(key)) return g;
    std::vector<IsoClass> classes = g.classes();
    IsoClass c = g.at(key);
    c.key = clone;
    classes.push_back(c);
    return FiniteGroupoid(std::move(classes), g.grade_bound());
  };
  y.degeneracy_key = [x, key, clone](int m, int i, const std::string& k) {
    return x.degeneracy_key(m, i, m == 0 && k == clone ? key : k);
  };
  y.class_of = [x, key, clone](const std::string& k) {
    if (k != clone) return x.class_of(k);
    IsoClass c = x.class_of(key);
    c.key = clone;
    return c;
  };
  return y;
}

}  // namespace decomp
