#include "decomp/coalgebra.hpp"

#include <any>

namespace decomp {

std::string tensor_key(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += kTensor;
    out += parts[i];
  }
  return out;
}

std::vector<std::string> split_tensor(const std::string& key) {
  std::vector<std::string> out;
  const std::string sep = kTensor;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = key.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(key.substr(start));
      return out;
    }
    out.push_back(key.substr(start, pos - start));
    start = pos + sep.size();
  }
}

void FormalSum::add(const std::string& key, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, fresh] = terms_.try_emplace(key, coeff);
  if (fresh) return;
  it->second += coeff;
  if (it->second == 0) terms_.erase(it);
}

Rational FormalSum::coeff(const std::string& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Rational(0) : it->second;
}

FormalSum& FormalSum::operator+=(const FormalSum& other) {
  for (const auto& [k, c] : other.terms_) add(k, c);
  return *this;
}

FormalSum FormalSum::operator*(const Rational& s) const {
  FormalSum out;
  for (const auto& [k, c] : terms_) out.add(k, c * s);
  return out;
}

void Functional::set(const std::string& key, const Rational& v) {
  if (v == 0)
    table_.erase(key);
  else
    table_[key] = v;
}

Rational Functional::operator()(const std::string& key) const {
  auto it = table_.find(key);
  return it == table_.end() ? Rational(0) : it->second;
}

FormalSum coproduct(const SimplicialInstance& x, const std::string& a, CoproductOptions opt) {
  FormalSum out;
  bool dropped = false;
  for (const std::string& l : x.layerings_of(a, 2)) {
    const std::string lower = x.layer_key(2, 1, l);
    const std::string upper = x.layer_key(2, 2, l);
    if (opt.drop_first_nontrivial_cut && !dropped && !x.is_degenerate(lower) && !x.is_degenerate(upper)) {
      dropped = true;
      continue;
    }
    out.add(tensor_key({lower, upper}), 1);
  }
  return out;
}

Rational counit(const SimplicialInstance& x, const std::string& a) { return x.is_degenerate(a) ? 1 : 0; }

std::vector<std::string> corpus(const SimplicialInstance& x, int size_bound) {
  std::vector<std::string> out;
  for (const IsoClass& c : x.objects(1, size_bound).classes()) out.push_back(c.key);
  return out;
}

Functional zeta(const std::vector<std::string>& keys) {
  Functional z;
  for (const auto& k : keys) z.set(k, 1);
  return z;
}

Functional counit_functional(const SimplicialInstance& x, const std::vector<std::string>& keys) {
  Functional e;
  for (const auto& k : keys) e.set(k, counit(x, k));
  return e;
}

Functional convolve(const Functional& phi_f, const Functional& psi, const SimplicialInstance& x,
                    const std::vector<std::string>& keys) {
  Functional out;
  for (const auto& a : keys) {
    Rational total = 0;
    for (const auto& [t, c] : coproduct(x, a).terms()) {
      const auto parts = split_tensor(t);
      total += c * phi_f(parts[0]) * psi(parts[1]);
    }
    out.set(a, total);
  }
  return out;
}

namespace {

// The order whose layerings are the simplices over a; a layer is degenerate
// exactly when it holds no element of this order.
Poset underlying_order(const SimplicialInstance& x, const std::string& a) {
  std::any rep = x.representative(a);
  if (auto* l = std::any_cast<Layering>(&rep)) return l->base;
  if (auto* f = std::any_cast<LayeredPForest>(&rep)) return f->forest.poset();
  throw std::logic_error("instance " + x.name + " has no underlying order");
}

}  // namespace

Rational phi(const SimplicialInstance& x, const std::string& a, int k) {
  if (k < 0) throw std::invalid_argument("negative layering depth");
  return Rational(nonempty_layerings_count(underlying_order(x, a), k));
}

Rational phi_by_enumeration(const SimplicialInstance& x, const std::string& a, int k) {
  if (k < 0) throw std::invalid_argument("negative layering depth");
  if (k == 0) return x.is_degenerate(a) ? 1 : 0;
  Integer count = 0;
  for (const std::string& l : x.layerings_of(a, k)) {
    bool nondegenerate = true;
    for (int i = 1; i <= k && nondegenerate; ++i) nondegenerate = !x.is_degenerate(x.layer_key(k, i, l));
    count += nondegenerate;
  }
  return Rational(count);
}

Rational mobius_by_inversion(const SimplicialInstance& x, const std::string& a) {
  const int n = x.class_of(a).grade;
  Rational mu = 0;
  for (int k = 0; k <= n; ++k) mu += sign_power(k) * phi(x, a, k);
  return mu;
}

Rational mobius_closed_form(const SimplicialInstance& x, const std::string& a) {
  std::any rep = x.representative(a);
  if (x.name == "I") return sign_power(std::any_cast<Layering>(rep).size());
  if (x.name == "C" || x.name == "forests") {
    const Layering& l = std::any_cast<const Layering&>(rep);
    return is_discrete(l.base) ? sign_power(l.size()) : Rational(0);
  }
  if (x.name == "ptrees") {
    const PForest& f = std::any_cast<const LayeredPForest&>(rep).forest;
    return is_corolla_forest(f) ? sign_power(f.size()) : Rational(0);
  }
  throw std::logic_error("no closed form for instance " + x.name);
}

Functional mobius_functional(const SimplicialInstance& x, const std::vector<std::string>& keys) {
  Functional mu;
  for (const auto& k : keys) mu.set(k, mobius_by_inversion(x, k));
  return mu;
}

Report verify_coalgebra_laws(const SimplicialInstance& x, int size_bound, CoproductOptions opt) {
  Report r{x.name, "coalgebra", {}};
  CheckEntry coassoc{"coassociativity", true, {}, {}, 0};
  CheckEntry left{"counit (left)", true, {}, {}, 0};
  CheckEntry right{"counit (right)", true, {}, {}, 0};
  const std::vector<std::string> keys = corpus(x, size_bound);
  std::map<std::string, FormalSum> delta;
  auto D = [&](const std::string& a) -> const FormalSum& {
    auto it = delta.find(a);
    if (it == delta.end()) it = delta.emplace(a, coproduct(x, a, opt)).first;
    return it->second;
  };
  for (const auto& a : keys) {
    FormalSum lhs, rhs, l_unit, r_unit;
    for (const auto& [t, c] : D(a).terms()) {
      const auto parts = split_tensor(t);
      for (const auto& [t2, c2] : D(parts[0]).terms()) lhs.add(t2 + kTensor + parts[1], c * c2);
      for (const auto& [t2, c2] : D(parts[1]).terms()) rhs.add(parts[0] + kTensor + t2, c * c2);
      l_unit.add(parts[1], c * counit(x, parts[0]));
      r_unit.add(parts[0], c * counit(x, parts[1]));
    }
    FormalSum self;
    self.add(a, 1);
    ++coassoc.checked;
    ++left.checked;
    ++right.checked;
    auto fail = [&](CheckEntry& e) {
      if (e.pass) e.witness = a;
      e.pass = false;
    };
    if (lhs != rhs) fail(coassoc);
    if (l_unit != self) fail(left);
    if (r_unit != self) fail(right);
  }
  r.squares = {coassoc, left, right};
  r.canonicalize();
  return r;
}

}  // namespace decomp
