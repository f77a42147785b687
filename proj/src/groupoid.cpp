#include "decomp/groupoid.hpp"

#include <algorithm>

namespace decomp {

FiniteGroupoid::FiniteGroupoid(std::vector<IsoClass> classes, int grade_bound)
    : classes_(std::move(classes)), grade_bound_(grade_bound) {
  std::sort(classes_.begin(), classes_.end(),
            [](const IsoClass& a, const IsoClass& b) { return a.key < b.key; });
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    if (classes_[i].aut_order == 0) throw std::invalid_argument("aut_order must be positive");
    if (i > 0 && classes_[i - 1].key == classes_[i].key)
      throw std::invalid_argument("duplicate class key: " + classes_[i].key);
  }
}

const IsoClass* FiniteGroupoid::find(std::string_view key) const {
  auto it = std::lower_bound(classes_.begin(), classes_.end(), key,
                             [](const IsoClass& c, std::string_view k) { return c.key < k; });
  if (it == classes_.end() || it->key != key) return nullptr;
  return &*it;
}

const IsoClass& FiniteGroupoid::at(std::string_view key) const {
  const IsoClass* c = find(key);
  if (!c) throw UnknownClassError(std::string(key));
  return *c;
}

FiniteGroupoid FiniteGroupoid::disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  std::vector<IsoClass> all = a.classes_;
  all.insert(all.end(), b.classes_.begin(), b.classes_.end());
  return FiniteGroupoid(std::move(all), std::min(a.grade_bound_, b.grade_bound_));
}

GroupoidMap::GroupoidMap(FiniteGroupoid domain, FiniteGroupoid codomain,
                         std::map<std::string, std::string> on_classes, AutImage aut_image_order)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      on_classes_(std::move(on_classes)),
      aut_image_order_(std::move(aut_image_order)) {
  for (const IsoClass& x : domain_.classes()) {
    auto it = on_classes_.find(x.key);
    if (it == on_classes_.end()) throw UnknownClassError(x.key);
    if (!codomain_.contains(it->second)) throw UnknownClassError(it->second);
    preimages_[it->second].push_back(x.key);
  }
  if (on_classes_.size() != domain_.size())
    throw std::invalid_argument("on_classes mentions keys outside the domain");
}

const std::string& GroupoidMap::operator()(std::string_view domain_key) const {
  auto it = on_classes_.find(std::string(domain_key));
  if (it == on_classes_.end()) throw UnknownClassError(std::string(domain_key));
  return it->second;
}

std::uint64_t GroupoidMap::aut_image_order(const std::string& domain_key) const {
  if (!aut_image_order_) throw std::logic_error("map carries no automorphism image data");
  return aut_image_order_(domain_key);
}

const std::vector<std::string>& GroupoidMap::preimage(std::string_view codomain_key) const {
  static const std::vector<std::string> kNone;
  auto it = preimages_.find(codomain_key);
  return it == preimages_.end() ? kNone : it->second;
}

GroupoidMap GroupoidMap::compose_after(const GroupoidMap& first) const {
  std::map<std::string, std::string> composite;
  for (const auto& [x, y] : first.on_classes()) composite[x] = (*this)(y);
  return GroupoidMap(first.domain(), codomain_, std::move(composite));
}

GroupoidMap identity_map(const FiniteGroupoid& g) {
  std::map<std::string, std::string> on;
  for (const IsoClass& c : g.classes()) on[c.key] = c.key;
  return GroupoidMap(g, g, std::move(on), [g](const std::string& k) { return g.at(k).aut_order; });
}

Rational homotopy_cardinality(const FiniteGroupoid& g) {
  Rational total = 0;
  for (const IsoClass& c : g.classes()) total += Rational(Integer(1), Integer(c.aut_order));
  return total;
}

Rational fiber_cardinality(const GroupoidMap& f, std::string_view z) {
  const IsoClass& target = f.codomain().at(z);
  Rational total = 0;
  for (const std::string& x : f.preimage(z))
    total += Rational(Integer(1), Integer(f.domain().at(x).aut_order));
  return total * Integer(target.aut_order);
}

Rational fiber_cardinality(const GroupoidMap& f, const IsoClass& z) {
  return fiber_cardinality(f, std::string_view(z.key));
}

std::map<int, Rational> graded_fiber_cardinality(const GroupoidMap& f, std::string_view z) {
  const IsoClass& target = f.codomain().at(z);
  std::map<int, Rational> out;
  for (const std::string& x : f.preimage(z)) {
    const IsoClass& source = f.domain().at(x);
    out[source.grade - target.grade] +=
        Rational(Integer(target.aut_order), Integer(source.aut_order));
  }
  return out;
}

namespace {

void require_same(const FiniteGroupoid& a, const FiniteGroupoid& b, const std::string& what) {
  if (a.classes() != b.classes())
    throw std::invalid_argument("square objects do not match at " + what);
}

}  // namespace

PullbackVerdict check_pullback_at_cardinality(const Square& sq) {
  require_same(sq.top.domain(), sq.left.domain(), "A");
  require_same(sq.top.codomain(), sq.right.domain(), "B");
  require_same(sq.left.codomain(), sq.bottom.domain(), "C");
  require_same(sq.right.codomain(), sq.bottom.codomain(), "D");

  for (const IsoClass& a : sq.top.domain().classes()) {
    const std::string& via_b = sq.right(sq.top(a.key));
    const std::string& via_c = sq.bottom(sq.left(a.key));
    if (via_b != via_c)
      throw NonCommutingSquareError(sq.id + ": square does not commute at " + a.key);
  }

  const int bound_a = sq.top.domain().grade_bound();
  const int bound_c = sq.bottom.domain().grade_bound();
  PullbackVerdict verdict;
  for (const IsoClass& b : sq.top.codomain().classes()) {
    ++verdict.checked;
    const std::string& d_key = sq.right(b.key);
    const IsoClass& d = sq.right.codomain().at(d_key);
    auto upper = graded_fiber_cardinality(sq.top, b.key);
    auto lower = graded_fiber_cardinality(sq.bottom, d_key);
    // Increments visible on both sides.
    auto visible = [&](int inc) {
      const long long ga = static_cast<long long>(b.grade) + inc;
      const long long gc = static_cast<long long>(d.grade) + inc;
      return ga <= bound_a && gc <= bound_c;
    };
    std::map<int, Rational> upper_v, lower_v;
    for (auto& [inc, card] : upper)
      if (visible(inc)) upper_v[inc] = card;
    for (auto& [inc, card] : lower)
      if (visible(inc)) lower_v[inc] = card;
    if (upper_v != lower_v) {
      verdict.pass = false;
      if (!verdict.witness) verdict.witness = b.key;
    }
  }
  return verdict;
}

bool is_pullback_at_cardinality(const Square& square) {
  return check_pullback_at_cardinality(square).pass;
}

bool is_monomorphism(const GroupoidMap& f) {
  for (const IsoClass& z : f.codomain().classes()) {
    const auto& pre = f.preimage(z.key);
    if (pre.empty()) continue;
    if (pre.size() != 1) return false;
    const IsoClass& x = f.domain().at(pre.front());
    if (x.aut_order != z.aut_order) return false;
    if (f.aut_image_order(x.key) != z.aut_order) return false;
  }
  return true;
}

}  // namespace decomp
