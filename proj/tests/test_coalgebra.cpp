#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "decomp/coalgebra.hpp"
#include "decomp/forest.hpp"

using namespace decomp;

namespace {

std::string poset_key(const Poset& p) {
  return instance_C().intern(std::any(Layering{p, 1, std::vector<int>(p.size(), 1)}));
}

std::string set_key(int n) {
  return instance_I().intern(std::any(Layering{Poset::discrete(n), 1, std::vector<int>(n, 1)}));
}

Poset relations(int n, std::initializer_list<std::pair<int, int>> rel) {
  const std::vector<std::pair<int, int>> v(rel);
  return Poset::from_relations(n, v);
}

// Σ_k (−1)^k · #{monotone surjections onto {1..k}}, over all k^n functions.
long brute_mobius(const Poset& p) {
  const int n = p.size();
  long mu = 0;
  for (int k = 0; k <= n; ++k) {
    if (k == 0) {
      mu += n == 0;
      continue;
    }
    long total = 1;
    for (int i = 0; i < n; ++i) total *= k;
    long count = 0;
    std::vector<int> f(n);
    for (long code = 0; code < total; ++code) {
      long c = code;
      std::uint32_t hit = 0;
      for (int i = 0; i < n; ++i) {
        f[i] = static_cast<int>(c % k);
        c /= k;
        hit |= 1U << f[i];
      }
      if (hit != (1U << k) - 1) continue;
      bool monotone = true;
      for (int i = 0; i < n && monotone; ++i)
        for (int j = 0; j < n && monotone; ++j)
          if (p.less(i, j) && f[i] > f[j]) monotone = false;
      count += monotone;
    }
    mu += (k % 2 ? -1 : 1) * count;
  }
  return mu;
}

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

void check_inverse(const SimplicialInstance& x, int bound) {
  const auto keys = corpus(x, bound);
  REQUIRE_FALSE(keys.empty());
  const Functional mu = mobius_functional(x, keys);
  const Functional z = zeta(keys);
  const Functional eps = counit_functional(x, keys);
  CHECK(convolve(mu, z, x, keys) == eps);
  CHECK(convolve(z, mu, x, keys) == eps);
}

}  // namespace

TEST_CASE("coproduct of the 2-chain, the discrete pair and the V") {
  const SimplicialInstance C = instance_C();
  const std::string e = poset_key(Poset{}), pt = poset_key(Poset::discrete(1));
  const std::string d2 = poset_key(Poset::discrete(2)), c2 = poset_key(Poset::chain(2));
  const std::string vee = poset_key(relations(3, {{0, 1}, {0, 2}}));

  FormalSum chain;
  chain.add(tensor_key({e, c2}), 1);
  chain.add(tensor_key({pt, pt}), 1);
  chain.add(tensor_key({c2, e}), 1);
  CHECK(coproduct(C, c2) == chain);

  FormalSum discrete;
  discrete.add(tensor_key({e, d2}), 1);
  discrete.add(tensor_key({pt, pt}), 2);
  discrete.add(tensor_key({d2, e}), 1);
  CHECK(coproduct(C, d2) == discrete);

  FormalSum v;
  v.add(tensor_key({e, vee}), 1);
  v.add(tensor_key({pt, d2}), 1);
  v.add(tensor_key({c2, pt}), 2);
  v.add(tensor_key({vee, e}), 1);
  CHECK(coproduct(C, vee) == v);
}

TEST_CASE("binomial coalgebra of finite sets") {
  const SimplicialInstance I = instance_I();
  for (int n = 0; n <= 8; ++n) {
    const FormalSum d = coproduct(I, set_key(n));
    CHECK(d.terms().size() == static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k)
      CHECK(d.coeff(tensor_key({set_key(k), set_key(n - k)})) == factorial(n) / (factorial(k) * factorial(n - k)));
    CHECK(mobius_by_inversion(I, set_key(n)) == (n % 2 ? -1 : 1));
  }
}

TEST_CASE("small Möbius values") {
  const SimplicialInstance C = instance_C();
  CHECK(mobius_by_inversion(C, poset_key(Poset::chain(2))) == 0);
  CHECK(mobius_by_inversion(C, poset_key(Poset::chain(3))) == 0);
  CHECK(phi(C, poset_key(Poset::chain(3)), 2) == 2);
  CHECK(mobius_by_inversion(C, poset_key(Poset::discrete(3))) == -1);
  CHECK(mobius_by_inversion(C, poset_key(Poset{})) == 1);
}

TEST_CASE("Möbius inversion against the closed form on all 406 posets up to 6") {
  const SimplicialInstance C = instance_C();
  const auto posets = enumerate_posets(6);
  CHECK(posets.size() == 406);
  for (const Poset& p : posets) {
    const std::string k = poset_key(p);
    CHECK(mobius_by_inversion(C, k) == mobius_closed_form(C, k));
  }
}

TEST_CASE("Möbius inversion against brute-force surjection counting") {
  const SimplicialInstance C = instance_C();
  for (const Poset& p : enumerate_posets(5)) CHECK(mobius_by_inversion(C, poset_key(p)) == brute_mobius(p));
}

TEST_CASE("Phi by counting equals Phi by enumerating layerings") {
  for (const SimplicialInstance& x : {instance_C(), instance_I(), instance_forests()})
    for (const std::string& k : corpus(x, 4))
      for (int d = 0; d <= 4; ++d) CHECK(phi(x, k, d) == phi_by_enumeration(x, k, d));
  auto sig = std::make_shared<const Signature>(mixed_signature());
  const SimplicialInstance t = instance_ptrees(sig);
  for (const std::string& k : corpus(t, 3))
    for (int d = 0; d <= 3; ++d) CHECK(phi(t, k, d) == phi_by_enumeration(t, k, d));
}

TEST_CASE("mu is the convolution inverse of zeta") {
  check_inverse(instance_C(), 6);
  check_inverse(instance_I(), 8);
  check_inverse(instance_forests(), 6);
  check_inverse(instance_ptrees(std::make_shared<const Signature>(binary_signature())), 5);
  check_inverse(instance_ptrees(std::make_shared<const Signature>(mixed_signature())), 5);
}

TEST_CASE("forests: isolated roots give (-1)^n, anything else 0") {
  const SimplicialInstance F = instance_forests();
  for (const RootedForest& f : enumerate_forests(6)) {
    const std::string k = F.intern(std::any(Layering{f.poset(), 1, std::vector<int>(f.size(), 1)}));
    bool roots_only = true;
    for (int p : f.parent) roots_only = roots_only && p < 0;
    CHECK(mobius_by_inversion(F, k) == (roots_only ? (f.size() % 2 ? -1 : 1) : 0));
  }
}

TEST_CASE("P-trees: bare edge 1, corolla -1, larger trees 0") {
  for (auto sig : {std::make_shared<const Signature>(binary_signature()),
                   std::make_shared<const Signature>(mixed_signature())}) {
    const SimplicialInstance t = instance_ptrees(sig);
    for (const PForest& tree : enumerate_ptrees(sig, 5)) {
      const std::string k = t.intern(std::any(LayeredPForest{tree, 1, std::vector<int>(tree.size(), 1)}));
      const Rational mu = mobius_by_inversion(t, k);
      CHECK(mu == mobius_closed_form(t, k));
      CHECK(mu == (tree.size() == 0 ? 1 : tree.size() == 1 ? -1 : 0));
    }
  }
}

TEST_CASE("coalgebra laws, and the cut-dropping control") {
  CHECK(verify_coalgebra_laws(instance_C(), 5).pass());
  CHECK(verify_coalgebra_laws(instance_I(), 8).pass());
  CHECK(verify_coalgebra_laws(instance_forests(), 5).pass());
  CHECK(verify_coalgebra_laws(instance_ptrees(std::make_shared<const Signature>(binary_signature())), 4).pass());
  CHECK(verify_coalgebra_laws(instance_ptrees(std::make_shared<const Signature>(mixed_signature())), 4).pass());
  CoproductOptions drop;
  drop.drop_first_nontrivial_cut = true;
  const Report r = verify_coalgebra_laws(instance_C(), 4, drop);
  CHECK_FALSE(r.pass());
  CHECK(r.find("coassociativity")->witness.value_or("") == "P3^1[1,1,1]{0<1,0<2}");
}

TEST_CASE("formal sums drop zero terms") {
  FormalSum s;
  s.add("a", 2);
  s.add("a", -2);
  CHECK(s.empty());
  CHECK(split_tensor(tensor_key({"x", "y"})) == std::vector<std::string>{"x", "y"});
}
