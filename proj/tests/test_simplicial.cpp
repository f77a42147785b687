#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "decomp/coalgebra.hpp"
#include "decomp/simplicial.hpp"

#include <set>

using namespace decomp;

namespace {

std::shared_ptr<const Signature> binary() { return std::make_shared<const Signature>(binary_signature()); }
std::shared_ptr<const Signature> mixed() { return std::make_shared<const Signature>(mixed_signature()); }

std::string key_of(const Poset& p) {
  const SimplicialInstance C = instance_C();
  return C.intern(std::any(Layering{p, 1, std::vector<int>(p.size(), 1)}));
}

long brute_down_sets(const Poset& p) {
  long c = 0;
  for (std::uint32_t s = 0; s < (1U << p.size()); ++s) {
    bool ok = true;
    for (int i = 0; i < p.size() && ok; ++i)
      for (int j = 0; j < p.size() && ok; ++j)
        if (p.less(i, j) && ((s >> j) & 1U) && !((s >> i) & 1U)) ok = false;
    c += ok;
  }
  return c;
}

const CheckEntry* first_failure(const Report& r) {
  for (const CheckEntry& e : r.squares)
    if (!e.pass) return &e;
  return nullptr;
}

}  // namespace

TEST_CASE("degree-1 classes of C up to size 2") {
  const FiniteGroupoid g = instance_C().objects(1, 2);
  CHECK(g.size() == 4);
  std::set<int> auts;
  for (const IsoClass& c : g.classes()) auts.insert(static_cast<int>(c.aut_order));
  CHECK(auts == std::set<int>{1, 2});
}

TEST_CASE("face and degeneracy on layerings") {
  const std::pair<int, int> rel[] = {{0, 1}};
  const Layering l = Layering::make(Poset::from_relations(3, rel), 3, {1, 2, 3});
  CHECK(layering_face(l, 0).size() == 2);                 // bottom layer deleted
  CHECK(layering_face(l, 3).size() == 2);                 // top layer deleted
  CHECK(layering_face(l, 1).layer_of == std::vector<int>{1, 1, 2});
  CHECK(layering_degeneracy(l, 0).layer_of == std::vector<int>{2, 3, 4});
  CHECK(layering_degeneracy(l, 3).depth == 4);
}

TEST_CASE("simplicial identities hold on every instance") {
  CHECK(check_simplicial_identities(instance_C(), 4, 3).pass());
  CHECK(check_simplicial_identities(instance_I(), 6, 3).pass());
  CHECK(check_simplicial_identities(instance_forests(), 4, 3).pass());
  CHECK(check_simplicial_identities(instance_ptrees(binary()), 3, 3).pass());
  CHECK(check_simplicial_identities(instance_ptrees(mixed()), 3, 3).pass());
}

TEST_CASE("C and I are decomposition spaces") {
  const Report c = check_decomposition_space(instance_C(), 4, 3);
  const Report i = check_decomposition_space(instance_I(), 4, 3);
  CHECK(c.pass());
  CHECK(i.pass());
  CHECK(c.squares.size() >= 4);
}

TEST_CASE("I is Segal, C is not") {
  CHECK(check_segal(instance_I(), 4, 3).pass());
  const Report c = check_segal(instance_C(), 4, 3);
  CHECK_FALSE(c.pass());
  const CheckEntry* e = c.find("segal (n=1)");
  REQUIRE(e != nullptr);
  CHECK_FALSE(e->pass);
  // Over •, both 2-element posets split as (•, •), so the fibres disagree.
  CHECK(e->witness.value_or("") == "P1^1[1]{}");
}

TEST_CASE("completeness, and its negative control") {
  CHECK(check_complete(instance_C(), 4));
  CHECK(check_complete(instance_I(), 4));
  const SimplicialInstance C = instance_C();
  const std::string empty = C.objects(0, 0).classes().front().key;
  CHECK_FALSE(check_complete(mutate_duplicate_s0(C, empty), 4));
}

TEST_CASE("culf maps") {
  const SimplicialInstance C = instance_C();
  CHECK(check_culf(decalage_map(C, DecalageSide::lower), 4, 3).pass());
  CHECK(check_culf(decalage_map(C, DecalageSide::upper), 4, 3).pass());
  CHECK(check_culf(decalage_map(instance_I(), DecalageSide::lower), 4, 3).pass());
  CHECK(check_culf(forest_to_poset_map(), 4, 3).pass());
  const Report forget = check_culf(poset_to_set_map(), 4, 3);
  REQUIRE_FALSE(forget.pass());
  CHECK(first_failure(forget)->witness.value_or("") == "P2^1[1,1]{1<0}");
}

TEST_CASE("décalages are Segal") {
  CHECK(check_segal(decalage(instance_C(), DecalageSide::lower), 4, 3).pass());
  CHECK(check_segal(decalage(instance_C(), DecalageSide::upper), 4, 3).pass());
}

TEST_CASE("dropping a nondegenerate 2-simplex breaks the decomposition-space squares") {
  const SimplicialInstance C = instance_C();
  const std::pair<int, int> rel[] = {{0, 1}};
  const std::string chain_split = C.intern(std::any(Layering::make(Poset::from_relations(2, rel), 2, {1, 2})));
  CHECK_FALSE(check_decomposition_space(mutate_drop_class(C, 2, chain_split), 4, 3).pass());
}

TEST_CASE("2-layerings of P biject with down-closed subsets") {
  const SimplicialInstance C = instance_C();
  for (const Poset& p : enumerate_posets(5)) {
    const std::string key = key_of(p);
    CHECK(static_cast<long>(C.layerings_of(key, 2).size()) == brute_down_sets(p));
  }
}

TEST_CASE("finite length") {
  CHECK(check_finite_length(instance_C(), 4).pass());
  CHECK(check_finite_length(instance_I(), 5).pass());
  CHECK(check_finite_length(instance_forests(), 4).pass());
}

TEST_CASE("bounds are enforced") {
  CHECK_THROWS_AS(instance_C().objects(1, 8), BoundExceededError);
  CHECK_THROWS_AS(instance_C().face_key(1, 2, "P0^1[]{}"), std::out_of_range);
}
