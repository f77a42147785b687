#pragma once

// Bisimplicial groupoids with an abacus map, and the bicomodule configuration
// of layered sets and layered posets between I and C.
//
// B_{i,j} holds pairs (S → i̲, P → j+1̲) of a layered finite set and a layered
// finite poset.  The augmentation column B_{i,−1} is I (the poset part is the
// empty 0-layered poset) and the augmentation row B_{−1,j} is C (no set part,
// P → j̲).  Horizontal maps act on the poset, vertical maps on the set.

#include "decomp/coalgebra.hpp"
#include "decomp/poset.hpp"
#include "decomp/report.hpp"
#include "decomp/simplicial.hpp"

#include <any>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace decomp {

struct LayeredPair {
  std::optional<Layering> set_part;  // absent in the augmentation row
  Layering poset_part;

  // Validates both layerings and that the set part is discrete.
  static LayeredPair make(std::optional<Layering> set_part, Layering poset_part);

  int row() const { return set_part ? set_part->depth : -1; }
  int col() const { return set_part ? poset_part.depth - 1 : poset_part.depth; }
  int size() const { return (set_part ? set_part->size() : 0) + poset_part.size(); }
};

// "<set key> ; <poset key>", with "-" for a missing set part.
IsoClass canonical_form(const LayeredPair& x);

enum class AbacusVariant {
  disjoint_union,
  ordinal_sum,  // negative control: the moved layer lies below all of P
};

// Object-level maps.  Each throws std::out_of_range outside its bidegrees.
namespace pair_maps {

LayeredPair hface(const LayeredPair& x, int k);       // d̲_k: (i,j) → (i,j−1)
LayeredPair hdegeneracy(const LayeredPair& x, int k);  // s̲_k: (i,j) → (i,j+1); k = −1 is s₋₁
LayeredPair vface(const LayeredPair& x, int k);       // e_k: (i,j) → (i−1,j); e_i deletes the last set layer
LayeredPair vdegeneracy(const LayeredPair& x, int k);  // t_k: (i,j) → (i+1,j)
LayeredPair abacus(const LayeredPair& x, AbacusVariant variant = AbacusVariant::disjoint_union);  // f: (i+1,j) → (i,j+1)
LayeredPair modified_top_face(const LayeredPair& x);  // ẽ_⊤: (i,j) → (i−1,j), i ≥ 1, j ≥ 0
LayeredPair u(const LayeredPair& x);                  // (i,0) → (i,−1)
LayeredPair v(const LayeredPair& x);                  // (0,j) → (−1,j)
LayeredPair s_minus_one(const LayeredPair& x);        // (i,j) → (i,j+1)
LayeredPair t_top_plus_one(const LayeredPair& x);     // (i,j) → (i+1,j), i, j ≥ 0

}  // namespace pair_maps

// An augmented bisimplicial groupoid given pointwise on class keys.
// Bidegrees range over i, j ≥ −1, except that (−1,−1) is not used.
struct Bisimplicial {
  std::string name;
  std::function<FiniteGroupoid(int i, int j, int bound)> objects;
  std::function<std::string(int i, int j, int k, const std::string& key)> hface;
  std::function<std::string(int i, int j, int k, const std::string& key)> hdegeneracy;
  std::function<std::string(int i, int j, int k, const std::string& key)> vface;
  std::function<std::string(int i, int j, int k, const std::string& key)> vdegeneracy;
  std::function<std::string(int i, const std::string& key)> u;  // B_{i,0} → B_{i,−1}
  std::function<std::string(int j, const std::string& key)> v;  // B_{0,j} → B_{−1,j}
  // Pointings: s₋₁: B_{i,j} → B_{i,j+1} and t_{⊤+1}: B_{i,j} → B_{i+1,j}.
  std::function<std::string(int i, int j, const std::string& key)> right_pointing;
  std::function<std::string(int i, int j, const std::string& key)> left_pointing;
  std::function<IsoClass(const std::string& key)> class_of;
  // Representative structure behind a key (a LayeredPair for the shipped instance).
  std::function<std::any(const std::string& key)> representative;

  // Row i and column j as simplicial groupoids.
  SimplicialInstance row(int i) const;
  SimplicialInstance column(int j) const;
  GroupoidMap hface_map(int i, int j, int k, int bound) const;
  GroupoidMap vface_map(int i, int j, int k, int bound) const;
};

// f_{i,j}: B_{i+1,j} → B_{i,j+1}.
using AbacusMap = std::function<std::string(int i, int j, const std::string& key)>;

// Replaces the top vertical face of every B_{i,j} with j ≥ 0 by d̲₀ ∘ f.
Bisimplicial modify(const Bisimplicial& b, const AbacusMap& f);

// I □ Dec_⊥C, unmodified, materialised up to total size 6.
Bisimplicial layered_sets_and_posets();
AbacusMap layered_abacus(AbacusVariant variant = AbacusVariant::disjoint_union);
// The modified groupoid B̃ for the given abacus variant.
Bisimplicial layered_bicomodule(AbacusVariant variant = AbacusVariant::disjoint_union);

struct BisimplicialBounds {
  int size = 5;
  int max_i = 2;
  int max_j = 2;
};

// (a) rows, (b) columns except the top face, (c) d̲₀ f t_⊤ = id,
// (d) perfectness, (e) idempotence of the modification; with the augmented
// identities of f.
Report check_abacus_axioms(const Bisimplicial& b, const AbacusMap& f, BisimplicialBounds bounds = {});
// Simplicial identities of every row and column, commutation of horizontal
// with vertical maps, and the two pointing sections.
Report check_modified_bisimplicial(const Bisimplicial& b, BisimplicialBounds bounds = {});
// f against e₀ (right fibration) and f against d̲_⊤ (left fibration).
Report check_fibrations(const Bisimplicial& b, const AbacusMap& f, BisimplicialBounds bounds = {});
// Row and column Segal squares, the two stability squares, culf squares of
// u and v, and u ẽ_⊤ = e_⊤ u, v e₀ = v ẽ₁.
Report check_bicomodule_configuration(const Bisimplicial& b, BisimplicialBounds bounds = {});
// Pointings are monomorphisms, the fibres of t_{⊤+1}, and vanishing of
// nondegenerate simplices over a fixed P beyond |P|.
Report check_mobius_bicomodule(const Bisimplicial& b, BisimplicialBounds bounds = {});

// Coactions on a finite poset, in I_1 ⊗ C_1 and C_1 ⊗ C_1 keys.
FormalSum gamma_left(const Poset& p);
FormalSum gamma_right(const Poset& p);
// The same coactions read off the spans B₀₀ ← B₁₀ → I₁ × B₀₀ and
// B₀₀ ← B₀₁ → B₀₀ × C₁ of the modified groupoid.
FormalSum gamma_left_by_span(const Bisimplicial& b, const Poset& p);
FormalSum gamma_right_by_span(const Bisimplicial& b, const Poset& p);

// Both δ functionals: the indicator of the empty poset, on C_1 keys.
Functional delta_L();
Functional delta_R();

// μ^I and μ^C by inversion on every class of size <= size_bound.
struct MobiusTables {
  int size_bound = 0;
  Functional mu_I;
  Functional mu_C;
};
MobiusTables mobius_tables(int size_bound);

struct RotaResult {
  std::string key;  // C_1 key of P
  Rational lhs;      // Σ γ_l(P) · μ^I ⊗ δ^R
  Rational rhs;      // Σ γ_r(P) · δ^L ⊗ μ^C
  Rational closed_form;
  Rational mu_C;  // μ^C(P) by inversion
  bool equal = false;  // lhs = rhs = closed_form
};

RotaResult rota_check(const Poset& p, const MobiusTables& tables);
// rota_check over every poset of size <= size_bound, sorted by key.  Up to
// `threads` workers; the result does not depend on the thread count.
std::vector<RotaResult> rota_over_corpus(int size_bound, int threads = 1);
// The same over every poset within the given tables.
std::vector<RotaResult> rota_over_corpus(const MobiusTables& tables, int threads = 1);

// The Rota identity, both intermediate identities, and the span-based
// coactions against the direct ones; span checks run up to span_bound.
Report verify_rota(const std::vector<RotaResult>& results, int span_bound);
nlohmann::ordered_json to_json(const RotaResult& r);

}  // namespace decomp
