#pragma once

// The incidence coalgebra of a layered-structure instance, in the basis of
// isomorphism classes, and its convolution algebra of functionals.

#include "decomp/rational.hpp"
#include "decomp/report.hpp"
#include "decomp/simplicial.hpp"

#include <map>
#include <string>
#include <vector>

namespace decomp {

inline constexpr const char* kTensor = " ⊗ ";

std::string tensor_key(const std::vector<std::string>& parts);
std::vector<std::string> split_tensor(const std::string& key);

// Finite Q-linear combination of basis keys; zero coefficients are never stored.
class FormalSum {
 public:
  void add(const std::string& key, const Rational& coeff);
  Rational coeff(const std::string& key) const;
  const std::map<std::string, Rational>& terms() const& { return terms_; }
  std::map<std::string, Rational> terms() && { return std::move(terms_); }
  bool empty() const { return terms_.empty(); }

  FormalSum& operator+=(const FormalSum& other);
  FormalSum operator*(const Rational& s) const;
  friend bool operator==(const FormalSum&, const FormalSum&) = default;

 private:
  std::map<std::string, Rational> terms_;
};

// A function on degree-1 classes, zero outside its table.
class Functional {
 public:
  void set(const std::string& key, const Rational& v);
  Rational operator()(const std::string& key) const;
  const std::map<std::string, Rational>& table() const& { return table_; }
  std::map<std::string, Rational> table() && { return std::move(table_); }
  friend bool operator==(const Functional&, const Functional&) = default;

 private:
  std::map<std::string, Rational> table_;
};

struct CoproductOptions {
  // Negative control: skip the first cut whose two pieces are both nondegenerate.
  bool drop_first_nontrivial_cut = false;
};

// Δ(a) = Σ over 2-layerings of a of (layer 1) ⊗ (layer 2).
FormalSum coproduct(const SimplicialInstance& x, const std::string& a, CoproductOptions opt = {});
// 1 on degenerate degree-1 classes, 0 elsewhere.
Rational counit(const SimplicialInstance& x, const std::string& a);

// Degree-1 class keys of size <= bound.
std::vector<std::string> corpus(const SimplicialInstance& x, int size_bound);

Functional zeta(const std::vector<std::string>& keys);
Functional counit_functional(const SimplicialInstance& x, const std::vector<std::string>& keys);
// (φ⋆ψ)(a) = Σ over Δ(a) of coeff · φ(b) · ψ(c), for every a in keys.
Functional convolve(const Functional& phi, const Functional& psi, const SimplicialInstance& x,
                    const std::vector<std::string>& keys);

// Φ_k(a): k-layerings with every layer nondegenerate, counted on a labelled
// representative.  phi uses the nonempty-layering count of the underlying
// order; phi_by_enumeration tests every layering against is_degenerate.
Rational phi(const SimplicialInstance& x, const std::string& a, int k);
Rational phi_by_enumeration(const SimplicialInstance& x, const std::string& a, int k);

// μ(a) = Σ_{k ≥ 0} (−1)^k Φ_k(a).  Φ_k vanishes for k larger than the size of a.
Rational mobius_by_inversion(const SimplicialInstance& x, const std::string& a);
Rational mobius_closed_form(const SimplicialInstance& x, const std::string& a);
Functional mobius_functional(const SimplicialInstance& x, const std::vector<std::string>& keys);

// Coassociativity and both counit laws on every class of size <= size_bound.
Report verify_coalgebra_laws(const SimplicialInstance& x, int size_bound, CoproductOptions opt = {});

}  // namespace decomp
