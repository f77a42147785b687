#pragma once

// Finite groupoids presented by their isomorphism classes.
//
// A groupoid of combinatorial structures is recorded as the list of its
// components: a canonical key per isomorphism class together with the order
// of the automorphism group of a representative.  Maps between groupoids are
// recorded on components, plus (optionally) the order of the image of each
// automorphism group, which is what monomorphism checks need.
//
// Every class also carries a grade (the size of the underlying structure).
// Groupoids are materialised up to a grade bound, so fibres of maps that
// change size can only be compared grade by grade, and only below the bound.

#include "decomp/rational.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace decomp {

struct IsoClass {
  std::string key;
  std::uint64_t aut_order = 1;
  int grade = 0;

  friend bool operator==(const IsoClass&, const IsoClass&) = default;
};

class UnknownClassError : public std::out_of_range {
 public:
  explicit UnknownClassError(const std::string& key)
      : std::out_of_range("unknown isomorphism class: " + key) {}
};

class NonCommutingSquareError : public std::logic_error {
 public:
  explicit NonCommutingSquareError(const std::string& what) : std::logic_error(what) {}
};

inline constexpr int kUnboundedGrade = std::numeric_limits<int>::max();

class FiniteGroupoid {
 public:
  FiniteGroupoid() = default;
  // Classes are sorted by key; duplicate keys are rejected.
  explicit FiniteGroupoid(std::vector<IsoClass> classes, int grade_bound = kUnboundedGrade);

  const std::vector<IsoClass>& classes() const& { return classes_; }
  // By value on temporaries, so range-for over objects(...).classes() is safe.
  std::vector<IsoClass> classes() && { return std::move(classes_); }
  std::size_t size() const { return classes_.size(); }
  bool empty() const { return classes_.empty(); }
  int grade_bound() const { return grade_bound_; }

  const IsoClass* find(std::string_view key) const;
  const IsoClass& at(std::string_view key) const;
  bool contains(std::string_view key) const { return find(key) != nullptr; }

  // Keys of the two sides must be disjoint.
  static FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b);

 private:
  std::vector<IsoClass> classes_;
  int grade_bound_ = kUnboundedGrade;
};

class GroupoidMap {
 public:
  using AutImage = std::function<std::uint64_t(const std::string& domain_key)>;

  GroupoidMap() = default;
  // on_classes must be total on the domain and land in the codomain.
  GroupoidMap(FiniteGroupoid domain, FiniteGroupoid codomain,
              std::map<std::string, std::string> on_classes, AutImage aut_image_order = {});

  const FiniteGroupoid& domain() const { return domain_; }
  const FiniteGroupoid& codomain() const { return codomain_; }
  const std::string& operator()(std::string_view domain_key) const;
  const std::map<std::string, std::string>& on_classes() const { return on_classes_; }

  bool has_aut_image_order() const { return static_cast<bool>(aut_image_order_); }
  // Throws std::logic_error when the map was built without automorphism data.
  std::uint64_t aut_image_order(const std::string& domain_key) const;

  // Domain keys over each codomain key.
  const std::vector<std::string>& preimage(std::string_view codomain_key) const;

  GroupoidMap compose_after(const GroupoidMap& first) const;  // this ∘ first

 private:
  FiniteGroupoid domain_;
  FiniteGroupoid codomain_;
  std::map<std::string, std::string> on_classes_;
  std::map<std::string, std::vector<std::string>, std::less<>> preimages_;
  AutImage aut_image_order_;
};

GroupoidMap identity_map(const FiniteGroupoid& g);

Rational homotopy_cardinality(const FiniteGroupoid& g);

// |Aut z| · Σ_{x ↦ z} 1/|Aut x|: the cardinality of the homotopy fibre over z.
Rational fiber_cardinality(const GroupoidMap& f, std::string_view z);
Rational fiber_cardinality(const GroupoidMap& f, const IsoClass& z);

// Fibre cardinality split by grade(x) − grade(z).
std::map<int, Rational> graded_fiber_cardinality(const GroupoidMap& f, std::string_view z);

// A commuting square
//
//     A --top--> B
//     |          |
//   left       right
//     v          v
//     C -bottom> D
struct Square {
  std::string id;
  GroupoidMap top;
  GroupoidMap left;
  GroupoidMap right;
  GroupoidMap bottom;
};

struct PullbackVerdict {
  bool pass = true;
  std::size_t checked = 0;          // number of classes b of B compared
  std::optional<std::string> witness;  // first b whose fibres disagree
};

// For every class b of B compares the fibre of top over b with the fibre of
// bottom over right(b), grade increment by grade increment, for every
// increment that lies below the grade bounds of both A and C.  Throws
// NonCommutingSquareError when right∘top ≠ bottom∘left on classes.
PullbackVerdict check_pullback_at_cardinality(const Square& square);
bool is_pullback_at_cardinality(const Square& square);

bool is_monomorphism(const GroupoidMap& f);

}  // namespace decomp
