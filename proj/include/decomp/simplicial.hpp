#pragma once

// Truncated simplicial groupoids of layered structures and the axiom checkers
// run against them.
//
// A degree-k simplex is a structure with a k-layering.  Face d_0 deletes the
// bottom layer, d_k the top layer, and the inner face d_i (0 < i < k) joins
// layers i and i+1; degeneracy s_i inserts an empty layer above layer i.
// Groupoids are materialised up to a size bound, and every map is given
// pointwise on canonical keys.

#include "decomp/groupoid.hpp"
#include "decomp/ptree.hpp"
#include "decomp/report.hpp"

#include <any>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace decomp {

struct SimplicialInstance {
  std::string name;
  int max_degree = 4;

  // Degree-k simplices of size <= bound, one class per iso class.
  std::function<FiniteGroupoid(int k, int bound)> objects;
  // d_i, s_i on a degree-k key.
  std::function<std::string(int k, int i, const std::string& key)> face_key;
  std::function<std::string(int k, int i, const std::string& key)> degeneracy_key;
  // The class record of any key produced by this instance.
  std::function<IsoClass(const std::string& key)> class_of;
  // All k-layerings of a labelled representative of a degree-1 key, as
  // degree-k keys with multiplicity.  Empty for décalages.
  std::function<std::vector<std::string>(const std::string& key, int k)> layerings_of;
  // Representative structure behind a key (a Layering, or a LayeredPForest for P-trees).
  std::function<std::any(const std::string& key)> representative;
  // Registers a structure of the instance's representative type and returns its key.
  std::function<std::string(const std::any& structure)> intern;

  GroupoidMap face(int k, int i, int bound) const;        // X_k → X_{k−1}
  GroupoidMap degeneracy(int k, int i, int bound) const;  // X_k → X_{k+1}
  // The layer-i piece (1-based) of a degree-k key, as a degree-1 key.
  std::string layer_key(int k, int i, const std::string& key) const;
  // Whether a degree-1 key is degenerate (in the image of s_0).
  bool is_degenerate(const std::string& key) const;
};

SimplicialInstance instance_C();        // layered finite posets
SimplicialInstance instance_I();        // layered finite sets
SimplicialInstance instance_forests();  // layered rooted forests
SimplicialInstance instance_ptrees(std::shared_ptr<const Signature> sig);

enum class DecalageSide { lower, upper };
SimplicialInstance decalage(const SimplicialInstance& base, DecalageSide side);

struct SimplicialMap {
  std::string name;
  SimplicialInstance source;
  SimplicialInstance target;
  std::function<std::string(int k, const std::string& key)> on_key;

  GroupoidMap component(int k, int bound) const;
};

// d_⊥: Dec_⊥X → X and d_⊤: Dec_⊤X → X.
SimplicialMap decalage_map(const SimplicialInstance& base, DecalageSide side);
// Underlying-poset map from forests to posets.
SimplicialMap forest_to_poset_map();
// Forgets the order of a layered poset, keeping the layer sizes.
SimplicialMap poset_to_set_map();

Report check_decomposition_space(const SimplicialInstance& x, int size_bound, int degree_bound);
Report check_segal(const SimplicialInstance& x, int size_bound, int degree_bound);
bool check_complete(const SimplicialInstance& x, int size_bound);
Report check_culf(const SimplicialMap& g, int size_bound, int degree_bound);
Report check_simplicial_identities(const SimplicialInstance& x, int size_bound, int degree_bound);
// Concrete finite-length consequence: no nondegenerate k-layering of an
// object of size n exists for k > n, checked for k ≤ n + extra.
Report check_finite_length(const SimplicialInstance& x, int size_bound, int extra = 2);

// Negative controls.
//
// Removes class `key` from degree k and, in higher degrees, every simplex
// with a face among the removed ones.  The class must be nondegenerate.
SimplicialInstance mutate_drop_class(const SimplicialInstance& x, int k, const std::string& key);
// Adds a second class in degree 0 that s_0 sends to the same place as `key`.
SimplicialInstance mutate_duplicate_s0(const SimplicialInstance& x, const std::string& key);

}  // namespace decomp
