#pragma once

#include "decomp/poset.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace decomp {

// Canonical labelling of a vertex-coloured strict order.
//
// Interchangeable elements (same colour, same up-set and down-set) are
// collapsed first; the quotient is refined by iterated colour refinement and
// the remaining cells are searched exhaustively for the lexicographically
// least relation matrix.  The number of minimising orders is the automorphism
// count of the quotient; each twin class of size k contributes k!.
struct CanonicalLabeling {
  std::vector<int> order;  // order[position] = element
  std::uint64_t aut_order = 1;
};

CanonicalLabeling canonical_labeling(const Poset& p, std::span<const int> colors);

// All colour-preserving automorphisms, as permutations perm[x] = image(x).
// Exhaustive; intended for small posets.
std::vector<std::vector<int>> automorphisms(const Poset& p, std::span<const int> colors);

}  // namespace decomp
