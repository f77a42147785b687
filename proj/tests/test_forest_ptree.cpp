#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "decomp/forest.hpp"
#include "decomp/ptree.hpp"

#include <map>
#include <set>

using namespace decomp;

namespace {

// Rooted trees on n+1 nodes (OEIS A000081) count rooted forests on n nodes.
std::vector<long> rooted_trees(int n_max) {
  std::vector<long> a(n_max + 2, 0);
  a[1] = 1;
  for (int n = 1; n <= n_max; ++n) {
    long s = 0;
    for (int k = 1; k <= n; ++k) {
      long c = 0;
      for (int d = 1; d <= k; ++d)
        if (k % d == 0) c += d * a[d];
      s += c * a[n - k + 1];
    }
    a[n + 1] = s / n;
  }
  return a;
}

long catalan(int n) {
  long c = 1;
  for (int k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

// Descendant-closed subsets of the subtree at node v: either all of it, or a
// union of such subsets of the child subtrees.
long crown_count(const PForest& t, int v) {
  if (v < 0) return 1;
  long prod = 1;
  for (std::size_t s = 0; s < t.signature().ops[t.nodes()[v].op].in.size(); ++s)
    prod *= crown_count(t, t.child(v, static_cast<int>(s)));
  return 1 + prod;
}

int root_of(const PForest& t) {
  for (int v = 0; v < t.size(); ++v)
    if (t.nodes()[v].parent < 0) return v;
  return -1;
}

}  // namespace

TEST_CASE("forest counts follow the rooted-tree recurrence") {
  const auto a = rooted_trees(7);
  const auto forests = enumerate_forests(7);
  std::map<int, long> by_size;
  for (const auto& f : forests) ++by_size[f.size()];
  for (int n = 0; n <= 7; ++n) CHECK(by_size[n] == a[n + 1]);
  CHECK(a[8] == 115);
}

TEST_CASE("forest order: roots minimal, round trip through the poset") {
  const RootedForest f = RootedForest::make({-1, 0, 0, 1, -1});
  const Poset p = f.poset();
  CHECK(p.less(0, 3));
  CHECK(p.less(1, 3));
  CHECK_FALSE(p.less(1, 2));
  CHECK_FALSE(p.less(4, 0));
  CHECK(is_forest_order(p));
  CHECK(RootedForest::from_poset(p).poset() == p);
  const std::pair<int, int> w[] = {{0, 2}, {1, 2}};
  CHECK_FALSE(is_forest_order(Poset::from_relations(3, w)));
}

TEST_CASE("forest cuts are ancestor-closed subsets") {
  for (const auto& f : enumerate_forests(6)) {
    long closed = 0;
    for (std::uint32_t s = 0; s < (1U << f.size()); ++s) {
      bool ok = true;
      for (int v = 0; v < f.size() && ok; ++v)
        if (((s >> v) & 1U) && f.parent[v] >= 0 && !((s >> f.parent[v]) & 1U)) ok = false;
      closed += ok;
    }
    CHECK(static_cast<long>(tree_cuts(f).size()) == closed);
  }
}

TEST_CASE("forest validation names the node") {
  CHECK_THROWS_WITH_AS(RootedForest::make({1, 0}), doctest::Contains("node"), InvalidStructureError);
  CHECK_THROWS_AS(RootedForest::make({-1, 5}), InvalidStructureError);
  CHECK_NOTHROW(RootedForest::make({}));
}

TEST_CASE("binary P-trees are counted by Catalan numbers") {
  auto sig = std::make_shared<const Signature>(binary_signature());
  std::map<int, long> by_size;
  for (const PForest& t : enumerate_ptrees(sig, 6)) {
    CHECK(t.is_tree());
    ++by_size[t.size()];
  }
  for (int n = 0; n <= 6; ++n) CHECK(by_size[n] == catalan(n));
}

TEST_CASE("mixed-signature P-trees per root colour") {
  // f: a <- (a, b), g: b <- (a), h: b <- ().  A(n), B(n) count trees with n nodes.
  auto sig = std::make_shared<const Signature>(mixed_signature());
  const int N = 5;
  std::vector<long> A(N + 1, 0), B(N + 1, 0);
  A[0] = B[0] = 1;
  for (int n = 1; n <= N; ++n) {
    for (int p = 0; p <= n - 1; ++p) A[n] += A[p] * B[n - 1 - p];
    B[n] = A[n - 1] + (n == 1 ? 1 : 0);
  }
  std::map<std::pair<int, int>, long> seen;
  for (const PForest& t : enumerate_ptrees(sig, N)) {
    const int r = root_of(t);
    const int color = r < 0 ? t.bare_edges().front() : t.output_color(r);
    ++seen[{color, t.size()}];
  }
  const int a = sig->color_index("a"), b = sig->color_index("b");
  for (int n = 0; n <= N; ++n) {
    CHECK(seen[{a, n}] == A[n]);
    CHECK(seen[{b, n}] == B[n]);
  }
}

TEST_CASE("P-tree cuts count descendant-closed crowns") {
  for (auto sig : {std::make_shared<const Signature>(binary_signature()),
                   std::make_shared<const Signature>(mixed_signature())})
    for (const PForest& t : enumerate_ptrees(sig, 5)) {
      const int r = root_of(t);
      CHECK(static_cast<long>(tree_cuts(t).size()) == (r < 0 ? 1 : crown_count(t, r)));
    }
}

TEST_CASE("P-tree cut of a corolla") {
  auto sig = std::make_shared<const Signature>(binary_signature());
  const PForest c = PForest::corolla(sig, 0);
  const auto cuts = tree_cuts(c);
  REQUIRE(cuts.size() == 2);
  std::set<std::string> crowns;
  for (const auto& cut : cuts) crowns.insert(canonical_form(cut.crown).key);
  // Crown is either the corolla itself or the two leaf edges.
  CHECK(crowns.count(canonical_form(c).key) == 1);
  const PForest leaves = forest_sum(PForest::bare_edge(sig, 0), PForest::bare_edge(sig, 0));
  CHECK(crowns.count(canonical_form(leaves).key) == 1);
}

TEST_CASE("P-forest validation") {
  auto sig = std::make_shared<const Signature>(mixed_signature());
  const int f = sig->op_index("f"), h = sig->op_index("h");
  // h has no inputs, so nothing may sit in its slot 0.
  CHECK_THROWS_AS(PForest(sig, {{h, -1, 0}, {h, 0, 0}}, {}), InvalidStructureError);
  // f's slot 0 takes colour a; h outputs b.
  CHECK_THROWS_AS(PForest(sig, {{f, -1, 0}, {h, 0, 0}}, {}), InvalidStructureError);
  CHECK_NOTHROW(PForest(sig, {{f, -1, 0}, {h, 0, 1}}, {}));
  CHECK_THROWS_AS(Signature::make({"x", "x"}, {}), InvalidStructureError);
}
