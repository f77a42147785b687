#include "decomp/canonical.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>

namespace decomp {

namespace {

std::uint64_t factorial(int k) {
  std::uint64_t r = 1;
  for (int i = 2; i <= k; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

struct Quotient {
  int m = 0;
  std::vector<std::vector<int>> members;  // twin classes, members ascending
  std::vector<Mask> up;                   // relations between classes
  std::vector<Mask> down;
  std::vector<std::pair<int, int>> tag;   // (colour, class size)
};

Quotient collapse_twins(const Poset& p, std::span<const int> colors) {
  const int n = p.size();
  std::vector<int> cls(n, -1);
  Quotient q;
  for (int i = 0; i < n; ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = q.m;
    q.members.push_back({i});
    for (int j = i + 1; j < n; ++j) {
      if (cls[j] < 0 && colors[j] == colors[i] && p.up_set(j) == p.up_set(i) &&
          p.down_set(j) == p.down_set(i)) {
        cls[j] = q.m;
        q.members.back().push_back(j);
      }
    }
    ++q.m;
  }
  q.up.assign(q.m, 0);
  q.down.assign(q.m, 0);
  for (int c = 0; c < q.m; ++c) {
    const int rep = q.members[c].front();
    for (int j = 0; j < n; ++j) {
      if (p.less(rep, j)) q.up[c] |= bit(cls[j]);
      if (p.less(j, rep)) q.down[c] |= bit(cls[j]);
    }
    q.tag.emplace_back(colors[rep], static_cast<int>(q.members[c].size()));
  }
  return q;
}

// Iterated colour refinement; returns a label per quotient vertex whose order
// is an isomorphism invariant.
std::vector<int> refine(const Quotient& q) {
  std::vector<int> label(q.m);
  {
    std::vector<std::pair<int, int>> tags = q.tag;
    std::sort(tags.begin(), tags.end());
    tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
    for (int v = 0; v < q.m; ++v)
      label[v] = static_cast<int>(std::lower_bound(tags.begin(), tags.end(), q.tag[v]) - tags.begin());
  }
  int distinct = 0;
  while (true) {
    using Sig = std::tuple<int, std::vector<int>, std::vector<int>>;
    std::vector<Sig> sigs(q.m);
    for (int v = 0; v < q.m; ++v) {
      std::vector<int> ups, downs;
      for (int w = 0; w < q.m; ++w) {
        if ((q.up[v] >> w) & 1U) ups.push_back(label[w]);
        if ((q.down[v] >> w) & 1U) downs.push_back(label[w]);
      }
      std::sort(ups.begin(), ups.end());
      std::sort(downs.begin(), downs.end());
      sigs[v] = Sig{label[v], std::move(ups), std::move(downs)};
    }
    std::vector<Sig> sorted = sigs;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int v = 0; v < q.m; ++v)
      label[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sigs[v]) - sorted.begin());
    const int now = static_cast<int>(sorted.size());
    if (now == distinct) break;
    distinct = now;
  }
  return label;
}

class CellSearch {
 public:
  CellSearch(const Quotient& q, std::vector<std::vector<int>> cells) : q_(q), cells_(std::move(cells)) {
    for (auto& c : cells_) order_.insert(order_.end(), c.begin(), c.end());
    offsets_.push_back(0);
    for (auto& c : cells_) offsets_.push_back(offsets_.back() + static_cast<int>(c.size()));
  }

  void run() { recurse(0); }
  const std::vector<int>& best_order() const { return best_order_; }
  std::uint64_t minimisers() const { return count_; }

 private:
  void recurse(std::size_t cell) {
    if (cell == cells_.size()) {
      evaluate();
      return;
    }
    auto first = order_.begin() + offsets_[cell];
    auto last = order_.begin() + offsets_[cell + 1];
    std::sort(first, last);
    do {
      recurse(cell + 1);
    } while (std::next_permutation(first, last));
  }

  void evaluate() {
    const int m = q_.m;
    std::vector<int> pos(m);
    for (int p = 0; p < m; ++p) pos[order_[p]] = p;
    std::vector<Mask> code(m, 0);
    for (int p = 0; p < m; ++p) {
      Mask ups = q_.up[order_[p]];
      while (ups) {
        const int w = __builtin_ctz(ups);
        ups &= ups - 1;
        code[p] |= bit(pos[w]);
      }
    }
    if (count_ == 0 || code < best_code_) {
      best_code_ = std::move(code);
      best_order_ = order_;
      count_ = 1;
    } else if (code == best_code_) {
      ++count_;
    }
  }

  const Quotient& q_;
  std::vector<std::vector<int>> cells_;
  std::vector<int> order_;
  std::vector<int> offsets_;
  std::vector<Mask> best_code_;
  std::vector<int> best_order_;
  std::uint64_t count_ = 0;
};

}  // namespace

CanonicalLabeling canonical_labeling(const Poset& p, std::span<const int> colors) {
  if (static_cast<int>(colors.size()) != p.size())
    throw std::invalid_argument("colour vector does not match poset size");
  CanonicalLabeling out;
  if (p.size() == 0) return out;

  const Quotient q = collapse_twins(p, colors);
  const std::vector<int> label = refine(q);
  std::map<int, std::vector<int>> by_label;
  for (int v = 0; v < q.m; ++v) by_label[label[v]].push_back(v);
  std::vector<std::vector<int>> cells;
  for (auto& [l, vs] : by_label) cells.push_back(vs);

  CellSearch search(q, std::move(cells));
  search.run();

  out.aut_order = search.minimisers();
  for (int v : search.best_order()) {
    out.aut_order *= factorial(static_cast<int>(q.members[v].size()));
    out.order.insert(out.order.end(), q.members[v].begin(), q.members[v].end());
  }
  return out;
}

std::vector<std::vector<int>> automorphisms(const Poset& p, std::span<const int> colors) {
  const int n = p.size();
  std::vector<std::vector<int>> out;
  std::vector<int> image(n, -1);
  Mask used = 0;
  std::function<void(int)> extend = [&](int x) {
    if (x == n) {
      out.push_back(image);
      return;
    }
    for (int y = 0; y < n; ++y) {
      if ((used >> y) & 1U) continue;
      if (colors[y] != colors[x]) continue;
      if (popcount(p.up_set(y)) != popcount(p.up_set(x))) continue;
      bool ok = true;
      for (int z = 0; z < x && ok; ++z) {
        if (p.less(z, x) != p.less(image[z], y) || p.less(x, z) != p.less(y, image[z])) ok = false;
      }
      if (!ok) continue;
      image[x] = y;
      used |= bit(y);
      extend(x + 1);
      used &= ~bit(y);
      image[x] = -1;
    }
  };
  extend(0);
  return out;
}

}  // namespace decomp
