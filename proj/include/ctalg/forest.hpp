#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ctalg/error.hpp"
#include "ctalg/word.hpp"

namespace ctalg {

/// Ordered directed rooted forest. Edges point from child to parent; the
/// children of every vertex are kept left to right as drawn.
class Forest {
 public:
  Forest() = default;

  /// Edgeless forest on the given vertices.
  explicit Forest(std::set<int> vertices) : vertices_(std::move(vertices)) {
    for (int v : vertices_) {
      if (v < 1) throw Error(ErrorKind::MalformedForest, "vertex labels start at 1");
    }
  }

  /// Builds from explicit child lists. Validates that every vertex appears
  /// once and that the parent relation is acyclic.
  static Forest from_children(std::set<int> vertices,
                              const std::map<int, std::vector<int>>& children) {
    Forest f(std::move(vertices));
    for (const auto& [p, kids] : children) {
      for (int c : kids) f.attach(c, p, false);
    }
    f.check_acyclic();
    return f;
  }

  const std::set<int>& vertices() const { return vertices_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return parent_.size(); }
  bool contains(int v) const { return vertices_.count(v) != 0; }

  std::optional<int> parent(int v) const {
    auto it = parent_.find(v);
    if (it == parent_.end()) return std::nullopt;
    return it->second;
  }

  /// Nonempty child lists keyed by parent.
  const std::map<int, std::vector<int>>& child_map() const { return children_; }

  const std::vector<int>& children(int v) const {
    static const std::vector<int> none;
    auto it = children_.find(v);
    return it == children_.end() ? none : it->second;
  }

  bool is_root(int v) const { return contains(v) && parent_.count(v) == 0; }

  bool has_edge(int child, int par) const {
    auto it = parent_.find(child);
    return it != parent_.end() && it->second == par;
  }

  std::vector<int> roots() const {
    std::vector<int> r;
    for (int v : vertices_) {
      if (!parent_.count(v)) r.push_back(v);
    }
    return r;
  }

  int root_of(int v) const {
    for (auto p = parent(v); p; p = parent(v)) v = *p;
    return v;
  }

  /// Edges as (child, parent), sorted by child.
  std::vector<std::pair<int, int>> edges() const { return {parent_.begin(), parent_.end()}; }

  /// Vertex sets of the trees, ordered by root.
  std::vector<std::set<int>> blocks() const {
    std::map<int, std::set<int>> by_root;
    for (int v : vertices_) by_root[root_of(v)].insert(v);
    std::vector<std::set<int>> out;
    for (auto& [r, b] : by_root) out.push_back(std::move(b));
    return out;
  }

  /// The subtree hanging from v.
  Forest subtree(int v) const {
    if (!contains(v)) throw Error(ErrorKind::InvalidArgument, "vertex not in forest");
    Forest t;
    std::vector<int> stack{v};
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      t.vertices_.insert(u);
      const auto& kids = children(u);
      if (!kids.empty()) {
        t.children_[u] = kids;
        for (int c : kids) {
          t.parent_[c] = u;
          stack.push_back(c);
        }
      }
    }
    return t;
  }

  /// One Forest per tree, ordered by root.
  std::vector<Forest> trees() const {
    std::vector<Forest> out;
    for (int r : roots()) out.push_back(subtree(r));
    return out;
  }

  /// Disjoint union.
  Forest joined(const Forest& o) const {
    Forest f = *this;
    for (int v : o.vertices_) {
      if (!f.vertices_.insert(v).second) {
        throw Error(ErrorKind::MalformedForest, "vertex " + std::to_string(v) + " repeated");
      }
    }
    f.children_.insert(o.children_.begin(), o.children_.end());
    f.parent_.insert(o.parent_.begin(), o.parent_.end());
    return f;
  }

  /// D/{i->j}: i disappears and its children take its place among j's.
  Forest contract(int i, int j) const {
    if (!has_edge(i, j)) {
      throw Error(ErrorKind::NoSuchEdge,
                  "no edge " + std::to_string(i) + "->" + std::to_string(j));
    }
    Forest f = *this;
    std::vector<int> moved = f.children(i);
    f.children_.erase(i);
    f.parent_.erase(i);
    f.vertices_.erase(i);
    auto& siblings = f.children_[j];
    auto pos = std::find(siblings.begin(), siblings.end(), i);
    pos = siblings.erase(pos);
    siblings.insert(pos, moved.begin(), moved.end());
    for (int c : moved) f.parent_[c] = j;
    if (siblings.empty()) f.children_.erase(j);
    return f;
  }

  /// Relabels every vertex through `map` (missing labels stay).
  Forest relabeled(const std::map<int, int>& map) const {
    auto m = [&](int v) {
      auto it = map.find(v);
      return it == map.end() ? v : it->second;
    };
    std::set<int> vs;
    for (int v : vertices_) vs.insert(m(v));
    if (vs.size() != vertices_.size()) {
      throw Error(ErrorKind::MalformedForest, "relabeling is not injective");
    }
    std::map<int, std::vector<int>> kids;
    for (const auto& [p, cs] : children_) {
      auto& out = kids[m(p)];
      for (int c : cs) out.push_back(m(c));
    }
    return from_children(std::move(vs), kids);
  }

  auto operator<=>(const Forest& o) const {
    if (auto c = vertices_ <=> o.vertices_; c != 0) return c;
    return children_ <=> o.children_;
  }
  bool operator==(const Forest& o) const {
    return vertices_ == o.vertices_ && children_ == o.children_;
  }

  /// "(2 (6 (5)) (1) (7 (3) (8)) (4))"; trees space-separated by root.
  std::string to_string() const {
    std::string s;
    std::function<void(int)> emit = [&](int v) {
      s += '(' + std::to_string(v);
      for (int c : children(v)) {
        s += ' ';
        emit(c);
      }
      s += ')';
    };
    bool first = true;
    for (int r : roots()) {
      if (!first) s += ' ';
      first = false;
      emit(r);
    }
    return s;
  }

  static Forest parse(std::string_view text) {
    Forest f;
    std::size_t pos = 0;
    auto fail = [&](const std::string& why) -> void {
      throw Error(ErrorKind::Parse, "forest '" + std::string(text) + "': " + why);
    };
    auto skip = [&] {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    std::function<int()> tree = [&]() -> int {
      skip();
      if (pos >= text.size() || text[pos] != '(') fail("expected '('");
      ++pos;
      skip();
      const std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (start == pos) fail("expected vertex label");
      const int v = std::stoi(std::string(text.substr(start, pos - start)));
      if (v < 1) fail("vertex labels start at 1");
      if (!f.vertices_.insert(v).second) {
        throw Error(ErrorKind::MalformedForest, "vertex " + std::to_string(v) + " repeated");
      }
      for (;;) {
        skip();
        if (pos >= text.size()) fail("unbalanced parentheses");
        if (text[pos] == ')') {
          ++pos;
          break;
        }
        const int c = tree();
        f.parent_[c] = v;
        f.children_[v].push_back(c);
      }
      return v;
    };
    skip();
    while (pos < text.size()) {
      tree();
      skip();
    }
    return f;
  }

 private:
  friend std::optional<Forest> forest_of_word(const OperatorWord&, int);

  void attach(int child, int par, bool front) {
    if (!contains(child) || !contains(par)) {
      throw Error(ErrorKind::MalformedForest, "edge endpoint outside the vertex set");
    }
    if (child == par) throw Error(ErrorKind::MalformedForest, "self loop");
    if (parent_.count(child)) {
      throw Error(ErrorKind::MalformedForest,
                  "vertex " + std::to_string(child) + " has two parents");
    }
    parent_[child] = par;
    auto& kids = children_[par];
    kids.insert(front ? kids.begin() : kids.end(), child);
  }

  void check_acyclic() const {
    for (int v : vertices_) {
      int u = v;
      for (std::size_t steps = 0; parent_.count(u); ++steps) {
        if (steps > vertices_.size()) throw Error(ErrorKind::MalformedForest, "cycle");
        u = parent_.at(u);
      }
    }
  }

  std::set<int> vertices_;
  std::map<int, std::vector<int>> children_;  // only nonempty lists
  std::map<int, int> parent_;
};

struct ForestClass {
  bool increasing = false;
  bool nearly_increasing = false;
  bool augmented_increasing = false;
  bool augmented_nearly_increasing = false;

  bool operator==(const ForestClass&) const = default;
};

enum class ForestKind { Any, Increasing, NearlyIncreasing, AugmentedIncreasing, AugmentedNearlyIncreasing };

inline ForestClass forest_classify(const Forest& d) {
  bool inc = true;
  bool ninc = true;
  for (const auto& [c, p] : d.edges()) {
    if (c < p) {
      inc = false;
      if (!d.is_root(p)) ninc = false;
    }
  }
  bool sorted_kids = true;
  for (int v : d.vertices()) {
    const auto& k = d.children(v);
    if (!std::is_sorted(k.begin(), k.end())) sorted_kids = false;
  }
  return {inc, ninc, inc && sorted_kids, ninc && sorted_kids};
}

inline bool in_class(const Forest& d, ForestKind kind) {
  const ForestClass c = forest_classify(d);
  switch (kind) {
    case ForestKind::Any: return true;
    case ForestKind::Increasing: return c.increasing;
    case ForestKind::NearlyIncreasing: return c.nearly_increasing;
    case ForestKind::AugmentedIncreasing: return c.augmented_increasing;
    case ForestKind::AugmentedNearlyIncreasing: return c.augmented_nearly_increasing;
  }
  return false;
}

/// L(D): edges read level by level, left to right, one tree after another in
/// root order.
inline OperatorWord forest_realization(const Forest& d) {
  std::vector<Commutator> letters;
  for (int r : d.roots()) {
    std::vector<int> level{r};
    while (!level.empty()) {
      std::vector<int> next;
      for (int v : level) {
        for (int c : d.children(v)) {
          letters.push_back({c, v});
          next.push_back(c);
        }
      }
      level = std::move(next);
    }
  }
  return OperatorWord(std::move(letters));
}

/// D(L), or nothing when some commutator touches a variable that an earlier
/// (rightward) commutator already eliminated. Such words act as zero. When
/// n > 0 the vertex set is all of 1..n.
inline std::optional<Forest> forest_of_word(const OperatorWord& word, int n = 0) {
  std::set<int> vs;
  for (const auto& c : word.letters()) {
    vs.insert(c.head);
    vs.insert(c.tail);
  }
  if (n > 0) {
    if (!vs.empty() && *vs.rbegin() > n) {
      throw Error(ErrorKind::InvalidArgument, "word uses a variable above n");
    }
    for (int v = 1; v <= n; ++v) vs.insert(v);
  }
  Forest f(std::move(vs));
  std::set<int> gone;
  for (const auto& c : word.application_order()) {
    if (gone.count(c.head) || gone.count(c.tail)) return std::nullopt;
    gone.insert(c.head);
    f.attach(c.head, c.tail, true);
  }
  return f;
}

/// Inversions of the root's children read left to right.
inline int inv_at_root(const Forest& tree, int root) {
  const auto& k = tree.children(root);
  int inv = 0;
  for (std::size_t a = 0; a < k.size(); ++a) {
    for (std::size_t b = a + 1; b < k.size(); ++b) {
      if (k[a] > k[b]) ++inv;
    }
  }
  return inv;
}

struct PartitionWithRoots {
  std::vector<std::vector<int>> blocks;  // sorted by minimum, each sorted
  std::vector<int> roots;
};

/// Set partitions of `elements` into exactly `k` blocks (k < 0: any), blocks
/// sorted by their minima.
inline std::vector<std::vector<std::vector<int>>> set_partitions(std::vector<int> elements, int k = -1) {
  std::sort(elements.begin(), elements.end());
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<std::vector<int>> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t idx) {
    if (idx == elements.size()) {
      if (k < 0 || static_cast<int>(cur.size()) == k) out.push_back(cur);
      return;
    }
    const int remaining = static_cast<int>(elements.size() - idx);
    for (std::size_t b = 0; b < cur.size(); ++b) {
      if (k >= 0 && static_cast<int>(cur.size()) + remaining - 1 < k) break;
      cur[b].push_back(elements[idx]);
      rec(idx + 1);
      cur[b].pop_back();
    }
    if (k < 0 || static_cast<int>(cur.size()) < k) {
      cur.push_back({elements[idx]});
      rec(idx + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

/// All compatible root choices for a partition.
inline std::vector<PartitionWithRoots> with_roots(const std::vector<std::vector<int>>& blocks) {
  std::vector<PartitionWithRoots> out;
  std::vector<int> roots(blocks.size());
  std::function<void(std::size_t)> rec = [&](std::size_t b) {
    if (b == blocks.size()) {
      out.push_back({blocks, roots});
      return;
    }
    for (int r : blocks[b]) {
      roots[b] = r;
      rec(b + 1);
    }
  };
  rec(0);
  return out;
}

namespace detail {

inline void sort_by_text(std::vector<Forest>& fs) {
  std::vector<std::pair<std::string, Forest>> keyed;
  keyed.reserve(fs.size());
  for (auto& f : fs) keyed.emplace_back(f.to_string(), std::move(f));
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  fs.clear();
  for (auto& [s, f] : keyed) fs.push_back(std::move(f));
}

/// Augmented trees where every non-root vertex hangs below the root or a
/// smaller non-root vertex; children kept sorted.
inline std::vector<Forest> augmented_trees(const std::vector<int>& block, int root) {
  std::vector<int> others;
  for (int v : block) {
    if (v != root) others.push_back(v);
  }
  std::sort(others.begin(), others.end());
  std::vector<Forest> out;
  std::vector<int> par(others.size());
  std::function<void(std::size_t)> rec = [&](std::size_t idx) {
    if (idx == others.size()) {
      std::map<int, std::vector<int>> kids;
      for (std::size_t a = 0; a < others.size(); ++a) kids[par[a]].push_back(others[a]);
      for (auto& [p, ks] : kids) std::sort(ks.begin(), ks.end());
      out.push_back(Forest::from_children({block.begin(), block.end()}, kids));
      return;
    }
    par[idx] = root;
    rec(idx + 1);
    for (std::size_t a = 0; a < idx; ++a) {
      par[idx] = others[a];
      rec(idx + 1);
    }
  };
  rec(0);
  return out;
}

/// Every ordered tree on `block` rooted at `root`.
inline std::vector<Forest> all_ordered_trees(const std::vector<int>& block, int root) {
  std::vector<int> others;
  for (int v : block) {
    if (v != root) others.push_back(v);
  }
  std::vector<Forest> out;
  std::map<int, int> par;
  auto emit_orders = [&] {
    std::map<int, std::vector<int>> kids;
    for (const auto& [c, p] : par) kids[p].push_back(c);
    for (auto& [p, ks] : kids) std::sort(ks.begin(), ks.end());
    std::vector<int> parents;
    for (const auto& [p, ks] : kids) parents.push_back(p);
    std::function<void(std::size_t)> perm = [&](std::size_t idx) {
      if (idx == parents.size()) {
        out.push_back(Forest::from_children({block.begin(), block.end()}, kids));
        return;
      }
      auto& ks = kids[parents[idx]];
      std::sort(ks.begin(), ks.end());
      do {
        perm(idx + 1);
      } while (std::next_permutation(ks.begin(), ks.end()));
      std::sort(ks.begin(), ks.end());
    };
    perm(0);
  };
  auto reaches_root = [&](int v) {
    for (std::size_t steps = 0; steps <= others.size(); ++steps) {
      if (v == root) return true;
      v = par[v];
    }
    return false;
  };
  std::function<void(std::size_t)> rec = [&](std::size_t idx) {
    if (idx == others.size()) {
      for (int v : others) {
        if (!reaches_root(v)) return;
      }
      emit_orders();
      return;
    }
    for (int p : block) {
      if (p == others[idx]) continue;
      par[others[idx]] = p;
      rec(idx + 1);
    }
    par.erase(others[idx]);
  };
  rec(0);
  return out;
}

inline std::vector<Forest> trees_of_kind(const std::vector<int>& block, int root, ForestKind kind) {
  const int lo = *std::min_element(block.begin(), block.end());
  switch (kind) {
    case ForestKind::AugmentedIncreasing:
      if (root != lo) return {};
      return augmented_trees(block, root);
    case ForestKind::AugmentedNearlyIncreasing:
      return augmented_trees(block, root);
    default: {
      if ((kind == ForestKind::Increasing) && root != lo) return {};
      std::vector<Forest> all = all_ordered_trees(block, root);
      std::erase_if(all, [&](const Forest& t) { return !in_class(t, kind); });
      return all;
    }
  }
}

}  // namespace detail

/// Forests on a given partition with given roots.
inline std::vector<Forest> enumerate_forests(const PartitionWithRoots& spec, ForestKind kind) {
  if (spec.blocks.size() != spec.roots.size()) {
    throw Error(ErrorKind::InvalidArgument, "one root per block required");
  }
  std::vector<Forest> acc{Forest{}};
  for (std::size_t b = 0; b < spec.blocks.size(); ++b) {
    const auto& block = spec.blocks[b];
    if (std::find(block.begin(), block.end(), spec.roots[b]) == block.end()) {
      throw Error(ErrorKind::InvalidArgument, "root outside its block");
    }
    std::vector<Forest> ts = detail::trees_of_kind(block, spec.roots[b], kind);
    std::vector<Forest> next;
    next.reserve(acc.size() * ts.size());
    for (const auto& f : acc) {
      for (const auto& t : ts) next.push_back(f.joined(t));
    }
    acc = std::move(next);
  }
  detail::sort_by_text(acc);
  return acc;
}

/// Forests on {1..n} with s edges. For s = n-1 these are trees on all of N.
inline std::vector<Forest> enumerate_forests(int n, int s, ForestKind kind) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be >= 1");
  if (s < 0) throw Error(ErrorKind::OutOfRange, "negative degree");
  if (s > n - 1) return {};
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 1);
  std::vector<Forest> out;
  for (const auto& blocks : set_partitions(all, n - s)) {
    for (const auto& pr : with_roots(blocks)) {
      auto fs = enumerate_forests(pr, kind);
      out.insert(out.end(), fs.begin(), fs.end());
    }
  }
  detail::sort_by_text(out);
  return out;
}

/// The forests indexing the basis B^s of the degree-s part: augmented
/// increasing trees on N when s = n-1, augmented nearly increasing forests
/// otherwise.
inline std::vector<Forest> basis_forests(int n, int s) {
  if (s == n - 1) return enumerate_forests(n, s, ForestKind::AugmentedIncreasing);
  return enumerate_forests(n, s, ForestKind::AugmentedNearlyIncreasing);
}

/// Basis forests restricted to one partition and root vector.
inline std::vector<Forest> basis_forests(int n, const PartitionWithRoots& spec) {
  const bool single_tree = spec.blocks.size() == 1 && static_cast<int>(spec.blocks[0].size()) == n;
  return enumerate_forests(spec, single_tree ? ForestKind::AugmentedIncreasing
                                             : ForestKind::AugmentedNearlyIncreasing);
}

}  // namespace ctalg
