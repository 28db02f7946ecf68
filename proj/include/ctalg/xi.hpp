#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ctalg/ctops.hpp"
#include "ctalg/error.hpp"
#include "ctalg/forest.hpp"
#include "ctalg/typea.hpp"
#include "ctalg/word.hpp"

namespace ctalg {

/// L(F), rightmost commutator first.
inline TypeARational word_apply(const OperatorWord& word, const TypeARational& f) {
  TypeARational cur = f;
  std::set<int> gone;
  for (const auto& c : word.application_order()) {
    if (cur.is_zero()) return {};
    if (gone.count(c.head) || gone.count(c.tail)) return {};
    cur = ct_pole(cur, c.head, c.tail);
    gone.insert(c.head);
  }
  return cur;
}

inline TypeARational combo_apply(const OperatorCombo& combo, const TypeARational& f) {
  TypeARational sum;
  for (const auto& [w, c] : combo.terms()) {
    TypeARational v = word_apply(w, f);
    if (!v.is_zero()) sum += v * c;
  }
  return sum;
}

struct SignedWord {
  int sign = 1;
  OperatorWord word;
};

namespace detail {

/// Moves a single tree's realization to nearly increasing form by the general
/// exchange [j,k] M [i,j] = -[i,k] (M|_{j=i}) [j,i], always at the rightmost
/// non-root violation.
inline SignedWord ni_rewrite_tree(OperatorWord word, int root) {
  int sign = 1;
  for (;;) {
    auto letters = word.letters();
    std::optional<std::size_t> v;
    for (std::size_t p = letters.size(); p-- > 0;) {
      if (letters[p].tail != root && letters[p].head < letters[p].tail) {
        v = p;
        break;
      }
    }
    if (!v) break;
    const int i = letters[*v].head;
    const int j = letters[*v].tail;
    std::size_t h = 0;
    while (h < *v && letters[h].head != j) ++h;
    if (h == *v) throw std::logic_error("out-edge of a non-root vertex missing");
    const int k = letters[h].tail;
    std::vector<Commutator> out(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(h));
    out.push_back({i, k});
    for (std::size_t p = h + 1; p < *v; ++p) {
      Commutator c = letters[p];
      if (c.head == j) c.head = i;
      if (c.tail == j) c.tail = i;
      out.push_back(c);
    }
    out.push_back({j, i});
    out.insert(out.end(), letters.begin() + static_cast<std::ptrdiff_t>(*v) + 1, letters.end());
    word = OperatorWord(std::move(out));
    sign = -sign;
  }
  return {sign, word};
}

inline Forest require_forest(const OperatorWord& word, int n = 0) {
  auto d = forest_of_word(word, n);
  if (!d) throw Error(ErrorKind::NotAForest, "word " + word.to_string() + " acts as zero");
  return *d;
}

}  // namespace detail

/// sign * L' = L with D(L') nearly increasing on the same partition and roots.
/// Throws NotAForest when L is the zero operator.
inline SignedWord rewrite_to_nearly_increasing(const OperatorWord& word) {
  const Forest d = detail::require_forest(word);
  int sign = 1;
  Forest out;
  for (const Forest& t : d.trees()) {
    const int r = t.roots().front();
    SignedWord sw = detail::ni_rewrite_tree(forest_realization(t), r);
    sign *= sw.sign;
    auto tf = forest_of_word(sw.word);
    if (!tf) throw std::logic_error("rewrite left the forest class");
    if (sw.word.is_identity()) tf = Forest({r});
    out = out.joined(*tf);
  }
  return {sign, forest_realization(out)};
}

/// Top degree: D(L) a tree on all of 1..n. Returns sign * L' = L with D(L')
/// increasing. Uses [i,j] = -[j,i] on the last commutator, where only two
/// variables are left.
inline SignedWord rewrite_to_increasing(const OperatorWord& word, int n) {
  const Forest d = detail::require_forest(word, n);
  if (static_cast<int>(d.edge_count()) != n - 1) {
    throw Error(ErrorKind::InvalidArgument, "word is not of top degree n-1");
  }
  int sign = 1;
  OperatorWord cur = forest_realization(d);
  for (int round = 0; round <= 4 * n; ++round) {
    const Forest t = detail::require_forest(cur, n);
    const int r = t.roots().front();
    SignedWord sw = detail::ni_rewrite_tree(cur, r);
    sign *= sw.sign;
    cur = forest_realization(detail::require_forest(sw.word, n));
    if (r == 1) return {sign, cur};
    auto letters = cur.letters();
    std::swap(letters.front().head, letters.front().tail);
    sign = -sign;
    cur = forest_realization(detail::require_forest(OperatorWord(std::move(letters)), n));
  }
  throw std::logic_error("increasing rewrite did not terminate");
}

/// Coefficients over basis forests of one degree.
struct BasisExpansion {
  int n = 0;
  int degree = 0;
  std::map<Forest, Rational> coefficients;

  OperatorCombo to_combo() const {
    OperatorCombo c;
    for (const auto& [f, x] : coefficients) c.add(forest_realization(f), x);
    return c;
  }

  void add(const Forest& f, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = coefficients.try_emplace(f, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) coefficients.erase(it);
    }
  }

  bool operator==(const BasisExpansion&) const = default;
};

namespace detail {

/// Writes nearly increasing trees as combinations of augmented ones, via the
/// V-formula at the rightmost adjacent descent among the root's children.
class TreeLinearizer {
 public:
  using Combo = std::map<Forest, Rational>;

  const Combo& linearize(const Forest& tree) {
    const std::string key = tree.to_string();
    if (auto it = lin_memo_.find(key); it != lin_memo_.end()) return it->second;
    Combo out;
    const int r = tree.roots().front();
    const auto& kids = tree.children(r);
    // Augment every root subtree first.
    std::vector<std::pair<std::vector<Forest>, Rational>> combos{{{}, 1}};
    for (int u : kids) {
      Combo sub = linearize(tree.subtree(u));
      std::vector<std::pair<std::vector<Forest>, Rational>> next;
      for (const auto& [parts, c] : combos) {
        for (const auto& [t, x] : sub) {
          auto p = parts;
          p.push_back(t);
          next.emplace_back(std::move(p), c * x);
        }
      }
      combos = std::move(next);
    }
    for (const auto& [parts, c] : combos) {
      for (const auto& [t, x] : sort_root(graft(r, parts))) add(out, t, c * x);
    }
    return lin_memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  static void add(Combo& m, const Forest& f, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = m.try_emplace(f, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) m.erase(it);
    }
  }

  static Forest graft(int r, const std::vector<Forest>& parts) {
    std::set<int> vs{r};
    std::map<int, std::vector<int>> kids;
    for (const auto& p : parts) {
      vs.insert(p.vertices().begin(), p.vertices().end());
      kids[r].push_back(p.roots().front());
      for (const auto& [v, cs] : p.child_map()) kids[v] = cs;
    }
    return Forest::from_children(std::move(vs), kids);
  }

  /// Root subtrees already augmented; orders the root's children.
  const Combo& sort_root(const Forest& tree) {
    const std::string key = tree.to_string();
    if (auto it = sort_memo_.find(key); it != sort_memo_.end()) return it->second;
    Combo out;
    const int r = tree.roots().front();
    const std::vector<int> seq = tree.children(r);
    std::optional<std::size_t> p;
    for (std::size_t q = seq.size(); q-- > 1;) {
      if (seq[q - 1] > seq[q]) {
        p = q - 1;
        break;
      }
    }
    if (!p) {
      out.emplace(tree, 1);
      return sort_memo_.emplace(key, std::move(out)).first->second;
    }
    const int b = seq[*p];
    const int a = seq[*p + 1];
    auto kids = tree.child_map();
    // [b,r][a,r] = [a,r][b,r] + [a,r][b,a]
    {
      auto swapped = kids;
      std::swap(swapped[r][*p], swapped[r][*p + 1]);
      for (const auto& [t, x] : sort_root(Forest::from_children(tree.vertices(), swapped))) add(out, t, x);
    }
    {
      auto moved = kids;
      auto& rk = moved[r];
      rk.erase(rk.begin() + static_cast<std::ptrdiff_t>(*p));
      auto& ak = moved[a];
      ak.insert(ak.begin(), b);
      if (rk.empty()) moved.erase(r);
      const Forest t2 = Forest::from_children(tree.vertices(), moved);
      const Combo sub = linearize(t2.subtree(a));
      for (const auto& [st, x] : sub) {
        auto k2 = t2.child_map();
        for (int v : st.vertices()) k2.erase(v);
        for (const auto& [v, cs] : st.child_map()) k2[v] = cs;
        for (const auto& [t, y] : sort_root(Forest::from_children(tree.vertices(), k2))) add(out, t, x * y);
      }
    }
    return sort_memo_.emplace(key, std::move(out)).first->second;
  }

  std::unordered_map<std::string, Combo> lin_memo_;
  std::unordered_map<std::string, Combo> sort_memo_;
};

}  // namespace detail

/// The expansion of L over the basis B^s of the degree-s part, s = deg L.
/// Zero words give an empty expansion.
inline BasisExpansion expand_in_basis(const OperatorWord& word, int n) {
  if (word.max_index() > n) throw Error(ErrorKind::InvalidArgument, "word uses a variable above n");
  BasisExpansion be;
  be.n = n;
  be.degree = word.degree();
  const auto d = forest_of_word(word, n);
  if (!d) return be;
  const bool top = word.degree() == n - 1;
  const SignedWord sw = top ? rewrite_to_increasing(word, n) : rewrite_to_nearly_increasing(word);
  const Forest nf = detail::require_forest(sw.word, n);
  detail::TreeLinearizer lin;
  std::vector<std::pair<Forest, Rational>> acc{{Forest{}, Rational(sw.sign)}};
  for (const Forest& t : nf.trees()) {
    const auto& part = lin.linearize(t);
    std::vector<std::pair<Forest, Rational>> next;
    for (const auto& [f, c] : acc) {
      for (const auto& [g, x] : part) next.emplace_back(f.joined(g), c * x);
    }
    acc = std::move(next);
  }
  for (const auto& [f, c] : acc) be.add(f, c);
  return be;
}

/// L(D_i) eps(D_j).
inline TypeARational orthogonality_eval(const Forest& di, const Forest& dj) {
  return word_apply(forest_realization(di), TypeARational::epsilon(dj));
}

/// x_{r_1}^{1-k} x_{r_2} ... x_{r_k}, roots listed by block minimum.
inline Monomial root_separating_monomial(const Forest& d) {
  std::vector<std::pair<int, int>> by_min;  // (block min, root)
  for (const auto& t : d.trees()) by_min.emplace_back(*t.vertices().begin(), t.roots().front());
  std::sort(by_min.begin(), by_min.end());
  const int k = static_cast<int>(by_min.size());
  Monomial m;
  for (std::size_t b = 0; b < by_min.size(); ++b) {
    m *= Monomial::var(by_min[b].second, b == 0 ? 1 - k : 1);
  }
  return m;
}

/// The functional P_D eps(D) dual to the basis element L(D).
inline TypeARational dual_function(const Forest& d) {
  return TypeARational::epsilon(d) * root_separating_monomial(d);
}

/// Coefficients of a degree-s combination over B^s.
inline BasisExpansion basis_coefficients(const OperatorCombo& combo, int n, int s) {
  BasisExpansion be;
  be.n = n;
  be.degree = s;
  for (const auto& [w, c] : combo.terms()) {
    if (w.degree() != s) throw Error(ErrorKind::MixedDegrees, "combination is not homogeneous of degree " + std::to_string(s));
    if (w.max_index() > n) throw Error(ErrorKind::InvalidArgument, "word uses a variable above n");
  }
  if (combo.is_empty() || s > n - 1) return be;
  for (const Forest& d : basis_forests(n, s)) {
    const Monomial p = root_separating_monomial(d);
    const TypeARational v = combo_apply(combo, dual_function(d));
    if (v.is_zero()) continue;
    if (!v.denominator().empty()) throw std::logic_error("functional value is not a Laurent polynomial");
    be.add(d, v.numerator().coeff(p));
  }
  return be;
}

/// Whether the combination is the zero operator on the type-A class.
inline bool is_zero_operator(const OperatorCombo& combo, int n) {
  for (const auto& [s, part] : combo.by_degree()) {
    if (s > n - 1) continue;
    bool any_forest = false;
    for (const auto& [w, c] : part.terms()) {
      if (w.max_index() > n) throw Error(ErrorKind::InvalidArgument, "word uses a variable above n");
      if (forest_of_word(w)) any_forest = true;
    }
    if (!any_forest) continue;
    for (const Forest& d : basis_forests(n, s)) {
      if (!combo_apply(part, dual_function(d)).is_zero()) return false;
    }
  }
  return true;
}

using SparseRow = std::map<std::size_t, Rational>;

/// Rank by exact elimination, rows kept sparse.
inline std::size_t matrix_rank(std::vector<SparseRow> rows) {
  std::map<std::size_t, SparseRow> pivots;
  for (auto& r : rows) {
    while (!r.empty()) {
      const auto [lead, x] = *r.begin();
      const auto it = pivots.find(lead);
      if (it == pivots.end()) {
        const Rational inv = 1 / x;
        for (auto& [k, v] : r) v *= inv;
        pivots.emplace(lead, std::move(r));
        break;
      }
      for (const auto& [k, v] : it->second) {
        Rational& e = r[k];
        e -= x * v;
        if (e == 0) r.erase(k);
      }
    }
  }
  return pivots.size();
}

inline std::size_t matrix_rank(const std::vector<std::vector<Rational>>& m) {
  std::vector<SparseRow> rows;
  for (const auto& row : m) {
    SparseRow r;
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (row[k] != 0) r.emplace(k, row[k]);
    }
    rows.push_back(std::move(r));
  }
  return matrix_rank(std::move(rows));
}

/// Rows L(D); one column per pair (D', monomial), holding the coefficient of
/// that monomial in L(D)(P_{D'} eps(D')). Outputs for a fixed D' are first
/// brought over a common denominator, so each column group is an injective
/// linear image of the function values.
inline std::vector<SparseRow> evaluation_matrix(const std::vector<Forest>& rows, const std::vector<Forest>& cols) {
  std::vector<OperatorWord> words;
  words.reserve(rows.size());
  for (const auto& d : rows) words.push_back(forest_realization(d));
  std::vector<SparseRow> m(rows.size());
  std::size_t next = 0;
  for (const auto& d : cols) {
    const TypeARational dual = dual_function(d);
    std::vector<TypeARational> out;
    out.reserve(rows.size());
    std::map<std::pair<int, int>, int> common;
    for (const auto& w : words) {
      out.push_back(word_apply(w, dual));
      for (const auto& [p, k] : out.back().denominator()) common[p] = std::max(common[p], k);
    }
    std::map<Monomial, std::size_t> index;
    for (std::size_t r = 0; r < out.size(); ++r) {
      if (out[r].is_zero()) continue;
      LaurentPoly num = out[r].numerator();
      for (const auto& [p, k] : common) {
        const int extra = k - out[r].multiplicity(p.first, p.second);
        if (extra > 0) num *= factor_power(p.first, p.second, static_cast<unsigned>(extra));
      }
      for (const auto& [mono, c] : num.terms()) {
        auto [it, fresh] = index.try_emplace(mono, next);
        if (fresh) ++next;
        m[r].emplace(it->second, c);
      }
    }
  }
  return m;
}

/// All basis forests of every degree 0..n-1.
inline std::vector<Forest> all_basis_forests(int n) {
  std::vector<Forest> out;
  for (int s = 0; s < n; ++s) {
    auto b = basis_forests(n, s);
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

struct DimensionReport {
  std::size_t dimension = 0;
  std::size_t rank = 0;
};

/// |B^s| together with the rank of its evaluation matrix. Large degrees are
/// checked block by block over (partition, roots); entries between different
/// partitions vanish.
inline DimensionReport xi_dimension_verified(int n, int s, std::size_t full_limit = 2000) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be >= 1");
  if (s < 0) throw Error(ErrorKind::OutOfRange, "negative degree");
  if (s >= n) return {};
  const auto basis = basis_forests(n, s);
  DimensionReport rep;
  rep.dimension = basis.size();
  if (basis.size() <= full_limit) {
    rep.rank = matrix_rank(evaluation_matrix(basis, basis));
    return rep;
  }
  std::map<std::vector<std::set<int>>, std::vector<Forest>> by_partition;
  for (const auto& f : basis) by_partition[f.blocks()].push_back(f);
  for (const auto& [blocks, fs] : by_partition) rep.rank += matrix_rank(evaluation_matrix(fs, fs));
  return rep;
}

/// dim of the degree-s part: 0 for s >= n.
inline std::size_t xi_dimension(int n, int s) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be >= 1");
  if (s < 0) throw Error(ErrorKind::OutOfRange, "negative degree");
  if (s >= n) return 0;
  return basis_forests(n, s).size();
}

}  // namespace ctalg
