#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ctalg/error.hpp"
#include "ctalg/forest.hpp"
#include "ctalg/laurent.hpp"
#include "ctalg/monomial.hpp"
#include "ctalg/rational.hpp"

namespace ctalg {

/// (1 - x_b/x_a)^mult in either orientation.
struct RawFactor {
  int a = 0;
  int b = 0;
  int mult = 1;
};

/// N / prod_{i<j} (1 - x_j/x_i)^{q_ij}, kept in reduced form: N is never
/// divisible by a factor it sits over. Reduced form is unique, so equality is
/// structural.
class TypeARational {
 public:
  using Pair = std::pair<int, int>;
  using Denominator = std::map<Pair, int>;

  TypeARational() = default;

  explicit TypeARational(LaurentPoly num) : num_(std::move(num)) {}

  static TypeARational constant(const Rational& c) { return TypeARational(LaurentPoly::constant(c)); }

  static TypeARational monomial(const Monomial& m, const Rational& c = 1) {
    return TypeARational(LaurentPoly::monomial(m, c));
  }

  /// Reorients every factor to a < b, absorbing (-x_b/x_a)^m into the
  /// numerator, then cancels common factors.
  static TypeARational normalize(LaurentPoly num, const std::vector<RawFactor>& den) {
    TypeARational r;
    if (num.is_zero()) return r;
    Rational sign = 1;
    Monomial shift;
    for (const auto& f : den) {
      if (f.a == f.b) throw Error(ErrorKind::InvalidArgument, "factor 1 - x_i/x_i");
      if (f.a < 1 || f.b < 1) throw Error(ErrorKind::InvalidArgument, "variable indices start at 1");
      if (f.mult < 0) throw Error(ErrorKind::InvalidArgument, "negative multiplicity");
      if (f.mult == 0) continue;
      if (f.a < f.b) {
        r.den_[{f.a, f.b}] += f.mult;
      } else {
        if (f.mult % 2 == 1) sign = -sign;
        shift *= Monomial::ratio(f.a, f.b).pow(f.mult);
        r.den_[{f.b, f.a}] += f.mult;
      }
    }
    if (!shift.is_one()) num *= shift;
    if (sign != 1) num *= sign;
    r.num_ = std::move(num);
    r.cancel();
    return r;
  }

  /// prod over edges i->j of 1/(1 - x_i/x_j).
  static TypeARational epsilon(const Forest& d) {
    std::vector<RawFactor> den;
    for (const auto& [c, p] : d.edges()) den.push_back({p, c, 1});
    return normalize(LaurentPoly::constant(1), den);
  }

  const LaurentPoly& numerator() const { return num_; }
  const Denominator& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  /// Multiplicity of the factor joining i and j (either order).
  int multiplicity(int i, int j) const {
    auto it = den_.find({std::min(i, j), std::max(i, j)});
    return it == den_.end() ? 0 : it->second;
  }

  std::optional<Rational> as_constant() const {
    if (!den_.empty()) return std::nullopt;
    return num_.as_constant();
  }

  bool involves(int v) const {
    if (num_.involves(v)) return true;
    for (const auto& [p, m] : den_) {
      if (p.first == v || p.second == v) return true;
    }
    return false;
  }

  int max_var() const {
    int v = num_.max_var();
    for (const auto& [p, m] : den_) v = std::max(v, p.second);
    return v;
  }

  std::vector<RawFactor> raw_denominator() const {
    std::vector<RawFactor> out;
    for (const auto& [p, m] : den_) out.push_back({p.first, p.second, m});
    return out;
  }

  /// Expanded product of the denominator factors.
  LaurentPoly denominator_poly() const {
    LaurentPoly d = LaurentPoly::constant(1);
    for (const auto& [p, m] : den_) d *= factor_power(p.first, p.second, static_cast<unsigned>(m));
    return d;
  }

  TypeARational operator-() const {
    TypeARational r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend TypeARational operator*(const TypeARational& f, const TypeARational& g) {
    if (f.is_zero() || g.is_zero()) return {};
    TypeARational r;
    r.num_ = f.num_ * g.num_;
    r.den_ = f.den_;
    for (const auto& [p, m] : g.den_) r.den_[p] += m;
    r.cancel();
    return r;
  }

  friend TypeARational operator*(TypeARational f, const Rational& c) {
    if (c == 0) return {};
    f.num_ *= c;
    return f;
  }
  friend TypeARational operator*(const Rational& c, TypeARational f) { return std::move(f) * c; }

  friend TypeARational operator*(TypeARational f, const Monomial& m) {
    f.num_ *= m;
    return f;
  }

  friend TypeARational operator+(const TypeARational& f, const TypeARational& g) {
    if (f.is_zero()) return g;
    if (g.is_zero()) return f;
    if (f.den_ == g.den_) {
      TypeARational r;
      r.num_ = f.num_ + g.num_;
      if (r.num_.is_zero()) return {};
      r.den_ = f.den_;
      r.cancel();
      return r;
    }
    TypeARational r;
    r.den_ = f.den_;
    for (const auto& [p, m] : g.den_) r.den_[p] = std::max(r.den_[p], m);
    r.num_ = f.num_ * r.cofactor(f.den_) + g.num_ * r.cofactor(g.den_);
    if (r.num_.is_zero()) return {};
    r.cancel();
    return r;
  }

  friend TypeARational operator-(const TypeARational& f, const TypeARational& g) { return f + (-g); }

  TypeARational& operator+=(const TypeARational& o) { return *this = *this + o; }
  TypeARational& operator-=(const TypeARational& o) { return *this = *this - o; }
  TypeARational& operator*=(const TypeARational& o) { return *this = *this * o; }

  bool operator==(const TypeARational&) const = default;

  /// Value at x_v = point[v-1]. Throws InvalidArgument on a vanishing
  /// denominator or a zero coordinate under a negative power.
  Rational evaluate(const std::vector<Rational>& point) const {
    auto value = [&](const Monomial& m) {
      Rational r = 1;
      for (const auto& [v, e] : m.exponents()) {
        if (v > static_cast<int>(point.size())) {
          throw Error(ErrorKind::InvalidArgument, "evaluation point too short");
        }
        const Rational& x = point[static_cast<std::size_t>(v - 1)];
        if (x == 0 && e < 0) throw Error(ErrorKind::InvalidArgument, "division by zero");
        r *= pow(x, e);
      }
      return r;
    };
    Rational n = 0;
    for (const auto& [m, c] : num_.terms()) n += c * value(m);
    Rational d = 1;
    for (const auto& [p, mult] : den_) {
      const Rational f = 1 - value(Monomial::ratio(p.second, p.first));
      if (f == 0) throw Error(ErrorKind::InvalidArgument, "evaluation at a pole");
      d *= pow(f, mult);
    }
    return n / d;
  }

  /// "(num) / ((1-x2/x1)^2*(1-x3/x1))", or just the numerator.
  std::string to_string() const {
    if (den_.empty()) return num_.to_string();
    std::string s = num_.size() == 1 ? num_.to_string() : "(" + num_.to_string() + ")";
    s += " / ";
    if (den_.size() > 1) s += '(';
    bool first = true;
    for (const auto& [p, m] : den_) {
      if (!first) s += '*';
      first = false;
      s += "(1-x" + std::to_string(p.second) + "/x" + std::to_string(p.first) + ")";
      if (m > 1) s += '^' + std::to_string(m);
    }
    if (den_.size() > 1) s += ')';
    return s;
  }

 private:
  LaurentPoly cofactor(const Denominator& part) const {
    LaurentPoly c = LaurentPoly::constant(1);
    for (const auto& [p, m] : den_) {
      auto it = part.find(p);
      const int have = it == part.end() ? 0 : it->second;
      if (m > have) c *= factor_power(p.first, p.second, static_cast<unsigned>(m - have));
    }
    return c;
  }

  void cancel() {
    if (num_.is_zero()) {
      den_.clear();
      return;
    }
    for (auto it = den_.begin(); it != den_.end();) {
      while (it->second > 0) {
        auto q = lp_try_divide_factor(num_, it->first.first, it->first.second);
        if (!q) break;
        num_ = std::move(*q);
        --it->second;
      }
      it = it->second == 0 ? den_.erase(it) : std::next(it);
    }
  }

  LaurentPoly num_;
  Denominator den_;
};

inline TypeARational ta_normalize(LaurentPoly num, const std::vector<RawFactor>& den) {
  return TypeARational::normalize(std::move(num), den);
}

/// The pole graph H of an element: pairs with multiplicities.
class PoleProfile {
 public:
  using Pair = std::pair<int, int>;

  PoleProfile() = default;
  explicit PoleProfile(std::map<Pair, int> pairs) : pairs_(std::move(pairs)) {}

  static PoleProfile of(const TypeARational& f) { return PoleProfile(f.denominator()); }

  const std::map<Pair, int>& pairs() const { return pairs_; }

  /// H/{i->j}: i identified with j, the pair {i,j} dropped, multiplicities of
  /// merged pairs added.
  PoleProfile contract(int i, int j) const {
    std::map<Pair, int> out;
    for (const auto& [p, m] : pairs_) {
      int a = p.first == i ? j : p.first;
      int b = p.second == i ? j : p.second;
      if (a == b) continue;
      out[{std::min(a, b), std::max(a, b)}] += m;
    }
    return PoleProfile(std::move(out));
  }

  /// Edge-set inclusion, multiplicities ignored.
  bool edges_within(const PoleProfile& h) const {
    for (const auto& [p, m] : pairs_) {
      if (!h.pairs_.count(p)) return false;
    }
    return true;
  }

  /// Edge-set inclusion with multiplicities bounded by h's.
  bool within(const PoleProfile& h) const {
    for (const auto& [p, m] : pairs_) {
      auto it = h.pairs_.find(p);
      if (it == h.pairs_.end() || it->second < m) return false;
    }
    return true;
  }

 private:
  std::map<Pair, int> pairs_;
};

/// h_k for lowest <= k <= highest at the center x_i = x_j: F = sum h_k z^k with
/// z = 1 - x_i/x_j.
struct LocalExpansion {
  int i = 0;
  int j = 0;
  int pole_order = 0;
  std::map<int, TypeARational> coefficients;

  TypeARational h(int k) const {
    auto it = coefficients.find(k);
    return it == coefficients.end() ? TypeARational{} : it->second;
  }
};

namespace detail {

/// Numerators c_0..c_{K-1} over a common denominator such that, with w =
/// x_i/x_j, F = z^{-q} * sum_t c_t (w-1)^t / den + O(z^{K-q}).
struct CenterSeries {
  int q = 0;
  std::vector<LaurentPoly> c;
  std::vector<RawFactor> den;
};

inline std::vector<LaurentPoly> series_mul(const std::vector<LaurentPoly>& a,
                                           const std::vector<LaurentPoly>& b, std::size_t k) {
  std::vector<LaurentPoly> out(k);
  for (std::size_t s = 0; s < a.size() && s < k; ++s) {
    if (a[s].is_zero()) continue;
    for (std::size_t t = 0; t < b.size() && s + t < k; ++t) {
      if (!b[t].is_zero()) out[s + t] += a[s] * b[t];
    }
  }
  return out;
}

inline CenterSeries center_series(const TypeARational& f, int i, int j, int terms) {
  if (i == j) throw Error(ErrorKind::InvalidArgument, "center requires i != j");
  CenterSeries cs;
  cs.q = f.multiplicity(i, j);
  const std::size_t k = static_cast<std::size_t>(terms);
  if (terms <= 0) return cs;

  int extra = 0;
  Rational sign = 1;
  if (i < j) {
    // 1 - x_j/x_i = -z/w
    extra += cs.q;
    if (cs.q % 2 == 1) sign = -1;
  }
  std::vector<std::vector<LaurentPoly>> series;
  for (const auto& [p, m] : f.denominator()) {
    const auto [a, b] = p;
    if ((a == i && b == j) || (a == j && b == i)) continue;
    if (a != i && b != i) {
      cs.den.push_back({a, b, m});
      continue;
    }
    std::vector<LaurentPoly> s(k);
    if (b == i) {
      // 1 - x_i/x_a = 1 - w*y, y = x_j/x_a
      const int u = a;
      const Monomial y = Monomial::ratio(j, u);
      const LaurentPoly one_minus_y = factor_power(u, j, 1);
      cs.den.push_back({u, j, m + terms - 1});
      LaurentPoly pw = LaurentPoly::constant(1);
      std::vector<LaurentPoly> powers(k);
      for (std::size_t t = 0; t < k; ++t) {
        powers[t] = pw;
        pw *= one_minus_y;
      }
      for (std::size_t t = 0; t < k; ++t) {
        const Rational c = binomial(static_cast<long>(t) + m - 1, static_cast<long>(t));
        s[t] = powers[k - 1 - t] * y.pow(static_cast<int>(t)) * c;
      }
    } else {
      // 1 - x_b/x_i = (w - y)/w, y = x_b/x_j
      const int u = b;
      extra += m;
      const LaurentPoly one_minus_y = factor_power(j, u, 1);
      cs.den.push_back({j, u, m + terms - 1});
      LaurentPoly pw = LaurentPoly::constant(1);
      std::vector<LaurentPoly> powers(k);
      for (std::size_t t = 0; t < k; ++t) {
        powers[t] = pw;
        pw *= one_minus_y;
      }
      for (std::size_t t = 0; t < k; ++t) {
        Rational c = binomial(static_cast<long>(t) + m - 1, static_cast<long>(t));
        if (t % 2 == 1) c = -c;
        s[t] = powers[k - 1 - t] * c;
      }
    }
    series.push_back(std::move(s));
  }
  LaurentPoly p0 = lp_substitute(f.numerator(), i, 1, j, 1);
  if (extra != 0) p0 *= Monomial::slack(extra);
  if (sign != 1) p0 *= sign;
  cs.c = lp_slack_taylor(p0, terms - 1);
  for (const auto& s : series) cs.c = series_mul(cs.c, s, k);
  return cs;
}

}  // namespace detail

/// Laurent coefficients h_{-q}..h_order of F at x_i = x_j.
inline LocalExpansion ta_local_expansion(const TypeARational& f, int i, int j, int order) {
  LocalExpansion le;
  le.i = i;
  le.j = j;
  le.pole_order = f.multiplicity(i, j);
  const int q = le.pole_order;
  if (order < -q) return le;
  const auto cs = detail::center_series(f, i, j, q + order + 1);
  for (int k = -q; k <= order; ++k) {
    const LaurentPoly& c = cs.c[static_cast<std::size_t>(k + q)];
    if (c.is_zero()) continue;
    TypeARational h = TypeARational::normalize((k + q) % 2 == 0 ? c : -c, cs.den);
    if (!h.is_zero()) le.coefficients.emplace(k, std::move(h));
  }
  return le;
}

/// Truncated expansion under 1 > x_1 > ... > x_n. Each x_b/x_a (a < b) has
/// weight b - a; series terms up to weight `bound` are kept, and the result
/// retains exactly the monomials of weight <= (least numerator weight) +
/// bound, all of which are exact.
inline LaurentPoly ta_series_truncate(const TypeARational& f, long bound) {
  if (bound < 0) throw Error(ErrorKind::InvalidArgument, "bound must be >= 0");
  if (f.is_zero()) return {};
  std::map<long, LaurentPoly> series;  // by weight
  series[0] = LaurentPoly::constant(1);
  for (const auto& [p, m] : f.denominator()) {
    const long step = p.second - p.first;
    const Monomial y = Monomial::ratio(p.second, p.first);
    std::map<long, LaurentPoly> next;
    for (const auto& [w, poly] : series) {
      for (long t = 0; w + t * step <= bound; ++t) {
        const Rational c = binomial(t + m - 1, t);
        next[w + t * step] += poly * y.pow(static_cast<int>(t)) * c;
      }
    }
    series = std::move(next);
  }
  long least = 0;
  bool first = true;
  for (const auto& [mono, c] : f.numerator().terms()) {
    least = first ? mono.weight() : std::min(least, mono.weight());
    first = false;
  }
  LaurentPoly out;
  for (const auto& [w, poly] : series) {
    const LaurentPoly part = f.numerator() * poly;
    for (const auto& [mono, c] : part.terms()) {
      if (mono.weight() <= least + bound) out.add_term(mono, c);
    }
  }
  return out;
}

/// Default bound: twice the largest pole multiplicity plus the largest
/// absolute numerator exponent.
inline long ta_default_bound(const TypeARational& f) {
  long m = 0;
  for (const auto& [p, q] : f.denominator()) m = std::max<long>(m, q);
  long e = 0;
  for (const auto& [mono, c] : f.numerator().terms()) {
    for (const auto& [v, x] : mono.exponents()) e = std::max<long>(e, std::abs(x));
  }
  return 2 * (m + e);
}

inline LaurentPoly ta_series_truncate(const TypeARational& f) { return ta_series_truncate(f, ta_default_bound(f)); }

/// Constant term over all variables under 1 > x_1 > ... > x_n, eliminating
/// x_n first.
inline Rational ta_full_ct(const TypeARational& f) {
  if (f.is_zero()) return 0;
  LaurentPoly num = f.numerator();
  std::map<std::pair<int, int>, int> den = f.denominator();
  for (int k = f.max_var(); k >= 1; --k) {
    // factors (a, k): 1/(1 - x_k/x_a)^m = sum_t C(t+m-1, t) x_a^-t x_k^t
    std::vector<std::pair<int, int>> pulled;
    for (auto it = den.begin(); it != den.end();) {
      if (it->first.second == k) {
        pulled.emplace_back(it->first.first, it->second);
        it = den.erase(it);
      } else {
        ++it;
      }
    }
    std::map<int, LaurentPoly> by_deg;  // needed x_k^t from the series, t >= 0
    int need = 0;
    for (const auto& [m, c] : num.terms()) {
      const int d = m.exponent(k);
      if (d > 0) continue;
      by_deg[-d].add_term(m.without(k), c);
      need = std::max(need, -d);
    }
    if (by_deg.empty()) return 0;
    std::vector<LaurentPoly> s(static_cast<std::size_t>(need) + 1);
    s[0] = LaurentPoly::constant(1);
    for (const auto& [a, mult] : pulled) {
      std::vector<LaurentPoly> fs(static_cast<std::size_t>(need) + 1);
      for (int t = 0; t <= need; ++t) {
        fs[static_cast<std::size_t>(t)] =
            LaurentPoly::monomial(Monomial::var(a, -t), binomial(t + mult - 1, t));
      }
      s = detail::series_mul(s, fs, s.size());
    }
    LaurentPoly next;
    for (const auto& [t, part] : by_deg) {
      const LaurentPoly& st = s[static_cast<std::size_t>(t)];
      if (!st.is_zero()) next += part * st;
    }
    num = std::move(next);
    if (num.is_zero()) return 0;
  }
  return num.coeff(Monomial{});
}

}  // namespace ctalg
