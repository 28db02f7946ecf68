#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ctalg/error.hpp"
#include "ctalg/monomial.hpp"
#include "ctalg/rational.hpp"

namespace ctalg {

/// Sparse multivariate Laurent polynomial with exact rational coefficients.
/// Canonical: no zero coefficient is ever stored, so structural equality is
/// mathematical equality. Iteration order is the Monomial order, which makes
/// printing reproducible.
class LaurentPoly {
 public:
  using Terms = std::map<Monomial, Rational>;

  LaurentPoly() = default;

  static LaurentPoly constant(const Rational& c) { return monomial(Monomial{}, c); }

  static LaurentPoly monomial(const Monomial& m, const Rational& c = 1) {
    LaurentPoly p;
    if (c != 0) p.terms_.emplace(m, c);
    return p;
  }

  static LaurentPoly variable(int index) { return monomial(Monomial::var(index)); }

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Rational coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Constant coefficient if the polynomial is a constant.
  std::optional<Rational> as_constant() const {
    if (terms_.empty()) return Rational(0);
    if (terms_.size() == 1 && terms_.begin()->first.is_one()) return terms_.begin()->second;
    return std::nullopt;
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  bool involves(int index) const {
    for (const auto& [m, c] : terms_) {
      if (m.exponent(index) != 0) return true;
    }
    return false;
  }

  bool has_slack() const {
    for (const auto& [m, c] : terms_) {
      if (m.slack() != 0) return true;
    }
    return false;
  }

  int max_var() const {
    int v = 0;
    for (const auto& [m, c] : terms_) v = std::max(v, m.max_var());
    return v;
  }

  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }

  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  LaurentPoly& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
    } else {
      for (auto& [m, c] : terms_) c *= s;
    }
    return *this;
  }

  LaurentPoly& operator*=(const Monomial& s) {
    Terms shifted;
    for (auto& [m, c] : terms_) shifted.emplace_hint(shifted.end(), m * s, c);
    terms_ = std::move(shifted);
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const Rational& s) { return a *= s; }
  friend LaurentPoly operator*(const Rational& s, LaurentPoly a) { return a *= s; }
  friend LaurentPoly operator*(LaurentPoly a, const Monomial& s) { return a *= s; }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.size() < b.size()) return b * a;
    LaurentPoly r;
    if (b.terms_.size() == 1) {
      const auto& [bm, bc] = *b.terms_.begin();
      for (const auto& [am, ac] : a.terms_) r.terms_.emplace_hint(r.terms_.end(), am * bm, ac * bc);
      return r;
    }
    for (const auto& [bm, bc] : b.terms_) {
      for (const auto& [am, ac] : a.terms_) {
        auto [it, inserted] = r.terms_.try_emplace(am * bm);
        it->second += ac * bc;
      }
    }
    std::erase_if(r.terms_, [](const auto& kv) { return kv.second == 0; });
    return r;
  }

  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  LaurentPoly pow(unsigned k) const {
    LaurentPoly r = constant(1);
    LaurentPoly base = *this;
    while (k > 0) {
      if (k & 1U) r *= base;
      k >>= 1U;
      if (k > 0) base *= base;
    }
    return r;
  }

  bool operator==(const LaurentPoly&) const = default;

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      Rational mag = abs(c);
      if (first) {
        if (c < 0) s += '-';
      } else {
        s += c < 0 ? " - " : " + ";
      }
      first = false;
      if (m.is_one()) {
        s += ctalg::to_string(mag);
      } else if (mag == 1) {
        s += m.to_string();
      } else {
        s += ctalg::to_string(mag) + '*' + m.to_string();
      }
    }
    return s;
  }

 private:
  Terms terms_;
};

/// (1 - x_b/x_a)^k expanded.
inline LaurentPoly factor_power(int a, int b, unsigned k) {
  LaurentPoly r;
  const Monomial y = Monomial::ratio(b, a);
  for (unsigned t = 0; t <= k; ++t) {
    Rational c = binomial(static_cast<long>(k), static_cast<long>(t));
    if (t % 2 == 1) c = -c;
    r.add_term(y.pow(static_cast<int>(t)), c);
  }
  return r;
}

/// Substitution x_i <- c * w^e * x_j.
inline LaurentPoly lp_substitute(const LaurentPoly& p, int i, const Rational& c, int j, int e) {
  if (i == j) throw Error(ErrorKind::InvalidArgument, "substitution requires i != j");
  if (c == 0) throw Error(ErrorKind::InvalidArgument, "substitution constant must be nonzero");
  LaurentPoly r;
  for (const auto& [m, coef] : p.terms()) {
    const int d = m.exponent(i);
    if (d == 0) {
      r.add_term(m, coef);
      continue;
    }
    Monomial t = m.without(i);
    t.set(j, t.exponent(j) + d);
    t.set_slack(t.slack() + e * d);
    r.add_term(t, coef * pow(c, d));
  }
  return r;
}

/// Identify x_from with x_to.
inline LaurentPoly lp_identify(const LaurentPoly& p, int from, int to) {
  return lp_substitute(p, from, 1, to, 0);
}

/// Coefficients a_0..a_order of p in powers of (w - 1). Negative slack
/// exponents are expanded with the generalized binomial series.
inline std::vector<LaurentPoly> lp_slack_taylor(const LaurentPoly& p, int order) {
  if (order < 0) return {};
  std::vector<LaurentPoly> out(static_cast<std::size_t>(order) + 1);
  for (const auto& [m, c] : p.terms()) {
    const Monomial base = m.without_slack();
    const int s = m.slack();
    Rational b = 1;  // C(s, t)
    for (int t = 0; t <= order; ++t) {
      if (t > 0) b = b * Rational(s - t + 1) / Rational(t);
      if (b == 0) break;
      out[static_cast<std::size_t>(t)].add_term(base, c * b);
    }
  }
  return out;
}

/// Common total degree of every term.
inline int lp_homogeneous_degree(const LaurentPoly& p) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroInput, "zero polynomial has no degree");
  const int d = p.terms().begin()->first.degree();
  for (const auto& [m, c] : p.terms()) {
    if (m.slack() != 0) throw Error(ErrorKind::InvalidArgument, "slack variable present");
    if (m.degree() != d) throw Error(ErrorKind::NotHomogeneous, "terms of different degree");
  }
  return d;
}

/// Exact quotient by (1 - x_j/x_i), i < j, if it exists. Synthetic division in
/// y = x_j/x_i; divisible iff p vanishes under x_j <- x_i.
inline std::optional<LaurentPoly> lp_try_divide_factor(const LaurentPoly& p, int i, int j) {
  if (!(i < j)) throw Error(ErrorKind::InvalidArgument, "divide factor requires i < j");
  if (p.is_zero()) return LaurentPoly{};
  // p = sum_e c_e * y^e with c_e free of x_j.
  std::map<int, LaurentPoly> by_power;
  for (const auto& [m, coef] : p.terms()) {
    const int e = m.exponent(j);
    Monomial rest = m.without(j);
    rest.set(i, rest.exponent(i) + e);
    by_power[e].add_term(rest, coef);
  }
  LaurentPoly total;
  for (const auto& [e, c] : by_power) total += c;
  if (!total.is_zero()) return std::nullopt;

  LaurentPoly q;
  LaurentPoly running;
  const int lo = by_power.begin()->first;
  const int hi = by_power.rbegin()->first;
  for (int e = lo; e < hi; ++e) {
    if (auto it = by_power.find(e); it != by_power.end()) running += it->second;
    if (running.is_zero()) continue;
    q += running * Monomial::ratio(j, i).pow(e);
  }
  return q;
}

}  // namespace ctalg
