#pragma once

#include <map>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "ctalg/error.hpp"
#include "ctalg/laurent.hpp"
#include "ctalg/rational.hpp"
#include "ctalg/typea.hpp"

namespace ctalg {

/// CT_{x_i = x_j}: the sum of the negative-order Laurent coefficients of F at
/// x_i = x_j. Zero when x_i = x_j is not a pole.
inline TypeARational ct_pole(const TypeARational& f, int i, int j) {
  if (i == j) throw Error(ErrorKind::InvalidArgument, "ct_pole requires i != j");
  const int q = f.multiplicity(i, j);
  if (q == 0) return {};
  const auto cs = detail::center_series(f, i, j, q);
  LaurentPoly num;
  for (int t = 0; t < q; ++t) {
    const LaurentPoly& c = cs.c[static_cast<std::size_t>(t)];
    if (t % 2 == 0) {
      num += c;
    } else {
      num -= c;
    }
  }
  return TypeARational::normalize(std::move(num), cs.den);
}

/// A_r(x_i) / (1 - x_i/x_u)^q with A_r = sum_e alpha[e] (1 - x_i/x_u)^e.
struct PrincipalPart {
  int i = 0;
  int u = 0;
  int q = 0;
  std::vector<TypeARational> alpha;

  TypeARational at_zero() const {
    TypeARational s;
    for (const auto& a : alpha) s += a;
    return s;
  }

  TypeARational value() const {
    TypeARational s;
    for (int e = 0; e < q; ++e) {
      const auto& a = alpha[static_cast<std::size_t>(e)];
      if (a.is_zero()) continue;
      s += a * TypeARational::normalize(LaurentPoly::constant(1), {{u, i, q - e}});
    }
    return s;
  }
};

/// F = sum_e x_i^e L_e + sum_r A_r(x_i)/(1 - x_i/x_{u_r})^{q_r}.
struct PfdResult {
  int var = 0;
  std::map<int, TypeARational> polynomial_part;
  std::vector<PrincipalPart> principal_parts;
  /// Factors of F not involving x_i; every A_r may carry them.
  TypeARational::Denominator base_denominator;

  TypeARational polynomial() const {
    TypeARational s;
    for (const auto& [e, c] : polynomial_part) s += c * Monomial::var(var, e);
    return s;
  }

  TypeARational recombine() const {
    TypeARational s = polynomial();
    for (const auto& p : principal_parts) s += p.value();
    return s;
  }
};

inline PfdResult pfd(const TypeARational& f, int i) {
  PfdResult res;
  res.var = i;
  if (i < 1) throw Error(ErrorKind::InvalidArgument, "variable indices start at 1");
  for (const auto& [p, m] : f.denominator()) {
    if (p.first != i && p.second != i) res.base_denominator.emplace(p, m);
  }
  TypeARational rest = f;
  for (const auto& [p, m] : f.denominator()) {
    if (p.first != i && p.second != i) continue;
    const int u = p.first == i ? p.second : p.first;
    const LocalExpansion le = ta_local_expansion(f, i, u, -1);
    PrincipalPart pp{i, u, m, {}};
    for (int e = 0; e < m; ++e) pp.alpha.push_back(le.h(e - m));
    rest -= pp.value();
    res.principal_parts.push_back(std::move(pp));
  }
  for (const auto& [p, m] : rest.denominator()) {
    if (p.first == i || p.second == i) {
      throw Error(ErrorKind::InvalidArgument, "pole at x_" + std::to_string(i) + " survived decomposition");
    }
  }
  std::map<int, LaurentPoly> by_exp;
  for (const auto& [mono, c] : rest.numerator().terms()) by_exp[mono.exponent(i)].add_term(mono.without(i), c);
  const auto den = rest.raw_denominator();
  for (auto& [e, part] : by_exp) {
    res.polynomial_part.emplace(e, TypeARational::normalize(std::move(part), den));
  }
  return res;
}

/// Each A_r coefficient's denominator divides the x_i-free factors of F times
/// prod_{l != r} (1 - x_{u_r}/x_{u_l})^{q_l + q_r - 1}.
inline bool check_denominator_bound(const PfdResult& res) {
  for (const auto& r : res.principal_parts) {
    TypeARational::Denominator bound = res.base_denominator;
    for (const auto& l : res.principal_parts) {
      if (l.u == r.u) continue;
      bound[{std::min(r.u, l.u), std::max(r.u, l.u)}] += l.q + r.q - 1;
    }
    for (const auto& a : r.alpha) {
      for (const auto& [p, m] : a.denominator()) {
        auto it = bound.find(p);
        if (it == bound.end() || it->second < m) return false;
      }
    }
  }
  return true;
}

/// 1/((1-x/y)^a (1-x/z)^b (1-y/z)^c) split into a part with poles only at
/// x = y and a part with poles only at x = z.
inline std::pair<TypeARational, TypeARational> pfd_three_var_split(int a, int b, int c, int x, int y, int z) {
  if (a < 0 || b < 0 || c < 0) throw Error(ErrorKind::InvalidArgument, "exponents must be >= 0");
  if (x == y || y == z || x == z) throw Error(ErrorKind::InvalidArgument, "variables must be distinct");
  const TypeARational f =
      TypeARational::normalize(LaurentPoly::constant(1), {{y, x, a}, {z, x, b}, {z, y, c}});
  const PfdResult res = pfd(f, x);
  TypeARational first;
  TypeARational second = res.polynomial();
  for (const auto& p : res.principal_parts) {
    if (p.u == y) {
      first += p.value();
    } else {
      second += p.value();
    }
  }
  return {first, second};
}

/// (1 - c x_top/x_bottom) with a rational constant.
struct ScaledFactor {
  int top = 0;
  int bottom = 0;
  Rational c = 1;

  auto operator<=>(const ScaledFactor& o) const {
    if (auto r = std::tie(top, bottom) <=> std::tie(o.top, o.bottom); r != 0) return r;
    return c < o.c ? std::strong_ordering::less
                   : (o.c < c ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  bool operator==(const ScaledFactor& o) const {
    return top == o.top && bottom == o.bottom && c == o.c;
  }

  LaurentPoly poly() const {
    LaurentPoly p = LaurentPoly::constant(1);
    p.add_term(Monomial::ratio(top, bottom), -c);
    return p;
  }
};

/// N / prod (1 - c x_a/x_b)^m. No reduced form is maintained; equality is by
/// cross-multiplication.
class ScaledRational {
 public:
  using Denominator = std::map<ScaledFactor, int>;

  ScaledRational() = default;
  explicit ScaledRational(LaurentPoly num) : num_(std::move(num)) {}

  static ScaledRational from(const TypeARational& f) {
    ScaledRational r(f.numerator());
    for (const auto& [p, m] : f.denominator()) r.den_[{p.second, p.first, 1}] += m;
    return r;
  }

  /// Adds (1 - c x_top/x_bottom)^mult to the denominator; c is parsed text.
  ScaledRational& divide_by(int top, int bottom, std::string_view c, int mult = 1) {
    return divide_by(top, bottom, parse_rational(c), mult);
  }

  ScaledRational& divide_by(int top, int bottom, const Rational& c, int mult = 1) {
    if (top == bottom) throw Error(ErrorKind::InvalidArgument, "factor with equal indices");
    if (c == 0) throw Error(ErrorKind::InvalidArgument, "factor constant must be nonzero");
    if (mult < 0) throw Error(ErrorKind::InvalidArgument, "negative multiplicity");
    if (mult > 0) den_[{top, bottom, c}] += mult;
    return *this;
  }

  const LaurentPoly& numerator() const { return num_; }
  const Denominator& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  LaurentPoly denominator_poly() const {
    LaurentPoly d = LaurentPoly::constant(1);
    for (const auto& [f, m] : den_) d *= f.poly().pow(static_cast<unsigned>(m));
    return d;
  }

  friend ScaledRational operator+(const ScaledRational& f, const ScaledRational& g) {
    if (f.is_zero()) return g;
    if (g.is_zero()) return f;
    ScaledRational r;
    r.den_ = f.den_;
    for (const auto& [k, m] : g.den_) r.den_[k] = std::max(r.den_[k], m);
    r.num_ = f.num_ * r.cofactor(f.den_) + g.num_ * r.cofactor(g.den_);
    if (r.num_.is_zero()) r.den_.clear();
    return r;
  }

  bool equals(const ScaledRational& o) const {
    return num_ * o.denominator_poly() == o.num_ * denominator_poly();
  }

  bool equals(const TypeARational& o) const { return equals(from(o)); }

  /// Canonical type-A form; only valid when every constant is 1.
  TypeARational to_type_a() const {
    std::vector<RawFactor> den;
    for (const auto& [f, m] : den_) {
      if (f.c != 1) throw Error(ErrorKind::InvalidArgument, "constant other than 1");
      den.push_back({f.bottom, f.top, m});
    }
    return TypeARational::normalize(num_, den);
  }

 private:
  LaurentPoly cofactor(const Denominator& part) const {
    LaurentPoly c = LaurentPoly::constant(1);
    for (const auto& [k, m] : den_) {
      auto it = part.find(k);
      const int have = it == part.end() ? 0 : it->second;
      if (m > have) c *= k.poly().pow(static_cast<unsigned>(m - have));
    }
    return c;
  }

  friend ScaledRational ct_pole_general(const ScaledRational&, int, int);

  LaurentPoly num_;
  Denominator den_;
};

/// Sum of A_r(0) over all centers x_i = c_r^{-1} x_j.
inline ScaledRational ct_pole_general(const ScaledRational& f, int i, int j) {
  if (i == j) throw Error(ErrorKind::InvalidArgument, "ct_pole_general requires i != j");
  // Orient every x_i factor as (1 - c x_i/x_u).
  LaurentPoly num = f.num_;
  std::map<std::pair<int, Rational>, int> at;  // (u, c) -> mult
  std::vector<std::pair<ScaledFactor, int>> stat;
  for (const auto& [k, m] : f.den_) {
    if (k.top == i) {
      at[{k.bottom, k.c}] += m;
    } else if (k.bottom == i) {
      // 1/(1 - c x_u/x_i)^m = (-1)^m c^-m (x_i/x_u)^m / (1 - c^-1 x_i/x_u)^m
      Rational s = pow(k.c, -m);
      if (m % 2 == 1) s = -s;
      num *= s;
      num *= Monomial::ratio(i, k.top).pow(m);
      at[{k.top, 1 / k.c}] += m;
    } else {
      stat.emplace_back(k, m);
    }
  }
  ScaledRational total;
  for (const auto& [center, q] : at) {
    const auto& [u, cr] = center;
    if (u != j) continue;
    // x_i = w x_j / c_r, so the center factor is 1 - w.
    ScaledRational part;
    for (const auto& [k, m] : stat) part.den_[k] += m;
    std::vector<std::vector<LaurentPoly>> series;
    const std::size_t terms = static_cast<std::size_t>(q);
    Rational scalar = 1;
    for (const auto& [other, m] : at) {
      if (other == center) continue;
      const auto& [ul, cl] = other;
      const Rational a = cl / cr;
      std::vector<LaurentPoly> s(terms);
      if (ul == j) {
        if (a == 1) throw Error(ErrorKind::CenterCollision, "two factors share a center");
        // 1/(1 - a w)^m = (1-a)^-m sum_t C(t+m-1,t) (a/(1-a))^t (w-1)^t
        scalar *= pow(1 - a, -m);
        for (std::size_t t = 0; t < terms; ++t) {
          s[t] = LaurentPoly::constant(binomial(static_cast<long>(t) + m - 1, static_cast<long>(t)) *
                                       pow(a / (1 - a), static_cast<int>(t)));
        }
      } else {
        // 1/(1 - a w y)^m, y = x_j/x_ul, over (1 - a y)^{m + K - 1}
        const ScaledFactor g{j, ul, a};
        part.den_[g] += m + static_cast<int>(terms) - 1;
        const LaurentPoly one_minus = g.poly();
        std::vector<LaurentPoly> powers(terms);
        LaurentPoly pw = LaurentPoly::constant(1);
        for (std::size_t t = 0; t < terms; ++t) {
          powers[t] = pw;
          pw *= one_minus;
        }
        const Monomial y = Monomial::ratio(j, ul);
        for (std::size_t t = 0; t < terms; ++t) {
          s[t] = powers[terms - 1 - t] * y.pow(static_cast<int>(t)) *
                 (binomial(static_cast<long>(t) + m - 1, static_cast<long>(t)) * pow(a, static_cast<int>(t)));
        }
      }
      series.push_back(std::move(s));
    }
    std::vector<LaurentPoly> c = lp_slack_taylor(lp_substitute(num, i, 1 / cr, j, 1), q - 1);
    for (const auto& s : series) c = detail::series_mul(c, s, terms);
    LaurentPoly sum;
    for (int t = 0; t < q; ++t) {
      if (t % 2 == 0) {
        sum += c[static_cast<std::size_t>(t)];
      } else {
        sum -= c[static_cast<std::size_t>(t)];
      }
    }
    part.num_ = sum * scalar;
    if (part.num_.is_zero()) continue;
    total = total + part;
  }
  return total;
}

}  // namespace ctalg
