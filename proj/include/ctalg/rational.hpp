#pragma once

// Exact rationals. GMP's mpq_class keeps values canonical (reduced, positive
// denominator, zero as 0/1), which is exactly the invariant we need.

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "ctalg/error.hpp"

namespace ctalg {

using Rational = mpq_class;
using Integer = mpz_class;

/// "p/q", with "/q" omitted when q = 1.
inline std::string to_string(const Rational& r) { return r.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

namespace detail {

inline bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t pos = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (pos == s.size()) return false;
  for (; pos < s.size(); ++pos) {
    if (!std::isdigit(static_cast<unsigned char>(s[pos]))) return false;
  }
  return true;
}

}  // namespace detail

/// Parses "p", "-p" or "p/q". Anything mentioning an imaginary unit is
/// reported as ComplexConstant; the ground field is the rationals.
inline Rational parse_rational(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.find_first_of("iIjJ") != std::string::npos) {
    throw Error(ErrorKind::ComplexConstant,
                "non-rational constant '" + std::string(text) + "'");
  }
  const auto slash = s.find('/');
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!detail::is_integer_literal(num) || !detail::is_integer_literal(den) ||
      den[0] == '-' || den[0] == '+') {
    throw Error(ErrorKind::Parse, "malformed rational '" + std::string(text) + "'");
  }
  Integer p(num[0] == '+' ? num.substr(1) : num, 10);
  Integer q(den, 10);
  if (q == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

/// Generalized binomial coefficient C(top, k) for any integer top, k >= 0.
inline Rational binomial(long top, long k) {
  if (k < 0) return 0;
  Rational r = 1;
  for (long t = 0; t < k; ++t) {
    r *= Rational(top - t);
    r /= Rational(t + 1);
  }
  return r;
}

inline Integer factorial(long n) {
  Integer r = 1;
  for (long k = 2; k <= n; ++k) r *= k;
  return r;
}

inline Rational pow(const Rational& base, int e) {
  Rational r = 1;
  const Rational b = e < 0 ? Rational(1) / base : base;
  for (int k = 0; k < (e < 0 ? -e : e); ++k) r *= b;
  return r;
}

}  // namespace ctalg
