#pragma once

#include <vector>

#include "ctalg/error.hpp"
#include "ctalg/laurent.hpp"
#include "ctalg/rational.hpp"

namespace ctalg {

inline Integer multinomial(const std::vector<int>& parts) {
  long total = 0;
  for (int p : parts) {
    if (p < 0) throw Error(ErrorKind::InvalidArgument, "parts must be nonnegative");
    total += p;
  }
  Integer r = factorial(total);
  for (int p : parts) r /= factorial(p);
  return r;
}

/// CT of prod_{i != j} (1 - x_i/x_j)^{a_i}, by expanding the product.
inline Rational dyson_ct(const std::vector<int>& a) {
  const int n = static_cast<int>(a.size());
  for (int v : a) {
    if (v < 0) throw Error(ErrorKind::InvalidArgument, "exponents must be nonnegative");
  }
  LaurentPoly p = LaurentPoly::constant(1);
  for (int i = 1; i <= n; ++i) {
    if (a[static_cast<std::size_t>(i - 1)] == 0) continue;
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      p *= factor_power(j, i, static_cast<unsigned>(a[static_cast<std::size_t>(i - 1)]));
    }
  }
  return p.coeff(Monomial{});
}

struct DysonResult {
  Rational computed;
  Rational expected;
  bool match = false;
};

inline DysonResult cmd_dyson(const std::vector<int>& a) {
  if (a.empty()) throw Error(ErrorKind::InvalidArgument, "need at least one exponent");
  DysonResult r;
  r.computed = dyson_ct(a);
  r.expected = Rational(multinomial(a));
  r.match = r.computed == r.expected;
  return r;
}

}  // namespace ctalg
