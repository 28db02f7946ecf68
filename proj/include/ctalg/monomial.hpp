#pragma once

#include <algorithm>
#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "ctalg/error.hpp"

namespace ctalg {

/// Exponent vector over x_1..x_n plus the slack variable w used in local
/// expansions. Sparse: only nonzero exponents are stored, sorted by index.
class Monomial {
 public:
  using Entry = std::pair<int, int>;  // (variable index >= 1, exponent != 0)

  Monomial() = default;

  static Monomial var(int index, int exponent = 1) {
    Monomial m;
    m.set(index, exponent);
    return m;
  }

  static Monomial slack(int exponent) {
    Monomial m;
    m.slack_ = exponent;
    return m;
  }

  /// x_num / x_den
  static Monomial ratio(int num, int den) {
    return var(num) * var(den, -1);
  }

  int exponent(int index) const {
    auto it = std::lower_bound(exps_.begin(), exps_.end(), Entry{index, 0},
                               [](const Entry& a, const Entry& b) { return a.first < b.first; });
    return (it != exps_.end() && it->first == index) ? it->second : 0;
  }

  int slack() const { return slack_; }

  void set(int index, int exponent) {
    if (index < 1) throw Error(ErrorKind::InvalidArgument, "variable index must be >= 1");
    auto it = std::lower_bound(exps_.begin(), exps_.end(), Entry{index, 0},
                               [](const Entry& a, const Entry& b) { return a.first < b.first; });
    if (it != exps_.end() && it->first == index) {
      if (exponent == 0) {
        exps_.erase(it);
      } else {
        it->second = exponent;
      }
    } else if (exponent != 0) {
      exps_.insert(it, Entry{index, exponent});
    }
  }

  void set_slack(int exponent) { slack_ = exponent; }

  const std::vector<Entry>& exponents() const { return exps_; }

  bool is_one() const { return exps_.empty() && slack_ == 0; }

  /// Total degree in the x variables (slack excluded).
  int degree() const {
    int d = 0;
    for (const auto& [v, e] : exps_) d += e;
    return d;
  }

  /// Sum of index * exponent; the grading that makes every series variable
  /// x_j/x_i (i < j) strictly positive.
  long weight() const {
    long s = 0;
    for (const auto& [v, e] : exps_) s += static_cast<long>(v) * e;
    return s;
  }

  int max_var() const { return exps_.empty() ? 0 : exps_.back().first; }

  Monomial without(int index) const {
    Monomial m = *this;
    m.set(index, 0);
    return m;
  }

  Monomial without_slack() const {
    Monomial m = *this;
    m.slack_ = 0;
    return m;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    r.exps_.reserve(exps_.size() + o.exps_.size());
    auto a = exps_.begin();
    auto b = o.exps_.begin();
    while (a != exps_.end() || b != o.exps_.end()) {
      if (b == o.exps_.end() || (a != exps_.end() && a->first < b->first)) {
        r.exps_.push_back(*a++);
      } else if (a == exps_.end() || b->first < a->first) {
        r.exps_.push_back(*b++);
      } else {
        const int e = a->second + b->second;
        if (e != 0) r.exps_.emplace_back(a->first, e);
        ++a;
        ++b;
      }
    }
    r.slack_ = slack_ + o.slack_;
    return r;
  }

  Monomial& operator*=(const Monomial& o) { return *this = *this * o; }

  Monomial pow(int k) const {
    Monomial r;
    if (k == 0) return r;
    for (const auto& [v, e] : exps_) r.exps_.emplace_back(v, e * k);
    r.slack_ = slack_ * k;
    return r;
  }

  Monomial inverse() const { return pow(-1); }

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

  /// "x1^2*x3^-1*w"; unit exponents elided; "1" for the empty monomial.
  std::string to_string() const {
    if (is_one()) return "1";
    std::string s;
    auto emit = [&s](const std::string& name, int e) {
      if (!s.empty()) s += '*';
      s += name;
      if (e != 1) s += '^' + std::to_string(e);
    };
    for (const auto& [v, e] : exps_) emit("x" + std::to_string(v), e);
    if (slack_ != 0) emit("w", slack_);
    return s;
  }

 private:
  std::vector<Entry> exps_;
  int slack_ = 0;
};

}  // namespace ctalg
