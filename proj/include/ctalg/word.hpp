#pragma once

#include <cctype>
#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ctalg/error.hpp"
#include "ctalg/rational.hpp"

namespace ctalg {

/// [head, tail]: the constant term operator at the pole x_head = x_tail. It
/// eliminates x_head.
struct Commutator {
  int head = 0;
  int tail = 0;

  auto operator<=>(const Commutator&) const = default;
  bool operator==(const Commutator&) const = default;

  std::string to_string() const {
    return "[" + std::to_string(head) + "," + std::to_string(tail) + "]";
  }
};

/// A monomial operator [i_s,j_s]...[i_1,j_1]. Letters are stored as printed,
/// left to right; the rightmost letter is applied first.
class OperatorWord {
 public:
  OperatorWord() = default;

  explicit OperatorWord(std::vector<Commutator> letters) : letters_(std::move(letters)) {
    for (const auto& c : letters_) {
      if (c.head == c.tail) {
        throw Error(ErrorKind::InvalidArgument, "commutator " + c.to_string() + " has i = j");
      }
      if (c.head < 1 || c.tail < 1) {
        throw Error(ErrorKind::InvalidArgument, "variable indices start at 1");
      }
    }
  }

  OperatorWord(std::initializer_list<Commutator> letters)
      : OperatorWord(std::vector<Commutator>(letters)) {}

  const std::vector<Commutator>& letters() const { return letters_; }
  int degree() const { return static_cast<int>(letters_.size()); }
  bool is_identity() const { return letters_.empty(); }

  /// Letters in the order they act.
  std::vector<Commutator> application_order() const {
    return {letters_.rbegin(), letters_.rend()};
  }

  /// L|_{from=to}: every occurrence of index `from` replaced by `to`.
  OperatorWord substitute(int from, int to) const {
    std::vector<Commutator> out = letters_;
    for (auto& c : out) {
      if (c.head == from) c.head = to;
      if (c.tail == from) c.tail = to;
    }
    return OperatorWord(std::move(out));
  }

  int max_index() const {
    int m = 0;
    for (const auto& c : letters_) m = std::max({m, c.head, c.tail});
    return m;
  }

  /// Operator product: (*this) acts after `rhs`.
  friend OperatorWord operator*(const OperatorWord& lhs, const OperatorWord& rhs) {
    std::vector<Commutator> out = lhs.letters_;
    out.insert(out.end(), rhs.letters_.begin(), rhs.letters_.end());
    return OperatorWord(std::move(out));
  }

  auto operator<=>(const OperatorWord&) const = default;
  bool operator==(const OperatorWord&) const = default;

  /// "[6,2][5,6][1,2]"; the identity prints as "id".
  std::string to_string() const {
    if (letters_.empty()) return "id";
    std::string s;
    for (const auto& c : letters_) s += c.to_string();
    return s;
  }

  static OperatorWord parse(std::string_view text) {
    std::string s;
    for (char ch : text) {
      if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    }
    if (s.empty() || s == "id") return {};
    std::vector<Commutator> letters;
    std::size_t pos = 0;
    auto fail = [&](const std::string& why) {
      throw Error(ErrorKind::Parse, "word '" + std::string(text) + "': " + why);
    };
    auto read_int = [&]() {
      std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (start == pos) fail("expected index at offset " + std::to_string(start));
      return std::stoi(s.substr(start, pos - start));
    };
    while (pos < s.size()) {
      if (s[pos] != '[') fail("expected '['");
      ++pos;
      const int i = read_int();
      if (pos >= s.size() || s[pos] != ',') fail("expected ','");
      ++pos;
      const int j = read_int();
      if (pos >= s.size() || s[pos] != ']') fail("expected ']'");
      ++pos;
      letters.push_back({i, j});
    }
    try {
      return OperatorWord(std::move(letters));
    } catch (const Error& e) {
      throw Error(ErrorKind::Parse, e.what());
    }
  }

 private:
  std::vector<Commutator> letters_;
};

/// Finite linear combination of monomial operators.
class OperatorCombo {
 public:
  using Terms = std::map<OperatorWord, Rational>;

  OperatorCombo() = default;

  static OperatorCombo of(const OperatorWord& w, const Rational& c = 1) {
    OperatorCombo r;
    r.add(w, c);
    return r;
  }

  void add(const OperatorWord& w, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  const Terms& terms() const { return terms_; }
  bool is_empty() const { return terms_.empty(); }

  OperatorCombo& operator+=(const OperatorCombo& o) {
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
  }
  OperatorCombo& operator-=(const OperatorCombo& o) {
    for (const auto& [w, c] : o.terms_) add(w, -c);
    return *this;
  }
  friend OperatorCombo operator+(OperatorCombo a, const OperatorCombo& b) { return a += b; }
  friend OperatorCombo operator-(OperatorCombo a, const OperatorCombo& b) { return a -= b; }

  /// Grading by word length.
  std::map<int, OperatorCombo> by_degree() const {
    std::map<int, OperatorCombo> out;
    for (const auto& [w, c] : terms_) out[w.degree()].add(w, c);
    return out;
  }

  bool operator==(const OperatorCombo&) const = default;

 private:
  Terms terms_;
};

}  // namespace ctalg
