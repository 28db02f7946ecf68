#pragma once

// Text and JSON forms of expressions, forests, words and combinations.

#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ctalg/error.hpp"
#include "ctalg/forest.hpp"
#include "ctalg/laurent.hpp"
#include "ctalg/typea.hpp"
#include "ctalg/word.hpp"
#include "ctalg/xi.hpp"

namespace ctalg {

using Json = nlohmann::json;

/// 1/D for D = c * monomial * prod of type-A factors. Anything else is not in
/// the class and is reported as a parse error.
inline TypeARational ta_invert(const TypeARational& d) {
  if (d.is_zero()) throw Error(ErrorKind::Parse, "division by zero");
  LaurentPoly n = d.numerator();
  std::vector<RawFactor> found;
  std::set<int> vars;
  for (const auto& [m, c] : n.terms()) {
    for (const auto& [v, e] : m.exponents()) vars.insert(v);
  }
  for (int a : vars) {
    for (int b : vars) {
      if (a >= b) continue;
      while (n.size() > 1) {
        auto q = lp_try_divide_factor(n, a, b);
        if (!q) break;
        n = std::move(*q);
        found.push_back({a, b, 1});
      }
    }
  }
  if (n.size() != 1) {
    throw Error(ErrorKind::Parse, "divisor " + d.to_string() + " is not a product of factors 1 - x_j/x_i");
  }
  const auto& [m, c] = *n.terms().begin();
  LaurentPoly num = d.denominator_poly() * m.inverse();
  num *= Rational(1) / c;
  return TypeARational::normalize(std::move(num), found);
}

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  TypeARational parse() {
    TypeARational v = expr();
    skip();
    if (pos_ != text_.size()) {
      const char ch = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(ch)) && ch != 'x' && ch != 'X') {
        throw Error(ErrorKind::ComplexConstant, "non-rational symbol '" + std::string(1, ch) + "'");
      }
      fail("unexpected '" + std::string(1, ch) + "'");
    }
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::Parse, "expression '" + std::string(text_) + "' at offset " +
                                      std::to_string(pos_) + ": " + why);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string digits() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::string(text_.substr(start, pos_ - start));
  }

  TypeARational expr() {
    TypeARational v = term();
    for (;;) {
      if (eat('+')) {
        v += term();
      } else if (eat('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }

  TypeARational term() {
    TypeARational v = unary();
    for (;;) {
      if (eat('*')) {
        v *= unary();
      } else if (eat('/')) {
        v *= ta_invert(unary());
      } else {
        return v;
      }
    }
  }

  TypeARational unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  TypeARational power() {
    TypeARational base = atom();
    if (!eat('^')) return base;
    bool paren = eat('(');
    bool neg = eat('-');
    if (!neg) eat('+');
    const std::string d = digits();
    if (paren && !eat(')')) fail("expected ')'");
    if (d.size() > 6) fail("exponent too large");
    int e = std::stoi(d);
    TypeARational b = neg ? ta_invert(base) : base;
    TypeARational r = TypeARational::constant(1);
    while (e-- > 0) r *= b;
    return r;
  }

  TypeARational atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      TypeARational v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (ch == 'x' || ch == 'X') {
      ++pos_;
      const std::string d = digits();
      if (d.size() > 6) fail("variable index too large");
      const int v = std::stoi(d);
      if (v < 1) fail("variable indices start at 1");
      return TypeARational::monomial(Monomial::var(v));
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      const Integer z(digits(), 10);
      if (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != 'x' &&
          text_[pos_] != 'X') {
        throw Error(ErrorKind::ComplexConstant, "non-rational constant '" + z.get_str() + text_[pos_] + "'");
      }
      return TypeARational::constant(Rational(z));
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      // i, I, j, J and friends: constants outside the rationals
      throw Error(ErrorKind::ComplexConstant, "non-rational symbol '" + std::string(1, ch) + "'");
    }
    fail("unexpected '" + std::string(1, ch) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline int parse_index(const std::string& key) {
  if (key.empty() || key.size() > 6) throw Error(ErrorKind::Parse, "bad variable key '" + key + "'");
  for (char c : key) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw Error(ErrorKind::Parse, "bad variable key '" + key + "'");
  }
  const int v = std::stoi(key);
  if (v < 1) throw Error(ErrorKind::Parse, "variable indices start at 1");
  return v;
}

inline Rational json_rational(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>()), 10));
  throw Error(ErrorKind::Parse, "coefficient must be a string or an integer");
}

inline int json_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw Error(ErrorKind::Parse, std::string(what) + " must be an integer");
  return j.get<int>();
}

}  // namespace detail

/// Text grammar: sums, products, quotients and integer powers of rationals,
/// variables x1, x2, ... and parentheses, e.g. "x1*x2^-1 / (1-x2/x1)^2".
inline TypeARational parse_expression(std::string_view text) { return detail::ExprParser(text).parse(); }

/// {"n": 3, "numerator": [{"coeff": "1", "exp": {"1": 1, "2": -1}}],
///  "denominator": [{"i": 1, "j": 2, "mult": 2}]}
inline TypeARational typea_from_json(const Json& j) {
  try {
    if (!j.is_object()) throw Error(ErrorKind::Parse, "expected an object");
    int n = 0;
    if (j.contains("n")) n = detail::json_int(j.at("n"), "n");
    auto check = [&](int v) {
      if (n > 0 && v > n) throw Error(ErrorKind::Parse, "variable index exceeds n");
    };
    LaurentPoly num;
    if (!j.contains("numerator") || !j.at("numerator").is_array()) {
      throw Error(ErrorKind::Parse, "numerator must be an array");
    }
    for (const auto& t : j.at("numerator")) {
      if (!t.is_object() || !t.contains("coeff")) throw Error(ErrorKind::Parse, "term needs a coeff");
      Monomial m;
      if (t.contains("exp")) {
        if (!t.at("exp").is_object()) throw Error(ErrorKind::Parse, "exp must be an object");
        for (const auto& [k, e] : t.at("exp").items()) {
          const int v = detail::parse_index(k);
          check(v);
          m.set(v, m.exponent(v) + detail::json_int(e, "exponent"));
        }
      }
      num.add_term(m, detail::json_rational(t.at("coeff")));
    }
    std::vector<RawFactor> den;
    if (j.contains("denominator")) {
      if (!j.at("denominator").is_array()) throw Error(ErrorKind::Parse, "denominator must be an array");
      for (const auto& f : j.at("denominator")) {
        if (!f.is_object()) throw Error(ErrorKind::Parse, "factor must be an object");
        const int a = detail::json_int(f.at("i"), "i");
        const int b = detail::json_int(f.at("j"), "j");
        const int m = f.contains("mult") ? detail::json_int(f.at("mult"), "mult") : 1;
        if (a < 1 || !(a < b)) throw Error(ErrorKind::Parse, "denominator entries need 1 <= i < j");
        if (m < 1) throw Error(ErrorKind::Parse, "mult must be >= 1");
        check(b);
        den.push_back({a, b, m});
      }
    }
    return TypeARational::normalize(std::move(num), den);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

inline Json typea_to_json(const TypeARational& f, int n = 0) {
  Json j;
  j["n"] = std::max(n, f.max_var());
  Json terms = Json::array();
  for (const auto& [m, c] : f.numerator().terms()) {
    Json exp = Json::object();
    for (const auto& [v, e] : m.exponents()) exp[std::to_string(v)] = e;
    terms.push_back({{"coeff", to_string(c)}, {"exp", exp}});
  }
  j["numerator"] = terms;
  Json den = Json::array();
  for (const auto& [p, m] : f.denominator()) den.push_back({{"i", p.first}, {"j", p.second}, {"mult", m}});
  j["denominator"] = den;
  return j;
}

/// JSON text or the expression grammar, whichever the input looks like.
inline TypeARational parse_typea(std::string_view text) {
  std::size_t p = 0;
  while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
  if (p < text.size() && text[p] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::exception& e) {
      throw Error(ErrorKind::Parse, e.what());
    }
    return typea_from_json(j);
  }
  return parse_expression(text);
}

inline Json forest_to_json(const Forest& d) {
  std::function<Json(int)> tree = [&](int v) {
    Json kids = Json::array();
    for (int c : d.children(v)) kids.push_back(tree(c));
    return Json{{"root", v}, {"children", kids}};
  };
  Json out = Json::array();
  for (int r : d.roots()) out.push_back(tree(r));
  return out;
}

inline Forest forest_from_json(const Json& j) {
  std::set<int> vs;
  std::map<int, std::vector<int>> kids;
  std::function<int(const Json&)> tree = [&](const Json& t) -> int {
    if (!t.is_object() || !t.contains("root")) throw Error(ErrorKind::Parse, "tree needs a root");
    const int v = detail::json_int(t.at("root"), "root");
    if (!vs.insert(v).second) throw Error(ErrorKind::MalformedForest, "vertex " + std::to_string(v) + " repeated");
    if (t.contains("children")) {
      if (!t.at("children").is_array()) throw Error(ErrorKind::Parse, "children must be an array");
      for (const auto& c : t.at("children")) kids[v].push_back(tree(c));
    }
    return v;
  };
  if (j.is_array()) {
    for (const auto& t : j) tree(t);
  } else {
    tree(j);
  }
  return Forest::from_children(std::move(vs), kids);
}

/// [{"coeff": "1", "word": "[1,3][2,3]"}]
inline OperatorCombo combo_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::Parse, "combination must be an array");
  OperatorCombo out;
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("word")) throw Error(ErrorKind::Parse, "term needs a word");
    if (!t.at("word").is_string()) throw Error(ErrorKind::Parse, "word must be a string");
    const Rational c = t.contains("coeff") ? detail::json_rational(t.at("coeff")) : Rational(1);
    out.add(OperatorWord::parse(t.at("word").get<std::string>()), c);
  }
  return out;
}

inline Json combo_to_json(const OperatorCombo& c) {
  Json out = Json::array();
  for (const auto& [w, x] : c.terms()) out.push_back({{"coeff", to_string(x)}, {"word", w.to_string()}});
  return out;
}

namespace detail {

/// "2*[1,3][2,3] - 1/2*[1,2] + id"
inline OperatorCombo combo_from_text(std::string_view text) {
  OperatorCombo out;
  std::size_t p = 0;
  auto skip = [&] {
    while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
  };
  skip();
  if (text.substr(p) == "0") return out;
  bool first = true;
  while (true) {
    skip();
    if (p >= text.size()) {
      if (first) throw Error(ErrorKind::Parse, "empty combination");
      break;
    }
    Rational sign = 1;
    if (text[p] == '+' || text[p] == '-') {
      if (text[p] == '-') sign = -1;
      ++p;
      skip();
    } else if (!first) {
      throw Error(ErrorKind::Parse, "expected + or - at offset " + std::to_string(p));
    }
    first = false;
    Rational c = 1;
    if (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) {
      const std::size_t star = text.find('*', p);
      if (star == std::string_view::npos) throw Error(ErrorKind::Parse, "coefficient without '*'");
      c = parse_rational(text.substr(p, star - p));
      p = star + 1;
      skip();
    }
    std::size_t end = p;
    if (text.substr(p, 2) == "id") {
      end = p + 2;
    } else {
      while (end < text.size() && text[end] == '[') {
        const std::size_t close = text.find(']', end);
        if (close == std::string_view::npos) throw Error(ErrorKind::Parse, "unterminated commutator");
        end = close + 1;
      }
    }
    if (end == p) throw Error(ErrorKind::Parse, "expected a word at offset " + std::to_string(p));
    out.add(OperatorWord::parse(text.substr(p, end - p)), sign * c);
    p = end;
  }
  return out;
}

}  // namespace detail

/// JSON list of {"coeff", "word"} terms, or the text form of combo_to_string.
inline OperatorCombo parse_combo(std::string_view text) {
  std::size_t p = 0;
  while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
  std::size_t q = p + 1;
  while (q < text.size() && std::isspace(static_cast<unsigned char>(text[q]))) ++q;
  const bool json = p < text.size() && text[p] == '[' && (q >= text.size() || !std::isdigit(static_cast<unsigned char>(text[q])));
  if (!json) return detail::combo_from_text(text);
  try {
    return combo_from_json(Json::parse(text));
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

/// "c1*[w1] + c2*[w2]" for display.
inline std::string combo_to_string(const OperatorCombo& c) {
  if (c.is_empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [w, x] : c.terms()) {
    const Rational mag = abs(x);
    if (first) {
      if (x < 0) s += '-';
    } else {
      s += x < 0 ? " - " : " + ";
    }
    first = false;
    if (mag != 1) s += to_string(mag) + '*';
    s += w.to_string();
  }
  return s;
}

}  // namespace ctalg
