#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "cluster/arith/rational_function.hpp"

namespace cluster {

using VariableNames = std::vector<std::string>;

/// Names `prefix1 .. prefixN`.
inline VariableNames indexed_names(std::string_view prefix, std::size_t n) {
  VariableNames v;
  v.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) v.push_back(std::string(prefix) + std::to_string(i));
  return v;
}

namespace detail {

inline std::string render_monomial(const Monomial& m, const VariableNames& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += names[i];
    if (m[i] != 1) out += '^' + std::to_string(m[i]);
  }
  return out;
}

inline bool is_single_factor(const Polynomial& p) {
  if (!p.is_monomial()) return false;
  const Term& t = p.leading();
  int factors = t.coef == 1 ? 0 : 1;
  for (std::size_t i = 0; i < p.nvars(); ++i)
    if (t.monomial[i] != 0) ++factors;
  return factors <= 1 && t.coef > 0;
}

}  // namespace detail

/// Canonical text: terms in decreasing grlex order as `coef*var^exp`, joined
/// by ` + ` / ` - `.
inline std::string render(const Polynomial& p, const VariableNames& names) {
  if (names.size() != p.nvars()) throw RingMismatch("variable names do not match ring size");
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    mpz_class c = t.coef;
    if (first) {
      if (c < 0) {
        out += '-';
        c = -c;
      }
    } else {
      out += c < 0 ? " - " : " + ";
      if (c < 0) c = -c;
    }
    first = false;
    std::string mono = detail::render_monomial(t.monomial, names);
    if (mono.empty()) {
      out += c.get_str();
    } else {
      if (c != 1) out += c.get_str() + '*';
      out += mono;
    }
  }
  return out;
}

/// `num` alone for polynomials, otherwise `(num)/(den)` with parentheses
/// dropped around single factors.
inline std::string render(const RationalFunction& f, const VariableNames& names) {
  std::string num = render(f.numerator(), names);
  if (f.is_polynomial()) return num;
  if (f.numerator().size() > 1) num = '(' + num + ')';
  std::string den = render(f.denominator(), names);
  if (!detail::is_single_factor(f.denominator())) den = '(' + den + ')';
  return num + '/' + den;
}

namespace detail {

/// Recursive-descent parser for the function grammar:
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/' | <juxtaposition>) unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' '-'? integer)?
///   primary := integer | name | '(' expr ')'
class FunctionParser {
 public:
  FunctionParser(std::string_view text, const VariableNames& names) : s_(text), names_(names) {}

  RationalFunction parse() {
    RationalFunction r = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  RationalFunction expr() {
    RationalFunction r = term();
    while (true) {
      char c = peek();
      if (c == '+') {
        ++pos_;
        r = r + term();
      } else if (c == '-') {
        ++pos_;
        r = r - term();
      } else {
        return r;
      }
    }
  }

  bool starts_primary(char c) const {
    return c == '(' || std::isalpha(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c));
  }

  RationalFunction term() {
    RationalFunction r = unary();
    while (true) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        r = r * unary();
      } else if (c == '/') {
        ++pos_;
        RationalFunction d = unary();
        if (d.is_zero()) fail("division by zero");
        r = r / d;
      } else if (starts_primary(c)) {
        r = r * power();
      } else {
        return r;
      }
    }
  }

  RationalFunction unary() {
    if (peek() == '-') {
      ++pos_;
      return -unary();
    }
    return power();
  }

  long integer_literal() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    if (pos_ - start > 9) fail("exponent too large");
    return std::stol(std::string(s_.substr(start, pos_ - start)));
  }

  RationalFunction power() {
    RationalFunction base = primary();
    if (peek() == '^') {
      ++pos_;
      bool neg = false;
      if (peek() == '-') {
        ++pos_;
        neg = true;
      }
      long k = integer_literal();
      if (neg && base.is_zero()) fail("negative power of zero");
      return base.pow(neg ? -k : k);
    }
    return base;
  }

  RationalFunction primary() {
    char c = peek();
    const std::size_t n = names_.size();
    if (c == '(') {
      ++pos_;
      RationalFunction r = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return RationalFunction(n, mpz_class(std::string(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string token(s_.substr(start, pos_ - start));
      for (std::size_t i = 0; i < n; ++i)
        if (names_[i] == token) return RationalFunction::variable(n, i);
      pos_ = start;
      fail("unknown variable '" + token + "'");
    }
    fail("expected a number, variable or '('");
  }

  std::string_view s_;
  const VariableNames& names_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses function text over the given variable names.
inline RationalFunction parse_function(std::string_view text, const VariableNames& names) {
  return detail::FunctionParser(text, names).parse();
}

}  // namespace cluster
