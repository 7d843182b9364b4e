#include <cctype>
#include <cstdint>
#include <limits>
#include <string>

#include "hamlab/symal/symal.hpp"

namespace hamlab::symal {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail(SymalErrorKind::Syntax, "unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(SymalErrorKind kind, const std::string& msg) const {
    throw SymalError(kind, msg + " at offset " + std::to_string(pos_), pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly acc = term();
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Poly term() {
    Poly acc = unary();
    for (;;) {
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        Poly d = unary();
        if (d.is_zero() || !d.is_parameter_monomial()) {
          pos_ = at;
          fail(SymalErrorKind::InvalidDivisor, "divisor must be a nonzero parameter monomial");
        }
        acc = acc.divided_by_term(d);
      } else {
        return acc;
      }
    }
  }

  Poly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Poly power() {
    Poly base = primary();
    if (!accept('^')) return base;
    skip_ws();
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '('))
      fail(SymalErrorKind::BadExponent, "exponent must be a non-negative integer literal");
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail(SymalErrorKind::BadExponent, "missing exponent");
    const std::int64_t e = integer();
    if (pos_ < text_.size() && text_[pos_] == '.')
      fail(SymalErrorKind::BadExponent, "fractional exponent");
    if (e > 64) fail(SymalErrorKind::BadExponent, "exponent too large");
    return base.pow(static_cast<int>(e));
  }

  std::int64_t integer() {
    std::int64_t v = 0;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const int d = text_[pos_] - '0';
      if (v > (std::numeric_limits<std::int64_t>::max() - d) / 10) {
        pos_ = start;
        fail(SymalErrorKind::Syntax, "integer literal too large");
      }
      v = v * 10 + d;
      ++pos_;
    }
    return v;
  }

  Poly primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail(SymalErrorKind::Syntax, "unexpected end of input");
    const char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      Poly inner = expr();
      if (!accept(')')) fail(SymalErrorKind::Syntax, "expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      const std::int64_t v = integer();
      if (pos_ < text_.size() && text_[pos_] == '.')
        fail(SymalErrorKind::Syntax, "decimal literals are not supported; write a ratio");
      return Poly(Rational(v));
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      const auto sym = symbol_from_name(name);
      if (!sym || role_of(*sym) == SymbolRole::Auxiliary) {
        pos_ = start;
        fail(SymalErrorKind::UnknownSymbol, "unknown symbol '" + std::string(name) + "'");
      }
      return Poly::symbol(*sym);
    }
    fail(SymalErrorKind::Syntax, "unexpected '" + std::string(1, ch) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_expr(std::string_view text) {
  return Parser(text).parse();
}

}  // namespace hamlab::symal
