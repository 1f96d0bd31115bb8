#pragma once

#include <cctype>
#include <functional>
#include <string>
#include <string_view>

#include "azk/error.hpp"
#include "azk/poly.hpp"

namespace azk {

/// Recursive-descent parser for ring expressions:
///
///   expr   := term (('+' | '-') term)*
///   term   := unary (('*' | '/') unary)*
///   unary  := ('-' | '+') unary | power
///   power  := atom ('^' integer)?
///   atom   := integer | identifier | '(' expr ')'
///
/// Division is only allowed by a nonzero rational constant. The ring type R
/// supplies +, -, * and construction from Rational; identifiers are resolved
/// by the caller, and `as_constant` reports whether a value is a scalar.
template <typename R>
class ExpressionParser {
 public:
  using Resolver = std::function<R(const std::string&)>;
  using ConstantProbe = std::function<bool(const R&, Rational&)>;
  using FromRational = std::function<R(const Rational&)>;

  ExpressionParser(Resolver resolve, ConstantProbe as_constant, FromRational from_rational)
      : resolve_(std::move(resolve)),
        as_constant_(std::move(as_constant)),
        from_rational_(std::move(from_rational)) {}

  R parse(std::string_view text) {
    text_ = text;
    pos_ = 0;
    R value = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::Parse,
                what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  R expr() {
    R value = term();
    while (true) {
      if (accept('+')) {
        value = value + term();
      } else if (accept('-')) {
        value = value - term();
      } else {
        return value;
      }
    }
  }

  R term() {
    R value = unary();
    while (true) {
      if (accept('*')) {
        value = value * unary();
      } else if (accept('/')) {
        const R divisor = unary();
        Rational c;
        if (!as_constant_(divisor, c) || c == 0) fail("division by a non-constant or zero");
        value = value * from_rational_(Rational(1 / c));
      } else {
        return value;
      }
    }
  }

  R unary() {
    if (accept('-')) return from_rational_(Rational(-1)) * unary();
    if (accept('+')) return unary();
    return power();
  }

  R power() {
    R base = atom();
    if (!accept('^')) return base;
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a nonnegative integer exponent");
    const unsigned long exponent = std::stoul(std::string(text_.substr(start, pos_ - start)));
    if (exponent > 1000) fail("exponent too large");
    R result = from_rational_(Rational(1));
    for (unsigned long i = 0; i < exponent; ++i) result = result * base;
    return result;
  }

  R atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      R inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return from_rational_(Rational(Integer(std::string(text_.substr(start, pos_ - start)), 10)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
        static_cast<unsigned char>(c) >= 0x80) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
              static_cast<unsigned char>(text_[pos_]) >= 0x80)) {
        ++pos_;
      }
      return resolve_(std::string(text_.substr(start, pos_ - start)));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Resolver resolve_;
  ConstantProbe as_constant_;
  FromRational from_rational_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

/// Parses canonical (or any well-formed) polynomial text. "λ" is read as
/// lambda.
MultiPoly parse_poly(std::string_view text);

}  // namespace azk
