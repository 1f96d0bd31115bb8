#pragma once

#include <string>

#include "azk/poly.hpp"

namespace azk {

/// Univariate rational function over the rationals, kept reduced with a
/// monic denominator. The variable name is carried so results convert back
/// to MultiPoly; constants are compatible with any variable.
class RatFunc {
 public:
  RatFunc() : RatFunc(MultiPoly()) {}
  RatFunc(const Rational& c) : RatFunc(MultiPoly(c)) {}  // NOLINT(implicit)
  RatFunc(int c) : RatFunc(MultiPoly(c)) {}  // NOLINT(implicit)
  explicit RatFunc(const MultiPoly& numerator, const std::string& var = "z");
  RatFunc(const MultiPoly& numerator, const MultiPoly& denominator, const std::string& var = "z");

  const MultiPoly& numerator() const { return num_; }
  const MultiPoly& denominator() const { return den_; }
  const std::string& var() const { return var_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_ == MultiPoly(1); }

  RatFunc operator-() const { return RatFunc(-num_, den_, var_); }
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  std::string to_string() const;

 private:
  static std::string common_var(const RatFunc& a, const RatFunc& b);
  void reduce();

  MultiPoly num_;
  MultiPoly den_{1};
  std::string var_;
};

inline bool is_zero(const RatFunc& x) { return x.is_zero(); }
inline bool is_zero(const Rational& x) { return x == 0; }

}  // namespace azk
