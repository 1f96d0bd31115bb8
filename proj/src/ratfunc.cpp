#include "azk/ratfunc.hpp"

#include "azk/error.hpp"

namespace azk {

RatFunc::RatFunc(const MultiPoly& numerator, const std::string& var)
    : num_(numerator), den_(1), var_(var) {
  reduce();
}

RatFunc::RatFunc(const MultiPoly& numerator, const MultiPoly& denominator, const std::string& var)
    : num_(numerator), den_(denominator), var_(var) {
  if (den_.is_zero()) throw Error(ErrorCode::Zero, "rational function with zero denominator");
  reduce();
}

void RatFunc::reduce() {
  // Adopt the variable of whichever side actually carries one.
  for (const MultiPoly* p : {&num_, &den_}) {
    if (!p->variables().empty()) {
      if (p->variables().size() > 1) {
        throw Error(ErrorCode::InvalidInput,
                    "rational functions are univariate, got " + p->to_string());
      }
      var_ = p->variables().front();
    }
  }
  if (num_.is_zero()) {
    den_ = MultiPoly(1);
    return;
  }
  if (!den_.is_constant()) {
    const MultiPoly g = univariate_gcd(num_, den_, var_);
    if (!g.is_constant()) {
      num_ = univariate_divmod(num_, g, var_).quotient;
      den_ = univariate_divmod(den_, g, var_).quotient;
    }
  }
  const Rational lead = den_.leading_term().second;
  if (lead != 1) {
    num_ *= Rational(1 / lead);
    den_ *= Rational(1 / lead);
  }
}

std::string RatFunc::common_var(const RatFunc& a, const RatFunc& b) {
  const bool a_const = a.num_.is_constant() && a.den_.is_constant();
  const bool b_const = b.num_.is_constant() && b.den_.is_constant();
  if (!a_const && !b_const && a.var_ != b.var_) {
    throw Error(ErrorCode::InvalidInput,
                "rational functions in different variables: " + a.var_ + ", " + b.var_);
  }
  return a_const ? b.var_ : a.var_;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  const std::string var = RatFunc::common_var(a, b);
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_, var);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_, var);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  const std::string var = RatFunc::common_var(a, b);
  if (a.is_zero() || b.is_zero()) return RatFunc(MultiPoly(), var);
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_, var);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw Error(ErrorCode::Zero, "division by the zero rational function");
  const std::string var = RatFunc::common_var(a, b);
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_, var);
}

std::string RatFunc::to_string() const {
  if (is_polynomial()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace azk
