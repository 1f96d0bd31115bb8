#include "azk/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <tuple>

#include "azk/error.hpp"

namespace azk {

namespace {

std::tuple<int, long, std::string> variable_rank(std::string_view name) {
  auto indexed = [&](char head) -> std::optional<long> {
    if (name.empty() || name[0] != head) return std::nullopt;
    if (name.size() == 1) return 0;
    long index = 0;
    for (std::size_t i = 1; i < name.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
      index = index * 10 + (name[i] - '0');
    }
    return index;
  };
  if (auto i = indexed('x')) return {0, *i, ""};
  if (auto i = indexed('w')) return {1, *i, ""};
  if (name == "z") return {2, 0, ""};
  if (name == "v") return {3, 0, ""};
  if (name == "lambda") return {4, 0, ""};
  return {5, 0, std::string(name)};
}

unsigned exponent_sum(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), 0u);
}

std::vector<Rational> dense(const MultiPoly& p, const std::string& var) {
  for (const auto& name : p.variables()) {
    if (name != var) {
      throw Error(ErrorCode::InvalidInput,
                  "expected a polynomial in " + var + " only, got " + p.to_string());
    }
  }
  std::vector<Rational> out;
  if (p.is_zero()) return out;
  out.assign(p.degree(var) + 1, Rational(0));
  for (const auto& [e, c] : p.terms()) out[e.empty() ? 0 : e[0]] = c;
  return out;
}

MultiPoly from_dense(const std::vector<Rational>& coeffs, const std::string& var) {
  MultiPoly result;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] != 0) {
      result += MultiPoly::monomial(coeffs[k], {{var, static_cast<unsigned>(k)}});
    }
  }
  return result;
}

void trim(std::vector<Rational>& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

}  // namespace

bool GrlexGreater::operator()(const Exponents& a, const Exponents& b) const {
  const unsigned da = exponent_sum(a);
  const unsigned db = exponent_sum(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

bool variable_precedes(std::string_view a, std::string_view b) {
  return variable_rank(a) < variable_rank(b);
}

MultiPoly::MultiPoly(const Rational& constant) {
  if (constant != 0) terms_.emplace(Exponents{}, constant);
}

MultiPoly::MultiPoly(std::vector<std::string> vars, TermMap terms)
    : vars_(std::move(vars)), terms_(std::move(terms)) {
  normalize();
}

MultiPoly MultiPoly::variable(const std::string& name, unsigned power) {
  return monomial(Rational(1), {{name, power}});
}

MultiPoly MultiPoly::monomial(const Rational& coefficient,
                              const std::vector<std::pair<std::string, unsigned>>& factors) {
  std::vector<std::string> vars;
  for (const auto& [name, power] : factors) {
    if (std::find(vars.begin(), vars.end(), name) == vars.end()) vars.push_back(name);
  }
  std::sort(vars.begin(), vars.end(), variable_precedes);
  Exponents e(vars.size(), 0);
  for (const auto& [name, power] : factors) {
    const auto pos = std::find(vars.begin(), vars.end(), name) - vars.begin();
    e[pos] += power;
  }
  TermMap terms;
  if (coefficient != 0) terms.emplace(std::move(e), coefficient);
  return MultiPoly(std::move(vars), std::move(terms));
}

void MultiPoly::normalize() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == 0) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  std::vector<bool> used(vars_.size(), false);
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < e.size(); ++i) used[i] = used[i] || e[i] != 0;
  }
  if (std::all_of(used.begin(), used.end(), [](bool u) { return u; })) return;
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (used[i]) vars.push_back(vars_[i]);
  }
  TermMap terms;
  for (const auto& [e, c] : terms_) {
    Exponents reduced;
    reduced.reserve(vars.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (used[i]) reduced.push_back(e[i]);
    }
    terms.emplace(std::move(reduced), c);
  }
  vars_ = std::move(vars);
  terms_ = std::move(terms);
}

std::vector<std::string> MultiPoly::merge_vars(const std::vector<std::string>& a,
                                               const std::vector<std::string>& b) {
  std::vector<std::string> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out),
                 [](const std::string& x, const std::string& y) { return variable_precedes(x, y); });
  return out;
}

MultiPoly::TermMap MultiPoly::terms_over(const std::vector<std::string>& vars) const {
  if (vars == vars_) return terms_;
  std::vector<std::size_t> position(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    position[i] = std::find(vars.begin(), vars.end(), vars_[i]) - vars.begin();
  }
  TermMap out;
  for (const auto& [e, c] : terms_) {
    Exponents wide(vars.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) wide[position[i]] = e[i];
    out.emplace(std::move(wide), c);
  }
  return out;
}

Rational MultiPoly::constant_term() const {
  if (terms_.empty()) return Rational(0);
  const auto& [e, c] = *terms_.rbegin();
  return exponent_sum(e) == 0 ? c : Rational(0);
}

Rational MultiPoly::constant_value() const {
  if (!is_constant()) {
    throw Error(ErrorCode::InvalidInput, "expected a constant, got " + to_string());
  }
  return constant_term();
}

bool MultiPoly::depends_on(std::string_view var) const {
  return std::find(vars_.begin(), vars_.end(), var) != vars_.end();
}

unsigned MultiPoly::degree(std::string_view var) const {
  const auto it = std::find(vars_.begin(), vars_.end(), var);
  if (it == vars_.end()) return 0;
  const auto i = static_cast<std::size_t>(it - vars_.begin());
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
  return d;
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(exponent_sum(terms_.begin()->first));
}

std::pair<Exponents, Rational> MultiPoly::leading_term() const {
  if (terms_.empty()) throw Error(ErrorCode::Zero, "leading term of the zero polynomial");
  return *terms_.begin();
}

MultiPoly MultiPoly::coefficient(std::string_view var, unsigned k) const {
  const auto it = std::find(vars_.begin(), vars_.end(), var);
  if (it == vars_.end()) return k == 0 ? *this : MultiPoly();
  const auto i = static_cast<std::size_t>(it - vars_.begin());
  TermMap out;
  for (const auto& [e, c] : terms_) {
    if (e[i] != k) continue;
    Exponents reduced = e;
    reduced[i] = 0;
    out.emplace(std::move(reduced), c);
  }
  return MultiPoly(vars_, std::move(out));
}

std::vector<MultiPoly> MultiPoly::coefficients(std::string_view var) const {
  if (is_zero()) return {};
  std::vector<MultiPoly> out(degree(var) + 1);
  for (unsigned k = 0; k < out.size(); ++k) out[k] = coefficient(var, k);
  return out;
}

MultiPoly MultiPoly::from_coefficients(const std::vector<MultiPoly>& coeffs,
                                       const std::string& var) {
  MultiPoly result;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (!coeffs[k].is_zero()) result += coeffs[k] * variable(var, static_cast<unsigned>(k));
  }
  return result;
}

MultiPoly MultiPoly::derivative(std::string_view var) const {
  const auto it = std::find(vars_.begin(), vars_.end(), var);
  if (it == vars_.end()) return MultiPoly();
  const auto i = static_cast<std::size_t>(it - vars_.begin());
  TermMap out;
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponents lowered = e;
    lowered[i] -= 1;
    out[lowered] += c * e[i];
  }
  return MultiPoly(vars_, std::move(out));
}

MultiPoly MultiPoly::substitute(std::string_view var, const MultiPoly& value) const {
  const auto it = std::find(vars_.begin(), vars_.end(), var);
  if (it == vars_.end()) return *this;
  const auto i = static_cast<std::size_t>(it - vars_.begin());
  std::vector<MultiPoly> powers{MultiPoly(1)};
  MultiPoly result;
  for (const auto& [e, c] : terms_) {
    while (powers.size() <= e[i]) powers.push_back(powers.back() * value);
    Exponents rest = e;
    rest[i] = 0;
    TermMap single;
    single.emplace(std::move(rest), c);
    result += MultiPoly(vars_, std::move(single)) * powers[e[i]];
  }
  return result;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  if (other.is_zero()) return *this;
  if (vars_ != other.vars_) {
    auto vars = merge_vars(vars_, other.vars_);
    terms_ = terms_over(vars);
    vars_ = std::move(vars);
  }
  for (const auto& [e, c] : other.terms_over(vars_)) terms_[e] += c;
  normalize();
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) { return *this += -other; }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() || b.is_zero()) return MultiPoly();
  auto vars = MultiPoly::merge_vars(a.vars_, b.vars_);
  const auto ta = a.terms_over(vars);
  const auto tb = b.terms_over(vars);
  MultiPoly::TermMap out;
  Exponents e(vars.size());
  for (const auto& [ea, ca] : ta) {
    for (const auto& [eb, cb] : tb) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out[e] += ca * cb;
    }
  }
  return MultiPoly(std::move(vars), std::move(out));
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& other) { return *this = *this * other; }

MultiPoly& MultiPoly::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    vars_.clear();
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= scalar;
  return *this;
}

MultiPoly MultiPoly::pow(unsigned exponent) const {
  MultiPoly result(1);
  MultiPoly base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1u;
    if (exponent > 0) base *= base;
  }
  return result;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += vars_[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    const bool negative = c < 0;
    const Rational magnitude = negative ? Rational(-c) : c;
    std::string body;
    if (mono.empty()) {
      body = azk::to_string(magnitude);
    } else if (magnitude == 1) {
      body = mono;
    } else {
      body = azk::to_string(magnitude) + "*" + mono;
    }
    if (first) {
      out = negative ? "-" + body : body;
      first = false;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

std::optional<MultiPoly> try_divide(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::Zero, "division by the zero polynomial");
  if (a.is_zero()) return MultiPoly();
  if (b.is_constant()) return a * Rational(1 / b.constant_value());
  const auto [lead_exp, lead_coeff] = b.leading_term();
  const auto& bvars = b.variables();
  MultiPoly quotient;
  MultiPoly rest = a;
  while (!rest.is_zero()) {
    const auto [re, rc] = rest.leading_term();
    const auto& rvars = rest.variables();
    // Every variable of lt(b) must appear in lt(rest) with at least the same power.
    std::vector<std::pair<std::string, unsigned>> factors;
    for (std::size_t i = 0; i < rvars.size(); ++i) {
      if (re[i] > 0) factors.emplace_back(rvars[i], re[i]);
    }
    for (std::size_t j = 0; j < bvars.size(); ++j) {
      if (lead_exp[j] == 0) continue;
      auto it = std::find_if(factors.begin(), factors.end(),
                             [&](const auto& f) { return f.first == bvars[j]; });
      if (it == factors.end() || it->second < lead_exp[j]) return std::nullopt;
      it->second -= lead_exp[j];
    }
    const MultiPoly step = MultiPoly::monomial(rc / lead_coeff, factors);
    quotient += step;
    rest -= step * b;
  }
  return quotient;
}

MultiPoly divide_exact(const MultiPoly& a, const MultiPoly& b) {
  auto q = try_divide(a, b);
  if (!q) {
    throw Error(ErrorCode::InvalidInput,
                "(" + b.to_string() + ") does not divide (" + a.to_string() + ")");
  }
  return *q;
}

MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, const std::string& var) {
  if (b.is_zero()) throw Error(ErrorCode::Zero, "pseudo-division by zero");
  const unsigned db = b.degree(var);
  const MultiPoly lead_b = b.coefficient(var, db);
  MultiPoly r = a;
  while (!r.is_zero() && r.degree(var) >= db) {
    const unsigned dr = r.degree(var);
    const MultiPoly lead_r = r.coefficient(var, dr);
    r = lead_b * r - lead_r * MultiPoly::variable(var, dr - db) * b;
  }
  return r;
}

UniDivision univariate_divmod(const MultiPoly& a, const MultiPoly& b, const std::string& var) {
  auto num = dense(a, var);
  const auto den = dense(b, var);
  if (den.empty()) throw Error(ErrorCode::Zero, "univariate division by zero");
  if (num.size() < den.size()) return {MultiPoly(), a};
  std::vector<Rational> quot(num.size() - den.size() + 1, Rational(0));
  const Rational& lead = den.back();
  for (std::size_t k = quot.size(); k-- > 0;) {
    const Rational factor = num[k + den.size() - 1] / lead;
    quot[k] = factor;
    if (factor == 0) continue;
    for (std::size_t j = 0; j < den.size(); ++j) num[k + j] -= factor * den[j];
  }
  trim(num);
  return {from_dense(quot, var), from_dense(num, var)};
}

MultiPoly univariate_gcd(const MultiPoly& a, const MultiPoly& b, const std::string& var) {
  MultiPoly x = a;
  MultiPoly y = b;
  while (!y.is_zero()) {
    MultiPoly r = univariate_divmod(x, y, var).remainder;
    x = std::move(y);
    y = std::move(r);
  }
  return make_monic(x);
}

MultiPoly make_monic(const MultiPoly& p) {
  if (p.is_zero()) return p;
  return p * Rational(1 / p.leading_term().second);
}

}  // namespace azk
