#include "azk/weyl.hpp"

#include <algorithm>

#include "azk/error.hpp"
#include "azk/parse.hpp"

namespace azk::weyl {

namespace {

Rational binomial(unsigned n, unsigned k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return Rational(out);
}

Rational factorial(unsigned n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return Rational(out);
}

bool is_single_term(const MultiPoly& p) { return p.term_count() == 1; }

std::optional<std::size_t> parse_index(std::string_view name, std::string_view heads,
                                       std::size_t n) {
  for (char head : heads) {
    if (name.empty() || name[0] != head) continue;
    if (name.size() == 1) {
      if (n == 1) return 0;
      return std::nullopt;
    }
    std::size_t index = 0;
    for (std::size_t i = 1; i < name.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
      index = index * 10 + static_cast<std::size_t>(name[i] - '0');
    }
    if (index == 0 || index > n) return std::nullopt;
    return index - 1;
  }
  return std::nullopt;
}

}  // namespace

std::string position_name(std::size_t n, std::size_t i) {
  return n == 1 ? std::string("x") : "x" + std::to_string(i + 1);
}

std::string momentum_name(std::size_t n, std::size_t i) {
  return n == 1 ? std::string("d") : "d" + std::to_string(i + 1);
}

WeylElement::WeylElement(std::size_t n, LambdaMode mode) : n_(n), mode_(std::move(mode)) {
  if (n_ == 0) throw Error(ErrorCode::InvalidInput, "Weyl algebra needs at least one variable");
}

WeylElement WeylElement::scalar(std::size_t n, LambdaMode mode, const MultiPoly& c) {
  WeylElement out(n, mode);
  out.add_term(Exponents(2 * n, 0), c);
  return out;
}

WeylElement WeylElement::x(std::size_t n, LambdaMode mode, std::size_t i) {
  Exponents a(n, 0);
  a.at(i) = 1;
  return monomial(n, mode, a, Exponents(n, 0), MultiPoly(1));
}

WeylElement WeylElement::d(std::size_t n, LambdaMode mode, std::size_t i) {
  Exponents b(n, 0);
  b.at(i) = 1;
  return monomial(n, mode, Exponents(n, 0), b, MultiPoly(1));
}

WeylElement WeylElement::monomial(std::size_t n, LambdaMode mode, const Exponents& a,
                                  const Exponents& b, const MultiPoly& coeff) {
  if (a.size() != n || b.size() != n) throw Error(ErrorCode::Shape, "exponent tuple length");
  WeylElement out(n, mode);
  Exponents key = a;
  key.insert(key.end(), b.begin(), b.end());
  out.add_term(key, coeff);
  return out;
}

void WeylElement::add_term(const Exponents& key, const MultiPoly& coeff) {
  if (coeff.is_zero()) return;
  if (!mode_.formal) {
    if (!coeff.is_constant()) {
      throw Error(ErrorCode::ModeMismatch,
                  "fixed-lambda element with non-constant coefficient " + coeff.to_string());
    }
  } else {
    for (const auto& v : coeff.variables()) {
      if (v != kLambda) {
        throw Error(ErrorCode::InvalidInput, "Weyl coefficient in unexpected variable " + v);
      }
    }
  }
  auto [it, inserted] = terms_.try_emplace(key, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void WeylElement::check_compatible(const WeylElement& o) const {
  if (n_ != o.n_ || mode_ != o.mode_) {
    throw Error(ErrorCode::ModeMismatch, "Weyl elements differ in variable count or lambda mode");
  }
}

MultiPoly WeylElement::lambda_power(unsigned k) const {
  if (mode_.formal) return MultiPoly::variable(kLambda, k);
  return MultiPoly(azk::pow(mode_.value, k));
}

std::optional<MultiPoly> WeylElement::as_scalar() const {
  if (terms_.empty()) return MultiPoly();
  if (terms_.size() != 1) return std::nullopt;
  const auto& [key, coeff] = *terms_.begin();
  if (std::any_of(key.begin(), key.end(), [](unsigned e) { return e != 0; })) return std::nullopt;
  return coeff;
}

unsigned WeylElement::x_degree(std::size_t i) const {
  unsigned d = 0;
  for (const auto& [key, c] : terms_) d = std::max(d, key[i]);
  return d;
}

unsigned WeylElement::d_degree(std::size_t i) const {
  unsigned d = 0;
  for (const auto& [key, c] : terms_) d = std::max(d, key[n_ + i]);
  return d;
}

int WeylElement::total_degree() const {
  if (terms_.empty()) return -1;
  const auto& key = terms_.begin()->first;
  int sum = 0;
  for (auto e : key) sum += static_cast<int>(e);
  return sum;
}

WeylElement WeylElement::operator-() const {
  WeylElement out = *this;
  for (auto& [key, c] : out.terms_) c = -c;
  return out;
}

WeylElement& WeylElement::operator+=(const WeylElement& o) {
  check_compatible(o);
  for (const auto& [key, c] : o.terms_) add_term(key, c);
  return *this;
}

WeylElement& WeylElement::operator-=(const WeylElement& o) { return *this += -o; }

WeylElement operator*(const WeylElement& a, const WeylElement& b) {
  a.check_compatible(b);
  const std::size_t n = a.n_;
  WeylElement out(n, a.mode_);
  std::vector<unsigned> k(n);
  Exponents key(2 * n);
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      const MultiPoly base = ca * cb;
      // d_i^m x_i^p = sum_k C(m,k) C(p,k) k! lambda^k x_i^(p-k) d_i^(m-k), per
      // variable; distinct variables commute, so iterate over all k-vectors.
      std::vector<unsigned> limit(n);
      for (std::size_t i = 0; i < n; ++i) limit[i] = std::min(ka[n + i], kb[i]);
      std::fill(k.begin(), k.end(), 0u);
      while (true) {
        Rational weight(1);
        unsigned lambda_exp = 0;
        for (std::size_t i = 0; i < n; ++i) {
          weight *= binomial(ka[n + i], k[i]) * binomial(kb[i], k[i]) * factorial(k[i]);
          lambda_exp += k[i];
          key[i] = ka[i] + kb[i] - k[i];
          key[n + i] = ka[n + i] + kb[n + i] - k[i];
        }
        out.add_term(key, base * a.lambda_power(lambda_exp) * weight);
        std::size_t i = 0;
        while (i < n && k[i] == limit[i]) k[i++] = 0;
        if (i == n) break;
        ++k[i];
      }
    }
  }
  return out;
}

WeylElement operator*(const MultiPoly& c, const WeylElement& a) {
  WeylElement out(a.n_, a.mode_);
  for (const auto& [key, coeff] : a.terms_) out.add_term(key, c * coeff);
  return out;
}

std::string WeylElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [key, coeff] : terms_) {
    std::string mono;
    auto append = [&](const std::string& name, unsigned e) {
      if (e == 0) return;
      if (!mono.empty()) mono += '*';
      mono += name;
      if (e > 1) mono += "^" + std::to_string(e);
    };
    for (std::size_t i = 0; i < n_; ++i) append(position_name(n_, i), key[i]);
    for (std::size_t i = 0; i < n_; ++i) append(momentum_name(n_, i), key[n_ + i]);

    std::string term;
    if (mono.empty()) {
      term = is_single_term(coeff) ? coeff.to_string() : "(" + coeff.to_string() + ")";
    } else if (coeff == MultiPoly(1)) {
      term = mono;
    } else if (coeff == MultiPoly(-1)) {
      term = "-" + mono;
    } else if (is_single_term(coeff)) {
      term = coeff.to_string() + "*" + mono;
    } else {
      term = "(" + coeff.to_string() + ")*" + mono;
    }
    if (first) {
      out = term;
      first = false;
    } else if (term[0] == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

WeylElement weyl_mul(const WeylElement& a, const WeylElement& b) { return a * b; }

WeylElement commutator(const WeylElement& a, const WeylElement& b) { return a * b - b * a; }

MultiPoly act_on_polynomial(const WeylElement& op, const MultiPoly& f) {
  if (op.mode().formal) {
    throw Error(ErrorCode::ModeMismatch, "acting on polynomials needs a fixed lambda");
  }
  const std::size_t n = op.n();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(position_name(n, i));
  for (const auto& v : f.variables()) {
    if (std::find(names.begin(), names.end(), v) == names.end()) {
      throw Error(ErrorCode::InvalidInput, "polynomial uses non-position variable " + v);
    }
  }
  const Rational& lambda = op.mode().value;
  MultiPoly result;
  for (const auto& [key, coeff] : op.terms()) {
    MultiPoly g = f;
    for (std::size_t i = 0; i < n && !g.is_zero(); ++i) {
      for (unsigned k = 0; k < key[n + i]; ++k) g = g.derivative(names[i]) * lambda;
    }
    if (g.is_zero()) continue;
    std::vector<std::pair<std::string, unsigned>> factors;
    for (std::size_t i = 0; i < n; ++i) factors.emplace_back(names[i], key[i]);
    result += MultiPoly::monomial(coeff.constant_value(), factors) * g;
  }
  return result;
}

WeylElement fourier(const WeylElement& op) {
  const std::size_t n = op.n();
  const Exponents none(n, 0);
  WeylElement out(n, op.mode());
  for (const auto& [key, coeff] : op.terms()) {
    const Exponents a(key.begin(), key.begin() + static_cast<long>(n));
    const Exponents b(key.begin() + static_cast<long>(n), key.end());
    unsigned b_total = 0;
    for (auto e : b) b_total += e;
    const MultiPoly sign(b_total % 2 == 0 ? 1 : -1);
    // x^a d^b -> d^a (-x)^b, then normal-order.
    out += WeylElement::monomial(n, op.mode(), none, a, coeff) *
           WeylElement::monomial(n, op.mode(), b, none, sign);
  }
  return out;
}

WeylElement specialize_lambda(const WeylElement& op, const Rational& c) {
  const LambdaMode fixed = LambdaMode::fixed(c);
  WeylElement out(op.n(), fixed);
  const std::size_t n = op.n();
  for (const auto& [key, coeff] : op.terms()) {
    const MultiPoly value = op.mode().formal ? coeff.substitute(kLambda, c) : coeff;
    out += WeylElement::monomial(n, fixed, Exponents(key.begin(), key.begin() + static_cast<long>(n)),
                                 Exponents(key.begin() + static_cast<long>(n), key.end()), value);
  }
  return out;
}

std::string CertificateStep::to_string(std::size_t n) const {
  const std::string g = generator_is_momentum ? momentum_name(n, index) : position_name(n, index);
  return side == Side::Left ? "[" + g + ",.]" : "[.," + g + "]";
}

namespace {

WeylElement apply_step(const CertificateStep& step, const WeylElement& op) {
  const WeylElement g = step.generator_is_momentum ? WeylElement::d(op.n(), op.mode(), step.index)
                                                   : WeylElement::x(op.n(), op.mode(), step.index);
  return step.side == CertificateStep::Side::Left ? commutator(g, op) : commutator(op, g);
}

}  // namespace

SimplicityCertificate reduce_to_scalar(const WeylElement& op) {
  if (op.is_zero()) throw Error(ErrorCode::Zero, "cannot reduce the zero element");
  if (!op.mode().formal && op.mode().value == 0) {
    throw Error(ErrorCode::Degenerate, "the lambda = 0 fiber is commutative, not simple");
  }
  SimplicityCertificate cert;
  WeylElement current = op;
  const std::size_t n = op.n();
  while (true) {
    std::optional<CertificateStep> step;
    for (std::size_t i = 0; i < n && !step; ++i) {
      if (current.x_degree(i) > 0) step = CertificateStep{true, i, CertificateStep::Side::Left};
    }
    for (std::size_t i = 0; i < n && !step; ++i) {
      if (current.d_degree(i) > 0) step = CertificateStep{false, i, CertificateStep::Side::Right};
    }
    if (!step) break;
    current = apply_step(*step, current);
    cert.steps.push_back(*step);
  }
  cert.final_scalar = *current.as_scalar();
  return cert;
}

WeylElement replay(const SimplicityCertificate& cert, const WeylElement& op) {
  WeylElement current = op;
  for (const auto& step : cert.steps) current = apply_step(step, current);
  return current;
}

WeylElement parse_weyl(std::string_view text, std::size_t n, LambdaMode mode) {
  ExpressionParser<WeylElement> parser(
      [&](const std::string& name) {
        if (name == kLambda || name == "\xCE\xBB") {
          return WeylElement::scalar(
              n, mode, mode.formal ? MultiPoly::variable(kLambda) : MultiPoly(mode.value));
        }
        if (auto i = parse_index(name, "x", n)) return WeylElement::x(n, mode, *i);
        if (auto i = parse_index(name, "dD", n)) return WeylElement::d(n, mode, *i);
        if (name == "\xE2\x88\x82" && n == 1) return WeylElement::d(n, mode, 0);
        throw Error(ErrorCode::Parse, "unknown Weyl symbol '" + name + "'");
      },
      [](const WeylElement& w, Rational& out) {
        const auto s = w.as_scalar();
        if (!s || !s->is_constant()) return false;
        out = s->constant_term();
        return true;
      },
      [&](const Rational& c) { return WeylElement::scalar(n, mode, MultiPoly(c)); });
  return parser.parse(text);
}

}  // namespace azk::weyl
