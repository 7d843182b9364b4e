#include "hamlab/symal/poly.hpp"

#include <cmath>
#include <cstdlib>
#include <vector>

namespace hamlab::symal {

namespace {

constexpr std::array<std::string_view, kSymbolCount> kNames = {"x",  "y", "vx", "vy",    "px",
                                                               "py", "c", "m",  "omega", "f"};

constexpr std::size_t kFirstParameter = static_cast<std::size_t>(Symbol::M);

}  // namespace

SymbolRole role_of(Symbol s) {
  switch (s) {
    case Symbol::X:
    case Symbol::Y:
      return SymbolRole::Coordinate;
    case Symbol::VX:
    case Symbol::VY:
      return SymbolRole::Velocity;
    case Symbol::PX:
    case Symbol::PY:
      return SymbolRole::Momentum;
    case Symbol::C:
      return SymbolRole::Auxiliary;
    default:
      return SymbolRole::Parameter;
  }
}

std::string_view name_of(Symbol s) {
  return kNames[static_cast<std::size_t>(s)];
}

std::optional<Symbol> symbol_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kSymbolCount; ++i)
    if (kNames[i] == name) return static_cast<Symbol>(i);
  return std::nullopt;
}

bool is_variable(Symbol s) {
  return static_cast<std::size_t>(s) < kFirstParameter;
}

std::string_view to_string(SymalErrorKind k) {
  switch (k) {
    case SymalErrorKind::Syntax: return "SyntaxError";
    case SymalErrorKind::UnknownSymbol: return "UnknownSymbol";
    case SymalErrorKind::BadExponent: return "BadExponent";
    case SymalErrorKind::InvalidDivisor: return "InvalidDivisor";
    case SymalErrorKind::NonIntegrableTerm: return "NonIntegrableTerm";
    case SymalErrorKind::ResidualAuxiliary: return "ResidualAuxiliary";
    case SymalErrorKind::SingularKinetic: return "SingularKinetic";
    case SymalErrorKind::NonQuadratic: return "NonQuadratic";
    case SymalErrorKind::NonConstantHessian: return "NonConstantHessian";
    case SymalErrorKind::SymbolSetViolation: return "SymbolSetViolation";
  }
  return "?";
}

int Monomial::variable_degree() const {
  int d = 0;
  for (std::size_t i = 0; i < kFirstParameter; ++i) d += exp[i];
  return d;
}

bool Monomial::has_variables() const {
  for (std::size_t i = 0; i < kFirstParameter; ++i)
    if (exp[i] != 0) return true;
  return false;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kSymbolCount; ++i) r.exp[i] = a.exp[i] + b.exp[i];
  return r;
}

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const {
  const int da = a.variable_degree();
  const int db = b.variable_degree();
  if (da != db) return da > db;
  for (std::size_t i = 0; i < kSymbolCount; ++i)
    if (a.exp[i] != b.exp[i]) return a.exp[i] > b.exp[i];
  return false;
}

Poly::Poly(Rational c) {
  if (!c.is_zero()) terms_.emplace(Monomial{}, c);
}

Poly Poly::symbol(Symbol s, int power) {
  Monomial m;
  m[s] = power;
  return term(Rational(1), m);
}

Poly Poly::term(const Rational& c, const Monomial& m) {
  Poly p;
  p.add_term(m, c);
  return p;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

bool Poly::is_parameter_monomial() const {
  return terms_.size() == 1 && !terms_.begin()->first.has_variables();
}

bool Poly::mentions(Symbol s) const {
  for (const auto& [m, c] : terms_)
    if (m[s] != 0) return true;
  return false;
}

bool Poly::is_true_polynomial() const {
  for (const auto& [m, c] : terms_)
    for (std::size_t i = 0; i < kFirstParameter; ++i)
      if (m.exp[i] < 0) return false;
  return true;
}

int Poly::degree_in(std::initializer_list<Symbol> syms) const {
  int best = 0;
  for (const auto& [m, c] : terms_) {
    int d = 0;
    for (Symbol s : syms) d += m[s];
    best = std::max(best, d);
  }
  return best;
}

Poly Poly::operator-() const {
  Poly r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly Poly::pow(int n) const {
  if (n < 0) throw SymalError(SymalErrorKind::BadExponent, "negative power of a polynomial");
  Poly result(1);
  Poly base = *this;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

Poly Poly::divided_by_term(const Poly& divisor) const {
  if (divisor.size() != 1) throw SymalError(SymalErrorKind::InvalidDivisor, "divisor is not a single term");
  const auto& [dm, dc] = *divisor.terms_.begin();
  Monomial inv;
  for (std::size_t i = 0; i < kSymbolCount; ++i) inv.exp[i] = -dm.exp[i];
  Poly r;
  for (const auto& [m, c] : terms_) r.add_term(m * inv, c / dc);
  return r;
}

Poly Poly::derivative(Symbol s) const {
  Poly r;
  for (const auto& [m, c] : terms_) {
    const int e = m[s];
    if (e == 0) continue;
    Monomial dm = m;
    dm[s] = e - 1;
    r.add_term(dm, c * Rational(e));
  }
  return r;
}

Poly Poly::antiderivative(Symbol s) const {
  Poly r;
  for (const auto& [m, c] : terms_) {
    const int e = m[s];
    if (e == -1)
      throw SymalError(SymalErrorKind::NonIntegrableTerm,
                       "term " + Poly::term(c, m).str() + " integrates to a logarithm in " +
                           std::string(name_of(s)));
    Monomial im = m;
    im[s] = e + 1;
    r.add_term(im, c / Rational(e + 1));
  }
  return r;
}

Poly Poly::substitute(Symbol s, const Poly& value) const {
  Poly r;
  std::vector<Poly> powers{Poly(1)};
  for (const auto& [m, c] : terms_) {
    const int e = m[s];
    if (e < 0)
      throw SymalError(SymalErrorKind::ResidualAuxiliary,
                       "cannot substitute into a negative power of " + std::string(name_of(s)));
    while (static_cast<int>(powers.size()) <= e) powers.push_back(powers.back() * value);
    Monomial rest = m;
    rest[s] = 0;
    r += Poly::term(c, rest) * powers[static_cast<std::size_t>(e)];
  }
  return r;
}

Poly Poly::coefficient_of(Symbol s, int power) const {
  Poly r;
  for (const auto& [m, c] : terms_) {
    if (m[s] != power) continue;
    Monomial rest = m;
    rest[s] = 0;
    r.add_term(rest, c);
  }
  return r;
}

double Poly::evaluate(const std::array<double, kSymbolCount>& values) const {
  double sum = 0.0;
  for (const auto& [m, c] : terms_) {
    double t = c.to_double();
    for (std::size_t i = 0; i < kSymbolCount; ++i)
      if (m.exp[i] != 0) t *= std::pow(values[i], m.exp[i]);
    sum += t;
  }
  return sum;
}

namespace {

std::string factor_text(std::size_t slot, int e) {
  std::string s(kNames[slot]);
  if (e != 1) s += "^" + std::to_string(e);
  return s;
}

// Parameters first, then variables, matching how constants of motion are
// usually written (m*omega^2*x*y).
constexpr std::array<std::size_t, kSymbolCount> kPrintOrder = {7, 8, 9, 0, 1, 2, 3, 4, 5, 6};

std::string term_text(const Monomial& m, const Rational& abs_coeff) {
  std::vector<std::string> num;
  std::vector<std::string> den;
  for (std::size_t slot : kPrintOrder) {
    const int e = m.exp[slot];
    if (e > 0) num.push_back(factor_text(slot, e));
    if (e < 0) den.push_back(factor_text(slot, -e));
  }
  std::string out;
  if (!abs_coeff.is_one() || num.empty()) out = abs_coeff.str();
  for (const auto& f : num) {
    if (!out.empty()) out += "*";
    out += f;
  }
  for (const auto& f : den) out += "/" + f;
  return out;
}

}  // namespace

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool neg = c < Rational(0);
    const Rational mag = neg ? -c : c;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    out += term_text(m, mag);
    first = false;
  }
  return out;
}

}  // namespace hamlab::symal
