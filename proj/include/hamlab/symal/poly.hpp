#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hamlab/symal/rational.hpp"

namespace hamlab::symal {

/// Exponent slots of a monomial. The six phase-space variables come first,
/// then the auxiliary slope `c` used only inside the Kobussen integral, then
/// the physical parameters.
enum class Symbol : std::size_t { X, Y, VX, VY, PX, PY, C, M, OMEGA, F };

inline constexpr std::size_t kSymbolCount = 10;

enum class SymbolRole { Coordinate, Velocity, Momentum, Auxiliary, Parameter };

SymbolRole role_of(Symbol s);
std::string_view name_of(Symbol s);
std::optional<Symbol> symbol_from_name(std::string_view name);

/// True for x, y, vx, vy, px, py, c.
bool is_variable(Symbol s);

enum class SymalErrorKind {
  Syntax,
  UnknownSymbol,
  BadExponent,
  InvalidDivisor,
  NonIntegrableTerm,
  ResidualAuxiliary,
  SingularKinetic,
  NonQuadratic,
  NonConstantHessian,
  SymbolSetViolation,
};

std::string_view to_string(SymalErrorKind k);

class SymalError : public std::runtime_error {
 public:
  SymalError(SymalErrorKind kind, const std::string& what, std::size_t offset = 0)
      : std::runtime_error(what), kind_(kind), offset_(offset) {}

  SymalErrorKind kind() const { return kind_; }
  /// Byte offset into the parsed text (parser errors only).
  std::size_t offset() const { return offset_; }

 private:
  SymalErrorKind kind_;
  std::size_t offset_;
};

/// Signed exponent per symbol slot.
struct Monomial {
  std::array<int, kSymbolCount> exp{};

  int& operator[](Symbol s) { return exp[static_cast<std::size_t>(s)]; }
  int operator[](Symbol s) const { return exp[static_cast<std::size_t>(s)]; }

  /// Total degree over the variable slots (parameters excluded).
  int variable_degree() const;
  bool has_variables() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend Monomial operator*(const Monomial& a, const Monomial& b);
};

/// Graded-lexicographic order, greatest first: variable degree, then variable
/// exponents in slot order, then parameter exponents.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Multivariate polynomial with exact rational coefficients. Zero
/// coefficients are never stored, so structural equality is mathematical
/// equality.
class Poly {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexGreater>;

  Poly() = default;
  Poly(Rational c);  // NOLINT(google-explicit-constructor)
  Poly(std::int64_t c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  static Poly symbol(Symbol s, int power = 1);
  static Poly term(const Rational& c, const Monomial& m);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// True if the polynomial is a single term with no variable symbols.
  bool is_parameter_monomial() const;
  /// True if some term mentions `s` with nonzero exponent.
  bool mentions(Symbol s) const;
  /// True if every exponent of every variable slot is non-negative.
  bool is_true_polynomial() const;

  /// Highest total degree over the given symbols (0 for the zero Poly).
  int degree_in(std::initializer_list<Symbol> syms) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly&, const Poly&) = default;

  Poly pow(int n) const;

  /// Divide by a single nonzero term; exponents may go negative.
  Poly divided_by_term(const Poly& divisor) const;

  /// Partial derivative with respect to s (Laurent exponents allowed).
  Poly derivative(Symbol s) const;

  /// Term-by-term antiderivative in s with zero integration constant.
  /// Throws NonIntegrableTerm for a term with exponent -1 in s.
  Poly antiderivative(Symbol s) const;

  /// Replace s by `value` everywhere. Only non-negative powers of s may be
  /// present.
  Poly substitute(Symbol s, const Poly& value) const;

  /// Keep only the terms whose exponent of s equals `power`, with that power
  /// stripped.
  Poly coefficient_of(Symbol s, int power) const;

  /// Evaluate with doubles. Unset symbols evaluate as zero.
  double evaluate(const std::array<double, kSymbolCount>& values) const;

  /// Canonical text; parse(str()) == *this.
  std::string str() const;

 private:
  void add_term(const Monomial& m, const Rational& c);

  TermMap terms_;
};

}  // namespace hamlab::symal
