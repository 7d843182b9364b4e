#include <doctest.h>

#include <random>
#include <thread>
#include <vector>

#include "hamlab/symal/symal.hpp"

using namespace hamlab::symal;

namespace {

Poly P(const char* s) {
  return parse_expr(s);
}

SymalErrorKind kind_of(const auto& fn) {
  try {
    fn();
  } catch (const SymalError& e) {
    return e.kind();
  }
  FAIL("expected SymalError");
  return SymalErrorKind::Syntax;
}

const SystemKind kSystems[] = {SystemKind::Oscillator, SystemKind::Bouncer};
const Variant kVariants[] = {Variant::Standard, Variant::Cross};

}  // namespace

TEST_CASE("rational arithmetic stays reduced") {
  Rational a(6, -4);
  CHECK(a.num() == -3);
  CHECK(a.den() == 2);
  CHECK((a + Rational(3, 2)).is_zero());
  CHECK((Rational(1, 3) * Rational(3)).is_one());
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("parse_expr builds the oscillator cross constant") {
  const Poly k2 = P("m*vx*vy + m*omega^2*x*y");
  Monomial a;
  a[Symbol::M] = 1;
  a[Symbol::VX] = 1;
  a[Symbol::VY] = 1;
  Monomial b;
  b[Symbol::M] = 1;
  b[Symbol::OMEGA] = 2;
  b[Symbol::X] = 1;
  b[Symbol::Y] = 1;
  CHECK(k2 == Poly::term(1, a) + Poly::term(1, b));
  CHECK(k2 == builtin_constant(SystemKind::Oscillator, Variant::Cross));
}

TEST_CASE("parse_expr edge cases") {
  CHECK(P("0").is_zero());
  CHECK(P("0").terms().empty());
  CHECK(P("(x+y)^2") == P("x^2 + 2*x*y + y^2"));
  CHECK(P("x - x").is_zero());
  CHECK(P("-(x)") == -P("x"));
  CHECK(P("1/2*m") == P("m/2"));
  CHECK(P("px*py/m").str() == "px*py/m");
  CHECK(P("x^0") == Poly(1));
}

TEST_CASE("parse errors carry kind and offset") {
  try {
    parse_expr("x + * y");
    FAIL("no throw");
  } catch (const SymalError& e) {
    CHECK(e.kind() == SymalErrorKind::Syntax);
    CHECK(e.offset() == 4);
  }
  try {
    parse_expr("x + zeta");
    FAIL("no throw");
  } catch (const SymalError& e) {
    CHECK(e.kind() == SymalErrorKind::UnknownSymbol);
    CHECK(e.offset() == 4);
  }
  CHECK(kind_of([] { parse_expr("x^-1"); }) == SymalErrorKind::BadExponent);
  CHECK(kind_of([] { parse_expr("x^1.5"); }) == SymalErrorKind::BadExponent);
  CHECK(kind_of([] { parse_expr("x^(2)"); }) == SymalErrorKind::BadExponent);
  CHECK(kind_of([] { parse_expr("x/y"); }) == SymalErrorKind::InvalidDivisor);
  CHECK(kind_of([] { parse_expr("x/0"); }) == SymalErrorKind::InvalidDivisor);
  CHECK(kind_of([] { parse_expr("(x + y"); }) == SymalErrorKind::Syntax);
  CHECK(kind_of([] { parse_expr("c*x"); }) == SymalErrorKind::UnknownSymbol);
  CHECK(kind_of([] { parse_expr("1.5*x"); }) == SymalErrorKind::Syntax);
  CHECK(kind_of([] { parse_expr(""); }) == SymalErrorKind::Syntax);
}

TEST_CASE("canonical printing is graded-lexicographic") {
  CHECK(P("m*vx*vy + m*omega^2*x*y").str() == "m*omega^2*x*y + m*vx*vy");
  CHECK(P("y + x^2 - 3").str() == "x^2 + y - 3");
  CHECK(P("-x/2").str() == "-1/2*x");
  CHECK(P("(px^2+py^2)/(2*m)").str() == "1/2*px^2/m + 1/2*py^2/m");
}

TEST_CASE("print/parse round trip on random polynomials") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-9, 9);
  std::uniform_int_distribution<int> den(1, 6);
  std::uniform_int_distribution<int> ex(0, 3);
  std::uniform_int_distribution<int> pex(-2, 2);
  for (int trial = 0; trial < 200; ++trial) {
    Poly p;
    const int nterms = 1 + trial % 6;
    for (int t = 0; t < nterms; ++t) {
      Monomial m;
      for (Symbol s : {Symbol::X, Symbol::Y, Symbol::VX, Symbol::VY, Symbol::PX, Symbol::PY}) m[s] = ex(rng);
      for (Symbol s : {Symbol::M, Symbol::OMEGA, Symbol::F}) m[s] = pex(rng);
      p += Poly::term(Rational(coef(rng), den(rng)), m);
    }
    const std::string text = p.str();
    CAPTURE(text);
    CHECK(parse_expr(text) == p);
    CHECK(parse_expr(text).str() == text);
  }
}

TEST_CASE("kobussen_lagrangian reproduces the known Lagrangians") {
  CHECK(kobussen_lagrangian(P("m*vx*vy + m*omega^2*x*y")) == P("m*vx*vy - m*omega^2*x*y"));
  CHECK(kobussen_lagrangian(P("m*vx*vy + f*(x+y)")) == P("m*vx*vy - f*(x+y)"));
  // Velocity-quadratic terms are preserved, velocity-free terms flip sign.
  CHECK(kobussen_lagrangian(builtin_constant(SystemKind::Oscillator, Variant::Standard)) ==
        P("m/2*(vx^2+vy^2) - m/2*omega^2*(x^2+y^2)"));
  CHECK(kobussen_lagrangian(P("vx^4")) == P("1/3*vx^4"));
  CHECK(kobussen_lagrangian(Poly()).is_zero());
}

TEST_CASE("kobussen_lagrangian error paths") {
  CHECK(kind_of([] { kobussen_lagrangian(P("m*vx + x")); }) == SymalErrorKind::NonIntegrableTerm);
  CHECK(kind_of([] { kobussen_lagrangian(P("vy")); }) == SymalErrorKind::NonIntegrableTerm);
  CHECK(kind_of([] { kobussen_lagrangian(P("px*x")); }) == SymalErrorKind::SymbolSetViolation);
}

TEST_CASE("legendre_transform reproduces the known Hamiltonians") {
  CHECK(legendre_transform(P("m*vx*vy - m*omega^2*x*y")) == P("px*py/m + m*omega^2*x*y"));
  CHECK(legendre_transform(P("m*vx*vy - f*(x+y)")) == P("px*py/m + f*(x+y)"));
  CHECK(legendre_transform(P("m/2*(vx^2+vy^2) - m/2*omega^2*(x^2+y^2)")) ==
        P("(px^2+py^2)/(2*m) + m/2*omega^2*(x^2+y^2)"));
  // Gauge-like linear velocity term (charged particle in a uniform field).
  CHECK(legendre_transform(P("m/2*vx^2 + m/2*vy^2 + f*x*vy")) == P("1/2*px^2/m + 1/2*(py - f*x)^2/m"));
}

TEST_CASE("legendre_transform error paths") {
  CHECK(kind_of([] { legendre_transform(P("m*vx^2")); }) == SymalErrorKind::SingularKinetic);
  CHECK(kind_of([] { legendre_transform(P("m*vx^3 + m*vy^2")); }) == SymalErrorKind::NonQuadratic);
  CHECK(kind_of([] { legendre_transform(P("x*vx^2 + m*vy^2")); }) == SymalErrorKind::NonConstantHessian);
  CHECK(kind_of([] { legendre_transform(P("px")); }) == SymalErrorKind::SymbolSetViolation);
}

TEST_CASE("hamilton_eom examples") {
  const EomSet osc = hamilton_eom(reference_hamiltonian(SystemKind::Oscillator, Variant::Cross));
  CHECK(osc.accel_x == P("-omega^2*x"));
  CHECK(osc.accel_y == P("-omega^2*y"));
  const EomSet bou = hamilton_eom(reference_hamiltonian(SystemKind::Bouncer, Variant::Standard));
  CHECK(bou.accel_x == P("-f/m"));
  CHECK(bou.accel_y == P("-f/m"));
  const EomSet free = hamilton_eom(P("(px^2+py^2)/(2*m)"));
  CHECK(free.accel_x.is_zero());
  CHECK(free.accel_y.is_zero());
  // Lorentz-like force from a velocity-dependent Lagrangian survives the round trip.
  const EomSet mag = hamilton_eom(P("1/2*px^2/m + 1/2*(py - f*x)^2/m"));
  CHECK(mag.accel_x == P("f*vy/m"));
  CHECK(mag.accel_y == P("-f*vx/m"));
  CHECK(kind_of([] { hamilton_eom(P("px^2")); }) == SymalErrorKind::SingularKinetic);
  CHECK(kind_of([] { hamilton_eom(P("vx*px")); }) == SymalErrorKind::SymbolSetViolation);
}

TEST_CASE("check_constant") {
  const EomSet osc = hamilton_eom(reference_hamiltonian(SystemKind::Oscillator, Variant::Standard));
  const EomSet bou = hamilton_eom(reference_hamiltonian(SystemKind::Bouncer, Variant::Standard));
  CHECK(check_constant(builtin_constant(SystemKind::Oscillator, Variant::Cross), osc).is_zero());
  CHECK(check_constant(builtin_constant(SystemKind::Bouncer, Variant::Cross), bou).is_zero());
  CHECK(check_constant(P("x"), osc) == P("vx"));
  CHECK(check_constant(P("x*vy - y*vx"), osc).is_zero());  // angular momentum
  CHECK_FALSE(check_constant(P("x*vy - y*vx"), bou).is_zero());
}

TEST_CASE("pipeline closure for all four systems") {
  for (SystemKind s : kSystems)
    for (Variant v : kVariants) {
      CAPTURE(to_string(s));
      CAPTURE(to_string(v));
      const Derivation d = derive(builtin_constant(s, v));
      CHECK(d.hamiltonian == reference_hamiltonian(s, v));
      CHECK(d.conserved());
      CHECK(parse_expr(d.lagrangian.str()) == d.lagrangian);
      CHECK(parse_expr(d.hamiltonian.str()) == d.hamiltonian);
    }
}

TEST_CASE("standard and cross Hamiltonians share equations of motion") {
  for (SystemKind s : kSystems) {
    const EomSet a = hamilton_eom(reference_hamiltonian(s, Variant::Standard));
    const EomSet b = hamilton_eom(reference_hamiltonian(s, Variant::Cross));
    CHECK(a == b);
    // every constant of the system is conserved by either flow
    for (Variant kv : kVariants) {
      CHECK(check_constant(builtin_constant(s, kv), a).is_zero());
      CHECK(check_constant(builtin_constant(s, kv), b).is_zero());
    }
  }
}

TEST_CASE("pipeline is safe to run concurrently") {
  std::vector<std::thread> pool;
  std::vector<int> ok(8, 0);
  for (int t = 0; t < 8; ++t)
    pool.emplace_back([&ok, t] {
      const auto s = kSystems[t % 2];
      const auto v = kVariants[(t / 2) % 2];
      ok[t] = derive(builtin_constant(s, v)).hamiltonian == reference_hamiltonian(s, v);
    });
  for (auto& th : pool) th.join();
  for (int r : ok) CHECK(r == 1);
}
