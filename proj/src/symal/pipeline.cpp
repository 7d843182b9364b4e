#include <array>
#include <string>

#include "hamlab/symal/symal.hpp"

namespace hamlab::symal {

namespace {

void require_only(const Poly& p, std::initializer_list<Symbol> allowed, const char* what) {
  for (const auto& [m, c] : p.terms()) {
    for (std::size_t i = 0; i < kSymbolCount; ++i) {
      const auto s = static_cast<Symbol>(i);
      if (m[s] == 0 || !is_variable(s)) continue;
      bool ok = false;
      for (Symbol a : allowed) ok = ok || a == s;
      if (!ok)
        throw SymalError(SymalErrorKind::SymbolSetViolation,
                         std::string(what) + " may not contain '" + std::string(name_of(s)) + "'");
    }
  }
}

Poly at_zero(const Poly& p, Symbol a, Symbol b) {
  return p.coefficient_of(a, 0).coefficient_of(b, 0);
}

/// Q(q, a) = 1/2 a^T W a + c(q)^T a + V(q) with a constant invertible W.
struct QuadraticForm {
  std::array<std::array<Poly, 2>, 2> hessian;
  std::array<std::array<Poly, 2>, 2> inverse;
  std::array<Poly, 2> linear;  // c_i(q) = dQ/da_i at a = 0
};

QuadraticForm split_quadratic(const Poly& q, Symbol a0, Symbol a1, const char* what) {
  if (q.degree_in({a0, a1}) > 2)
    throw SymalError(SymalErrorKind::NonQuadratic, std::string(what) + " is more than quadratic in " +
                                                       std::string(name_of(a0)) + ", " +
                                                       std::string(name_of(a1)));
  const std::array<Symbol, 2> a{a0, a1};
  QuadraticForm f;
  for (std::size_t i = 0; i < 2; ++i) {
    f.linear[i] = at_zero(q.derivative(a[i]), a0, a1);
    for (std::size_t j = 0; j < 2; ++j) {
      f.hessian[i][j] = q.derivative(a[i]).derivative(a[j]);
      for (const auto& [m, c] : f.hessian[i][j].terms())
        if (m.has_variables())
          throw SymalError(SymalErrorKind::NonConstantHessian,
                           std::string(what) + " has a Hessian that depends on the phase-space variables");
    }
  }
  const Poly det = f.hessian[0][0] * f.hessian[1][1] - f.hessian[0][1] * f.hessian[1][0];
  if (det.is_zero())
    throw SymalError(SymalErrorKind::SingularKinetic, std::string(what) + " has a singular kinetic Hessian");
  if (!det.is_parameter_monomial())
    throw SymalError(SymalErrorKind::NonConstantHessian,
                     std::string(what) + " has a Hessian determinant that is not a parameter monomial: " +
                         det.str());
  f.inverse[0][0] = f.hessian[1][1].divided_by_term(det);
  f.inverse[1][1] = f.hessian[0][0].divided_by_term(det);
  f.inverse[0][1] = (-f.hessian[0][1]).divided_by_term(det);
  f.inverse[1][0] = (-f.hessian[1][0]).divided_by_term(det);
  return f;
}

}  // namespace

Poly kobussen_lagrangian(const Poly& constant) {
  require_only(constant, {Symbol::X, Symbol::Y, Symbol::VX, Symbol::VY}, "constant of motion");
  if (!constant.is_true_polynomial())
    throw SymalError(SymalErrorKind::SymbolSetViolation, "constant of motion must be a polynomial");

  // K(x, y, vx, c vx)
  const Poly slope_vx = Poly::symbol(Symbol::C) * Poly::symbol(Symbol::VX);
  Poly integrand = constant.substitute(Symbol::VY, slope_vx);
  // ... / vx^2, integrated in vx, times vx
  integrand = integrand.divided_by_term(Poly::symbol(Symbol::VX, 2));
  Poly lagrangian = integrand.antiderivative(Symbol::VX) * Poly::symbol(Symbol::VX);

  // c -> vy / vx, tracked as vy * vx^-1 so vx stays a Laurent exponent.
  Poly result;
  for (const auto& [m, c] : lagrangian.terms()) {
    Monomial back = m;
    const int k = m[Symbol::C];
    if (k < 0)
      throw SymalError(SymalErrorKind::ResidualAuxiliary, "negative power of the auxiliary slope");
    back[Symbol::C] = 0;
    back[Symbol::VY] += k;
    back[Symbol::VX] -= k;
    result += Poly::term(c, back);
  }
  if (result.mentions(Symbol::C) || !result.is_true_polynomial())
    throw SymalError(SymalErrorKind::ResidualAuxiliary,
                     "back-substitution left a non-polynomial Lagrangian: " + result.str());
  return result;
}

Poly legendre_transform(const Poly& lagrangian) {
  require_only(lagrangian, {Symbol::X, Symbol::Y, Symbol::VX, Symbol::VY}, "Lagrangian");
  const QuadraticForm f = split_quadratic(lagrangian, Symbol::VX, Symbol::VY, "Lagrangian");

  // p = W v + c(q)  =>  v = W^{-1} (p - c(q))
  const std::array<Poly, 2> shifted{Poly::symbol(Symbol::PX) - f.linear[0],
                                    Poly::symbol(Symbol::PY) - f.linear[1]};
  const Poly vx = f.inverse[0][0] * shifted[0] + f.inverse[0][1] * shifted[1];
  const Poly vy = f.inverse[1][0] * shifted[0] + f.inverse[1][1] * shifted[1];

  const Poly legendre = Poly::symbol(Symbol::VX) * Poly::symbol(Symbol::PX) +
                        Poly::symbol(Symbol::VY) * Poly::symbol(Symbol::PY) - lagrangian;
  return legendre.substitute(Symbol::VX, vx).substitute(Symbol::VY, vy);
}

EomSet hamilton_eom(const Poly& hamiltonian) {
  require_only(hamiltonian, {Symbol::X, Symbol::Y, Symbol::PX, Symbol::PY}, "Hamiltonian");
  const QuadraticForm f = split_quadratic(hamiltonian, Symbol::PX, Symbol::PY, "Hamiltonian");

  // q' = W p + a(q), p' = -dH/dq
  // q'' = W p' + (da/dq) q'
  const std::array<Symbol, 2> coords{Symbol::X, Symbol::Y};
  const std::array<Symbol, 2> vels{Symbol::VX, Symbol::VY};
  const std::array<Poly, 2> pdot{-hamiltonian.derivative(Symbol::X), -hamiltonian.derivative(Symbol::Y)};

  std::array<Poly, 2> accel;
  for (std::size_t i = 0; i < 2; ++i) {
    accel[i] = f.hessian[i][0] * pdot[0] + f.hessian[i][1] * pdot[1];
    for (std::size_t k = 0; k < 2; ++k)
      accel[i] += f.linear[i].derivative(coords[k]) * Poly::symbol(vels[k]);
  }

  // p = W^{-1} (v - a(q))
  const std::array<Poly, 2> shifted{Poly::symbol(Symbol::VX) - f.linear[0],
                                    Poly::symbol(Symbol::VY) - f.linear[1]};
  const Poly px = f.inverse[0][0] * shifted[0] + f.inverse[0][1] * shifted[1];
  const Poly py = f.inverse[1][0] * shifted[0] + f.inverse[1][1] * shifted[1];
  for (auto& a : accel) a = a.substitute(Symbol::PX, px).substitute(Symbol::PY, py);
  return {accel[0], accel[1]};
}

Poly check_constant(const Poly& constant, const EomSet& eom) {
  require_only(constant, {Symbol::X, Symbol::Y, Symbol::VX, Symbol::VY}, "constant of motion");
  require_only(eom.accel_x, {Symbol::X, Symbol::Y, Symbol::VX, Symbol::VY}, "acceleration");
  require_only(eom.accel_y, {Symbol::X, Symbol::Y, Symbol::VX, Symbol::VY}, "acceleration");
  return constant.derivative(Symbol::X) * Poly::symbol(Symbol::VX) +
         constant.derivative(Symbol::Y) * Poly::symbol(Symbol::VY) +
         constant.derivative(Symbol::VX) * eom.accel_x + constant.derivative(Symbol::VY) * eom.accel_y;
}

Poly builtin_constant(SystemKind s, Variant v) {
  const char* kinetic = v == Variant::Standard ? "m/2*(vx^2 + vy^2)" : "m*vx*vy";
  std::string potential;
  if (s == SystemKind::Oscillator)
    potential = v == Variant::Standard ? "m/2*omega^2*(x^2 + y^2)" : "m*omega^2*x*y";
  else
    potential = "f*(x + y)";
  return parse_expr(std::string(kinetic) + " + " + potential);
}

Poly reference_hamiltonian(SystemKind s, Variant v) {
  const char* kinetic = v == Variant::Standard ? "(px^2 + py^2)/(2*m)" : "px*py/m";
  std::string potential;
  if (s == SystemKind::Oscillator)
    potential = v == Variant::Standard ? "1/2*m*omega^2*(x^2 + y^2)" : "m*omega^2*x*y";
  else
    potential = "f*(x + y)";
  return parse_expr(std::string(kinetic) + " + " + potential);
}

Derivation derive(const Poly& constant) {
  Derivation d;
  d.constant = constant;
  d.lagrangian = kobussen_lagrangian(constant);
  d.hamiltonian = legendre_transform(d.lagrangian);
  d.eom = hamilton_eom(d.hamiltonian);
  d.dk_dt = check_constant(constant, d.eom);
  return d;
}

}  // namespace hamlab::symal
