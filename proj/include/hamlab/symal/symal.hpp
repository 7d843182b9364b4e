#pragma once

// Exact polynomial algebra for constants of motion, Lagrangians and
// Hamiltonians of two-degree-of-freedom systems, plus the derivation chain
//
//   constant of motion K --(Kobussen integral)--> L --(Legendre)--> H
//
// and the symbolic checks that tie the chain back to the equations of
// motion. Everything here is exact; no floating point enters.

#include <string>
#include <string_view>

#include "hamlab/symal/poly.hpp"
#include "hamlab/system.hpp"

namespace hamlab::symal {

/// Parse an expression over x, y, vx, vy, px, py and the parameters m, omega,
/// f. Grammar (see docs/grammar.md):
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('+' | '-') unary | power
///   power   := primary ('^' uint)?
///   primary := uint | name | '(' expr ')'
///
/// A divisor must evaluate to a single nonzero term free of variables.
Poly parse_expr(std::string_view text);

/// Accelerations (force / mass) as polynomials in x, y, vx, vy.
struct EomSet {
  Poly accel_x;
  Poly accel_y;

  friend bool operator==(const EomSet&, const EomSet&) = default;
};

/// Lagrangian from a constant of motion K(x, y, vx, vy):
/// L = vx * Integral^{vx} K(x, y, vx, c vx) / vx^2 dvx, back-substituting
/// c = vy / vx afterwards.
Poly kobussen_lagrangian(const Poly& constant);

/// H(x, y, px, py) = vx px + vy py - L with p_i = dL/dv_i solved for the
/// velocities. L must be at most quadratic in the velocities with a constant,
/// invertible velocity Hessian.
Poly legendre_transform(const Poly& lagrangian);

/// Hamilton's equations with momenta eliminated in favour of velocities.
EomSet hamilton_eom(const Poly& hamiltonian);

/// dK/dt along the flow `eom`.
Poly check_constant(const Poly& constant, const EomSet& eom);

using hamlab::SystemKind;
using hamlab::Variant;

/// The textbook constant of motion for each (system, variant):
///   oscillator standard  (m/2)(vx^2+vy^2) + (m/2) omega^2 (x^2+y^2)
///   oscillator cross     m vx vy + m omega^2 x y
///   bouncer standard     (m/2)(vx^2+vy^2) + f (x+y)
///   bouncer cross        m vx vy + f (x+y)
Poly builtin_constant(SystemKind s, Variant v);

/// Reference Hamiltonians written out independently of the pipeline:
/// (px^2+py^2)/2m or px py/m, plus the matching potential.
Poly reference_hamiltonian(SystemKind s, Variant v);

/// One full pass of the derivation chain with its certificates.
struct Derivation {
  Poly constant;
  Poly lagrangian;
  Poly hamiltonian;
  EomSet eom;
  Poly dk_dt;

  bool conserved() const { return dk_dt.is_zero(); }
};

Derivation derive(const Poly& constant);

}  // namespace hamlab::symal
