#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "hamlab/classical.hpp"

namespace hamlab::classical {

namespace {

struct Force {
  double fx;
  double fy;
};

// -dV/dq. Both Hamiltonians of a system share the same potential up to the
// form: the standard oscillator has (m w^2/2)(x^2+y^2), the cross one m w^2 x y.
Force force(const SystemSpec& spec, double x, double y) {
  if (spec.system() == SystemKind::Bouncer) return {-spec.f(), -spec.f()};
  const double k = spec.m() * spec.omega() * spec.omega();
  if (spec.variant() == Variant::Standard) return {-k * x, -k * y};
  return {-k * y, -k * x};
}

using Vec4 = std::array<double, 4>;  // x, y, px, py

Vec4 rhs(const SystemSpec& spec, const Vec4& s) {
  const Velocity v = velocity_map(spec, {0.0, s[0], s[1], s[2], s[3]});
  const Force f = force(spec, s[0], s[1]);
  return {v.vx, v.vy, f.fx, f.fy};
}

PhaseState leapfrog_step(const SystemSpec& spec, const PhaseState& s, double dt) {
  PhaseState n = s;
  Force f = force(spec, n.x, n.y);
  n.px += 0.5 * dt * f.fx;
  n.py += 0.5 * dt * f.fy;
  const Velocity v = velocity_map(spec, n);
  n.x += dt * v.vx;
  n.y += dt * v.vy;
  f = force(spec, n.x, n.y);
  n.px += 0.5 * dt * f.fx;
  n.py += 0.5 * dt * f.fy;
  n.t = s.t + dt;
  return n;
}

PhaseState rk4_step(const SystemSpec& spec, const PhaseState& s, double dt) {
  const Vec4 y0{s.x, s.y, s.px, s.py};
  auto axpy = [](const Vec4& a, double h, const Vec4& b) {
    Vec4 r;
    for (std::size_t i = 0; i < 4; ++i) r[i] = a[i] + h * b[i];
    return r;
  };
  const Vec4 k1 = rhs(spec, y0);
  const Vec4 k2 = rhs(spec, axpy(y0, 0.5 * dt, k1));
  const Vec4 k3 = rhs(spec, axpy(y0, 0.5 * dt, k2));
  const Vec4 k4 = rhs(spec, axpy(y0, dt, k3));
  Vec4 y1;
  for (std::size_t i = 0; i < 4; ++i) y1[i] = y0[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return {s.t + dt, y1[0], y1[1], y1[2], y1[3]};
}

bool finite(const PhaseState& s) {
  return std::isfinite(s.t) && std::isfinite(s.x) && std::isfinite(s.y) && std::isfinite(s.px) &&
         std::isfinite(s.py);
}

}  // namespace

Velocity velocity_map(const SystemSpec& spec, const PhaseState& state) {
  const double m = spec.m();
  if (spec.variant() == Variant::Standard) return {state.px / m, state.py / m};
  return {state.py / m, state.px / m};
}

PhaseState canonical_state(const SystemSpec& spec, const KinematicState& kin) {
  const double m = spec.m();
  if (spec.variant() == Variant::Standard) return {0.0, kin.x, kin.y, m * kin.vx, m * kin.vy};
  return {0.0, kin.x, kin.y, m * kin.vy, m * kin.vx};
}

ConservedPair constants_of_motion(const SystemSpec& spec, const PhaseState& state) {
  const Velocity v = velocity_map(spec, state);
  const double m = spec.m();
  const double x = state.x;
  const double y = state.y;
  if (spec.system() == SystemKind::Oscillator) {
    const double w2 = spec.omega() * spec.omega();
    return {0.5 * m * (v.vx * v.vx + v.vy * v.vy) + 0.5 * m * w2 * (x * x + y * y),
            m * v.vx * v.vy + m * w2 * x * y};
  }
  const double pot = spec.f() * (x + y);
  return {0.5 * m * (v.vx * v.vx + v.vy * v.vy) + pot, m * v.vx * v.vy + pot};
}

Trajectory integrate(const SystemSpec& spec, const PhaseState& initial, double dt, int n_steps, Scheme scheme) {
  if (!(dt != 0.0) || !std::isfinite(dt))
    throw ClassicalError(ClassicalErrorKind::InvalidArgument, "dt must be finite and nonzero");
  if (n_steps < 0) throw ClassicalError(ClassicalErrorKind::InvalidArgument, "n_steps must be non-negative");
  if (!finite(initial)) throw ClassicalError(ClassicalErrorKind::StepRejected, "initial state is not finite");

  const bool bouncer = spec.system() == SystemKind::Bouncer;
  auto check_quadrant = [&](const PhaseState& s) {
    if (bouncer && !(s.x > 0.0 && s.y > 0.0)) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "bouncer trajectory reached a wall at t = %.6g", s.t);
      throw ClassicalError(ClassicalErrorKind::WallContact, buf);
    }
  };
  check_quadrant(initial);

  Trajectory traj;
  traj.states.reserve(static_cast<std::size_t>(n_steps) + 1);
  traj.conserved.reserve(static_cast<std::size_t>(n_steps) + 1);
  traj.states.push_back(initial);
  traj.conserved.push_back(constants_of_motion(spec, initial));

  PhaseState cur = initial;
  for (int i = 0; i < n_steps; ++i) {
    PhaseState next = scheme == Scheme::Leapfrog ? leapfrog_step(spec, cur, dt) : rk4_step(spec, cur, dt);
    // uniform grid without accumulated round-off in t
    next.t = initial.t + dt * static_cast<double>(i + 1);
    if (!finite(next)) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "non-finite state at step %d", i + 1);
      throw ClassicalError(ClassicalErrorKind::StepRejected, buf);
    }
    check_quadrant(next);
    traj.states.push_back(next);
    traj.conserved.push_back(constants_of_motion(spec, next));
    cur = next;
  }
  return traj;
}

Divergence compare_trajectories(const Trajectory& a, const Trajectory& b) {
  if (a.states.size() != b.states.size())
    throw ClassicalError(ClassicalErrorKind::GridMismatch, "trajectories have different lengths");
  Divergence d;
  double sum2 = 0.0;
  for (std::size_t i = 0; i < a.states.size(); ++i) {
    const PhaseState& sa = a.states[i];
    const PhaseState& sb = b.states[i];
    if (std::abs(sa.t - sb.t) > 1e-12 * std::max(1.0, std::abs(sa.t)))
      throw ClassicalError(ClassicalErrorKind::GridMismatch, "trajectories have different time grids");
    const double e = std::abs(sa.x - sb.x) + std::abs(sa.y - sb.y);
    d.max = std::max(d.max, e);
    sum2 += e * e;
  }
  if (!a.states.empty()) d.rms = std::sqrt(sum2 / static_cast<double>(a.states.size()));
  return d;
}

void write_csv(std::ostream& out, const Trajectory& traj) {
  out << "t,x,y,px,py,K1,K2\n";
  char buf[512];
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const PhaseState& s = traj.states[i];
    const ConservedPair& k = traj.conserved[i];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s.t, s.x, s.y, s.px, s.py, k.k1,
                  k.k2);
    out << buf;
  }
}

}  // namespace hamlab::classical
