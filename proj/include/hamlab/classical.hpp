#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "hamlab/system.hpp"

namespace hamlab::classical {

enum class ClassicalErrorKind { StepRejected, GridMismatch, WallContact, InvalidArgument };

class ClassicalError : public std::runtime_error {
 public:
  ClassicalError(ClassicalErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ClassicalErrorKind kind() const { return kind_; }

 private:
  ClassicalErrorKind kind_;
};

struct PhaseState {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double px = 0.0;
  double py = 0.0;
};

/// Position-velocity initial data; the common currency between variants.
struct KinematicState {
  double x = 0.0;
  double y = 0.0;
  double vx = 0.0;
  double vy = 0.0;
};

struct Velocity {
  double vx = 0.0;
  double vy = 0.0;
};

/// The two monitored constants at one step: (K1, K2) for the oscillator,
/// (K~1, K~2) for the bouncer.
struct ConservedPair {
  double k1 = 0.0;
  double k2 = 0.0;
};

struct Trajectory {
  std::vector<PhaseState> states;
  std::vector<ConservedPair> conserved;
};

enum class Scheme { Leapfrog, Rk4 };

/// Standard: v = p / m. Cross: the momenta are swapped, vx = py / m,
/// vy = px / m.
Velocity velocity_map(const SystemSpec& spec, const PhaseState& state);

/// Inverse of velocity_map: canonical state for the given variant at time 0.
PhaseState canonical_state(const SystemSpec& spec, const KinematicState& kin);

ConservedPair constants_of_motion(const SystemSpec& spec, const PhaseState& state);

/// Discrete Hamiltonian flow of the spec's Hamiltonian. Returns n_steps + 1
/// states (the initial one included). Bouncer runs are restricted to the open
/// quadrant x, y > 0; leaving it raises WallContact.
Trajectory integrate(const SystemSpec& spec, const PhaseState& initial, double dt, int n_steps,
                     Scheme scheme = Scheme::Leapfrog);

struct Divergence {
  double max = 0.0;  ///< max over t of |dx| + |dy|
  double rms = 0.0;  ///< RMS over t of |dx| + |dy|
};

Divergence compare_trajectories(const Trajectory& a, const Trajectory& b);

/// Header `t,x,y,px,py,K1,K2`, 17 significant digits.
void write_csv(std::ostream& out, const Trajectory& traj);

}  // namespace hamlab::classical
