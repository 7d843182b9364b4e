#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hamlab/qgrid/operator.hpp"
#include "hamlab/system.hpp"

namespace hamlab::evolve {

using qgrid::Complex;
using qgrid::Grid2D;
using qgrid::WaveFn;

enum class EvolveErrorKind {
  InvalidPacket,
  InvalidArgument,
  InnerSolveDivergence,
  BoundaryLeak,
  GridMismatch,
  SeriesTooShort,
};

class EvolveError : public std::runtime_error {
 public:
  EvolveError(EvolveErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  EvolveErrorKind kind() const { return kind_; }

 private:
  EvolveErrorKind kind_;
};

/// Gaussian initial state. Without momentum widths the packet is a
/// minimum-uncertainty one (sigma_p = hbar / 2 sigma). A larger momentum
/// width is realized by a quadratic phase (chirp), which also makes
/// position and momentum positively correlated:
///   Cov(x, p_x) = sqrt(sigma_x^2 sigma_px^2 - hbar^2 / 4).
struct GaussianPacket {
  double x = 0.0;
  double y = 0.0;
  double px = 0.0;
  double py = 0.0;
  double sigma_x = 1.0;
  double sigma_y = 1.0;
  std::optional<double> sigma_px;
  std::optional<double> sigma_py;

  /// Coherent state of the oscillator: sigma = sqrt(hbar / 2 m omega).
  static GaussianPacket coherent(const SystemSpec& spec, double x, double y, double px = 0.0, double py = 0.0);
  /// Throws InvalidPacket when widths are non-positive or violate
  /// sigma * sigma_p >= hbar / 2.
  void validate(double hbar) const;
};

/// Sampled and grid-normalized. On a HalfPlane grid the packet is evaluated
/// at the physical point of each (xi, eta) sample.
WaveFn sample_packet(const GaussianPacket& packet, const Grid2D& grid, double hbar);

enum class Scheme { CrankNicolson, SplitOperator };

struct PropagateOptions {
  Scheme scheme = Scheme::CrankNicolson;
  int snapshot_every = 0;    ///< 0: no snapshots
  double inner_tol = 1e-13;  ///< relative residual of the Crank-Nicolson inner solve
  int max_inner = 200;
  double leak_tol = 1e-12;   ///< split-operator boundary amplitude limit
  qgrid::Stencil stencil = qgrid::Stencil::Spectral;
};

/// Per-step grid quadratures; index 0 is the initial state.
struct ObservableSeries {
  std::vector<double> t, norm, mean_x, mean_y, var_x, var_y, cov_xy, energy;
  std::vector<Complex> autocorr;  ///< <psi(0)|psi(t)>

  std::size_t size() const { return t.size(); }
  double autocorr_abs(std::size_t k) const { return std::abs(autocorr[k]); }
};

struct Propagation {
  ObservableSeries series;
  std::vector<WaveFn> snapshots;
  WaveFn final_state;
};

/// Unitary evolution under the spec's Hamiltonian for n_steps of dt.
/// Crank-Nicolson runs on the Dirichlet grid operator (conjugate gradients
/// on the normal equations for the implicit half). Split-operator is for
/// oscillator variants only and treats the grid as periodic; it raises
/// BoundaryLeak when amplitude reaches the outer ring of points.
/// bouncer/cross requires a HalfPlane grid and always runs factored: an
/// exact Cayley step of the 1-D xi bouncer times the free eta phase
/// exp(+i hbar k^2 dt / 2m), the eta kinetic term being -p_eta^2 / 2m.
Propagation propagate(const SystemSpec& spec, const WaveFn& initial, double dt, int n_steps,
                      const PropagateOptions& opts = {});

/// The HalfPlane grid matching a quadrant grid for the cross bouncer: n_xi
/// points on xi in [0, xi_max], n_eta on eta in [-eta_half, eta_half].
Grid2D half_plane_grid(int n_xi, double xi_max, int n_eta, double eta_half);

struct DivergenceReport {
  double max_gap = 0.0;  ///< max_t |Var_x^(1) - Var_x^(2)|
  double t_at_max = 0.0;
  double final_gap = 0.0;  ///< at the horizon
  double threshold = 0.0;
  bool detected = false;
  ObservableSeries standard;
  ObservableSeries cross;
};

/// Propagates the same packet under the standard and cross Hamiltonian of
/// one system up to `horizon`. Oscillator pairs share one grid (GridMismatch
/// otherwise). For bouncers grid_a is the quadrant grid and grid_b the
/// HalfPlane grid, which must have the same spacing. dt is rounded down
/// to horizon / round(horizon / dt) so the last sample sits at the horizon.
DivergenceReport variance_divergence_experiment(const SystemSpec& standard, const GaussianPacket& packet,
                                                double horizon, double dt, const Grid2D& grid_a, const Grid2D& grid_b,
                                                double threshold = 1e-3, const PropagateOptions& opts = {});

struct FrequencyPeak {
  double omega = 0.0;  ///< angular frequency, rad per unit time
  double power = 0.0;  ///< relative to the strongest peak
};

/// Peaks of the Hann-windowed power spectrum of |A(t)|, strongest first.
/// Needs at least 256 uniform samples.
std::vector<FrequencyPeak> spectral_fingerprint(const ObservableSeries& series, double min_power = 1e-3);

/// Header `t,norm,mean_x,mean_y,var_x,var_y,cov_xy,energy,autocorr`.
void write_csv(std::ostream& out, const ObservableSeries& series);

}  // namespace hamlab::evolve
