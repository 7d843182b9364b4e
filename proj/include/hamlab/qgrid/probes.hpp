#pragma once

#include <vector>

#include "hamlab/qgrid/eigensolver.hpp"
#include "hamlab/spectra.hpp"

namespace hamlab::qgrid {

struct ProbePoint {
  int n = 0;  ///< points per axis
  double min_energy = 0.0;
};

/// Minimum grid eigenvalue on n x n grids of one fixed box [-h, h]^2, for
/// each of at least three strictly increasing resolutions. For the cross
/// oscillator the sequence keeps falling; for the standard one it settles.
std::vector<ProbePoint> no_ground_state_probe(const SystemSpec& spec, const std::vector<int>& sizes,
                                              double half_extent = 8.0, const SolverOptions& opts = {},
                                              Stencil stencil = Stencil::Spectral);

/// Lowest `count` levels of p^2/2m + force * x on (0, L) with Dirichlet walls.
std::vector<double> bouncer_levels_1d(double m, double force, double hbar, const Grid1D& grid, int count,
                                      Stencil stencil = Stencil::Spectral);

/// Lowest `count` levels of p^2/2m + m omega^2 x^2 / 2 on a box.
std::vector<double> oscillator_levels_1d(double m, double omega, double hbar, const Grid1D& grid, int count,
                                         Stencil stencil = Stencil::Spectral);

/// bouncer/cross in its rotated, separated form: a 1-D bouncer in
/// xi = (x + y)/sqrt2 with force sqrt2 f, plus the free term hbar^2 k^2 / 2m
/// in eta. Returns one entry per (n, k) for n = 1..levels.
spectra::Spectrum solve_cross_bouncer(const SystemSpec& spec, const Grid1D& xi_grid, const std::vector<double>& k_samples,
                                      int levels = 4, Stencil stencil = Stencil::Spectral);

}  // namespace hamlab::qgrid
