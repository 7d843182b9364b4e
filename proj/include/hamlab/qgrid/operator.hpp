#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hamlab/qgrid/grid.hpp"
#include "hamlab/system.hpp"

namespace hamlab::qgrid {

/// Spectral: sine-basis (DVR) second derivative and sinc first derivative,
/// both exact for band-limited functions that vanish at the walls.
/// FiniteDifference: 3-point second derivative, centered first derivative
/// (whose tensor product is the 4-corner mixed stencil).
enum class Stencil { Spectral, FiniteDifference };

/// Matrix of -d^2/dx^2 on n interior points with spacing d, Dirichlet walls.
Eigen::MatrixXd second_derivative_matrix(int n, double d, Stencil stencil);
/// Matrix of d/dx on the same points; antisymmetric.
Eigen::MatrixXd first_derivative_matrix(int n, double d, Stencil stencil);

/// Matrix-free quantized Hamiltonian on a Grid2D. The action is real
/// symmetric; on a column-major nx x ny view of the amplitudes
///   H Psi = c (Kx Psi + Psi Ky^T) + c' Dx Psi Dy^T + V .* Psi.
class DiscreteOperator {
 public:
  DiscreteOperator(const SystemSpec& spec, const Grid2D& grid, Stencil stencil = Stencil::Spectral);

  const SystemSpec& spec() const { return spec_; }
  const Grid2D& grid() const { return grid_; }
  Stencil stencil() const { return stencil_; }
  std::size_t dim() const { return grid_.size(); }

  void apply(const double* in, double* out) const;
  void apply(const Complex* in, Complex* out) const;
  WaveFn apply(const WaveFn& psi) const;

  /// <psi|H|psi> / <psi|psi>.
  double expectation(const WaveFn& psi) const;

  /// Explicit dim x dim matrix (row/column order = amplitude order).
  Eigen::MatrixXd dense() const;

  /// Upper bound on the spectral radius (Gershgorin on the factors).
  double norm_bound() const;

  const std::vector<double>& potential() const { return v_; }

 private:
  template <class Scalar>
  void apply_impl(const Scalar* in, Scalar* out) const;

  SystemSpec spec_;
  Grid2D grid_;
  Stencil stencil_;
  double kin_coef_ = 0.0;    ///< hbar^2 / 2m on Kx, Ky (standard variants)
  double cross_coef_ = 0.0;  ///< -hbar^2 / m on Dx (x) Dy (cross variant)
  Eigen::MatrixXd kx_, ky_, dx_, dy_;
  std::vector<double> v_;
};

/// Throws UnsupportedVariant for bouncer/cross, which only exists in the
/// factored rotated form (see solve_cross_bouncer).
DiscreteOperator build_operator(const SystemSpec& spec, const Grid2D& grid, Stencil stencil = Stencil::Spectral);

/// Largest |<phi, H psi> - conj(<psi, H phi>)| over `pairs` random complex
/// vector pairs from a fixed seed.
double hermiticity_defect(const DiscreteOperator& op, int pairs, unsigned long long seed = 1);

}  // namespace hamlab::qgrid
