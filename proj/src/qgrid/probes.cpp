#include "hamlab/qgrid/probes.hpp"

#include <numbers>

namespace hamlab::qgrid {

namespace {

std::vector<double> levels_1d(double m, double hbar, const Grid1D& g, int count, Stencil stencil,
                              double (*potential)(double, double), double strength) {
  g.validate();
  if (count < 1 || count > g.n) throw QgridError(QgridErrorKind::InvalidGrid, "1-D level count out of range");
  Eigen::MatrixXd h = hbar * hbar / (2.0 * m) * second_derivative_matrix(g.n, g.dx, stencil);
  for (int i = 0; i < g.n; ++i) h(i, i) += potential(strength, g.x(i));
  return dense_eigen_range(h, 0, count - 1);
}

double linear(double force, double x) {
  return force * x;
}

double harmonic(double k, double x) {
  return 0.5 * k * x * x;
}

}  // namespace

std::vector<ProbePoint> no_ground_state_probe(const SystemSpec& spec, const std::vector<int>& sizes,
                                              double half_extent, const SolverOptions& opts, Stencil stencil) {
  if (sizes.size() < 3)
    throw QgridError(QgridErrorKind::InsufficientResolutions,
                     "probe needs at least 3 resolutions, got " + std::to_string(sizes.size()));
  for (std::size_t i = 1; i < sizes.size(); ++i)
    if (sizes[i] <= sizes[i - 1])
      throw QgridError(QgridErrorKind::InsufficientResolutions, "probe resolutions must be strictly increasing");
  if (spec.system() != SystemKind::Oscillator)
    throw QgridError(QgridErrorKind::UnsupportedVariant, "the probe runs on oscillator variants");
  std::vector<ProbePoint> out;
  for (int n : sizes) {
    const DiscreteOperator op(spec, Grid2D::oscillator_box(n, half_extent), stencil);
    const auto pairs = lowest_eigenpairs(op, 1, SolveMode::lowest(), opts);
    out.push_back({n, pairs.front().energy});
  }
  return out;
}

std::vector<double> bouncer_levels_1d(double m, double force, double hbar, const Grid1D& grid, int count,
                                      Stencil stencil) {
  if (grid.x0 != 0.0) throw QgridError(QgridErrorKind::InvalidGrid, "1-D bouncer grid must start at the floor x = 0");
  return levels_1d(m, hbar, grid, count, stencil, linear, force);
}

std::vector<double> oscillator_levels_1d(double m, double omega, double hbar, const Grid1D& grid, int count,
                                         Stencil stencil) {
  return levels_1d(m, hbar, grid, count, stencil, harmonic, m * omega * omega);
}

spectra::Spectrum solve_cross_bouncer(const SystemSpec& spec, const Grid1D& xi_grid, const std::vector<double>& k_samples,
                                      int levels, Stencil stencil) {
  if (spec.system() != SystemKind::Bouncer || spec.variant() != Variant::Cross)
    throw QgridError(QgridErrorKind::UnsupportedVariant, "solve_cross_bouncer expects bouncer/cross, got " + spec.name());
  const std::vector<double> xi =
      bouncer_levels_1d(spec.m(), std::numbers::sqrt2 * spec.f(), spec.hbar(), xi_grid, levels, stencil);
  spectra::Spectrum s;
  const double free = spec.hbar() * spec.hbar() / (2.0 * spec.m());
  for (int n = 1; n <= levels; ++n)
    for (double k : k_samples)
      s.entries.push_back({spectra::LevelLabel::mixed(n, k), xi[static_cast<std::size_t>(n - 1)] + free * k * k,
                           spectra::Degeneracy::of(1)});
  s.sort();
  return s;
}

}  // namespace hamlab::qgrid
