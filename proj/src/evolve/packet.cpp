#include <cmath>
#include <numbers>

#include "hamlab/evolve.hpp"

namespace hamlab::evolve {

namespace {

// Chirp rate b of exp(-(u - c)^2 / 4 s^2 + i b (u - c)^2) giving momentum
// width sp: sp^2 = hbar^2 / 4 s^2 + 4 hbar^2 s^2 b^2.
double chirp(double sigma, std::optional<double> sigma_p, double hbar) {
  if (!sigma_p) return 0.0;
  const double excess = *sigma_p * *sigma_p - hbar * hbar / (4.0 * sigma * sigma);
  return std::sqrt(std::max(excess, 0.0)) / (2.0 * hbar * sigma);
}

Complex factor(double u, double centre, double p, double sigma, double b, double hbar) {
  const double d = u - centre;
  const double amp = std::exp(-d * d / (4.0 * sigma * sigma)) / std::sqrt(std::sqrt(2.0 * std::numbers::pi * sigma * sigma));
  return std::polar(amp, b * d * d + p * u / hbar);
}

}  // namespace

GaussianPacket GaussianPacket::coherent(const SystemSpec& spec, double x, double y, double px, double py) {
  GaussianPacket g;
  g.x = x;
  g.y = y;
  g.px = px;
  g.py = py;
  g.sigma_x = g.sigma_y = std::sqrt(spec.hbar() / (2.0 * spec.m() * spec.omega()));
  return g;
}

void GaussianPacket::validate(double hbar) const {
  auto bad = [](const std::string& what) { throw EvolveError(EvolveErrorKind::InvalidPacket, what); };
  for (double v : {x, y, px, py})
    if (!std::isfinite(v)) bad("packet centre and momentum must be finite");
  if (!(sigma_x > 0.0) || !(sigma_y > 0.0) || !std::isfinite(sigma_x) || !std::isfinite(sigma_y))
    bad("packet widths must be positive and finite");
  const double tol = 1e-12;
  if (sigma_px && (!(*sigma_px > 0.0) || sigma_x * *sigma_px < 0.5 * hbar * (1.0 - tol)))
    bad("sigma_x * sigma_px below hbar / 2");
  if (sigma_py && (!(*sigma_py > 0.0) || sigma_y * *sigma_py < 0.5 * hbar * (1.0 - tol)))
    bad("sigma_y * sigma_py below hbar / 2");
}

WaveFn sample_packet(const GaussianPacket& g, const Grid2D& grid, double hbar) {
  g.validate(hbar);
  grid.validate();
  const double bx = chirp(g.sigma_x, g.sigma_px, hbar);
  const double by = chirp(g.sigma_y, g.sigma_py, hbar);
  WaveFn psi(grid);
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const auto [x, y] = grid.physical(i, j);
      psi.amps[grid.index(i, j)] = factor(x, g.x, g.px, g.sigma_x, bx, hbar) * factor(y, g.y, g.py, g.sigma_y, by, hbar);
    }
  psi.normalize();
  return psi;
}

}  // namespace hamlab::evolve
