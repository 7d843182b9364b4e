#include "hamlab/qgrid/grid.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <istream>
#include <numbers>
#include <ostream>

namespace hamlab::qgrid {

namespace {

constexpr std::size_t kDefaultMaxGrid = std::size_t{1} << 20;
constexpr std::uint32_t kDumpVersion = 1;

static_assert(std::endian::native == std::endian::little, "dump IO assumes a little-endian host");

void put_f64(std::ostream& out, double v) {
  char buf[8];
  std::memcpy(buf, &v, 8);
  out.write(buf, 8);
}

double get_f64(std::istream& in) {
  char buf[8];
  if (!in.read(buf, 8)) throw QgridError(QgridErrorKind::BadDump, "truncated wavefunction dump");
  double v;
  std::memcpy(&v, buf, 8);
  return v;
}

int as_count(double v) {
  if (!(v >= 1.0 && v <= 1e9) || v != std::floor(v))
    throw QgridError(QgridErrorKind::BadDump, "dump header holds a non-integer point count");
  return static_cast<int>(v);
}

}  // namespace

std::size_t max_grid_points() {
  if (const char* env = std::getenv("HAMLAB_MAX_GRID")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultMaxGrid;
}

Grid2D Grid2D::box(int nx, int ny, double xlo, double xhi, double ylo, double yhi, Boundary bc) {
  Grid2D g;
  g.nx = nx;
  g.ny = ny;
  g.x0 = xlo;
  g.y0 = ylo;
  g.dx = (xhi - xlo) / (nx + 1);
  g.dy = (yhi - ylo) / (ny + 1);
  g.bc = bc;
  g.validate();
  return g;
}

Grid2D Grid2D::oscillator_box(int n, double half_extent) {
  return box(n, n, -half_extent, half_extent, -half_extent, half_extent, Boundary::Dirichlet);
}

Grid2D Grid2D::bouncer_box(int n, double extent) {
  return box(n, n, 0.0, extent, 0.0, extent, Boundary::Floor);
}

void Grid2D::validate() const {
  if (nx < 16 || ny < 16)
    throw QgridError(QgridErrorKind::InvalidGrid,
                     "grid needs at least 16 points per axis, got " + std::to_string(nx) + "x" + std::to_string(ny));
  if (!(dx > 0.0) || !(dy > 0.0) || !std::isfinite(dx) || !std::isfinite(dy) || !std::isfinite(x0) ||
      !std::isfinite(y0))
    throw QgridError(QgridErrorKind::InvalidGrid, "grid spacing must be positive and finite");
  if (bc == Boundary::Floor && (x0 < 0.0 || y0 < 0.0))
    throw QgridError(QgridErrorKind::InvalidGrid, "bouncer grid must lie in the quadrant x, y >= 0");
  if (bc == Boundary::HalfPlane && x0 < 0.0)
    throw QgridError(QgridErrorKind::InvalidGrid, "half-plane grid must start at the floor xi >= 0");
  if (size() > max_grid_points())
    throw QgridError(QgridErrorKind::GridTooLarge, std::to_string(size()) + " grid points exceed the cap of " +
                                                       std::to_string(max_grid_points()));
}

std::pair<double, double> Grid2D::physical(int i, int j) const {
  if (bc != Boundary::HalfPlane) return {x(i), y(j)};
  const double r = 1.0 / std::numbers::sqrt2;
  return {r * (x(i) + y(j)), r * (x(i) - y(j))};
}

bool Grid2D::same_as(const Grid2D& o) const {
  return nx == o.nx && ny == o.ny && x0 == o.x0 && y0 == o.y0 && dx == o.dx && dy == o.dy && bc == o.bc;
}

Grid1D Grid1D::interval(int n, double lo, double hi) {
  Grid1D g{n, lo, (hi - lo) / (n + 1)};
  g.validate();
  return g;
}

void Grid1D::validate() const {
  if (n < 16) throw QgridError(QgridErrorKind::InvalidGrid, "1-D grid needs at least 16 points");
  if (!(dx > 0.0) || !std::isfinite(dx) || !std::isfinite(x0))
    throw QgridError(QgridErrorKind::InvalidGrid, "1-D grid spacing must be positive and finite");
  if (static_cast<std::size_t>(n) > max_grid_points())
    throw QgridError(QgridErrorKind::GridTooLarge, "1-D grid exceeds the point cap");
}

WaveFn::WaveFn(const Grid2D& g) : grid(g), amps(g.size(), Complex{0.0, 0.0}) {}

WaveFn::WaveFn(const Grid2D& g, std::vector<Complex> a) : grid(g), amps(std::move(a)) {
  if (amps.size() != grid.size())
    throw QgridError(QgridErrorKind::GridMismatch, "amplitude count does not match the grid");
  if (!all_finite()) throw QgridError(QgridErrorKind::NonFinite, "wavefunction holds non-finite amplitudes");
}

double WaveFn::norm2() const {
  double s = 0.0;
  for (const Complex& a : amps) s += std::norm(a);
  return s * grid.cell();
}

void WaveFn::normalize() {
  const double n2 = norm2();
  if (!(n2 > 0.0)) throw QgridError(QgridErrorKind::NonFinite, "cannot normalize a zero wavefunction");
  const double s = 1.0 / std::sqrt(n2);
  for (Complex& a : amps) a *= s;
}

bool WaveFn::all_finite() const {
  for (const Complex& a : amps)
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) return false;
  return true;
}

Complex inner(const WaveFn& a, const WaveFn& b) {
  if (!a.grid.same_as(b.grid)) throw QgridError(QgridErrorKind::GridMismatch, "inner product across different grids");
  Complex s{0.0, 0.0};
  for (std::size_t k = 0; k < a.amps.size(); ++k) s += std::conj(a.amps[k]) * b.amps[k];
  return s * a.grid.cell();
}

void write_dump(std::ostream& out, const WaveFn& psi) {
  out.write("HLAB", 4);
  char ver[4];
  std::memcpy(ver, &kDumpVersion, 4);
  out.write(ver, 4);
  const Grid2D& g = psi.grid;
  for (double v : {double(g.nx), double(g.ny), g.x0, g.y0, g.dx, g.dy}) put_f64(out, v);
  for (const Complex& a : psi.amps) {
    put_f64(out, a.real());
    put_f64(out, a.imag());
  }
  if (!out) throw QgridError(QgridErrorKind::BadDump, "failed writing wavefunction dump");
}

WaveFn read_dump(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "HLAB", 4) != 0)
    throw QgridError(QgridErrorKind::BadDump, "missing HLAB magic");
  char ver[4];
  std::uint32_t version = 0;
  if (!in.read(ver, 4)) throw QgridError(QgridErrorKind::BadDump, "truncated wavefunction dump");
  std::memcpy(&version, ver, 4);
  if (version != kDumpVersion)
    throw QgridError(QgridErrorKind::BadDump, "unsupported dump version " + std::to_string(version));
  Grid2D g;
  g.nx = as_count(get_f64(in));
  g.ny = as_count(get_f64(in));
  g.x0 = get_f64(in);
  g.y0 = get_f64(in);
  g.dx = get_f64(in);
  g.dy = get_f64(in);
  g.bc = (g.x0 >= 0.0 && g.y0 >= 0.0) ? Boundary::Floor : Boundary::Dirichlet;
  g.validate();
  std::vector<Complex> amps(g.size());
  for (Complex& a : amps) {
    const double re = get_f64(in);
    const double im = get_f64(in);
    a = {re, im};
  }
  return WaveFn(g, std::move(amps));
}

}  // namespace hamlab::qgrid
