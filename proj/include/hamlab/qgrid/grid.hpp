#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hamlab::qgrid {

enum class QgridErrorKind {
  InvalidGrid,
  GridTooLarge,
  GridMismatch,
  NonFinite,
  UnsupportedVariant,
  NoConvergence,
  InsufficientResolutions,
  BadDump,
};

class QgridError : public std::runtime_error {
 public:
  QgridError(QgridErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  QgridErrorKind kind() const { return kind_; }

 private:
  QgridErrorKind kind_;
};

/// Box walls: all four edges (oscillator), or the bouncer quadrant where
/// the physical walls are x = 0 and y = 0 and the far edges close the box.
/// HalfPlane is the rotated (xi, eta) frame of the cross bouncer: the axes
/// hold xi = (x + y)/sqrt2 and eta = (x - y)/sqrt2, with the floor at xi = 0
/// and eta periodic.
enum class Boundary { Dirichlet, Floor, HalfPlane };

/// Grid-point cap: HAMLAB_MAX_GRID if set and positive, else 2^20.
std::size_t max_grid_points();

/// Uniform lattice of interior points. (x0, y0) is the lower corner of the
/// box, i.e. a wall; samples sit at x_i = x0 + (i + 1) dx for i < nx, and the
/// upper wall is at x0 + (nx + 1) dx. Amplitudes are stored x-fastest.
struct Grid2D {
  int nx = 0;
  int ny = 0;
  double x0 = 0.0;
  double y0 = 0.0;
  double dx = 0.0;
  double dy = 0.0;
  Boundary bc = Boundary::Dirichlet;

  /// nx x ny interior points inside [xlo, xhi] x [ylo, yhi].
  static Grid2D box(int nx, int ny, double xlo, double xhi, double ylo, double yhi,
                    Boundary bc = Boundary::Dirichlet);
  /// Default boxes: [-8, 8]^2 and [0, 16]^2 in natural units.
  static Grid2D oscillator_box(int n, double half_extent = 8.0);
  static Grid2D bouncer_box(int n, double extent = 16.0);

  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  double x(int i) const { return x0 + (i + 1) * dx; }
  double y(int j) const { return y0 + (j + 1) * dy; }
  double x_hi() const { return x0 + (nx + 1) * dx; }
  double y_hi() const { return y0 + (ny + 1) * dy; }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(nx) * static_cast<std::size_t>(j);
  }
  double cell() const { return dx * dy; }
  /// Physical (x, y) of sample (i, j); differs from (x(i), y(j)) only in
  /// the HalfPlane frame.
  std::pair<double, double> physical(int i, int j) const;

  /// Throws InvalidGrid / GridTooLarge.
  void validate() const;
  bool same_as(const Grid2D& other) const;
};

/// One-dimensional analogue, used for the factored cross-bouncer problem.
struct Grid1D {
  int n = 0;
  double x0 = 0.0;
  double dx = 0.0;

  static Grid1D interval(int n, double lo, double hi);
  double x(int i) const { return x0 + (i + 1) * dx; }
  void validate() const;
};

using Complex = std::complex<double>;

struct WaveFn {
  Grid2D grid;
  std::vector<Complex> amps;

  WaveFn() = default;
  explicit WaveFn(const Grid2D& g);
  WaveFn(const Grid2D& g, std::vector<Complex> a);

  /// sum |psi|^2 dx dy
  double norm2() const;
  void normalize();
  bool all_finite() const;
};

/// <a|b> = sum conj(a) b dx dy. Grids must match.
Complex inner(const WaveFn& a, const WaveFn& b);

/// Flat binary layout: "HLAB", u32 version = 1, then nx, ny, x0, y0, dx, dy
/// as little-endian f64, then nx*ny (re, im) f64 pairs in x-fastest order.
/// The boundary kind is not stored; reading assumes Floor when the lower
/// corner lies in the quadrant and Dirichlet otherwise.
void write_dump(std::ostream& out, const WaveFn& psi);
WaveFn read_dump(std::istream& in);

}  // namespace hamlab::qgrid
