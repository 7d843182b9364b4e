#include "hamlab/qgrid/operator.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace hamlab::qgrid {

Eigen::MatrixXd second_derivative_matrix(int n, double d, Stencil stencil) {
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
  if (stencil == Stencil::FiniteDifference) {
    const double inv = 1.0 / (d * d);
    for (int i = 0; i < n; ++i) {
      k(i, i) = 2.0 * inv;
      if (i + 1 < n) k(i, i + 1) = k(i + 1, i) = -inv;
    }
    return k;
  }
  // K = S diag((j pi / L)^2) S with the orthogonal sine transform S.
  const double len = (n + 1) * d;
  const double pi = std::numbers::pi;
  Eigen::MatrixXd s(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      s(i, j) = std::sqrt(2.0 / (n + 1)) * std::sin(pi * (i + 1) * (j + 1) / (n + 1));
  Eigen::VectorXd w(n);
  for (int j = 0; j < n; ++j) w(j) = std::pow(pi * (j + 1) / len, 2);
  k.noalias() = s * w.asDiagonal() * s;
  return 0.5 * (k + k.transpose());
}

Eigen::MatrixXd first_derivative_matrix(int n, double d, Stencil stencil) {
  Eigen::MatrixXd dm = Eigen::MatrixXd::Zero(n, n);
  if (stencil == Stencil::FiniteDifference) {
    for (int i = 0; i + 1 < n; ++i) {
      dm(i, i + 1) = 0.5 / d;
      dm(i + 1, i) = -0.5 / d;
    }
    return dm;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) dm(i, j) = (((i - j) % 2 == 0) ? 1.0 : -1.0) / ((i - j) * d);
  return dm;
}

DiscreteOperator::DiscreteOperator(const SystemSpec& spec, const Grid2D& grid, Stencil stencil)
    : spec_(spec), grid_(grid), stencil_(stencil) {
  grid_.validate();
  if (grid.bc == Boundary::HalfPlane)
    throw QgridError(QgridErrorKind::InvalidGrid, "the rotated half-plane frame has no 2-D operator");
  if (spec.system() == SystemKind::Bouncer && spec.variant() == Variant::Cross)
    throw QgridError(QgridErrorKind::UnsupportedVariant,
                     "bouncer/cross has no rectangular-grid operator; use solve_cross_bouncer");
  const double hb2 = spec.hbar() * spec.hbar();
  if (spec.variant() == Variant::Standard) {
    kin_coef_ = hb2 / (2.0 * spec.m());
    kx_ = second_derivative_matrix(grid.nx, grid.dx, stencil);
    ky_ = second_derivative_matrix(grid.ny, grid.dy, stencil);
  } else {
    // p_x p_y / m = -(hbar^2 / m) d/dx d/dy
    cross_coef_ = -hb2 / spec.m();
    dx_ = first_derivative_matrix(grid.nx, grid.dx, stencil);
    dy_ = first_derivative_matrix(grid.ny, grid.dy, stencil);
  }
  v_.resize(grid.size());
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const double x = grid.x(i);
      const double y = grid.y(j);
      double v = 0.0;
      if (spec.system() == SystemKind::Oscillator) {
        const double k = spec.m() * spec.omega() * spec.omega();
        v = spec.variant() == Variant::Standard ? 0.5 * k * (x * x + y * y) : k * x * y;
      } else {
        v = spec.f() * (x + y);
      }
      v_[grid.index(i, j)] = v;
    }
}

template <class Scalar>
void DiscreteOperator::apply_impl(const Scalar* in, Scalar* out) const {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Map<const Mat> psi(in, grid_.nx, grid_.ny);
  Eigen::Map<Mat> res(out, grid_.nx, grid_.ny);
  if (spec_.variant() == Variant::Standard) {
    res.noalias() = kx_.template cast<Scalar>() * psi;
    res.noalias() += psi * ky_.template cast<Scalar>().transpose();
    res *= Scalar(kin_coef_);
  } else {
    const Mat tmp = dx_.template cast<Scalar>() * psi;
    res.noalias() = tmp * dy_.template cast<Scalar>().transpose();
    res *= Scalar(cross_coef_);
  }
  const std::size_t n = dim();
  for (std::size_t k = 0; k < n; ++k) out[k] += v_[k] * in[k];
}

void DiscreteOperator::apply(const double* in, double* out) const {
  apply_impl(in, out);
}

void DiscreteOperator::apply(const Complex* in, Complex* out) const {
  // the action is real: run it on the real and imaginary parts separately
  const std::size_t n = dim();
  std::vector<double> re(n), im(n), hre(n), him(n);
  for (std::size_t k = 0; k < n; ++k) {
    re[k] = in[k].real();
    im[k] = in[k].imag();
  }
  apply_impl(re.data(), hre.data());
  apply_impl(im.data(), him.data());
  for (std::size_t k = 0; k < n; ++k) out[k] = {hre[k], him[k]};
}

WaveFn DiscreteOperator::apply(const WaveFn& psi) const {
  if (!psi.grid.same_as(grid_)) throw QgridError(QgridErrorKind::GridMismatch, "operator applied on a foreign grid");
  WaveFn out(grid_);
  apply(psi.amps.data(), out.amps.data());
  return out;
}

double DiscreteOperator::expectation(const WaveFn& psi) const {
  const WaveFn h = apply(psi);
  return inner(psi, h).real() / psi.norm2();
}

Eigen::MatrixXd DiscreteOperator::dense() const {
  const int nx = grid_.nx;
  const int ny = grid_.ny;
  const auto n = static_cast<Eigen::Index>(dim());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const auto p = static_cast<Eigen::Index>(grid_.index(i, j));
      h(p, p) += v_[static_cast<std::size_t>(p)];
      if (spec_.variant() == Variant::Standard) {
        for (int a = 0; a < nx; ++a) h(p, static_cast<Eigen::Index>(grid_.index(a, j))) += kin_coef_ * kx_(i, a);
        for (int b = 0; b < ny; ++b) h(p, static_cast<Eigen::Index>(grid_.index(i, b))) += kin_coef_ * ky_(j, b);
      } else {
        for (int b = 0; b < ny; ++b) {
          const double cy = dy_(j, b);
          if (cy == 0.0) continue;
          for (int a = 0; a < nx; ++a)
            h(p, static_cast<Eigen::Index>(grid_.index(a, b))) += cross_coef_ * dx_(i, a) * cy;
        }
      }
    }
  return h;
}

double DiscreteOperator::norm_bound() const {
  auto rowmax = [](const Eigen::MatrixXd& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); };
  double b = 0.0;
  if (spec_.variant() == Variant::Standard)
    b = kin_coef_ * (rowmax(kx_) + rowmax(ky_));
  else
    b = std::abs(cross_coef_) * rowmax(dx_) * rowmax(dy_);
  double vmax = 0.0;
  for (double v : v_) vmax = std::max(vmax, std::abs(v));
  return b + vmax;
}

DiscreteOperator build_operator(const SystemSpec& spec, const Grid2D& grid, Stencil stencil) {
  return DiscreteOperator(spec, grid, stencil);
}

double hermiticity_defect(const DiscreteOperator& op, int pairs, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const Grid2D& g = op.grid();
  double worst = 0.0;
  for (int p = 0; p < pairs; ++p) {
    WaveFn a(g);
    WaveFn b(g);
    for (auto& z : a.amps) z = {gauss(rng), gauss(rng)};
    for (auto& z : b.amps) z = {gauss(rng), gauss(rng)};
    a.normalize();
    b.normalize();
    const Complex lhs = inner(a, op.apply(b));
    const Complex rhs = std::conj(inner(b, op.apply(a)));
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

}  // namespace hamlab::qgrid
