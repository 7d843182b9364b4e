#include <fftw3.h>

#include <cmath>
#include <cstdio>
#include <memory>
#include <mutex>
#include <numbers>
#include <ostream>

#include "hamlab/evolve.hpp"

namespace hamlab::evolve {

namespace {

using qgrid::Boundary;
using qgrid::DiscreteOperator;

// FFTW planning is not thread-safe; execution is.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(Complex* p) {
  return reinterpret_cast<fftw_complex*>(p);
}

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(p);
  }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

// Angular wavenumber of FFT bin j on n points of spacing d.
double wavenumber(int j, int n, double d) {
  const int s = j <= n / 2 ? j : j - n;
  return 2.0 * std::numbers::pi * s / (n * d);
}

double dot_re(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k].real() * b[k].real() + a[k].imag() * b[k].imag();
  return s;
}

// --- observables ------------------------------------------------------------

class Recorder {
 public:
  Recorder(const WaveFn& psi0, double dt) : psi0_(psi0), dt_(dt) {}

  void record(int step, const WaveFn& psi, double energy) {
    const Grid2D& g = psi.grid;
    double n = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const double w = std::norm(psi.amps[g.index(i, j)]);
        const auto [x, y] = g.physical(i, j);
        n += w;
        sx += w * x;
        sy += w * y;
        sxx += w * x * x;
        syy += w * y * y;
        sxy += w * x * y;
      }
    const double mx = sx / n;
    const double my = sy / n;
    ObservableSeries& s = series_;
    s.t.push_back(step * dt_);
    s.norm.push_back(n * g.cell());
    s.mean_x.push_back(mx);
    s.mean_y.push_back(my);
    s.var_x.push_back(sxx / n - mx * mx);
    s.var_y.push_back(syy / n - my * my);
    s.cov_xy.push_back(sxy / n - mx * my);
    s.energy.push_back(energy / (n * g.cell()));
    s.autocorr.push_back(qgrid::inner(psi0_, psi));
  }

  ObservableSeries take() { return std::move(series_); }

 private:
  const WaveFn& psi0_;
  double dt_;
  ObservableSeries series_;
};

// --- steppers -----------------------------------------------------------------

class Stepper {
 public:
  virtual ~Stepper() = default;
  /// <psi|H|psi> in grid quadrature (unnormalized).
  virtual double energy(const WaveFn& psi) = 0;
  virtual void step(WaveFn& psi) = 0;
};

// (1 + i tau H) psi' = (1 - i tau H) psi with tau = dt / 2 hbar, solved by
// conjugate gradients on (1 + tau^2 H^2) psi' = (1 - i tau H)^2 psi.
class CrankNicolson final : public Stepper {
 public:
  CrankNicolson(const DiscreteOperator& op, double dt, const PropagateOptions& opts)
      : op_(op), tau_(dt / (2.0 * op.spec().hbar())), opts_(opts) {
    const std::size_t n = op.dim();
    for (auto* v : {&h_, &rhs_, &b_, &x_, &r_, &p_, &np_, &tmp_}) v->resize(n);
  }

  double energy(const WaveFn& psi) override {
    op_.apply(psi.amps.data(), h_.data());
    h_fresh_ = true;  // the next step starts from the same state
    return dot_re(psi.amps, h_) * psi.grid.cell();
  }

  void step(WaveFn& psi) override {
    const std::size_t n = op_.dim();
    const Complex it{0.0, tau_};
    if (!h_fresh_) op_.apply(psi.amps.data(), h_.data());
    h_fresh_ = false;
    for (std::size_t k = 0; k < n; ++k) rhs_[k] = psi.amps[k] - it * h_[k];
    op_.apply(rhs_.data(), tmp_.data());
    for (std::size_t k = 0; k < n; ++k) {
      b_[k] = rhs_[k] - it * tmp_[k];
      x_[k] = 2.0 * rhs_[k] - psi.amps[k];  // first-order guess
    }
    normal(x_, np_);
    for (std::size_t k = 0; k < n; ++k) r_[k] = b_[k] - np_[k];
    p_ = r_;
    const double bnorm = std::sqrt(dot_re(b_, b_));
    double rr = dot_re(r_, r_);
    int iter = 0;
    while (std::sqrt(rr) > opts_.inner_tol * bnorm) {
      if (++iter > opts_.max_inner || !std::isfinite(rr))
        throw EvolveError(EvolveErrorKind::InnerSolveDivergence,
                          "Crank-Nicolson inner solve stalled at relative residual " +
                              std::to_string(std::sqrt(rr) / bnorm));
      normal(p_, np_);
      const double alpha = rr / dot_re(p_, np_);
      for (std::size_t k = 0; k < n; ++k) {
        x_[k] += alpha * p_[k];
        r_[k] -= alpha * np_[k];
      }
      const double rr_new = dot_re(r_, r_);
      const double beta = rr_new / rr;
      rr = rr_new;
      for (std::size_t k = 0; k < n; ++k) p_[k] = r_[k] + beta * p_[k];
    }
    psi.amps = x_;
  }

 private:
  // out = (1 + tau^2 H^2) in
  void normal(const std::vector<Complex>& in, std::vector<Complex>& out) {
    op_.apply(in.data(), tmp_.data());
    op_.apply(tmp_.data(), out.data());
    const double t2 = tau_ * tau_;
    for (std::size_t k = 0; k < in.size(); ++k) out[k] = in[k] + t2 * out[k];
  }

  const DiscreteOperator& op_;
  double tau_;
  PropagateOptions opts_;
  std::vector<Complex> h_, rhs_, b_, x_, r_, p_, np_, tmp_;
  bool h_fresh_ = false;
};

double ring_max(const WaveFn& psi) {
  const Grid2D& g = psi.grid;
  double m = 0.0;
  for (int i = 0; i < g.nx; ++i) {
    m = std::max(m, std::abs(psi.amps[g.index(i, 0)]));
    m = std::max(m, std::abs(psi.amps[g.index(i, g.ny - 1)]));
  }
  for (int j = 0; j < g.ny; ++j) {
    m = std::max(m, std::abs(psi.amps[g.index(0, j)]));
    m = std::max(m, std::abs(psi.amps[g.index(g.nx - 1, j)]));
  }
  return m;
}

// Strang splitting exp(-iV dt/2h) exp(-iT dt/h) exp(-iV dt/2h) on the
// periodic extension of the grid.
class SplitOperator final : public Stepper {
 public:
  SplitOperator(const SystemSpec& spec, const Grid2D& g, double dt, const PropagateOptions& opts)
      : grid_(g), leak_tol_(opts.leak_tol), buf_(g.size()) {
    if (spec.system() != SystemKind::Oscillator)
      throw EvolveError(EvolveErrorKind::InvalidArgument, "split-operator propagation is for oscillator variants");
    const double hbar = spec.hbar();
    const double m = spec.m();
    const double k2 = m * spec.omega() * spec.omega();
    const std::size_t n = g.size();
    v_.resize(n);
    t_.resize(n);
    half_v_.resize(n);
    kin_.resize(n);
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const std::size_t k = g.index(i, j);
        const double x = g.x(i);
        const double y = g.y(j);
        const double kx = wavenumber(i, g.nx, g.dx);
        const double ky = wavenumber(j, g.ny, g.dy);
        if (spec.variant() == Variant::Standard) {
          v_[k] = 0.5 * k2 * (x * x + y * y);
          t_[k] = hbar * hbar * (kx * kx + ky * ky) / (2.0 * m);
        } else {
          v_[k] = k2 * x * y;
          t_[k] = hbar * hbar * kx * ky / m;
        }
        half_v_[k] = std::polar(1.0, -0.5 * v_[k] * dt / hbar);
        kin_[k] = std::polar(1.0 / static_cast<double>(n), -t_[k] * dt / hbar);
      }
    std::lock_guard<std::mutex> lock(plan_mutex());
    fwd_.reset(fftw_plan_dft_2d(g.ny, g.nx, as_fftw(buf_.data()), as_fftw(buf_.data()), FFTW_FORWARD, FFTW_ESTIMATE));
    bwd_.reset(fftw_plan_dft_2d(g.ny, g.nx, as_fftw(buf_.data()), as_fftw(buf_.data()), FFTW_BACKWARD, FFTW_ESTIMATE));
  }

  double energy(const WaveFn& psi) override {
    buf_ = psi.amps;
    fftw_execute(fwd_.get());
    double kin = 0.0;
    double pot = 0.0;
    for (std::size_t k = 0; k < buf_.size(); ++k) {
      kin += t_[k] * std::norm(buf_[k]);
      pot += v_[k] * std::norm(psi.amps[k]);
    }
    return (kin / static_cast<double>(buf_.size()) + pot) * grid_.cell();
  }

  void step(WaveFn& psi) override {
    check_leak(psi);
    for (std::size_t k = 0; k < buf_.size(); ++k) buf_[k] = half_v_[k] * psi.amps[k];
    fftw_execute(fwd_.get());
    for (std::size_t k = 0; k < buf_.size(); ++k) buf_[k] *= kin_[k];
    fftw_execute(bwd_.get());
    for (std::size_t k = 0; k < buf_.size(); ++k) psi.amps[k] = half_v_[k] * buf_[k];
    check_leak(psi);
  }

 private:
  void check_leak(const WaveFn& psi) const {
    const double edge = ring_max(psi);
    if (edge > leak_tol_) {
      char msg[128];
      std::snprintf(msg, sizeof msg, "boundary amplitude %.3g exceeds %.3g; enlarge the periodic box", edge, leak_tol_);
      throw EvolveError(EvolveErrorKind::BoundaryLeak, msg);
    }
  }

  Grid2D grid_;
  double leak_tol_;
  std::vector<Complex> buf_;
  std::vector<double> v_, t_;
  std::vector<Complex> half_v_, kin_;
  Plan fwd_, bwd_;
};

// bouncer/cross in the rotated frame, H = H_xi - p_eta^2 / 2m. The two parts
// act on different variables and commute, so each step is the exact Cayley
// transform of H_xi (eigenbasis of the 1-D matrix) followed by the exact
// free phase in eta.
class FactoredCrossBouncer final : public Stepper {
 public:
  FactoredCrossBouncer(const SystemSpec& spec, const Grid2D& g, double dt, const PropagateOptions& opts)
      : grid_(g), buf_(g.size()) {
    if (g.x0 != 0.0)
      throw EvolveError(EvolveErrorKind::InvalidArgument, "cross-bouncer grid must start at the floor xi = 0");
    const double hbar = spec.hbar();
    const double m = spec.m();
    hxi_ = hbar * hbar / (2.0 * m) * qgrid::second_derivative_matrix(g.nx, g.dx, opts.stencil);
    for (int i = 0; i < g.nx; ++i) hxi_(i, i) += std::numbers::sqrt2 * spec.f() * g.x(i);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hxi_);
    const double tau = dt / (2.0 * hbar);
    Eigen::VectorXcd cay(g.nx);
    for (int i = 0; i < g.nx; ++i) {
      const double l = es.eigenvalues()(i);
      cay(i) = Complex(1.0, -tau * l) / Complex(1.0, tau * l);
    }
    const Eigen::MatrixXcd v = es.eigenvectors().cast<Complex>();
    cayley_ = v * cay.asDiagonal() * v.transpose();
    eta_kin_.resize(static_cast<std::size_t>(g.ny));
    eta_phase_.resize(static_cast<std::size_t>(g.ny));
    for (int j = 0; j < g.ny; ++j) {
      const double k = wavenumber(j, g.ny, g.dy);
      eta_kin_[static_cast<std::size_t>(j)] = -hbar * hbar * k * k / (2.0 * m);
      eta_phase_[static_cast<std::size_t>(j)] = std::polar(1.0 / g.ny, -eta_kin_[static_cast<std::size_t>(j)] * dt / hbar);
    }
    // one transform along eta for every xi row: stride nx, distance 1
    int n_eta = g.ny;
    std::lock_guard<std::mutex> lock(plan_mutex());
    fwd_.reset(fftw_plan_many_dft(1, &n_eta, g.nx, as_fftw(buf_.data()), nullptr, g.nx, 1, as_fftw(buf_.data()), nullptr,
                                  g.nx, 1, FFTW_FORWARD, FFTW_ESTIMATE));
    bwd_.reset(fftw_plan_many_dft(1, &n_eta, g.nx, as_fftw(buf_.data()), nullptr, g.nx, 1, as_fftw(buf_.data()), nullptr,
                                  g.nx, 1, FFTW_BACKWARD, FFTW_ESTIMATE));
  }

  double energy(const WaveFn& psi) override {
    const Grid2D& g = grid_;
    Eigen::Map<const Eigen::MatrixXcd> p(psi.amps.data(), g.nx, g.ny);
    const Eigen::MatrixXcd hp = hxi_.cast<Complex>() * p;
    double e = (p.conjugate().cwiseProduct(hp)).sum().real();
    buf_ = psi.amps;
    fftw_execute(fwd_.get());
    double kin = 0.0;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) kin += eta_kin_[static_cast<std::size_t>(j)] * std::norm(buf_[g.index(i, j)]);
    e += kin / g.ny;
    return e * g.cell();
  }

  void step(WaveFn& psi) override {
    const Grid2D& g = grid_;
    Eigen::Map<Eigen::MatrixXcd> p(psi.amps.data(), g.nx, g.ny);
    Eigen::Map<Eigen::MatrixXcd> b(buf_.data(), g.nx, g.ny);
    b.noalias() = cayley_ * p;
    fftw_execute(fwd_.get());
    for (int j = 0; j < g.ny; ++j) b.col(j) *= eta_phase_[static_cast<std::size_t>(j)];
    fftw_execute(bwd_.get());
    p = b;
  }

 private:
  Grid2D grid_;
  std::vector<Complex> buf_;
  Eigen::MatrixXd hxi_;
  Eigen::MatrixXcd cayley_;
  std::vector<double> eta_kin_;
  std::vector<Complex> eta_phase_;
  Plan fwd_, bwd_;
};

}  // namespace

Grid2D half_plane_grid(int n_xi, double xi_max, int n_eta, double eta_half) {
  return Grid2D::box(n_xi, n_eta, 0.0, xi_max, -eta_half, eta_half, Boundary::HalfPlane);
}

Propagation propagate(const SystemSpec& spec, const WaveFn& initial, double dt, int n_steps,
                      const PropagateOptions& opts) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw EvolveError(EvolveErrorKind::InvalidArgument, "dt must be positive");
  if (n_steps < 0) throw EvolveError(EvolveErrorKind::InvalidArgument, "negative step count");
  if (!initial.all_finite()) throw EvolveError(EvolveErrorKind::InvalidArgument, "initial state is not finite");
  const Grid2D& g = initial.grid;
  g.validate();
  const bool cross_bouncer = spec.system() == SystemKind::Bouncer && spec.variant() == Variant::Cross;
  if (cross_bouncer != (g.bc == Boundary::HalfPlane))
    throw EvolveError(EvolveErrorKind::GridMismatch,
                      cross_bouncer ? "bouncer/cross propagates on a HalfPlane (xi, eta) grid"
                                    : "HalfPlane grids are only for bouncer/cross");

  std::unique_ptr<DiscreteOperator> op;
  std::unique_ptr<Stepper> stepper;
  if (cross_bouncer) {
    stepper = std::make_unique<FactoredCrossBouncer>(spec, g, dt, opts);
  } else if (opts.scheme == Scheme::SplitOperator) {
    stepper = std::make_unique<SplitOperator>(spec, g, dt, opts);
  } else {
    op = std::make_unique<DiscreteOperator>(spec, g, opts.stencil);
    stepper = std::make_unique<CrankNicolson>(*op, dt, opts);
  }

  Propagation out;
  WaveFn psi = initial;
  Recorder rec(initial, dt);
  for (int s = 0; s <= n_steps; ++s) {
    rec.record(s, psi, stepper->energy(psi));
    if (opts.snapshot_every > 0 && s % opts.snapshot_every == 0) out.snapshots.push_back(psi);
    if (s < n_steps) stepper->step(psi);
  }
  out.series = rec.take();
  out.final_state = std::move(psi);
  return out;
}

void write_csv(std::ostream& out, const ObservableSeries& s) {
  out << "t,norm,mean_x,mean_y,var_x,var_y,cov_xy,energy,autocorr\n";
  char line[512];
  for (std::size_t k = 0; k < s.size(); ++k) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s.t[k], s.norm[k],
                  s.mean_x[k], s.mean_y[k], s.var_x[k], s.var_y[k], s.cov_xy[k], s.energy[k], s.autocorr_abs(k));
    out << line;
  }
}

}  // namespace hamlab::evolve
