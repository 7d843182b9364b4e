#include "hamlab/qgrid/eigensolver.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <string>

namespace hamlab::qgrid {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

struct RealOp {
  Index n = 0;
  std::function<void(const double*, double*)> apply;
};

struct RitzSet {
  std::vector<double> values;
  MatrixXd vectors;  // n x count, orthonormal columns
};

// Fix the arbitrary sign: the first clearly nonzero component is positive.
void canonical_sign(Eigen::Ref<VectorXd> v) {
  const double cut = 1e-8 * v.cwiseAbs().maxCoeff();
  for (Index i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) > cut) {
      if (v(i) < 0) v = -v;
      return;
    }
}

std::vector<double> run_dsyevr(const MatrixXd& a, char range, double vl, double vu, int il, int iu, MatrixXd* vecs) {
  const auto n = static_cast<lapack_int>(a.rows());
  MatrixXd work = a;
  const lapack_int max_m = range == 'I' ? iu - il + 1 : n;
  std::vector<double> w(static_cast<std::size_t>(n));
  std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(std::max<lapack_int>(max_m, 1)));
  MatrixXd z;
  const char jobz = vecs ? 'V' : 'N';
  if (vecs) z.resize(n, std::max<lapack_int>(max_m, 1));
  lapack_int m = 0;
  const lapack_int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, jobz, range, 'L', n, work.data(), n, vl, vu, il, iu, 0.0, &m,
                                         w.data(), vecs ? z.data() : nullptr, vecs ? n : 1, isuppz.data());
  if (info != 0)
    throw QgridError(QgridErrorKind::NoConvergence, "dense eigensolver (dsyevr) failed with info " + std::to_string(info));
  w.resize(static_cast<std::size_t>(m));
  if (vecs) *vecs = z.leftCols(m);
  return w;
}

// Restarted block Lanczos with full reorthogonalization and thick restart:
// the Krylov basis V is grown by blocks A*V_last, orthogonalized twice
// against everything kept; at capacity the `want + block` lowest Ritz vectors
// are kept and the residual block seeds the next sweep.
class BlockLanczos {
 public:
  BlockLanczos(const RealOp& op, int want, const SolverOptions& opts)
      : op_(op), want_(want), opts_(opts), rng_(0x5eed5eedULL) {
    block_ = std::max(opts.block, 2);
    capacity_ = static_cast<Index>(std::min<long long>(op.n, std::max(2LL * want + 8LL * block_, 100LL)));
    v_.resize(op.n, capacity_);
    av_.resize(op.n, capacity_);
  }

  RitzSet run() {
    MatrixXd start(op_.n, block_);
    start.col(0).setConstant(1.0 / std::sqrt(static_cast<double>(op_.n)));
    for (int c = 1; c < block_; ++c) start.col(c) = random_vector();
    append(start);
    double worst = std::numeric_limits<double>::infinity();
    for (int sweep = 0; sweep <= opts_.max_restarts; ++sweep) {
      while (k_ < capacity_) {
        const Index first = k_ - last_block_;
        Index added = append(av_.middleCols(first, last_block_));
        if (added == 0) added = append(random_block());
        if (added == 0) break;
      }
      // Rayleigh-Ritz on the current basis
      const MatrixXd t = v_.leftCols(k_).transpose() * av_.leftCols(k_);
      Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (t + t.transpose()));
      const Index keep = std::min<Index>(k_, std::min<Index>(want_ + block_, capacity_ - block_));
      const MatrixXd y = es.eigenvectors().leftCols(keep);
      MatrixXd u = v_.leftCols(k_) * y;
      MatrixXd au = av_.leftCols(k_) * y;
      const VectorXd theta = es.eigenvalues().head(keep);
      MatrixXd r = au - u * theta.asDiagonal();
      worst = 0.0;
      std::vector<Index> open;
      for (Index i = 0; i < keep; ++i) {
        const double rel = r.col(i).norm() / std::max(1.0, std::abs(theta(i)));
        if (i < want_) worst = std::max(worst, rel);
        if (rel > opts_.tol && static_cast<int>(open.size()) < block_) open.push_back(i);
      }
      if (worst <= opts_.tol || k_ == op_.n) {
        RitzSet out;
        out.values.assign(theta.data(), theta.data() + want_);
        out.vectors = u.leftCols(want_);
        return out;
      }
      // thick restart
      k_ = 0;
      v_.leftCols(keep) = u;
      av_.leftCols(keep) = au;
      k_ = keep;
      MatrixXd next(op_.n, static_cast<Index>(open.size()));
      for (std::size_t c = 0; c < open.size(); ++c) next.col(static_cast<Index>(c)) = r.col(open[c]);
      if (append(next) == 0) append(random_block());
    }
    throw QgridError(QgridErrorKind::NoConvergence,
                     "block Lanczos did not converge after " + std::to_string(opts_.max_restarts) +
                         " restarts; worst relative residual " + std::to_string(worst));
  }

 private:
  VectorXd random_vector() {
    std::normal_distribution<double> g;
    VectorXd v(op_.n);
    for (Index i = 0; i < op_.n; ++i) v(i) = g(rng_);
    return v;
  }

  MatrixXd random_block() {
    MatrixXd b(op_.n, block_);
    for (int c = 0; c < block_; ++c) b.col(c) = random_vector();
    return b;
  }

  // Orthonormalize the columns of `x` against the basis and each other and
  // append them (with their images under A). Returns the number added.
  Index append(const MatrixXd& x) {
    Index added = 0;
    for (Index c = 0; c < x.cols() && k_ < capacity_; ++c) {
      VectorXd w = x.col(c);
      const double before = w.norm();
      if (!(before > 0.0)) continue;
      for (int pass = 0; pass < 2; ++pass) {
        if (k_ == 0) break;
        const VectorXd h = v_.leftCols(k_).transpose() * w;
        w.noalias() -= v_.leftCols(k_) * h;
      }
      const double after = w.norm();
      if (after <= 1e-10 * before) continue;
      v_.col(k_) = w / after;
      VectorXd aw(op_.n);
      op_.apply(v_.col(k_).data(), aw.data());
      av_.col(k_) = aw;
      ++k_;
      ++added;
    }
    last_block_ = added;
    return added;
  }

  const RealOp& op_;
  Index want_;
  SolverOptions opts_;
  std::mt19937_64 rng_;
  int block_ = 0;
  Index capacity_ = 0;
  Index k_ = 0;
  Index last_block_ = 0;
  MatrixXd v_;
  MatrixXd av_;
};

std::vector<Eigenpair> package(const Grid2D& grid, const std::vector<double>& values, MatrixXd vecs) {
  std::vector<Eigenpair> out;
  out.reserve(values.size());
  const double scale = 1.0 / std::sqrt(grid.cell());
  for (std::size_t k = 0; k < values.size(); ++k) {
    auto col = vecs.col(static_cast<Index>(k));
    col.normalize();
    canonical_sign(col);
    std::vector<Complex> amps(grid.size());
    for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = {scale * col(static_cast<Index>(i)), 0.0};
    out.push_back({values[k], WaveFn(grid, std::move(amps))});
  }
  return out;
}

// MINRES for (H - shift) x = b; the shifted operator is indefinite.
void minres_shifted(const DiscreteOperator& op, double shift, const double* b, double* x_out) {
  const auto n = static_cast<Index>(op.dim());
  const Eigen::Map<const VectorXd> rhs(b, n);
  Eigen::Map<VectorXd> x(x_out, n);
  x.setZero();
  const double beta1 = rhs.norm();
  if (beta1 == 0.0) return;
  VectorXd r1 = rhs, r2 = rhs, y = rhs, v(n), w = VectorXd::Zero(n), w1(n), w2 = VectorXd::Zero(n);
  double oldb = 0.0, beta = beta1, dbar = 0.0, epsln = 0.0, phibar = beta1, cs = -1.0, sn = 0.0;
  const int max_it = static_cast<int>(std::max<Index>(20 * n, 1000));
  for (int it = 1; it <= max_it; ++it) {
    v = y / beta;
    op.apply(v.data(), y.data());
    y -= shift * v;
    if (it >= 2) y -= (beta / oldb) * r1;
    const double alfa = v.dot(y);
    y -= (alfa / beta) * r2;
    r1 = r2;
    r2 = y;
    oldb = beta;
    beta = y.norm();
    const double oldeps = epsln;
    const double delta = cs * dbar + sn * alfa;
    const double gbar = sn * dbar - cs * alfa;
    epsln = sn * beta;
    dbar = -cs * beta;
    const double gamma = std::hypot(gbar, beta);
    if (gamma == 0.0) break;
    cs = gbar / gamma;
    sn = beta / gamma;
    const double phi = cs * phibar;
    phibar *= sn;
    w1 = w2;
    w2 = w;
    w = (v - oldeps * w1 - delta * w2) / gamma;
    x += phi * w;
    if (phibar <= 1e-13 * beta1 || beta == 0.0) return;
  }
  throw QgridError(QgridErrorKind::NoConvergence,
                   "shift-invert inner solve stalled at relative residual " + std::to_string(phibar / beta1));
}

bool use_dense(const DiscreteOperator& op, const SolverOptions& opts, bool window) {
  switch (opts.method) {
    case SolveMethod::Dense:
      return true;
    case SolveMethod::Lanczos:
      return false;
    case SolveMethod::Auto:
      break;
  }
  // Lanczos reaches a handful of extreme pairs much faster than a full
  // dense reduction once the grid is past ~32^2.
  return op.dim() <= (window ? kDenseLimit : kDenseLimit / 4);
}

}  // namespace

std::vector<double> dense_eigen_range(const MatrixXd& a, int il, int iu, MatrixXd* vectors) {
  return run_dsyevr(a, 'I', 0.0, 0.0, il + 1, iu + 1, vectors);
}

std::vector<double> dense_eigen_window(const MatrixXd& a, double vl, double vu, MatrixXd* vectors) {
  return run_dsyevr(a, 'V', vl, vu, 0, 0, vectors);
}

std::vector<Eigenpair> lowest_eigenpairs(const DiscreteOperator& op, int count, SolveMode mode,
                                         const SolverOptions& opts) {
  const auto n = static_cast<Index>(op.dim());
  if (!mode.window && (count < 1 || count > kMaxEigenpairs || count > n))
    throw QgridError(QgridErrorKind::InvalidGrid,
                     "eigenpair count " + std::to_string(count) + " outside [1, " + std::to_string(kMaxEigenpairs) + "]");
  if (mode.window && !(mode.lo < mode.hi))
    throw QgridError(QgridErrorKind::InvalidGrid, "empty eigenvalue window");

  if (use_dense(op, opts, mode.window)) {
    const MatrixXd h = op.dense();
    MatrixXd vecs;
    std::vector<double> vals;
    if (mode.window)
      vals = dense_eigen_window(h, std::nextafter(mode.lo, -std::numeric_limits<double>::infinity()), mode.hi, &vecs);
    else
      vals = dense_eigen_range(h, 0, count - 1, &vecs);
    return package(op.grid(), vals, std::move(vecs));
  }

  RealOp real{n, [&op](const double* in, double* out) { op.apply(in, out); }};
  if (!mode.window) {
    BlockLanczos solver(real, count, opts);
    RitzSet rs = solver.run();
    return package(op.grid(), rs.values, std::move(rs.vectors));
  }

  // Shift-invert around a point just off the window centre (exact
  // eigenvalues at the centre are common). Eigenvalues below the shift are
  // the lowest of (H - s)^{-1}, those above the lowest of -(H - s)^{-1};
  // each side grows until it has passed its window edge.
  const double c = 0.5 * (mode.lo + mode.hi);
  const double shift = c + 0.137 * (mode.hi - mode.lo) * 0.5;
  MatrixXd collected(n, 0);
  for (double sign : {1.0, -1.0}) {
    const double edge = sign > 0 ? 1.0 / (mode.lo - shift) : -1.0 / (mode.hi - shift);
    RealOp inv{n, [&, sign](const double* in, double* out) {
                 minres_shifted(op, shift, in, out);
                 for (Index i = 0; i < n; ++i) out[i] *= sign;
               }};
    for (int want = 8;; want *= 2) {
      want = std::min<int>(want, std::min<int>(kMaxEigenpairs, static_cast<int>(n)));
      BlockLanczos solver(inv, want, opts);
      RitzSet rs = solver.run();
      if (rs.values.back() > edge || rs.values.back() >= 0.0 || want == n) {
        MatrixXd grown(n, collected.cols() + rs.vectors.cols());
        grown << collected, rs.vectors;
        collected = std::move(grown);
        break;
      }
      if (want == kMaxEigenpairs)
        throw QgridError(QgridErrorKind::NoConvergence,
                         "window holds more than " + std::to_string(kMaxEigenpairs) + " eigenvalues; use the dense path");
    }
  }
  // orthonormal basis of everything found, then Rayleigh-Ritz with H
  Eigen::JacobiSVD<MatrixXd> svd(collected, Eigen::ComputeThinU);
  Index rank = 0;
  while (rank < svd.singularValues().size() && svd.singularValues()(rank) > 1e-8) ++rank;
  const MatrixXd q = svd.matrixU().leftCols(rank);
  MatrixXd hq(n, rank);
  for (Index col = 0; col < rank; ++col) op.apply(q.col(col).data(), hq.col(col).data());
  const MatrixXd t = q.transpose() * hq;
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (t + t.transpose()));
  std::vector<double> vals;
  std::vector<Index> idx;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double e = es.eigenvalues()(i);
    if (e >= mode.lo && e <= mode.hi) {
      vals.push_back(e);
      idx.push_back(i);
    }
  }
  MatrixXd vecs(n, static_cast<Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) vecs.col(static_cast<Index>(k)) = q * es.eigenvectors().col(idx[k]);
  return package(op.grid(), vals, std::move(vecs));
}

}  // namespace hamlab::qgrid
