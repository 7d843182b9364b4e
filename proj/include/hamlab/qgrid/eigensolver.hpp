#pragma once

#include <vector>

#include "hamlab/qgrid/operator.hpp"

namespace hamlab::qgrid {

inline constexpr int kMaxEigenpairs = 64;
inline constexpr std::size_t kDenseLimit = 4096;

enum class SolveMethod { Auto, Dense, Lanczos };

struct SolveMode {
  bool window = false;
  double lo = 0.0;
  double hi = 0.0;

  static SolveMode lowest() { return {}; }
  static SolveMode in_window(double lo, double hi) { return {true, lo, hi}; }
};

struct SolverOptions {
  SolveMethod method = SolveMethod::Auto;
  int max_restarts = 400;
  double tol = 1e-9;  ///< residual ||H v - e v|| relative to max(1, |e|)
  int block = 6;
};

struct Eigenpair {
  double energy = 0.0;
  WaveFn state;  ///< real-valued, grid-normalized
};

/// `lowest`: the `count` smallest eigenvalues (count <= 64). Under Auto a
/// dense LAPACK solve handles dim <= 1024, restarted block Lanczos the rest.
/// `window`: every eigenvalue in [lo, hi]; `count` is ignored. Dense up to
/// dim 4096; beyond that shift-invert Lanczos (MINRES inner solves) around
/// the window centre, capped at 64 pairs per side.
/// Results are sorted ascending and deterministic.
std::vector<Eigenpair> lowest_eigenpairs(const DiscreteOperator& op, int count, SolveMode mode = SolveMode::lowest(),
                                         const SolverOptions& opts = {});

/// Dense symmetric eigenvalues of a small matrix, ascending (LAPACK dsyevr).
/// Either the index range [il, iu] (0-based, inclusive) or the value window
/// (vl, vu]; with vectors when `vectors` is non-null.
std::vector<double> dense_eigen_range(const Eigen::MatrixXd& a, int il, int iu, Eigen::MatrixXd* vectors = nullptr);
std::vector<double> dense_eigen_window(const Eigen::MatrixXd& a, double vl, double vu,
                                       Eigen::MatrixXd* vectors = nullptr);

}  // namespace hamlab::qgrid
