#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hamlab::specfun {

enum class SpecfunErrorKind { DomainError, ConvergenceFailure };

class SpecfunError : public std::runtime_error {
 public:
  SpecfunError(SpecfunErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  SpecfunErrorKind kind() const { return kind_; }

 private:
  SpecfunErrorKind kind_;
};

/// Inverse oscillator length alpha = sqrt(m omega / hbar).
class HermiteBasisParam {
 public:
  explicit HermiteBasisParam(double alpha);
  static HermiteBasisParam from_physical(double m, double omega, double hbar);
  double alpha() const { return alpha_; }

 private:
  double alpha_;
};

inline constexpr int kHermiteMaxN = 200;

/// Normalized 1-D oscillator eigenfunction
///   psi_n(x) = (alpha^2/pi)^{1/4} (2^n n!)^{-1/2} H_n(alpha x) exp(-alpha^2 x^2 / 2)
/// evaluated by the three-term recurrence on the normalized functions, so no
/// factorials or raw Hermite polynomials ever appear.
double hermite_fn(int n, const HermiteBasisParam& param, double x);

/// psi_0(x) ... psi_nmax(x) in one pass.
std::vector<double> hermite_fns(int nmax, const HermiteBasisParam& param, double x);

struct AiryValue {
  double ai;
  double aip;  ///< Ai'(z)
};

inline constexpr double kAiryMaxAbsZ = 64.0;

/// Ai(z) and Ai'(z) for |z| <= 64. Maclaurin series (quad precision) for
/// |z| < 8, asymptotic expansions beyond.
AiryValue airy_ai(double z);

/// Positive numbers z_1 < z_2 < ... with Ai(-z_n) = 0.
class AiryZeroTable {
 public:
  explicit AiryZeroTable(std::vector<double> zeros);
  const std::vector<double>& zeros() const { return zeros_; }
  std::size_t size() const { return zeros_.size(); }
  /// 1-indexed: at(1) is the first zero.
  double at(int n) const;

 private:
  std::vector<double> zeros_;
};

inline constexpr int kAiryMaxZeros = 100;

/// Asymptotic seed (3 pi (4n - 1) / 8)^{2/3}.
double airy_zero_estimate(int n);

/// First `count` zeros, Newton-polished until |Ai(-z_n)| < 1e-12.
AiryZeroTable airy_zeros(int count);

}  // namespace hamlab::specfun
