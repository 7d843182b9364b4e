#include <cmath>
#include <numbers>

#include "hamlab/specfun.hpp"

namespace hamlab::specfun {

HermiteBasisParam::HermiteBasisParam(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw SpecfunError(SpecfunErrorKind::DomainError, "alpha must be positive and finite");
}

HermiteBasisParam HermiteBasisParam::from_physical(double m, double omega, double hbar) {
  return HermiteBasisParam(std::sqrt(m * omega / hbar));
}

std::vector<double> hermite_fns(int nmax, const HermiteBasisParam& param, double x) {
  if (nmax < 0 || nmax > kHermiteMaxN)
    throw SpecfunError(SpecfunErrorKind::DomainError,
                       "hermite order " + std::to_string(nmax) + " outside [0, " + std::to_string(kHermiteMaxN) + "]");
  const double a = param.alpha();
  const double u = a * x;
  std::vector<double> psi(static_cast<std::size_t>(nmax) + 1);
  psi[0] = std::sqrt(std::sqrt(a * a / std::numbers::pi)) * std::exp(-0.5 * u * u);
  if (nmax == 0) return psi;
  psi[1] = std::numbers::sqrt2 * u * psi[0];
  for (int n = 1; n < nmax; ++n) {
    const auto k = static_cast<std::size_t>(n);
    psi[k + 1] = std::sqrt(2.0 / (n + 1)) * u * psi[k] - std::sqrt(static_cast<double>(n) / (n + 1)) * psi[k - 1];
  }
  return psi;
}

double hermite_fn(int n, const HermiteBasisParam& param, double x) {
  if (n < 0 || n > kHermiteMaxN)
    throw SpecfunError(SpecfunErrorKind::DomainError,
                       "hermite order " + std::to_string(n) + " outside [0, " + std::to_string(kHermiteMaxN) + "]");
  return hermite_fns(n, param, x).back();
}

}  // namespace hamlab::specfun
