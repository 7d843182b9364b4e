#include <cmath>
#include <cstdio>
#include <numbers>

#include "hamlab/specfun.hpp"

namespace hamlab::specfun {

namespace {

#ifdef __SIZEOF_FLOAT128__
using Wide = __float128;
constexpr double kWideEps = 1e-33;
#else
using Wide = long double;
constexpr double kWideEps = 1e-19;
#endif

// Ai(0) and -Ai'(0), each split into a double and its residual so the wide
// type sees them to ~32 digits.
constexpr double kAi0Hi = 0.3550280538878172;
constexpr double kAi0Lo = 2.05233632436212e-17;
constexpr double kMinusAip0Hi = 0.2588194037928068;
constexpr double kMinusAip0Lo = -2.522243111610832e-17;

constexpr double kSeriesLimit = 8.0;

Wide wabs(Wide v) {
  return v < 0 ? -v : v;
}

AiryValue maclaurin(double zd) {
  const Wide z = zd;
  const Wide z3 = z * z * z;
  const Wide c1 = Wide(kAi0Hi) + Wide(kAi0Lo);
  const Wide c2 = Wide(kMinusAip0Hi) + Wide(kMinusAip0Lo);

  Wide t = 1, s = z, a = z * z / 2, b = 1;  // f, g, f', g' terms
  Wide f = t, g = s, fp = a, gp = b;
  for (int k = 1; k < 400; ++k) {
    const Wide k3 = 3 * k;
    t *= z3 / ((k3 - 1) * k3);
    s *= z3 / (k3 * (k3 + 1));
    a *= z3 / (k3 * (k3 + 2));
    b *= z3 / ((k3 - 2) * k3);
    f += t;
    g += s;
    fp += a;
    gp += b;
    const Wide scale = wabs(f) + wabs(g) + wabs(fp) + wabs(gp);
    const Wide tail = wabs(t) + wabs(s) + wabs(a) + wabs(b);
    if (tail <= Wide(kWideEps) * scale) break;
  }
  return {static_cast<double>(c1 * f - c2 * g), static_cast<double>(c1 * fp - c2 * gp)};
}

// Coefficients u_k, v_k of the large-argument expansions.
struct AsymptoticSums {
  long double u_even, u_odd, v_even, v_odd;  // alternating sums split by parity (oscillatory side)
  long double u_all, v_all;                  // alternating sums (exponential side)
};

AsymptoticSums asymptotic_sums(long double zeta) {
  AsymptoticSums r{1.0L, 0.0L, 1.0L, 0.0L, 1.0L, 1.0L};
  long double u = 1.0L;
  long double prev = 1.0L;
  long double zk = 1.0L;  // zeta^-k
  for (int k = 1; k < 200; ++k) {
    u *= static_cast<long double>((6 * k - 5) * (6 * k - 3) * (6 * k - 1)) /
         static_cast<long double>((2 * k - 1) * 216 * k);
    const long double v = -static_cast<long double>(6 * k + 1) / static_cast<long double>(6 * k - 1) * u;
    zk /= zeta;
    const long double tu = u * zk;
    const long double tv = v * zk;
    const long double mag = std::fabs(tu) + std::fabs(tv);
    if (mag > prev) break;  // asymptotic series started diverging
    prev = mag;
    const long double sign = (k % 2 == 0) ? 1.0L : -1.0L;
    r.u_all += sign * tu;
    r.v_all += sign * tv;
    // parity split: k = 2j contributes (-1)^j to the even sums, k = 2j+1 (-1)^j to the odd ones
    const int j = k / 2;
    const long double sj = (j % 2 == 0) ? 1.0L : -1.0L;
    if (k % 2 == 0) {
      r.u_even += sj * tu;
      r.v_even += sj * tv;
    } else {
      r.u_odd += sj * tu;
      r.v_odd += sj * tv;
    }
    if (mag < 1e-19L) break;
  }
  return r;
}

AiryValue asymptotic(double zd) {
  const long double pi = std::numbers::pi_v<long double>;
  const long double x = std::fabs(static_cast<long double>(zd));
  const long double zeta = 2.0L / 3.0L * x * std::sqrt(x);
  const long double q = std::sqrt(std::sqrt(x));  // x^{1/4}
  const AsymptoticSums s = asymptotic_sums(zeta);
  if (zd > 0) {
    const long double e = std::exp(-zeta) / (2.0L * std::sqrt(pi));
    return {static_cast<double>(e / q * s.u_all), static_cast<double>(-q * e * s.v_all)};
  }
  const long double phase = zeta - pi / 4.0L;
  const long double c = std::cos(phase);
  const long double sn = std::sin(phase);
  const long double norm = 1.0L / std::sqrt(pi);
  const long double ai = norm / q * (c * s.u_even + sn * s.u_odd);
  const long double aip = norm * q * (sn * s.v_even - c * s.v_odd);
  return {static_cast<double>(ai), static_cast<double>(aip)};
}

}  // namespace

AiryValue airy_ai(double z) {
  if (!std::isfinite(z) || std::fabs(z) > kAiryMaxAbsZ) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "airy_ai argument %g outside [-%g, %g]", z, kAiryMaxAbsZ, kAiryMaxAbsZ);
    throw SpecfunError(SpecfunErrorKind::DomainError, buf);
  }
  if (std::fabs(z) < kSeriesLimit) return maclaurin(z);
  return asymptotic(z);
}

AiryZeroTable::AiryZeroTable(std::vector<double> zeros) : zeros_(std::move(zeros)) {
  for (std::size_t i = 0; i < zeros_.size(); ++i) {
    if (!(zeros_[i] > 0.0) || (i > 0 && !(zeros_[i] > zeros_[i - 1])))
      throw SpecfunError(SpecfunErrorKind::DomainError, "Airy zero table must be positive and strictly increasing");
  }
}

double AiryZeroTable::at(int n) const {
  if (n < 1 || static_cast<std::size_t>(n) > zeros_.size())
    throw SpecfunError(SpecfunErrorKind::DomainError,
                       "Airy zero index " + std::to_string(n) + " outside table of " + std::to_string(zeros_.size()));
  return zeros_[static_cast<std::size_t>(n - 1)];
}

double airy_zero_estimate(int n) {
  return std::pow(3.0 * std::numbers::pi * (4.0 * n - 1.0) / 8.0, 2.0 / 3.0);
}

AiryZeroTable airy_zeros(int count) {
  if (count < 1 || count > kAiryMaxZeros)
    throw SpecfunError(SpecfunErrorKind::DomainError,
                       "Airy zero count " + std::to_string(count) + " outside [1, " + std::to_string(kAiryMaxZeros) + "]");
  std::vector<double> zeros;
  zeros.reserve(static_cast<std::size_t>(count));
  for (int n = 1; n <= count; ++n) {
    double z = airy_zero_estimate(n);
    bool converged = false;
    for (int it = 0; it < 50; ++it) {
      const AiryValue v = airy_ai(-z);
      // d/dz Ai(-z) = -Ai'(-z)
      const double step = v.ai / v.aip;
      z += step;
      if (std::fabs(step) <= 4e-16 * z) {
        converged = std::fabs(airy_ai(-z).ai) < 1e-12;
        if (converged) break;
      }
    }
    if (!converged)
      throw SpecfunError(SpecfunErrorKind::ConvergenceFailure,
                         "Newton iteration for Airy zero " + std::to_string(n) + " did not converge");
    zeros.push_back(z);
  }
  return AiryZeroTable(std::move(zeros));
}

}  // namespace hamlab::specfun
