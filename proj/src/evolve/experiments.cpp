#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "hamlab/evolve.hpp"

namespace hamlab::evolve {

DivergenceReport variance_divergence_experiment(const SystemSpec& standard, const GaussianPacket& packet,
                                                double horizon, double dt, const Grid2D& grid_a, const Grid2D& grid_b,
                                                double threshold, const PropagateOptions& opts) {
  if (standard.variant() != Variant::Standard)
    throw EvolveError(EvolveErrorKind::InvalidArgument, "the experiment takes the standard spec of the pair");
  if (!(horizon > 0.0) || !(dt > 0.0)) throw EvolveError(EvolveErrorKind::InvalidArgument, "horizon and dt must be positive");
  const SystemSpec cross = standard.with_variant(Variant::Cross);
  if (standard.system() == SystemKind::Oscillator) {
    if (!grid_a.same_as(grid_b))
      throw EvolveError(EvolveErrorKind::GridMismatch, "oscillator pair must share one grid");
  } else if (grid_b.bc != qgrid::Boundary::HalfPlane || grid_a.bc != qgrid::Boundary::Floor || grid_a.dx != grid_b.dx ||
             grid_a.dy != grid_b.dy) {
    throw EvolveError(EvolveErrorKind::GridMismatch,
                      "bouncer pair needs a quadrant grid and a HalfPlane grid of equal spacing");
  }
  // the step is shrunk so the last sample lands on the horizon exactly
  const int steps = std::max(1, static_cast<int>(std::lround(horizon / dt)));
  const double step = horizon / steps;
  const double hbar = standard.hbar();
  const Propagation a = propagate(standard, sample_packet(packet, grid_a, hbar), step, steps, opts);
  const Propagation b = propagate(cross, sample_packet(packet, grid_b, hbar), step, steps, opts);

  DivergenceReport r;
  r.threshold = threshold;
  for (std::size_t k = 0; k < a.series.size(); ++k) {
    const double gap = std::abs(a.series.var_x[k] - b.series.var_x[k]);
    if (gap > r.max_gap) {
      r.max_gap = gap;
      r.t_at_max = a.series.t[k];
    }
  }
  r.final_gap = std::abs(a.series.var_x.back() - b.series.var_x.back());
  r.detected = r.max_gap > threshold;
  r.standard = a.series;
  r.cross = b.series;
  return r;
}

std::vector<FrequencyPeak> spectral_fingerprint(const ObservableSeries& s, double min_power) {
  const std::size_t n = s.size();
  if (n < 256)
    throw EvolveError(EvolveErrorKind::SeriesTooShort,
                      "fingerprint needs at least 256 samples, got " + std::to_string(n));
  const double dt = s.t[1] - s.t[0];
  for (std::size_t k = 1; k < n; ++k)
    if (std::abs((s.t[k] - s.t[k - 1]) - dt) > 1e-9 * std::max(1.0, std::abs(dt)))
      throw EvolveError(EvolveErrorKind::InvalidArgument, "fingerprint needs uniformly sampled series");

  std::vector<double> in(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double w = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n - 1)));
    in[k] = w * s.autocorr_abs(k);
  }
  std::vector<fftw_complex> out(n / 2 + 1);
  {
    static std::mutex plan_lock;
    std::lock_guard<std::mutex> lock(plan_lock);
    fftw_plan p = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(), out.data(), FFTW_ESTIMATE);
    fftw_execute(p);
    fftw_destroy_plan(p);
  }
  std::vector<double> power(out.size());
  for (std::size_t j = 0; j < out.size(); ++j) power[j] = out[j][0] * out[j][0] + out[j][1] * out[j][1];
  const double top = *std::max_element(power.begin(), power.end());
  std::vector<FrequencyPeak> peaks;
  if (!(top > 0.0)) return peaks;
  const double bin = 2.0 * std::numbers::pi / (static_cast<double>(n) * dt);
  for (std::size_t j = 0; j < power.size(); ++j) {
    const double left = j > 0 ? power[j - 1] : -1.0;
    const double right = j + 1 < power.size() ? power[j + 1] : -1.0;
    if (power[j] < min_power * top || power[j] < left || power[j] <= right) continue;
    double shift = 0.0;
    if (j > 0 && j + 1 < power.size() && left > 0.0 && right > 0.0) {
      // parabola through the log-power of the three bins
      const double a = std::log(left), b = std::log(power[j]), c = std::log(right);
      const double den = a - 2.0 * b + c;
      if (den < 0.0) shift = 0.5 * (a - c) / den;
    }
    peaks.push_back({bin * (static_cast<double>(j) + shift), power[j] / top});
  }
  std::stable_sort(peaks.begin(), peaks.end(), [](const FrequencyPeak& x, const FrequencyPeak& y) { return x.power > y.power; });
  return peaks;
}

}  // namespace hamlab::evolve
