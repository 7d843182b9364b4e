#include "hamlab/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <ostream>

#include "hamlab/specfun.hpp"

namespace hamlab::spectra {

namespace {

using qgrid::Complex;
using qgrid::Grid2D;
using qgrid::WaveFn;

const specfun::AiryZeroTable& zero_table() {
  static const specfun::AiryZeroTable table = specfun::airy_zeros(specfun::kAiryMaxZeros);
  return table;
}

double zero(int n) {
  if (n < 1 || n > specfun::kAiryMaxZeros)
    throw SpectraError(SpectraErrorKind::InvalidCutoff,
                       "bouncer index " + std::to_string(n) + " outside [1, " +
                           std::to_string(specfun::kAiryMaxZeros) + "]");
  return zero_table().at(n);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool is_mixed_system(const SystemSpec& s) {
  return s.system() == SystemKind::Bouncer && s.variant() == Variant::Cross;
}

void check_kind(const SystemSpec& spec, const LevelLabel& label) {
  const bool want_mixed = is_mixed_system(spec);
  if (want_mixed != (label.kind == LevelLabel::Kind::Mixed))
    throw SpectraError(SpectraErrorKind::LabelKindMismatch,
                       "label " + label.str() + " does not fit " + spec.name());
  const int lowest = spec.system() == SystemKind::Bouncer ? 1 : 0;
  if (label.n1 < lowest || (!want_mixed && label.n2 < lowest))
    throw SpectraError(SpectraErrorKind::LabelKindMismatch, "quantum number below " + std::to_string(lowest) +
                                                               " in label " + label.str());
}

// 1-D bouncer eigenfunction Ai(s/l - z_n) / (sqrt(l) |Ai'(-z_n)|), s >= 0.
double airy_mode(int n, double l, double s) {
  if (s <= 0.0) return 0.0;
  const double z = s / l - zero(n);
  if (z > specfun::kAiryMaxAbsZ) return 0.0;  // below double underflow scale anyway
  const double norm = std::sqrt(l) * std::abs(specfun::airy_ai(-zero(n)).aip);
  return specfun::airy_ai(z).ai / norm;
}

[[noreturn]] void too_small(const std::string& what, double required) {
  throw SpectraError(SpectraErrorKind::GridTooSmall, what + "; required extent " + fmt(required), required);
}

void check_oscillator_grid(const SystemSpec& spec, const LevelLabel& label, const Grid2D& g) {
  const double alpha = std::sqrt(spec.m() * spec.omega() / spec.hbar());
  const int n = std::max(label.n1, label.n2);
  // classical turning point of level n plus five oscillator lengths
  const double need = (std::sqrt(2.0 * n + 1.0) + 5.0) / alpha;
  const double have = std::min({-g.x0, g.x_hi(), -g.y0, g.y_hi()});
  if (have < need) too_small("oscillator grid does not cover the support of " + label.str(), need);
}

void check_bouncer_grid(double l, int n, double have, const std::string& what) {
  const double need = (zero(n) + 8.0) * l;
  if (have < need) too_small(what, need);
}

}  // namespace

std::string LevelLabel::str() const {
  if (kind == Kind::Discrete) return std::to_string(n1) + ":" + std::to_string(n2);
  return std::to_string(n1) + ":" + fmt(k);
}

std::string Degeneracy::str() const {
  return infinite ? "inf" : std::to_string(count);
}

void Spectrum::sort() {
  std::stable_sort(entries.begin(), entries.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return a.label < b.label;
  });
}

double bouncer_length(const SystemSpec& spec) {
  return std::cbrt(spec.hbar() * spec.hbar() / (2.0 * spec.m() * spec.f()));
}

double cross_bouncer_length(const SystemSpec& spec) {
  return std::cbrt(spec.hbar() * spec.hbar() / (2.0 * std::numbers::sqrt2 * spec.m() * spec.f()));
}

double energy(const SystemSpec& spec, const LevelLabel& label) {
  check_kind(spec, label);
  if (spec.system() == SystemKind::Oscillator) {
    const double hw = spec.hbar() * spec.omega();
    if (spec.variant() == Variant::Standard) return hw * (label.n1 + label.n2 + 1);
    return hw * (label.n1 - label.n2);
  }
  if (spec.variant() == Variant::Standard) return spec.f() * bouncer_length(spec) * (zero(label.n1) + zero(label.n2));
  return std::numbers::sqrt2 * spec.f() * cross_bouncer_length(spec) * zero(label.n1) +
         spec.hbar() * spec.hbar() * label.k * label.k / (2.0 * spec.m());
}

WaveFn eigenfunction(const SystemSpec& spec, const LevelLabel& label, const Grid2D& g) {
  check_kind(spec, label);
  g.validate();
  WaveFn psi(g);
  const double r2 = std::numbers::sqrt2;
  if (spec.system() == SystemKind::Oscillator) {
    check_oscillator_grid(spec, label, g);
    const auto param = specfun::HermiteBasisParam::from_physical(spec.m(), spec.omega(), spec.hbar());
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const double x = g.x(i);
        const double y = g.y(j);
        const double u = spec.variant() == Variant::Standard ? x : (x + y) / r2;
        const double v = spec.variant() == Variant::Standard ? y : (x - y) / r2;
        psi.amps[g.index(i, j)] = specfun::hermite_fn(label.n1, param, u) * specfun::hermite_fn(label.n2, param, v);
      }
    return psi;
  }
  if (g.x0 < 0.0 || g.y0 < 0.0) too_small("bouncer grid must lie in the quadrant x, y >= 0", 0.0);
  if (spec.variant() == Variant::Standard) {
    const double l = bouncer_length(spec);
    const int n = std::max(label.n1, label.n2);
    check_bouncer_grid(l, n, std::min(g.x_hi(), g.y_hi()), "bouncer grid too short for level " + label.str());
    std::vector<double> fx(static_cast<std::size_t>(g.nx));
    std::vector<double> fy(static_cast<std::size_t>(g.ny));
    for (int i = 0; i < g.nx; ++i) fx[static_cast<std::size_t>(i)] = airy_mode(label.n1, l, g.x(i));
    for (int j = 0; j < g.ny; ++j) fy[static_cast<std::size_t>(j)] = airy_mode(label.n2, l, g.y(j));
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i)
        psi.amps[g.index(i, j)] = fx[static_cast<std::size_t>(i)] * fy[static_cast<std::size_t>(j)];
    return psi;
  }
  const double l = cross_bouncer_length(spec);
  check_bouncer_grid(l, label.n1, (g.x_hi() + g.y_hi()) / r2, "grid too short in xi for level " + label.str());
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double xi = (g.x(i) + g.y(j)) / r2;
      const double eta = (g.x(i) - g.y(j)) / r2;
      psi.amps[g.index(i, j)] = airy_mode(label.n1, l, xi) * std::polar(1.0, label.k * eta);
    }
  return psi;
}

Spectrum enumerate_levels(const SystemSpec& spec, double lo, double hi, const Cutoffs& cut) {
  if (cut.n_max < 0) throw SpectraError(SpectraErrorKind::InvalidCutoff, "n_max must be non-negative");
  Spectrum s;
  auto keep = [&](double e) { return e >= lo && e <= hi; };
  if (spec.system() == SystemKind::Oscillator) {
    if (spec.variant() == Variant::Standard) {
      for (int n = 0; n <= cut.n_max; ++n) {
        const LevelLabel l = LevelLabel::discrete(n, 0);
        if (keep(energy(spec, l))) s.entries.push_back({l, energy(spec, l), Degeneracy::of(n + 1)});
      }
    } else {
      for (int d = -cut.n_max; d <= cut.n_max; ++d) {
        const LevelLabel l = d >= 0 ? LevelLabel::discrete(d, 0) : LevelLabel::discrete(0, -d);
        if (keep(energy(spec, l))) s.entries.push_back({l, energy(spec, l), Degeneracy::inf()});
      }
    }
  } else if (spec.variant() == Variant::Standard) {
    if (cut.n_max > specfun::kAiryMaxZeros)
      throw SpectraError(SpectraErrorKind::InvalidCutoff, "bouncer cutoff beyond the Airy zero table");
    for (int a = 1; a <= cut.n_max; ++a)
      for (int b = a; b <= cut.n_max; ++b) {
        const LevelLabel l = LevelLabel::discrete(a, b);
        if (keep(energy(spec, l))) s.entries.push_back({l, energy(spec, l), Degeneracy::of(a == b ? 1 : 2)});
      }
  } else {
    if (cut.n_max > specfun::kAiryMaxZeros)
      throw SpectraError(SpectraErrorKind::InvalidCutoff, "bouncer cutoff beyond the Airy zero table");
    for (int n = 1; n <= cut.n_max; ++n)
      for (double k : cut.k_samples) {
        const LevelLabel l = LevelLabel::mixed(n, k);
        if (keep(energy(spec, l))) s.entries.push_back({l, energy(spec, l), Degeneracy::of(1)});
      }
  }
  s.sort();
  return s;
}

std::vector<double> list_states(const SystemSpec& spec, int count) {
  if (count < 1) throw SpectraError(SpectraErrorKind::InvalidCutoff, "state count must be positive");
  std::vector<double> out;
  if (spec.system() == SystemKind::Oscillator) {
    if (spec.variant() == Variant::Cross)
      throw SpectraError(SpectraErrorKind::InvalidCutoff, "oscillator/cross has no lowest states");
    for (int n = 0; static_cast<int>(out.size()) < count; ++n)
      for (int d = 0; d <= n && static_cast<int>(out.size()) < count; ++d)
        out.push_back(energy(spec, LevelLabel::discrete(n, 0)));
    return out;
  }
  if (spec.variant() == Variant::Cross) {
    for (int n = 1; n <= count; ++n) out.push_back(energy(spec, LevelLabel::mixed(n, 0.0)));
    return out;
  }
  // enough pairs for `count` states: all (a, b) with a, b <= count
  const int top = std::min(count, specfun::kAiryMaxZeros);
  for (int a = 1; a <= top; ++a)
    for (int b = 1; b <= top; ++b) out.push_back(energy(spec, LevelLabel::discrete(a, b)));
  std::sort(out.begin(), out.end());
  out.resize(static_cast<std::size_t>(count));
  return out;
}

void write_csv(std::ostream& out, const Spectrum& s) {
  out << "label,energy,degeneracy\n";
  for (const auto& e : s.entries) out << e.label.str() << ',' << fmt(e.energy) << ',' << e.degeneracy.str() << '\n';
}

}  // namespace hamlab::spectra
