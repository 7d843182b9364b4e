#include "hamlab/system.hpp"

#include <cmath>

namespace hamlab {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be positive and finite");
}

}  // namespace

std::string_view to_string(SystemKind s) {
  return s == SystemKind::Oscillator ? "oscillator" : "bouncer";
}

std::string_view to_string(Variant v) {
  return v == Variant::Standard ? "standard" : "cross";
}

SystemKind parse_system(std::string_view s) {
  if (s == "oscillator") return SystemKind::Oscillator;
  if (s == "bouncer") return SystemKind::Bouncer;
  throw std::invalid_argument("unknown system '" + std::string(s) + "' (expected oscillator|bouncer)");
}

Variant parse_variant(std::string_view s) {
  if (s == "standard") return Variant::Standard;
  if (s == "cross") return Variant::Cross;
  throw std::invalid_argument("unknown variant '" + std::string(s) + "' (expected standard|cross)");
}

SystemSpec SystemSpec::oscillator(Variant v, double m, double omega, double hbar) {
  require_positive(m, "m");
  require_positive(omega, "omega");
  require_positive(hbar, "hbar");
  SystemSpec s;
  s.system_ = SystemKind::Oscillator;
  s.variant_ = v;
  s.m_ = m;
  s.omega_ = omega;
  s.hbar_ = hbar;
  return s;
}

SystemSpec SystemSpec::bouncer(Variant v, double m, double f, double hbar) {
  require_positive(m, "m");
  require_positive(f, "f");
  require_positive(hbar, "hbar");
  SystemSpec s;
  s.system_ = SystemKind::Bouncer;
  s.variant_ = v;
  s.m_ = m;
  s.f_ = f;
  s.hbar_ = hbar;
  return s;
}

double SystemSpec::omega() const {
  if (!omega_) throw std::logic_error("omega is not defined for the bouncer");
  return *omega_;
}

double SystemSpec::f() const {
  if (!f_) throw std::logic_error("f is not defined for the oscillator");
  return *f_;
}

SystemSpec SystemSpec::with_variant(Variant v) const {
  SystemSpec s = *this;
  s.variant_ = v;
  return s;
}

std::string SystemSpec::name() const {
  return std::string(to_string(system_)) + "/" + std::string(to_string(variant_));
}

}  // namespace hamlab
