#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hamlab {

enum class SystemKind { Oscillator, Bouncer };
enum class Variant { Standard, Cross };

std::string_view to_string(SystemKind s);
std::string_view to_string(Variant v);
SystemKind parse_system(std::string_view s);
Variant parse_variant(std::string_view s);

/// Physical parameters plus which Hamiltonian is in play. Only the parameters
/// that belong to the system are set: omega for the oscillator, f for the
/// bouncer. Natural units (all ones) by default.
class SystemSpec {
 public:
  static SystemSpec oscillator(Variant v, double m = 1.0, double omega = 1.0, double hbar = 1.0);
  static SystemSpec bouncer(Variant v, double m = 1.0, double f = 1.0, double hbar = 1.0);

  SystemKind system() const { return system_; }
  Variant variant() const { return variant_; }
  double m() const { return m_; }
  double hbar() const { return hbar_; }
  /// Throws std::logic_error when asked on a bouncer.
  double omega() const;
  /// Throws std::logic_error when asked on an oscillator.
  double f() const;

  SystemSpec with_variant(Variant v) const;

  /// "oscillator/cross" etc.
  std::string name() const;

 private:
  SystemSpec() = default;

  SystemKind system_ = SystemKind::Oscillator;
  Variant variant_ = Variant::Standard;
  double m_ = 1.0;
  double hbar_ = 1.0;
  std::optional<double> omega_;
  std::optional<double> f_;
};

}  // namespace hamlab
