#pragma once

#include <compare>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "hamlab/qgrid/grid.hpp"
#include "hamlab/system.hpp"

namespace hamlab::spectra {

enum class SpectraErrorKind { LabelKindMismatch, GridTooSmall, InvalidCutoff };

class SpectraError : public std::runtime_error {
 public:
  SpectraError(SpectraErrorKind kind, const std::string& what, double required_extent = 0.0)
      : std::runtime_error(what), kind_(kind), required_(required_extent) {}
  SpectraErrorKind kind() const { return kind_; }
  /// Only meaningful for GridTooSmall.
  double required_extent() const { return required_; }

 private:
  SpectraErrorKind kind_;
  double required_;
};

/// Discrete (n1, n2) or mixed (n, k). Bouncer indices start at 1.
struct LevelLabel {
  enum class Kind { Discrete, Mixed };
  Kind kind = Kind::Discrete;
  int n1 = 0;
  int n2 = 0;
  double k = 0.0;  ///< wavenumber, mixed labels only (n lives in n1)

  static LevelLabel discrete(int n1, int n2) { return {Kind::Discrete, n1, n2, 0.0}; }
  static LevelLabel mixed(int n, double k) { return {Kind::Mixed, n, 0, k}; }

  /// "n1:n2" or "n:k"
  std::string str() const;
  std::partial_ordering operator<=>(const LevelLabel&) const = default;
};

struct Degeneracy {
  bool infinite = false;
  int count = 1;

  static Degeneracy inf() { return {true, 0}; }
  static Degeneracy of(int n) { return {false, n}; }
  std::string str() const;
  bool operator==(const Degeneracy&) const = default;
};

struct SpectrumEntry {
  LevelLabel label;
  double energy = 0.0;
  Degeneracy degeneracy;
};

/// Ascending by energy, ties broken by label order.
struct Spectrum {
  std::vector<SpectrumEntry> entries;

  void sort();
  bool empty() const { return entries.empty(); }
  std::size_t size() const { return entries.size(); }
};

/// l_f = (hbar^2 / 2 m f)^{1/3}.
double bouncer_length(const SystemSpec& spec);
/// l_f* = (hbar^2 / (2 sqrt2 m f))^{1/3}, the rotated-coordinate scale.
double cross_bouncer_length(const SystemSpec& spec);

/// Closed-form energy of the labelled level.
double energy(const SystemSpec& spec, const LevelLabel& label);

/// Samples the analytic eigenfunction on the grid. Discrete labels come out
/// L2-normalized; the plane-wave factor of a mixed label has unit amplitude.
qgrid::WaveFn eigenfunction(const SystemSpec& spec, const LevelLabel& label, const qgrid::Grid2D& grid);

struct Cutoffs {
  int n_max = 10;                    ///< bound on every quantum number
  std::vector<double> k_samples{0.0};  ///< wavenumbers for bouncer/cross
};

/// Every level in [lo, hi] reachable under the cutoffs, with its exact
/// degeneracy (infinite for every cross-oscillator level). One entry per
/// distinct level; the label is a representative.
Spectrum enumerate_levels(const SystemSpec& spec, double lo, double hi, const Cutoffs& cutoffs = {});

/// Lowest `count` energies counted with multiplicity, i.e. the values a
/// grid eigensolver should return. Not defined for oscillator/cross (no
/// lowest level); bouncer/cross uses k = 0.
std::vector<double> list_states(const SystemSpec& spec, int count);

/// Header `label,energy,degeneracy`.
void write_csv(std::ostream& out, const Spectrum& s);

}  // namespace hamlab::spectra
