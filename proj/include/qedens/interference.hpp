#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace qedens {

/// Point slits on the line x = 0, screen on x = distance. Lengths in bohr.
struct SlitConfig {
  double wavelength = 0.5;
  std::vector<double> slits;    ///< y offsets of the slits
  std::vector<double> weights;  ///< per-slit amplitude; empty means all 1
  double distance = 2000.0;
  double screen_half_width = 500.0;  ///< screen spans [-w, w]
  std::size_t samples = 10001;

  /// Two slits at y = -d/2 and +d/2.
  static SlitConfig two_slits(double wavelength, double separation, double distance,
                              double screen_half_width = 500.0, std::size_t samples = 10001);
  /// N equally spaced slits with pitch d, centred on y = 0.
  static SlitConfig grating(std::size_t count, double wavelength, double pitch, double distance,
                            double screen_half_width = 500.0, std::size_t samples = 10001);

  /// Throws DomainError unless wavelength > 0, distance > 0, at least one
  /// slit, samples >= 100 and weights match the slits.
  void validate() const;

  /// Spread of the slit positions (the separation d for two slits).
  double aperture() const;
  /// Fraunhofer regime flag: distance >= 100 aperture^2 / wavelength.
  bool far_field() const;
};

struct ScreenProfile {
  std::vector<double> y;
  std::vector<double> intensity;  ///< peak-normalized, >= 0
};

/// Sums the unit-modulus path waves w_s e^{i 2 pi r_s / lambda}, r_s being the
/// exact distance from slit s to the screen point; no 1/r falloff.
ScreenProfile slit_pattern(const SlitConfig& config);

/// Mean spacing of consecutive fringe maxima in the central half of the
/// screen. A fringe is a run of samples above half peak bounded by darker
/// samples on both sides; its maximum is refined parabolically. Empty when
/// fewer than two fringes are found.
std::optional<double> fringe_spacing(const ScreenProfile& profile);

/// Full width at half maximum of the maximum closest to y = 0.
std::optional<double> central_peak_width(const ScreenProfile& profile);

/// Whole-particle detections: `trials` draws over screen samples weighted by
/// intensity, one count per detection.
std::vector<std::uint64_t> detect(const ScreenProfile& profile, std::uint64_t trials, std::uint64_t seed);

}  // namespace qedens
