#include "qedens/interference.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "qedens/errors.hpp"
#include "qedens/grid.hpp"
#include "qedens/synthesis.hpp"

namespace qedens {

SlitConfig SlitConfig::two_slits(double wavelength, double separation, double distance,
                                 double screen_half_width, std::size_t samples) {
  return grating(2, wavelength, separation, distance, screen_half_width, samples);
}

SlitConfig SlitConfig::grating(std::size_t count, double wavelength, double pitch, double distance,
                               double screen_half_width, std::size_t samples) {
  SlitConfig c;
  c.wavelength = wavelength;
  c.distance = distance;
  c.screen_half_width = screen_half_width;
  c.samples = samples;
  for (std::size_t s = 0; s < count; ++s) {
    c.slits.push_back(pitch * (static_cast<double>(s) - 0.5 * static_cast<double>(count - 1)));
  }
  return c;
}

void SlitConfig::validate() const {
  if (!(wavelength > 0.0)) throw DomainError("wavelength: must be positive");
  if (!(distance > 0.0)) throw DomainError("distance: must be positive");
  if (slits.empty()) throw DomainError("slits: need at least one slit");
  if (samples < 100) throw DomainError("samples: need at least 100 screen samples");
  if (!(screen_half_width > 0.0)) throw DomainError("screen_half_width: must be positive");
  if (!weights.empty() && weights.size() != slits.size()) {
    throw DomainError("weights: one weight per slit required");
  }
}

double SlitConfig::aperture() const {
  if (slits.size() < 2) return 0.0;
  const auto [lo, hi] = std::minmax_element(slits.begin(), slits.end());
  return *hi - *lo;
}

bool SlitConfig::far_field() const {
  const double d = aperture();
  return distance >= 100.0 * d * d / wavelength;
}

ScreenProfile slit_pattern(const SlitConfig& config) {
  config.validate();
  const std::size_t n = config.samples;
  ScreenProfile out{std::vector<double>(n), std::vector<double>(n)};
  const double k = 2.0 * kPi / config.wavelength;
  const double last = static_cast<double>(n - 1);
  double peak = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    // Written so that mirrored samples are exact negatives of each other.
    const double y = config.screen_half_width * (2.0 * static_cast<double>(i) - last) / last;
    Complex sum{0.0, 0.0};
    for (std::size_t s = 0; s < config.slits.size(); ++s) {
      const double w = config.weights.empty() ? 1.0 : config.weights[s];
      const double r = std::hypot(config.distance, y - config.slits[s]);
      sum += w * std::polar(1.0, k * r);
    }
    out.y[i] = y;
    out.intensity[i] = std::norm(sum);
    peak = std::max(peak, out.intensity[i]);
  }
  if (peak > 0.0) {
    for (double& v : out.intensity) v /= peak;
  }
  return out;
}

namespace {

std::vector<std::size_t> local_maxima(const ScreenProfile& p, double threshold) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 1; i + 1 < p.intensity.size(); ++i) {
    const double v = p.intensity[i];
    if (v > p.intensity[i - 1] && v >= p.intensity[i + 1] && v >= threshold) idx.push_back(i);
  }
  return idx;
}

// One index per fringe: the largest sample of each run above `threshold`
// that is closed by sub-threshold samples on both sides.
std::vector<std::size_t> fringe_peaks(const ScreenProfile& p, double threshold) {
  std::vector<std::size_t> idx;
  const auto& I = p.intensity;
  std::size_t i = 0;
  while (i < I.size()) {
    if (I[i] < threshold) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    std::size_t best = i;
    while (i < I.size() && I[i] >= threshold) {
      if (I[i] > I[best]) best = i;
      ++i;
    }
    if (start > 0 && i < I.size()) idx.push_back(best);
  }
  return idx;
}

double refine(const ScreenProfile& p, std::size_t i) {
  const double a = p.intensity[i - 1];
  const double b = p.intensity[i];
  const double c = p.intensity[i + 1];
  const double denom = a - 2.0 * b + c;
  const double h = p.y[i + 1] - p.y[i];
  if (denom == 0.0) return p.y[i];
  return p.y[i] + 0.5 * h * (a - c) / denom;
}

}  // namespace

std::optional<double> fringe_spacing(const ScreenProfile& profile) {
  if (profile.y.size() < 3) return std::nullopt;
  const double peak = *std::max_element(profile.intensity.begin(), profile.intensity.end());
  const double lo = profile.y.front();
  const double hi = profile.y.back();
  const double centre = 0.5 * (lo + hi);
  const double reach = 0.25 * (hi - lo);
  std::vector<double> peaks;
  for (std::size_t i : fringe_peaks(profile, 0.5 * peak)) {
    const double y = refine(profile, i);
    if (std::abs(y - centre) <= reach) peaks.push_back(y);
  }
  if (peaks.size() < 2) return std::nullopt;
  return (peaks.back() - peaks.front()) / static_cast<double>(peaks.size() - 1);
}

std::optional<double> central_peak_width(const ScreenProfile& profile) {
  const auto maxima = local_maxima(profile, 0.0);
  if (maxima.empty()) return std::nullopt;
  const std::size_t c = *std::min_element(maxima.begin(), maxima.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(profile.y[a]) < std::abs(profile.y[b]);
  });
  const double half = 0.5 * profile.intensity[c];
  const auto& I = profile.intensity;
  const auto& y = profile.y;
  std::size_t l = c;
  while (l > 0 && I[l] >= half) --l;
  std::size_t r = c;
  while (r + 1 < I.size() && I[r] >= half) ++r;
  if (I[l] >= half || I[r] >= half) return std::nullopt;
  const double yl = y[l] + (half - I[l]) * (y[l + 1] - y[l]) / (I[l + 1] - I[l]);
  const double yr = y[r - 1] + (half - I[r - 1]) * (y[r] - y[r - 1]) / (I[r] - I[r - 1]);
  return yr - yl;
}

std::vector<std::uint64_t> detect(const ScreenProfile& profile, std::uint64_t trials, std::uint64_t seed) {
  return sample_counts(profile.intensity, trials, seed);
}

}  // namespace qedens
