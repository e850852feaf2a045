#include <doctest.h>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "qedens/errors.hpp"
#include "qedens/interference.hpp"

using namespace qedens;

namespace {

ScreenProfile synthetic(double (*f)(double)) {
  ScreenProfile p;
  for (int i = -500; i <= 500; ++i) {
    p.y.push_back(static_cast<double>(i));
    p.intensity.push_back(f(static_cast<double>(i)));
  }
  return p;
}

}  // namespace

TEST_CASE("one slit gives a flat screen") {
  SlitConfig c;
  c.slits = {0.0};
  const auto p = slit_pattern(c);
  REQUIRE(p.intensity.size() == c.samples);
  for (double v : p.intensity) CHECK(std::abs(v - 1.0) < 1e-12);
  CHECK_FALSE(fringe_spacing(p).has_value());
}

TEST_CASE("two-slit fringe spacing matches the Fraunhofer estimate") {
  const auto c = SlitConfig::two_slits(0.5, 10.0, 2000.0);
  const auto p = slit_pattern(c);
  const auto s = fringe_spacing(p);
  REQUIRE(s.has_value());
  CHECK(std::abs(*s - oracle::fraunhofer_spacing(0.5, 2000.0, 10.0)) <= 2.0);
  CHECK(std::abs(*s - 100.0) <= 2.0);
  CHECK(std::abs(c.aperture() - 10.0) < 1e-15);
  CHECK_FALSE(c.far_field());
}

TEST_CASE("the pattern expands with screen distance") {
  const auto near = fringe_spacing(slit_pattern(SlitConfig::two_slits(0.5, 10.0, 2000.0)));
  const auto far = fringe_spacing(slit_pattern(SlitConfig::two_slits(0.5, 10.0, 4000.0)));
  REQUIRE(near.has_value());
  REQUIRE(far.has_value());
  CHECK(std::abs(*far / *near - 2.0) <= 0.02);
}

TEST_CASE("far-field flag") {
  CHECK(SlitConfig::two_slits(0.5, 1.0, 2000.0).far_field());
  CHECK_FALSE(SlitConfig::two_slits(0.5, 10.0, 19999.0).far_field());
  CHECK(SlitConfig::two_slits(0.5, 10.0, 20000.0).far_field());
  // In the far field the spacing is lambda L / d.
  const auto c = SlitConfig::two_slits(0.05, 2.0, 8000.0);
  REQUIRE(c.far_field());
  const auto s = fringe_spacing(slit_pattern(c));
  REQUIRE(s.has_value());
  CHECK(std::abs(*s / oracle::fraunhofer_spacing(0.05, 8000.0, 2.0) - 1.0) < 0.01);
}

TEST_CASE("fringe spacing of synthetic profiles") {
  const auto cos2 = synthetic([](double y) {
    const double c = std::cos(oracle::kPi * y / 100.0);
    return c * c;
  });
  const auto s = fringe_spacing(cos2);
  REQUIRE(s.has_value());
  CHECK(std::abs(*s - 100.0) < 1e-6);
  CHECK_FALSE(fringe_spacing(synthetic([](double y) { return 1.0 + y / 500.0; })).has_value());
}

TEST_CASE("profiles are non-negative, peak-normalized and symmetric") {
  for (std::size_t n : {2u, 3u, 5u}) {
    const auto p = slit_pattern(SlitConfig::grating(n, 0.5, 10.0, 2000.0));
    double peak = 0.0;
    for (double v : p.intensity) {
      CHECK(v >= 0.0);
      peak = std::max(peak, v);
    }
    CHECK(peak == 1.0);
    const std::size_t m = p.y.size();
    for (std::size_t i = 0; i < m; ++i) {
      CHECK(p.y[i] == -p.y[m - 1 - i]);
      CHECK(std::abs(p.intensity[i] - p.intensity[m - 1 - i]) < 1e-10);
    }
  }
}

TEST_CASE("principal maxima sharpen with more slits") {
  const auto w2 = central_peak_width(slit_pattern(SlitConfig::grating(2, 0.5, 10.0, 2000.0)));
  const auto w5 = central_peak_width(slit_pattern(SlitConfig::grating(5, 0.5, 10.0, 2000.0)));
  REQUIRE(w2.has_value());
  REQUIRE(w5.has_value());
  CHECK(*w5 < *w2);
}

TEST_CASE("detections are whole counts") {
  const auto p = slit_pattern(SlitConfig::two_slits(0.5, 10.0, 2000.0));
  const auto counts = detect(p, 50000, 42);
  REQUIRE(counts.size() == p.y.size());
  CHECK(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}) == 50000);
  CHECK(detect(p, 50000, 42) == counts);
  // Dark fringes collect almost nothing compared to bright ones.
  std::uint64_t bright = 0, dark = 0;
  for (std::size_t i = 0; i < p.y.size(); ++i) {
    if (p.intensity[i] > 0.9) bright += counts[i];
    if (p.intensity[i] < 0.1) dark += counts[i];
  }
  CHECK(bright > 10 * dark);
}

TEST_CASE("per-slit weights and validation") {
  auto c = SlitConfig::two_slits(0.5, 10.0, 2000.0);
  c.weights = {1.0, 0.0};
  for (double v : slit_pattern(c).intensity) CHECK(std::abs(v - 1.0) < 1e-12);
  c.weights = {1.0, 0.5};
  double lo = 1.0;
  for (double v : slit_pattern(c).intensity) lo = std::min(lo, v);
  CHECK(std::abs(lo - 0.25 / 2.25) < 1e-4);

  SlitConfig bad;
  CHECK_THROWS_AS(slit_pattern(bad), DomainError);
  bad.slits = {0.0};
  bad.wavelength = 0.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad.wavelength = 0.5;
  bad.samples = 50;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad.samples = 1000;
  bad.weights = {1.0, 2.0};
  CHECK_THROWS_AS(bad.validate(), DomainError);
}
