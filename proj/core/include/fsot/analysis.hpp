#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fsot/classes.hpp"
#include "fsot/core.hpp"
#include "fsot/image.hpp"

namespace fsot {

/// Periodogram on the integer frequency grid k in [-R/2, R/2)^2 with the DC
/// term zeroed, plus its radially averaged profile. Frequencies of the profile
/// are |k| / sqrt(normalizer), so white noise of any size sits at power 1 and
/// blue-noise features line up across point counts.
struct SpectrumResult {
  int resolution = 0;
  double normalizer = 1.0;      // N for point sets, pixel count for images
  std::vector<double> power;    // R x R, index (ky + R/2) * R + (kx + R/2)
  std::vector<double> radial_freq;
  std::vector<double> radial_power;

  double at(int kx, int ky) const {
    return power[std::size_t(ky + resolution / 2) * std::size_t(resolution) + std::size_t(kx + resolution / 2)];
  }
};

/// P(k) = |sum_j exp(-2 pi i k.x_j)|^2 / N for 2D points.
SpectrumResult power_spectrum(const PointList& points, int resolution);

/// Periodogram of a real image sampled on its pixel grid (frequency in cycles
/// per image), normalized by the pixel count; resolution is the image size.
SpectrumResult image_spectrum(const Image& image);

/// Element-wise mean of spectra with identical layout.
SpectrumResult average_spectra(std::span<const SpectrumResult> spectra);

/// Mean radial-profile power over 0 < f <= f_cut.
double low_freq_power(const SpectrumResult& spec, double f_cut);

/// Mean power in wedges around the coordinate axes divided by the mean power
/// in wedges around the diagonals, over 0 < f <= f_max. Isotropic spectra give
/// about 1; axis-aligned structure pushes the ratio up.
double anisotropy_ratio(const SpectrumResult& spec, double f_max, double half_angle_degrees = 10.0);

/// Exact 1D W1 between equal-size samples: mean |x_(i) - y_(i)|.
double w1_1d(std::span<const double> xs, std::span<const double> ys);

/// Continuous piecewise-linear function on [0,1] given by knots with
/// increasing x covering both ends.
class PiecewiseLinear1D {
 public:
  struct Knot {
    double x;
    double y;
  };
  explicit PiecewiseLinear1D(std::vector<Knot> knots);
  double operator()(double x) const;
  double lipschitz() const;
  /// Exact integral over [a, b], 0 <= a <= b <= 1.
  double integral(double a, double b) const;
  const std::vector<Knot>& knots() const noexcept { return knots_; }

 private:
  std::vector<Knot> knots_;
};

/// Interval [lo, hi] of a set that is a finite union of intervals.
struct Interval {
  double lo;
  double hi;
};

/// W1 between the points (mass 1/N each, N = `n_total`) and the Lebesgue
/// measure restricted to `support`, computed as the integral of the absolute
/// difference of the two cumulative mass functions. With n_ref > 0 the
/// Lebesgue part is replaced by n_ref equispaced atoms per unit length. Both
/// measures must carry the same mass for this to be a transport cost.
double w1_to_lebesgue(std::span<const double> points, std::size_t n_total, std::span<const Interval> support,
                      std::size_t n_ref = 0);

struct BoundCheck {
  double lhs = 0.0;  // integration error
  double rhs = 0.0;  // transport bound
  bool holds = false;
};

/// |mean f(x_i) - int f| against L_f W1(points, uniform).
BoundCheck check_error_bound_1d(const PiecewiseLinear1D& f, std::span<const double> points,
                                std::size_t n_ref = 0);

/// Filtered variant for a staircase weight w on [0,1]:
/// |mean w f(x_i) - int w f| against L_f sum_j (z_j - z_{j-1}) W1 of the
/// measures restricted to {w >= z_j}. Every level set must hold exactly its
/// Lebesgue mass worth of points (count / N = |{w >= z_j}|), otherwise
/// precondition-violated is raised.
BoundCheck check_filtered_bound_1d(const ClassFunction& w, const PiecewiseLinear1D& f, std::span<const double> points,
                                   std::size_t n_ref = 0);

/// Level sets {w >= z} of a staircase function on [0,1], as sorted disjoint
/// intervals, for each distinct positive level z (ascending).
struct LevelSet {
  double level;
  std::vector<Interval> intervals;
};
std::vector<LevelSet> staircase_level_sets(const ClassFunction& w);

}  // namespace fsot
