#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fsot/classes.hpp"
#include "fsot/core.hpp"
#include "fsot/image.hpp"
#include "fsot/optimizer.hpp"
#include "fsot/targets.hpp"

namespace fsot {

// ---- stippling -------------------------------------------------------------

/// Naive conversion without color profiles: K = 1 - max(R,G,B) and
/// C = (1 - R - K) / (1 - K) etc. (0 where K = 1). Channel order C, M, Y, K.
std::array<Image, 4> cmyk_from_rgb(const Image& rgb);

/// The fifteen non-empty channel combinations. Points are split into four
/// consecutive index ranges, one per channel, with sizes proportional to the
/// channel's total ink. The class of a combination selects the union of its
/// members' ranges and targets the sum of their ink images, i.e. the mean of
/// the member densities weighted by channel mass.
struct CmykDecomposition {
  std::array<double, 4> channel_mass{};    // mean ink per pixel
  std::array<std::size_t, 4> budgets{};    // points per channel, sum N
  std::array<std::size_t, 5> range_start{};
  std::vector<unsigned> class_members;     // bit j set: channel j in the class
  std::vector<std::shared_ptr<const TargetDensity>> targets;
  std::shared_ptr<const ClassConfig> config;
};

/// Channels without ink get no points and combinations made only of such
/// channels are dropped, so fewer than 15 classes can remain.
CmykDecomposition cmyk_decompose(const Image& rgb, std::size_t n);

/// Channel owning point index i.
int cmyk_channel_of(const CmykDecomposition& dec, std::size_t i);

enum class StippleMode { mono, cmyk15 };

struct StippleJob {
  Image image;
  std::size_t n = 0;
  StippleMode mode = StippleMode::mono;
  double gamma = 1.0;  // ink = (1 - value)^gamma for mono, per channel for CMYK
  OptimizerConfig opt;
};

struct StippleResult {
  ExtendedPointSet points;
  std::string svg;
  RunReport report;
  std::vector<int> channel;  // per point: 0..3 for CMYK, -1 for mono
};

/// Ink density of a grayscale image: dark is dense.
TargetDensity mono_density(const Image& image, double gamma = 1.0);

StippleResult stipple(const StippleJob& job);

/// Dots of radius 0.4 / sqrt(N) of the image width; colour from `channel`.
std::string render_svg(const ExtendedPointSet& points, int width, int height, std::span<const int> channel);

// ---- progressive samplers --------------------------------------------------

/// One staircase class whose subclasses are the power-of-two prefixes
/// N / 2^(k-1), ..., N / 2, N of the index order, drawn with equal
/// probability. k = 1 is a plain box over all points.
ClassConfig progressive_config(int k, std::size_t n);

/// Fully progressive variant: the linear ramp w(c) = 1 - c.
ClassConfig progressive_ramp_config();

// ---- Monte-Carlo integration -----------------------------------------------

/// Toroidal test integrands on [0,1]^2 with exact integrals.
struct Integrand {
  enum class Kind { constant, disc, aligned_step, gaussian_bump, linear_product };
  Kind kind = Kind::disc;
  std::array<double, 2> center{0.5, 0.5};
  double radius = 0.25;  // disc radius, bump sigma, or tent half-width
  int axis = 0;          // aligned step

  double operator()(std::span<const double> x) const;
  double exact() const;
};

Integrand::Kind parse_integrand_kind(const std::string& name);
std::string to_string(Integrand::Kind kind);

/// Random translation (and axis, for the step) of the base integrand.
Integrand random_integrand(Integrand::Kind kind, Rng& rng);

/// Mean squared integration error of the prefix of `count` points, averaged
/// over realizations and `n_variants` random integrands (shared across
/// realizations, drawn from `seed`).
double mc_error(std::span<const PointList> realizations, std::size_t count, Integrand::Kind kind,
                std::size_t n_variants, std::uint64_t seed);

struct McRow {
  std::size_t n;
  double variance;
};

/// Builds one point set per (N, realization) through `sampler` and reports
/// the mean squared error for every N.
std::vector<McRow> mc_convergence(const std::function<PointList(std::size_t n, std::size_t realization)>& sampler,
                                  std::span<const std::size_t> ns, Integrand::Kind kind, std::size_t n_realizations,
                                  std::size_t n_variants, std::uint64_t seed);

/// Least-squares slope of log(variance) against log(N).
double loglog_slope(std::span<const McRow> rows);

}  // namespace fsot
