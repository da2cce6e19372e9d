#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "fsot/core.hpp"
#include "fsot/random.hpp"

namespace fsot {

/// Target measure on [0,1]^d.
///
/// Grid densities are 2D images: cell (ix, iy) covers
/// [ix/W, (ix+1)/W) x [iy/H, (iy+1)/H), row 0 at y = 0, matching image
/// row order. Discrete densities are equal-mass atoms; they are sampled in a
/// stratified way (each atom repeated count/atoms times) whenever count is a
/// multiple of the atom count, which makes them an exact reference measure.
class TargetDensity {
 public:
  struct Uniform {};
  struct Grid {
    int width = 0;
    int height = 0;
    std::vector<double> weights;  // row-major
  };
  struct Discrete {
    PointList atoms;
  };
  using Repr = std::variant<Uniform, Grid, Discrete>;

  static TargetDensity uniform();
  static TargetDensity grid(int width, int height, std::vector<double> weights);
  static TargetDensity discrete(PointList atoms);

  const Repr& repr() const noexcept { return repr_; }
  bool is_uniform() const noexcept { return std::holds_alternative<Uniform>(repr_); }

  /// Whether samples can be drawn in dimension `dim`.
  bool supports_dim(int dim) const;

  /// Total mass of grid cells (1 for the other kinds).
  double total_mass() const noexcept { return total_mass_; }

 private:
  explicit TargetDensity(Repr repr) : repr_(std::move(repr)) {}
  Repr repr_;
  std::vector<double> cdf_;  // grid: cumulative cell mass, normalized
  double total_mass_ = 1.0;

  friend void sample_target_into(const TargetDensity&, int, std::size_t, Rng&, std::vector<double>&);
};

/// `count` i.i.d. samples (row-major, dim coordinates each) appended to `out`
/// after clearing it.
void sample_target_into(const TargetDensity& target, int dim, std::size_t count, Rng& rng,
                        std::vector<double>& out);
PointList sample_target(const TargetDensity& target, int dim, std::size_t count, Rng& rng);

/// With probability `axis_priority` a random signed coordinate axis, otherwise
/// a uniformly distributed unit vector.
std::vector<double> sample_direction(int dim, double axis_priority, Rng& rng);

/// Random translation shared by the points and the target samples of one
/// sliced step (toroidal domains); empty for bounded domains.
std::vector<double> draw_shift(const Domain& domain, Rng& rng);

/// Projection of a single point: dot(wrap(x + shift), theta), or
/// dot(x, theta) when `shift` is empty.
inline double project_point(std::span<const double> x, std::span<const double> theta,
                            std::span<const double> shift) {
  double acc = 0.0;
  if (shift.empty()) {
    for (std::size_t j = 0; j < theta.size(); ++j) acc += x[j] * theta[j];
  } else {
    for (std::size_t j = 0; j < theta.size(); ++j) acc += wrap_unit(x[j] + shift[j]) * theta[j];
  }
  return acc;
}

std::vector<double> project(const PointList& points, std::span<const double> theta,
                            std::span<const double> shift);

/// Equal-mass binning of sorted projected target samples.
struct Bins {
  std::vector<double> means;   // m bin averages
  std::vector<double> bounds;  // m + 1 boundaries
};

/// Groups c*m sorted values into m bins of c consecutive values. Boundaries are
/// midpoints between the extreme values of neighbouring bins; the outer
/// boundaries are the minimum and maximum values.
Bins build_bins(std::span<const double> sorted_values, std::size_t m);
void build_bins_into(std::span<const double> sorted_values, std::size_t m, Bins& out);

}  // namespace fsot
