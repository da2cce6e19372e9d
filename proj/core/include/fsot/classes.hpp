#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fsot/core.hpp"
#include "fsot/kernel.hpp"
#include "fsot/random.hpp"

namespace fsot {

class TargetDensity;

/// Indicator of an axis-aligned box [lo, hi] in class space.
struct BoxFunction {
  std::vector<double> lo;
  std::vector<double> hi;
};

/// Piecewise-constant function on the unit line. Pieces are closed intervals;
/// the first piece containing c determines the level, and c outside every
/// piece evaluates to zero.
struct StaircaseFunction {
  struct Piece {
    double lo;
    double hi;
    double level;
  };
  std::vector<Piece> pieces;
};

/// Linear interpolation between knots (c_j, w_j) with increasing c_j; zero
/// outside the knot range.
struct PiecewiseLinearFunction {
  struct Knot {
    double c;
    double w;
  };
  std::vector<Knot> knots;
};

/// Pixel footprint on a toroidal width x height tile: the class coordinate is
/// a position in the tile and the value is the effective kernel centred on
/// pixel (px, py), normalized to 1 at the centre.
struct PixelKernelFunction {
  std::shared_ptr<const KernelProfile> profile;
  int px = 0;
  int py = 0;
  int width = 1;
  int height = 1;
};

class ClassFunction {
 public:
  using Repr = std::variant<BoxFunction, StaircaseFunction, PiecewiseLinearFunction, PixelKernelFunction>;

  static ClassFunction box(std::vector<double> lo, std::vector<double> hi);
  static ClassFunction staircase(std::vector<StaircaseFunction::Piece> pieces);
  static ClassFunction piecewise_linear(std::vector<PiecewiseLinearFunction::Knot> knots);
  static ClassFunction pixel_kernel(std::shared_ptr<const KernelProfile> profile, int px, int py,
                                    int width, int height);

  const Repr& repr() const noexcept { return repr_; }
  int arity() const noexcept { return arity_; }
  double max_value() const noexcept { return max_value_; }

  /// w(c); raises invalid-argument when c is outside [0,1]^k.
  double eval(std::span<const double> c) const;
  /// w(c) without argument checks, for inner loops.
  double eval_unchecked(std::span<const double> c) const;

  /// Same function with every value multiplied by `factor`.
  ClassFunction scaled(double factor) const;

  /// Axis-aligned bounds of the support in class space, expressed for the
  /// pixel kernel as an unwrapped range that may extend outside [0,1].
  struct Bounds {
    std::vector<double> lo;
    std::vector<double> hi;
    bool periodic = false;
  };
  Bounds support_bounds() const;

 private:
  explicit ClassFunction(Repr repr);
  Repr repr_;
  int arity_ = 1;
  double max_value_ = 1.0;
};

/// A class: points in supp(func) should follow `target`, with priority `weight`.
struct Class {
  ClassFunction func;
  std::shared_ptr<const TargetDensity> target;
  double weight = 1.0;
};

/// Immutable set of classes with weights normalized to sum to one. Class
/// functions whose maximum is below one are rescaled to one (with a warning),
/// since threshold sampling assumes unit maxima.
class ClassConfig {
 public:
  explicit ClassConfig(std::vector<Class> classes);

  std::size_t size() const noexcept { return classes_.size(); }
  const Class& operator[](std::size_t i) const { return classes_[i]; }
  const std::vector<Class>& classes() const noexcept { return classes_; }
  int class_dim() const noexcept { return class_dim_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

 private:
  std::vector<Class> classes_;
  std::vector<double> cumulative_;
  int class_dim_ = 1;
  std::vector<std::string> warnings_;

  friend std::size_t select_class(const ClassConfig&, Rng&);
};

/// Indices i with w(c_i) > z in ascending order. Raises empty-selection when
/// z >= max w or when no point passes the threshold.
std::vector<std::size_t> filter_points(const ExtendedPointSet& set, const ClassFunction& func, double z);

/// Class index drawn with probability proportional to its weight.
std::size_t select_class(const ClassConfig& config, Rng& rng);

/// Threshold z ~ U[0, max w).
double sample_threshold(const ClassFunction& func, Rng& rng);

/// Bucket grid over the (immutable) class coordinates of a point set, so that
/// functions with small support only test nearby points. Results are
/// identical to filter_points.
class ClassIndex {
 public:
  explicit ClassIndex(const ExtendedPointSet& set, int cells_per_axis = 0);

  /// Appends the filtered indices (ascending) to `out`; returns the count.
  std::size_t filter(const ExtendedPointSet& set, const ClassFunction& func, double z,
                     std::vector<std::size_t>& out) const;

 private:
  int class_dim_ = 1;
  int cells_ = 1;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> members_;
};

}  // namespace fsot
