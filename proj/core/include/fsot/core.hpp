#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace fsot {

enum class Boundary { bounded, toroidal };

std::string_view to_string(Boundary boundary);
Boundary parse_boundary(std::string_view text);

/// Optimization domain [0,1]^dim, either clamped at the border or periodic.
struct Domain {
  int dim = 2;
  Boundary boundary = Boundary::toroidal;

  void validate() const;
  bool operator==(const Domain&) const = default;
};

using Point = std::vector<double>;

/// Dense row-major list of points sharing one dimension.
class PointList {
 public:
  PointList() = default;
  PointList(int dim, std::size_t count);
  PointList(int dim, std::vector<double> data);

  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return dim_ == 0 ? 0 : data_.size() / dim_; }
  bool empty() const noexcept { return data_.empty(); }

  std::span<double> operator[](std::size_t i) { return {data_.data() + i * dim_, std::size_t(dim_)}; }
  std::span<const double> operator[](std::size_t i) const {
    return {data_.data() + i * dim_, std::size_t(dim_)};
  }

  void resize(std::size_t count) { data_.resize(count * dim_); }
  void push_back(std::span<const double> p);

  std::vector<double>& data() noexcept { return data_; }
  const std::vector<double>& data() const noexcept { return data_; }

  bool operator==(const PointList&) const = default;

 private:
  int dim_ = 0;
  std::vector<double> data_;
};

/// Points together with their fixed class coordinates. Index i identifies the
/// same point for the lifetime of an optimization run; only the spatial
/// coordinates are ever modified.
class ExtendedPointSet {
 public:
  ExtendedPointSet(Domain domain, int class_dim, PointList points, std::vector<double> class_coords);

  /// Class coordinates (i + 0.5) / N on the unit line.
  static ExtendedPointSet with_index_classes(Domain domain, PointList points);

  const Domain& domain() const noexcept { return domain_; }
  int class_dim() const noexcept { return class_dim_; }
  std::size_t size() const noexcept { return points_.size(); }

  std::span<const double> point(std::size_t i) const { return points_[i]; }
  std::span<double> point(std::size_t i) { return points_[i]; }
  std::span<const double> class_coord(std::size_t i) const {
    return {class_coords_.data() + i * class_dim_, std::size_t(class_dim_)};
  }

  const PointList& points() const noexcept { return points_; }
  PointList& points() noexcept { return points_; }
  const std::vector<double>& class_coords() const noexcept { return class_coords_; }

  /// Spatial coordinates of a contiguous index range as a new list.
  PointList prefix(std::size_t count) const;
  PointList subset(std::span<const std::size_t> indices) const;

  bool operator==(const ExtendedPointSet&) const = default;

 private:
  Domain domain_;
  int class_dim_;
  PointList points_;
  std::vector<double> class_coords_;
};

/// N i.i.d. uniform points with midpoint class coordinates.
ExtendedPointSet new_random_set(const Domain& domain, std::size_t n, std::uint64_t seed);

/// Toroidal: each coordinate modulo 1 into [0,1). Bounded: clamp to [0,1].
void wrap_in_place(const Domain& domain, std::span<double> point);
Point wrap(const Domain& domain, std::span<const double> point);

/// Worker threads for the parallel loops outside the optimizer (spectra,
/// perceived-error images). Their results do not depend on this number.
void set_worker_threads(int threads);

/// Coordinate modulo 1 into [0,1).
inline double wrap_unit(double x) {
  const double r = x - std::floor(x);
  // x slightly below an integer can round to exactly 1.0
  return r >= 1.0 ? 0.0 : r;
}

}  // namespace fsot
