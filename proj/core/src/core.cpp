#include "fsot/core.hpp"

#include <algorithm>
#include <cmath>

#include <omp.h>

#include "fsot/error.hpp"
#include "fsot/random.hpp"

namespace fsot {

std::string_view to_string(Boundary boundary) {
  return boundary == Boundary::toroidal ? "toroidal" : "bounded";
}

Boundary parse_boundary(std::string_view text) {
  if (text == "toroidal") return Boundary::toroidal;
  if (text == "bounded") return Boundary::bounded;
  raise(Errc::invalid_argument, "unknown boundary '" + std::string(text) + "'");
}

void Domain::validate() const {
  require(dim >= 1, Errc::invalid_argument, "domain dimension must be >= 1");
}

PointList::PointList(int dim, std::size_t count) : dim_(dim), data_(count * std::size_t(dim), 0.0) {
  require(dim >= 1, Errc::invalid_argument, "point dimension must be >= 1");
}

PointList::PointList(int dim, std::vector<double> data) : dim_(dim), data_(std::move(data)) {
  require(dim >= 1, Errc::invalid_argument, "point dimension must be >= 1");
  require(data_.size() % std::size_t(dim) == 0, Errc::invalid_argument,
          "coordinate count is not a multiple of the dimension");
}

void PointList::push_back(std::span<const double> p) {
  require(int(p.size()) == dim_, Errc::invalid_argument, "point dimension mismatch");
  data_.insert(data_.end(), p.begin(), p.end());
}

ExtendedPointSet::ExtendedPointSet(Domain domain, int class_dim, PointList points,
                                   std::vector<double> class_coords)
    : domain_(domain), class_dim_(class_dim), points_(std::move(points)),
      class_coords_(std::move(class_coords)) {
  domain_.validate();
  require(class_dim_ >= 1, Errc::invalid_argument, "class dimension must be >= 1");
  require(points_.dim() == domain_.dim, Errc::invalid_argument,
          "point dimension does not match the domain");
  require(points_.size() >= 1, Errc::invalid_argument, "a point set needs at least one point");
  require(class_coords_.size() == points_.size() * std::size_t(class_dim_), Errc::invalid_argument,
          "class coordinate count does not match the point count");
  for (double c : class_coords_)
    require(std::isfinite(c) && c >= 0.0 && c <= 1.0, Errc::invalid_argument,
            "class coordinates must lie in [0,1]");
  for (double x : points_.data())
    require(std::isfinite(x) && x >= 0.0 && x <= 1.0, Errc::invalid_argument,
            "point coordinates must be finite and inside the unit cube");
}

ExtendedPointSet ExtendedPointSet::with_index_classes(Domain domain, PointList points) {
  const std::size_t n = points.size();
  std::vector<double> classes(n);
  for (std::size_t i = 0; i < n; ++i) classes[i] = (double(i) + 0.5) / double(n);
  return ExtendedPointSet(domain, 1, std::move(points), std::move(classes));
}

PointList ExtendedPointSet::prefix(std::size_t count) const {
  count = std::min(count, size());
  std::vector<double> data(points_.data().begin(),
                           points_.data().begin() + std::ptrdiff_t(count * domain_.dim));
  return PointList(domain_.dim, std::move(data));
}

PointList ExtendedPointSet::subset(std::span<const std::size_t> indices) const {
  PointList out(domain_.dim, 0);
  for (std::size_t i : indices) out.push_back(points_[i]);
  return out;
}

ExtendedPointSet new_random_set(const Domain& domain, std::size_t n, std::uint64_t seed) {
  domain.validate();
  require(n >= 1, Errc::invalid_argument, "point count must be >= 1");
  Rng rng = make_stream(seed, 0x1417);
  PointList points(domain.dim, n);
  for (double& x : points.data()) x = uniform01(rng);
  return ExtendedPointSet::with_index_classes(domain, std::move(points));
}

void wrap_in_place(const Domain& domain, std::span<double> point) {
  for (double& x : point) {
    require(std::isfinite(x), Errc::invalid_argument, "cannot wrap a non-finite coordinate");
    x = domain.boundary == Boundary::toroidal ? wrap_unit(x) : std::clamp(x, 0.0, 1.0);
  }
}

Point wrap(const Domain& domain, std::span<const double> point) {
  Point p(point.begin(), point.end());
  wrap_in_place(domain, p);
  return p;
}

void set_worker_threads(int threads) {
  require(threads >= 1, Errc::invalid_argument, "thread count must be >= 1");
  omp_set_num_threads(threads);
}

}  // namespace fsot
