#include "fsot/targets.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fsot/error.hpp"

namespace fsot {

TargetDensity TargetDensity::uniform() { return TargetDensity(Uniform{}); }

TargetDensity TargetDensity::grid(int width, int height, std::vector<double> weights) {
  require(width >= 1 && height >= 1, Errc::invalid_argument, "grid density needs positive size");
  require(weights.size() == std::size_t(width) * std::size_t(height), Errc::invalid_argument,
          "grid weight count does not match its size");
  double total = 0.0;
  for (double w : weights) {
    require(std::isfinite(w) && w >= 0.0, Errc::invalid_argument, "grid weights must be finite and >= 0");
    total += w;
  }
  require(total > 0.0, Errc::invalid_argument, "grid density has zero mass");
  TargetDensity t(Grid{width, height, std::move(weights)});
  const auto& g = std::get<Grid>(t.repr_);
  t.cdf_.resize(g.weights.size());
  std::partial_sum(g.weights.begin(), g.weights.end(), t.cdf_.begin());
  for (double& c : t.cdf_) c /= total;
  t.cdf_.back() = 1.0;
  t.total_mass_ = total;
  return t;
}

TargetDensity TargetDensity::discrete(PointList atoms) {
  require(!atoms.empty(), Errc::invalid_argument, "discrete density needs at least one atom");
  return TargetDensity(Discrete{std::move(atoms)});
}

bool TargetDensity::supports_dim(int dim) const {
  if (std::holds_alternative<Uniform>(repr_)) return dim >= 1;
  if (std::holds_alternative<Grid>(repr_)) return dim == 2;
  return std::get<Discrete>(repr_).atoms.dim() == dim;
}

void sample_target_into(const TargetDensity& target, int dim, std::size_t count, Rng& rng,
                        std::vector<double>& out) {
  require(count >= 1, Errc::invalid_argument, "sample count must be >= 1");
  require(target.supports_dim(dim), Errc::invalid_argument, "target density does not match the dimension");
  out.resize(count * std::size_t(dim));
  if (std::holds_alternative<TargetDensity::Uniform>(target.repr_)) {
    for (double& x : out) x = uniform01(rng);
  } else if (const auto* g = std::get_if<TargetDensity::Grid>(&target.repr_)) {
    for (std::size_t s = 0; s < count; ++s) {
      const double u = uniform01(rng);
      const auto cell = std::size_t(std::upper_bound(target.cdf_.begin(), target.cdf_.end(), u) -
                                    target.cdf_.begin());
      const std::size_t c = std::min(cell, target.cdf_.size() - 1);
      const std::size_t ix = c % std::size_t(g->width), iy = c / std::size_t(g->width);
      out[2 * s] = (double(ix) + uniform01(rng)) / g->width;
      out[2 * s + 1] = (double(iy) + uniform01(rng)) / g->height;
    }
  } else {
    const auto& atoms = std::get<TargetDensity::Discrete>(target.repr_).atoms;
    const std::size_t n = atoms.size();
    for (std::size_t s = 0; s < count; ++s) {
      const std::size_t a = count % n == 0 ? s % n : std::size_t(uniform_index(rng, n));
      std::copy(atoms[a].begin(), atoms[a].end(), out.begin() + std::ptrdiff_t(s * dim));
    }
  }
}

PointList sample_target(const TargetDensity& target, int dim, std::size_t count, Rng& rng) {
  std::vector<double> data;
  sample_target_into(target, dim, count, rng, data);
  return PointList(dim, std::move(data));
}

std::vector<double> sample_direction(int dim, double axis_priority, Rng& rng) {
  require(dim >= 1, Errc::invalid_argument, "direction dimension must be >= 1");
  require(axis_priority >= 0.0 && axis_priority <= 1.0, Errc::invalid_argument,
          "axis priority must be a probability");
  std::vector<double> theta(std::size_t(dim), 0.0);
  if (axis_priority > 0.0 && uniform01(rng) < axis_priority) {
    const auto axis = uniform_index(rng, std::uint64_t(dim));
    theta[axis] = (rng() & 1) ? 1.0 : -1.0;
    return theta;
  }
  for (;;) {
    double norm2 = 0.0;
    for (double& t : theta) {
      t = standard_normal(rng);
      norm2 += t * t;
    }
    if (norm2 > 1e-24) {
      const double inv = 1.0 / std::sqrt(norm2);
      for (double& t : theta) t *= inv;
      return theta;
    }
  }
}

std::vector<double> draw_shift(const Domain& domain, Rng& rng) {
  if (domain.boundary != Boundary::toroidal) return {};
  std::vector<double> t(std::size_t(domain.dim));
  for (double& x : t) x = uniform01(rng);
  return t;
}

std::vector<double> project(const PointList& points, std::span<const double> theta,
                            std::span<const double> shift) {
  require(int(theta.size()) == points.dim(), Errc::invalid_argument, "direction dimension mismatch");
  require(shift.empty() || shift.size() == theta.size(), Errc::invalid_argument, "shift dimension mismatch");
  std::vector<double> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = project_point(points[i], theta, shift);
  return out;
}

void build_bins_into(std::span<const double> sorted_values, std::size_t m, Bins& out) {
  require(m >= 1, Errc::invalid_argument, "bin count must be >= 1");
  require(!sorted_values.empty() && sorted_values.size() % m == 0, Errc::invalid_argument,
          "sample count must be a positive multiple of the bin count");
  const std::size_t c = sorted_values.size() / m;
  out.means.resize(m);
  out.bounds.resize(m + 1);
  for (std::size_t i = 0; i < m; ++i) {
    double acc = 0.0;
    for (std::size_t j = i * c; j < (i + 1) * c; ++j) acc += sorted_values[j];
    out.means[i] = acc / double(c);
  }
  out.bounds[0] = sorted_values.front();
  out.bounds[m] = sorted_values.back();
  for (std::size_t i = 1; i < m; ++i)
    out.bounds[i] = 0.5 * (sorted_values[i * c - 1] + sorted_values[i * c]);
}

Bins build_bins(std::span<const double> sorted_values, std::size_t m) {
  require(std::is_sorted(sorted_values.begin(), sorted_values.end()), Errc::invalid_argument,
          "bin input must be sorted");
  Bins b;
  build_bins_into(sorted_values, m, b);
  return b;
}

}  // namespace fsot
