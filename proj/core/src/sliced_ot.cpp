#include "fsot/sliced_ot.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fsot/error.hpp"

namespace fsot {

double w2_sq_1d(std::span<const double> xs, std::span<const double> ys) {
  require(xs.size() == ys.size(), Errc::invalid_argument, "w2_sq_1d needs equal-length inputs");
  require(!xs.empty(), Errc::invalid_argument, "w2_sq_1d needs non-empty inputs");
  std::vector<double> a(xs.begin(), xs.end()), b(ys.begin(), ys.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
  return acc / double(a.size());
}

std::vector<double> compute_offsets(std::span<const double> projected, std::span<const double> bin_means,
                                    std::size_t n_total) {
  if (projected.empty()) raise(Errc::empty_selection, "no projected points");
  require(projected.size() == bin_means.size(), Errc::invalid_argument,
          "one bin per projected point is required");
  require(n_total >= projected.size(), Errc::invalid_argument, "subset larger than the point set");
  std::vector<std::size_t> order(projected.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return projected[a] < projected[b] || (projected[a] == projected[b] && a < b);
  });
  std::vector<double> delta(projected.size());
  const double scale = 2.0 / double(n_total);
  for (std::size_t rank = 0; rank < order.size(); ++rank)
    delta[order[rank]] = scale * (projected[order[rank]] - bin_means[rank]);
  return delta;
}

std::vector<double> gamma_factors(std::span<const double> bounds, GammaLimits limits) {
  require(bounds.size() >= 2, Errc::invalid_argument, "need at least one bin");
  for (std::size_t i = 1; i < bounds.size(); ++i)
    require(bounds[i] >= bounds[i - 1], Errc::invalid_argument, "bin boundaries must be non-decreasing");
  const std::size_t m = bounds.size() - 1;
  const double span = bounds.back() - bounds.front();
  if (!(span > 0.0)) raise(Errc::invalid_projection, "all target samples project to a single value");
  const double average = span / double(m);
  std::vector<double> gamma(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double length = bounds[i + 1] - bounds[i];
    gamma[i] = length < limits.min_length ? limits.max : std::min(limits.max, average / length);
  }
  return gamma;
}

std::vector<double> offset_vectors(const SlicedStep& step, double eta, std::size_t n_total, int dim,
                                   std::span<const int> dims) {
  require(step.offsets.size() == step.selected.size() && step.gamma.size() == step.selected.size(),
          Errc::invalid_argument, "incomplete sliced step");
  require(dims.empty() ? int(step.direction.size()) == dim : dims.size() == step.direction.size(),
          Errc::invalid_argument, "direction does not match the point dimension");
  std::vector<double> out(n_total * std::size_t(dim), 0.0);
  for (std::size_t s = 0; s < step.selected.size(); ++s) {
    const double scale = -eta * step.gamma[s] * step.offsets[s];
    double* p = out.data() + step.selected[s] * std::size_t(dim);
    for (std::size_t j = 0; j < step.direction.size(); ++j)
      p[dims.empty() ? j : std::size_t(dims[j])] += scale * step.direction[j];
  }
  return out;
}

}  // namespace fsot
