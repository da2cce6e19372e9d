#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fsot/targets.hpp"

namespace fsot {

/// One stochastic draw of the sliced multi-class objective: a class, a
/// threshold selecting a subclass, a projection axis and the resulting 1D
/// offsets of every selected point. `offsets[s]` and `gamma[s]` belong to
/// point `selected[s]`.
struct SlicedStep {
  std::size_t class_index = 0;
  double threshold = 0.0;
  std::vector<double> direction;
  std::vector<double> shift;
  std::vector<std::size_t> selected;
  std::vector<double> offsets;
  std::vector<double> gamma;
  /// (m / N) * W2^2 between the projected subset and the bin means.
  double loss = 0.0;
};

/// Exact squared 2-Wasserstein distance between two equal-size 1D samples.
double w2_sq_1d(std::span<const double> xs, std::span<const double> ys);

/// Derivative of the mass-scaled semi-discrete W2^2 for each projected point:
/// the rank-i point is matched with bin mean i and gets (2 / N)(x_(i) - b_i).
/// The result is in the order of `projected`.
std::vector<double> compute_offsets(std::span<const double> projected, std::span<const double> bin_means,
                                    std::size_t n_total);

struct GammaLimits {
  double max = 10.0;
  double min_length = 1e-9;
};

/// Average bin length over the length of each bin, capped for degenerate
/// bins. Raises invalid-projection when all samples project to one value.
std::vector<double> gamma_factors(std::span<const double> bounds, GammaLimits limits = {});

/// Dense N x dim displacements: -eta * gamma_s * offset_s * theta for the
/// selected points, zero elsewhere. `dims` maps direction components to point
/// coordinates (empty: identity).
std::vector<double> offset_vectors(const SlicedStep& step, double eta, std::size_t n_total, int dim,
                                   std::span<const int> dims = {});

}  // namespace fsot
