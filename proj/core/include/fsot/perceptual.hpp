#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>

#include "fsot/analysis.hpp"
#include "fsot/classes.hpp"
#include "fsot/core.hpp"
#include "fsot/image.hpp"
#include "fsot/kernel.hpp"
#include "fsot/optimizer.hpp"

namespace fsot {

/// A toroidal sample tile. Each point has 2 + path_dim coordinates: the image
/// position in tile units (also its class coordinate, never optimized) and
/// the path-space coordinates that are optimized.
struct TileSpec {
  int width = 64;
  int height = 64;
  int spp = 1;
  int path_dim = 2;
  Kernel recon = Kernel::box();
  std::optional<Kernel> percept;

  void validate() const;
  std::size_t pixels() const { return std::size_t(width) * std::size_t(height); }
  std::size_t n_points() const { return pixels() * std::size_t(spp); }
};

/// Effective footprint g * r of the tile's kernels.
std::shared_ptr<const KernelProfile> tile_profile(const TileSpec& spec);

/// One class per pixel: the effective kernel centred on the pixel, a uniform
/// target over path space and equal weights.
ClassConfig build_pixel_classes(const TileSpec& spec);

/// Unoptimized tile: samples of pixel p are stored at indices
/// [p * spp, (p + 1) * spp), each at a uniform jitter inside the pixel, with
/// i.i.d. uniform path coordinates.
ExtendedPointSet initial_tile(const TileSpec& spec, std::uint64_t seed);

/// Optimizes the path coordinates of `tile` against the pixel classes; image
/// coordinates are added to the fixed dimensions of `opt`.
RunReport optimize_tile(const TileSpec& spec, const ExtendedPointSet& tile, OptimizerConfig opt);

/// Integrand over (image position in tile units, path coordinates) together
/// with its exact integral over path space at a given image position.
struct TileIntegrand {
  std::function<double(std::span<const double> pos, std::span<const double> path)> value;
  std::function<double(std::span<const double> pos)> path_integral;
};

TileIntegrand constant_integrand(double c);
/// offset + slope * path[dim].
TileIntegrand linear_path_integrand(double offset, double slope, int dim = 0);
/// prod_d exp(kappa (cos 2 pi (p_d - s_d(u)) - 1)) with slowly varying phases
/// s_d(u); the path integral is (exp(-kappa) I0(kappa))^path_dim everywhere.
TileIntegrand von_mises_integrand(int path_dim, double kappa = 2.0);

struct PerceivedError {
  Image error;      // signed per-pixel error of the perceived estimate
  Image abs_error;
  double l1 = 0.0;  // mean absolute error per pixel
  SpectrumResult spectrum;  // of the signed error image
};

/// Perceived estimate at every pixel: the kernel-weighted (self-normalized)
/// average of the integrand over the tile's samples, minus the same kernel
/// applied to the exact path integral (dense quadrature over image space).
PerceivedError perceived_error_image(const ExtendedPointSet& tile, int width, int height,
                                     const TileIntegrand& integrand, const KernelProfile& profile,
                                     int quadrature_per_pixel = 8);

}  // namespace fsot
