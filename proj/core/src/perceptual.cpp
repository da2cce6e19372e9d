#include "fsot/perceptual.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fsot/error.hpp"
#include "fsot/random.hpp"
#include "fsot/targets.hpp"

namespace fsot {
namespace {

int floor_mod(long long v, int m) {
  long long r = v % m;
  return int(r < 0 ? r + m : r);
}

}  // namespace

void TileSpec::validate() const {
  require(width >= 1 && height >= 1, Errc::invalid_argument, "tile size must be >= 1");
  require(spp >= 1, Errc::invalid_argument, "samples per pixel must be >= 1");
  require(path_dim >= 1, Errc::invalid_argument, "path dimension must be >= 1");
  recon.validate();
  if (percept) percept->validate();
}

std::shared_ptr<const KernelProfile> tile_profile(const TileSpec& spec) {
  spec.validate();
  return std::make_shared<const KernelProfile>(spec.recon, spec.percept);
}

ClassConfig build_pixel_classes(const TileSpec& spec) {
  const auto profile = tile_profile(spec);
  const auto target = std::make_shared<const TargetDensity>(TargetDensity::uniform());
  std::vector<Class> classes;
  classes.reserve(spec.pixels());
  for (int py = 0; py < spec.height; ++py)
    for (int px = 0; px < spec.width; ++px)
      classes.push_back({ClassFunction::pixel_kernel(profile, px, py, spec.width, spec.height), target, 1.0});
  return ClassConfig(std::move(classes));
}

ExtendedPointSet initial_tile(const TileSpec& spec, std::uint64_t seed) {
  spec.validate();
  const int d = 2 + spec.path_dim;
  Rng rng = make_stream(seed, 0x711e);
  PointList pts(d, spec.n_points());
  std::vector<double> cls(2 * spec.n_points());
  std::size_t i = 0;
  for (int py = 0; py < spec.height; ++py)
    for (int px = 0; px < spec.width; ++px)
      for (int s = 0; s < spec.spp; ++s, ++i) {
        auto p = pts[i];
        p[0] = (px + uniform01(rng)) / spec.width;
        p[1] = (py + uniform01(rng)) / spec.height;
        for (int j = 2; j < d; ++j) p[std::size_t(j)] = uniform01(rng);
        cls[2 * i] = p[0];
        cls[2 * i + 1] = p[1];
      }
  return ExtendedPointSet({d, Boundary::toroidal}, 2, std::move(pts), std::move(cls));
}

RunReport optimize_tile(const TileSpec& spec, const ExtendedPointSet& tile, OptimizerConfig opt) {
  require(tile.domain().dim == 2 + spec.path_dim && tile.class_dim() == 2 && tile.size() == spec.n_points(),
          Errc::invalid_argument, "tile does not match its layout");
  for (int j : {0, 1})
    if (std::find(opt.fixed_dims.begin(), opt.fixed_dims.end(), j) == opt.fixed_dims.end())
      opt.fixed_dims.push_back(j);
  const ClassConfig classes = build_pixel_classes(spec);
  return run(tile, classes, opt);
}

TileIntegrand constant_integrand(double c) {
  return {[c](std::span<const double>, std::span<const double>) { return c; },
          [c](std::span<const double>) { return c; }};
}

TileIntegrand linear_path_integrand(double offset, double slope, int dim) {
  require(dim >= 0, Errc::invalid_argument, "path dimension index must be >= 0");
  return {[=](std::span<const double>, std::span<const double> path) {
            return offset + slope * path[std::size_t(dim)];
          },
          [=](std::span<const double>) { return offset + 0.5 * slope; }};
}

TileIntegrand von_mises_integrand(int path_dim, double kappa) {
  require(path_dim >= 1 && kappa > 0.0, Errc::invalid_argument, "invalid von Mises integrand");
  const double integral = std::pow(std::exp(-kappa) * std::cyl_bessel_i(0.0, kappa), path_dim);
  return {[=](std::span<const double> pos, std::span<const double> path) {
            double v = 1.0;
            for (int d = 0; d < path_dim; ++d) {
              const double phase =
                  0.25 * d + 0.15 * std::sin(2.0 * std::numbers::pi * (pos[0] + double(d) * pos[1]));
              v *= std::exp(kappa * (std::cos(2.0 * std::numbers::pi * (path[std::size_t(d)] - phase)) - 1.0));
            }
            return v;
          },
          [=](std::span<const double>) { return integral; }};
}

PerceivedError perceived_error_image(const ExtendedPointSet& tile, int width, int height,
                                     const TileIntegrand& integrand, const KernelProfile& profile,
                                     int quadrature_per_pixel) {
  require(tile.domain().dim >= 3, Errc::invalid_argument, "tile points need image and path coordinates");
  require(width >= 1 && height >= 1 && quadrature_per_pixel >= 1, Errc::invalid_argument, "invalid tile size");
  const std::size_t n_pix = std::size_t(width) * std::size_t(height);
  const std::size_t path_dim = std::size_t(tile.domain().dim - 2);

  // samples bucketed by the pixel they fall in
  std::vector<std::vector<std::size_t>> bucket(n_pix);
  std::vector<double> fx(tile.size());
  for (std::size_t i = 0; i < tile.size(); ++i) {
    const auto p = tile.point(i);
    const int ix = floor_mod((long long)std::floor(p[0] * width), width);
    const int iy = floor_mod((long long)std::floor(p[1] * height), height);
    bucket[std::size_t(iy) * std::size_t(width) + std::size_t(ix)].push_back(i);
    fx[i] = integrand.value(p.first(2), p.subspan(2, path_dim));
  }

  const int reach = int(std::ceil(profile.radius())) + 1;
  PerceivedError out;
  out.error = Image{width, height, 1, std::vector<double>(n_pix, 0.0)};
  out.abs_error = out.error;

  std::vector<double> pos(2);
#pragma omp parallel for schedule(static) firstprivate(pos)
  for (int py = 0; py < height; ++py)
    for (int px = 0; px < width; ++px) {
      const double cx = px + 0.5, cy = py + 0.5;
      double wsum = 0.0, fsum = 0.0;
      for (int oy = -reach; oy <= reach; ++oy)
        for (int ox = -reach; ox <= reach; ++ox) {
          const int qx = floor_mod(px + ox, width), qy = floor_mod(py + oy, height);
          for (std::size_t i : bucket[std::size_t(qy) * std::size_t(width) + std::size_t(qx)]) {
            const auto p = tile.point(i);
            double w;
            if (profile.is_box()) {
              w = (ox == 0 && oy == 0) ? 1.0 : 0.0;
            } else {
              // the periodic image of the sample that sits in pixel (px + ox, py + oy);
              // on tiles narrower than the kernel several images contribute
              const double ux = p[0] * width - qx + px + ox, uy = p[1] * height - qy + py + oy;
              w = profile.density(ux - cx, uy - cy);
            }
            wsum += w;
            fsum += w * fx[i];
          }
        }

      // reference: midpoint quadrature of the kernel-weighted path integral
      double rw = 0.0, rf = 0.0;
      const int q = quadrature_per_pixel;
      for (int oy = -reach; oy <= reach; ++oy)
        for (int ox = -reach; ox <= reach; ++ox)
          for (int sy = 0; sy < q; ++sy)
            for (int sx = 0; sx < q; ++sx) {
              const double ux = px + ox + (sx + 0.5) / q;
              const double uy = py + oy + (sy + 0.5) / q;
              const double w = profile.is_box() ? ((ox == 0 && oy == 0) ? 1.0 : 0.0)
                                                : profile.density(ux - cx, uy - cy);
              if (w == 0.0) continue;
              pos[0] = ux / width - std::floor(ux / width);
              pos[1] = uy / height - std::floor(uy / height);
              rw += w;
              rf += w * integrand.path_integral(pos);
            }

      const double estimate = wsum > 0.0 ? fsum / wsum : 0.0;
      const double e = estimate - rf / rw;
      out.error.at(px, py) = e;
      out.abs_error.at(px, py) = std::abs(e);
    }

  double l1 = 0.0;
  for (double v : out.abs_error.data) l1 += v;
  out.l1 = l1 / double(n_pix);
  if (width == height && width % 2 == 0) out.spectrum = image_spectrum(out.error);
  return out;
}

}  // namespace fsot
