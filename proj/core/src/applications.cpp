#include "fsot/applications.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>

#include "fsot/error.hpp"
#include "fsot/point_io.hpp"

namespace fsot {
namespace {

double torus_delta(double a, double b) {
  double d = a - b;
  return d - std::round(d);
}

// points per channel by largest remainder, summing to n
std::array<std::size_t, 4> split_budget(const std::array<double, 4>& mass, std::size_t n) {
  const double total = mass[0] + mass[1] + mass[2] + mass[3];
  std::array<std::size_t, 4> b{};
  std::array<double, 4> rem{};
  std::size_t used = 0;
  for (int j = 0; j < 4; ++j) {
    const double share = double(n) * mass[j] / total;
    b[j] = std::size_t(std::floor(share));
    rem[j] = share - double(b[j]);
    used += b[j];
  }
  std::array<int, 4> order{0, 1, 2, 3};
  std::stable_sort(order.begin(), order.end(), [&](int a, int c) { return rem[a] > rem[c]; });
  for (int q = 0; used < n; ++q) {
    if (mass[order[q % 4]] <= 0.0) continue;
    ++b[order[q % 4]];
    ++used;
  }
  return b;
}

}  // namespace

std::array<Image, 4> cmyk_from_rgb(const Image& rgb) {
  require(rgb.channels == 3, Errc::invalid_argument, "CMYK conversion needs an RGB image");
  std::array<Image, 4> out;
  for (auto& ch : out) ch = Image{rgb.width, rgb.height, 1, std::vector<double>(rgb.data.size() / 3, 0.0)};
  for (std::size_t i = 0; i < rgb.data.size() / 3; ++i) {
    const double r = rgb.data[3 * i], g = rgb.data[3 * i + 1], b = rgb.data[3 * i + 2];
    const double k = 1.0 - std::max({r, g, b});
    out[3].data[i] = k;
    if (k < 1.0) {
      out[0].data[i] = (1.0 - r - k) / (1.0 - k);
      out[1].data[i] = (1.0 - g - k) / (1.0 - k);
      out[2].data[i] = (1.0 - b - k) / (1.0 - k);
    }
  }
  return out;
}

CmykDecomposition cmyk_decompose(const Image& rgb, std::size_t n) {
  require(n >= 1, Errc::invalid_argument, "point budget must be >= 1");
  const auto ink = cmyk_from_rgb(rgb);
  CmykDecomposition dec;
  const double pixels = double(rgb.width) * double(rgb.height);
  for (int j = 0; j < 4; ++j)
    dec.channel_mass[j] = std::accumulate(ink[j].data.begin(), ink[j].data.end(), 0.0) / pixels;
  const double total = dec.channel_mass[0] + dec.channel_mass[1] + dec.channel_mass[2] + dec.channel_mass[3];
  require(total > 0.0, Errc::invalid_argument, "image has no ink in any channel");

  dec.budgets = split_budget(dec.channel_mass, n);
  dec.range_start[0] = 0;
  for (int j = 0; j < 4; ++j) dec.range_start[j + 1] = dec.range_start[j] + dec.budgets[j];

  std::vector<Class> classes;
  for (unsigned mask = 1; mask < 16; ++mask) {
    std::vector<StaircaseFunction::Piece> pieces;
    std::vector<double> weights(ink[0].data.size(), 0.0);
    for (int j = 0; j < 4; ++j) {
      if (!(mask & (1u << j)) || dec.budgets[j] == 0) continue;
      pieces.push_back({double(dec.range_start[j]) / double(n), double(dec.range_start[j + 1]) / double(n), 1.0});
      for (std::size_t p = 0; p < weights.size(); ++p) weights[p] += ink[j].data[p];
    }
    if (pieces.empty()) continue;
    auto target = std::make_shared<const TargetDensity>(TargetDensity::grid(rgb.width, rgb.height, std::move(weights)));
    dec.class_members.push_back(mask);
    dec.targets.push_back(target);
    classes.push_back({ClassFunction::staircase(std::move(pieces)), target, 1.0});
  }
  dec.config = std::make_shared<const ClassConfig>(std::move(classes));
  return dec;
}

int cmyk_channel_of(const CmykDecomposition& dec, std::size_t i) {
  for (int j = 0; j < 4; ++j)
    if (i >= dec.range_start[j] && i < dec.range_start[j + 1]) return j;
  raise(Errc::invalid_argument, "point index outside the CMYK budget");
}

TargetDensity mono_density(const Image& image, double gamma) {
  require(gamma > 0.0, Errc::invalid_argument, "gamma must be > 0");
  const Image gray = to_gray(image);
  std::vector<double> w(gray.data.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::pow(std::clamp(1.0 - gray.data[i], 0.0, 1.0), gamma);
  require(std::any_of(w.begin(), w.end(), [](double v) { return v > 0.0; }), Errc::invalid_argument,
          "image has no ink (it is white everywhere)");
  return TargetDensity::grid(gray.width, gray.height, std::move(w));
}

StippleResult stipple(const StippleJob& job) {
  require(job.n >= 1, Errc::invalid_argument, "point budget must be >= 1");
  require(job.image.width > 0 && job.image.height > 0, Errc::invalid_argument, "empty image");
  const Domain domain{2, Boundary::bounded};
  ExtendedPointSet init = new_random_set(domain, job.n, job.opt.seed);
  std::vector<int> channel(job.n, -1);

  std::shared_ptr<const ClassConfig> config;
  if (job.mode == StippleMode::mono) {
    auto target = std::make_shared<const TargetDensity>(mono_density(job.image, job.gamma));
    config = std::make_shared<const ClassConfig>(
        std::vector<Class>{{ClassFunction::box({0.0}, {1.0}), target, 1.0}});
  } else {
    Image rgb = job.image;
    if (rgb.channels == 1) {
      rgb = Image{job.image.width, job.image.height, 3, {}};
      for (double v : job.image.data) rgb.data.insert(rgb.data.end(), {v, v, v});
    }
    if (job.gamma != 1.0)
      for (double& v : rgb.data) v = 1.0 - std::pow(1.0 - v, job.gamma);
    const auto dec = cmyk_decompose(rgb, job.n);
    config = dec.config;
    for (std::size_t i = 0; i < job.n; ++i) channel[i] = cmyk_channel_of(dec, i);
  }

  RunReport report = run(init, *config, job.opt);
  StippleResult res{report.final_set, render_svg(report.final_set, job.image.width, job.image.height, channel),
                    std::move(report), std::move(channel)};
  return res;
}

std::string render_svg(const ExtendedPointSet& points, int width, int height, std::span<const int> channel) {
  static const char* colours[] = {"#00aeef", "#ec008c", "#fff200", "#000000"};
  const double r = 0.4 / std::sqrt(double(std::max<std::size_t>(points.size(), 1))) * width;
  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) + "\" height=\"" +
                    std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) + " " +
                    std::to_string(height) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  char buf[160];
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto p = points.point(i);
    const int c = i < channel.size() ? channel[i] : -1;
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.6g\" cy=\"%.6g\" r=\"%.6g\" fill=\"%s\"/>\n", p[0] * width,
                  p[1] * height, r, c >= 0 && c < 4 ? colours[c] : "#000000");
    svg += buf;
  }
  svg += "</svg>\n";
  return svg;
}

ClassConfig progressive_config(int k, std::size_t n) {
  require(k >= 1, Errc::invalid_argument, "progressive levels must be >= 1");
  require(n >= 1, Errc::invalid_argument, "point count must be >= 1");
  require(double(k) <= std::log2(double(n)) + 1.0, Errc::invalid_argument,
          "more progressive levels than power-of-two prefixes");
  const std::size_t smallest = std::size_t(1) << (k - 1);
  require(n % smallest == 0, Errc::invalid_argument, "N must be divisible by 2^(levels - 1)");
  const auto target = std::make_shared<const TargetDensity>(TargetDensity::uniform());
  if (k == 1) return ClassConfig({{ClassFunction::box({0.0}, {1.0}), target, 1.0}});

  std::vector<StaircaseFunction::Piece> pieces;
  double lo = 0.0;
  for (int j = 0; j < k; ++j) {
    const double hi = double(n >> (k - 1 - j)) / double(n);
    pieces.push_back({lo, hi, double(k - j) / double(k)});
    lo = hi;
  }
  return ClassConfig({{ClassFunction::staircase(std::move(pieces)), target, 1.0}});
}

ClassConfig progressive_ramp_config() {
  const auto target = std::make_shared<const TargetDensity>(TargetDensity::uniform());
  return ClassConfig({{ClassFunction::piecewise_linear({{0.0, 1.0}, {1.0, 0.0}}), target, 1.0}});
}

double Integrand::operator()(std::span<const double> x) const {
  switch (kind) {
    case Kind::constant:
      return 1.0;
    case Kind::disc: {
      const double dx = torus_delta(x[0], center[0]), dy = torus_delta(x[1], center[1]);
      return dx * dx + dy * dy < radius * radius ? 1.0 : 0.0;
    }
    case Kind::aligned_step: {
      const double u = x[std::size_t(axis)] - center[std::size_t(axis)];
      return u - std::floor(u) < 0.5 ? 1.0 : 0.0;
    }
    case Kind::gaussian_bump: {
      const double dx = torus_delta(x[0], center[0]), dy = torus_delta(x[1], center[1]);
      return std::exp(-(dx * dx + dy * dy) / (2.0 * radius * radius));
    }
    case Kind::linear_product: {
      const double tx = std::max(0.0, 1.0 - std::abs(torus_delta(x[0], center[0])) / radius);
      const double ty = std::max(0.0, 1.0 - std::abs(torus_delta(x[1], center[1])) / radius);
      return tx * ty;
    }
  }
  return 0.0;
}

double Integrand::exact() const {
  switch (kind) {
    case Kind::constant:
      return 1.0;
    case Kind::disc:
      return std::numbers::pi * radius * radius;
    case Kind::aligned_step:
      return 0.5;
    case Kind::gaussian_bump: {
      const double one_d = radius * std::sqrt(2.0 * std::numbers::pi) * std::erf(0.5 / (radius * std::numbers::sqrt2));
      return one_d * one_d;
    }
    case Kind::linear_product:
      return radius * radius;
  }
  return 0.0;
}

Integrand::Kind parse_integrand_kind(const std::string& name) {
  if (name == "constant") return Integrand::Kind::constant;
  if (name == "disc") return Integrand::Kind::disc;
  if (name == "step") return Integrand::Kind::aligned_step;
  if (name == "gaussian") return Integrand::Kind::gaussian_bump;
  if (name == "linear") return Integrand::Kind::linear_product;
  raise(Errc::invalid_argument, "unknown integrand '" + name + "' (expected disc, step, gaussian, linear, constant)");
}

std::string to_string(Integrand::Kind kind) {
  switch (kind) {
    case Integrand::Kind::constant: return "constant";
    case Integrand::Kind::disc: return "disc";
    case Integrand::Kind::aligned_step: return "step";
    case Integrand::Kind::gaussian_bump: return "gaussian";
    case Integrand::Kind::linear_product: return "linear";
  }
  return "?";
}

Integrand random_integrand(Integrand::Kind kind, Rng& rng) {
  Integrand f;
  f.kind = kind;
  f.center = {uniform01(rng), uniform01(rng)};
  f.axis = int(uniform_index(rng, 2));
  // the disc is rotation invariant, so a translation is its whole variation
  f.radius = kind == Integrand::Kind::gaussian_bump ? 0.15 : kind == Integrand::Kind::linear_product ? 0.4 : 0.25;
  return f;
}

double mc_error(std::span<const PointList> realizations, std::size_t count, Integrand::Kind kind,
                std::size_t n_variants, std::uint64_t seed) {
  require(!realizations.empty() && n_variants >= 1 && count >= 1, Errc::invalid_argument,
          "mc_error needs realizations, variants and a positive count");
  Rng rng = make_stream(seed, 0x3c);
  double total = 0.0;
  for (std::size_t v = 0; v < n_variants; ++v) {
    const Integrand f = random_integrand(kind, rng);
    const double exact = f.exact();
    for (const auto& pts : realizations) {
      require(pts.dim() == 2 && pts.size() >= count, Errc::invalid_argument, "realization too small");
      double s = 0.0;
      for (std::size_t i = 0; i < count; ++i) s += f(pts[i]);
      const double e = s / double(count) - exact;
      total += e * e;
    }
  }
  return total / double(n_variants * realizations.size());
}

std::vector<McRow> mc_convergence(const std::function<PointList(std::size_t n, std::size_t realization)>& sampler,
                                  std::span<const std::size_t> ns, Integrand::Kind kind, std::size_t n_realizations,
                                  std::size_t n_variants, std::uint64_t seed) {
  require(n_realizations >= 1, Errc::invalid_argument, "need at least one realization");
  std::vector<McRow> rows;
  for (std::size_t n : ns) {
    std::vector<PointList> sets;
    for (std::size_t r = 0; r < n_realizations; ++r) sets.push_back(sampler(n, r));
    rows.push_back({n, mc_error(sets, n, kind, n_variants, seed)});
  }
  return rows;
}

double loglog_slope(std::span<const McRow> rows) {
  require(rows.size() >= 2, Errc::invalid_argument, "slope needs two rows");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : rows) {
    require(r.variance > 0.0, Errc::invalid_argument, "slope needs positive variances");
    const double x = std::log(double(r.n)), y = std::log(r.variance);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = double(rows.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace fsot
