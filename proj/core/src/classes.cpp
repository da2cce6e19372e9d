#include "fsot/classes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fsot/error.hpp"
#include "fsot/targets.hpp"

namespace fsot {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool in_unit(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

// signed toroidal difference of a and b on a period-`period` circle
double torus_delta(double a, double b, double period) {
  double d = a - b;
  d -= period * std::round(d / period);
  return d;
}

int floor_mod(long long v, int m) {
  long long r = v % m;
  return int(r < 0 ? r + m : r);
}

}  // namespace

ClassFunction::ClassFunction(Repr repr) : repr_(std::move(repr)) {}

ClassFunction ClassFunction::box(std::vector<double> lo, std::vector<double> hi) {
  require(!lo.empty() && lo.size() == hi.size(), Errc::invalid_argument,
          "box bounds must be non-empty and of equal length");
  require(lo.size() <= 2, Errc::invalid_argument, "class spaces beyond two dimensions are not supported");
  for (std::size_t j = 0; j < lo.size(); ++j)
    require(in_unit(lo[j]) && in_unit(hi[j]) && lo[j] <= hi[j], Errc::invalid_argument,
            "box bounds must satisfy 0 <= lo <= hi <= 1");
  ClassFunction f(BoxFunction{std::move(lo), std::move(hi)});
  f.arity_ = int(std::get<BoxFunction>(f.repr_).lo.size());
  f.max_value_ = 1.0;
  return f;
}

ClassFunction ClassFunction::staircase(std::vector<StaircaseFunction::Piece> pieces) {
  require(!pieces.empty(), Errc::invalid_argument, "staircase needs at least one piece");
  double max_level = 0.0;
  for (const auto& p : pieces) {
    require(in_unit(p.lo) && in_unit(p.hi) && p.lo <= p.hi, Errc::invalid_argument,
            "staircase intervals must lie within [0,1]");
    require(std::isfinite(p.level) && p.level >= 0.0, Errc::invalid_argument,
            "staircase levels must be non-negative");
    max_level = std::max(max_level, p.level);
  }
  require(max_level > 0.0, Errc::invalid_argument, "staircase is identically zero");
  ClassFunction f(StaircaseFunction{std::move(pieces)});
  f.arity_ = 1;
  f.max_value_ = max_level;
  return f;
}

ClassFunction ClassFunction::piecewise_linear(std::vector<PiecewiseLinearFunction::Knot> knots) {
  require(knots.size() >= 2, Errc::invalid_argument, "piecewise-linear function needs >= 2 knots");
  double max_w = 0.0;
  for (std::size_t j = 0; j < knots.size(); ++j) {
    require(in_unit(knots[j].c), Errc::invalid_argument, "knot positions must lie in [0,1]");
    require(std::isfinite(knots[j].w) && knots[j].w >= 0.0, Errc::invalid_argument,
            "knot values must be non-negative");
    if (j > 0)
      require(knots[j].c > knots[j - 1].c, Errc::invalid_argument, "knot positions must increase");
    max_w = std::max(max_w, knots[j].w);
  }
  require(max_w > 0.0, Errc::invalid_argument, "piecewise-linear function is identically zero");
  ClassFunction f(PiecewiseLinearFunction{std::move(knots)});
  f.arity_ = 1;
  f.max_value_ = max_w;
  return f;
}

ClassFunction ClassFunction::pixel_kernel(std::shared_ptr<const KernelProfile> profile, int px, int py,
                                          int width, int height) {
  require(profile != nullptr, Errc::invalid_argument, "pixel kernel needs a profile");
  require(width >= 1 && height >= 1 && px >= 0 && px < width && py >= 0 && py < height,
          Errc::invalid_argument, "pixel outside the tile");
  require(2.0 * profile->radius() <= double(std::min(width, height)), Errc::invalid_argument,
          "kernel footprint is larger than the tile");
  ClassFunction f(PixelKernelFunction{std::move(profile), px, py, width, height});
  f.arity_ = 2;
  f.max_value_ = 1.0;
  return f;
}

double ClassFunction::eval(std::span<const double> c) const {
  require(int(c.size()) == arity_, Errc::invalid_argument, "class coordinate has the wrong arity");
  for (double x : c) require(in_unit(x), Errc::invalid_argument, "class coordinate outside [0,1]");
  return eval_unchecked(c);
}

double ClassFunction::eval_unchecked(std::span<const double> c) const {
  return std::visit(
      overloaded{
          [&](const BoxFunction& b) {
            for (std::size_t j = 0; j < b.lo.size(); ++j)
              if (c[j] < b.lo[j] || c[j] > b.hi[j]) return 0.0;
            return 1.0;
          },
          [&](const StaircaseFunction& s) {
            for (const auto& p : s.pieces)
              if (c[0] >= p.lo && c[0] <= p.hi) return p.level;
            return 0.0;
          },
          [&](const PiecewiseLinearFunction& f) {
            const auto& k = f.knots;
            const double x = c[0];
            if (x < k.front().c || x > k.back().c) return 0.0;
            auto it = std::upper_bound(k.begin(), k.end(), x,
                                       [](double v, const auto& knot) { return v < knot.c; });
            if (it == k.end()) return k.back().w;
            const auto& hi = *it;
            const auto& lo = *(it - 1);
            if (x == lo.c) return lo.w;
            const double t = (x - lo.c) / (hi.c - lo.c);
            return lo.w + t * (hi.w - lo.w);
          },
          [&](const PixelKernelFunction& k) {
            if (k.profile->is_box()) {
              // exact pixel membership keeps box classes a partition of the tile
              const int ix = floor_mod((long long)std::floor(c[0] * k.width), k.width);
              const int iy = floor_mod((long long)std::floor(c[1] * k.height), k.height);
              return (ix == k.px && iy == k.py) ? 1.0 : 0.0;
            }
            const double dx = torus_delta(c[0] * k.width, k.px + 0.5, k.width);
            const double dy = torus_delta(c[1] * k.height, k.py + 0.5, k.height);
            const double r = k.profile->radius();
            if (std::abs(dx) > r || std::abs(dy) > r) return 0.0;
            return std::min(1.0, k.profile->weight(dx, dy));
          },
      },
      repr_);
}

ClassFunction ClassFunction::scaled(double factor) const {
  require(std::isfinite(factor) && factor > 0.0, Errc::invalid_argument, "scale factor must be > 0");
  return std::visit(
      overloaded{
          [&](const BoxFunction&) -> ClassFunction {
            raise(Errc::invalid_argument, "box functions cannot be rescaled");
          },
          [&](const StaircaseFunction& s) {
            auto pieces = s.pieces;
            for (auto& p : pieces) p.level *= factor;
            return staircase(std::move(pieces));
          },
          [&](const PiecewiseLinearFunction& f) {
            auto knots = f.knots;
            for (auto& k : knots) k.w *= factor;
            return piecewise_linear(std::move(knots));
          },
          [&](const PixelKernelFunction&) -> ClassFunction {
            raise(Errc::invalid_argument, "pixel kernels cannot be rescaled");
          },
      },
      repr_);
}

ClassFunction::Bounds ClassFunction::support_bounds() const {
  return std::visit(
      overloaded{
          [](const BoxFunction& b) { return Bounds{b.lo, b.hi, false}; },
          [](const StaircaseFunction& s) {
            double lo = 1.0, hi = 0.0;
            for (const auto& p : s.pieces)
              if (p.level > 0.0) {
                lo = std::min(lo, p.lo);
                hi = std::max(hi, p.hi);
              }
            return Bounds{{lo}, {hi}, false};
          },
          [](const PiecewiseLinearFunction& f) {
            return Bounds{{f.knots.front().c}, {f.knots.back().c}, false};
          },
          [](const PixelKernelFunction& k) {
            const double r = k.profile->radius();
            const double cx = (k.px + 0.5) / k.width, cy = (k.py + 0.5) / k.height;
            return Bounds{{cx - r / k.width, cy - r / k.height}, {cx + r / k.width, cy + r / k.height}, true};
          },
      },
      repr_);
}

ClassConfig::ClassConfig(std::vector<Class> classes) : classes_(std::move(classes)) {
  require(!classes_.empty(), Errc::invalid_argument, "a class configuration needs at least one class");
  class_dim_ = classes_.front().func.arity();
  double total = 0.0;
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    auto& c = classes_[i];
    require(c.func.arity() == class_dim_, Errc::invalid_argument,
            "all class functions must share the class-space dimension");
    require(c.target != nullptr, Errc::invalid_argument, "class without a target density");
    require(std::isfinite(c.weight) && c.weight > 0.0, Errc::invalid_argument, "class weights must be > 0");
    const double m = c.func.max_value();
    require(m <= 1.0 + 1e-12, Errc::invalid_argument, "class functions must not exceed 1");
    if (m < 1.0 - 1e-12) {
      c.func = c.func.scaled(1.0 / m);
      warnings_.push_back("class " + std::to_string(i) + ": function maximum " + std::to_string(m) +
                          " rescaled to 1");
    }
    total += c.weight;
  }
  double acc = 0.0;
  for (auto& c : classes_) {
    c.weight /= total;
    acc += c.weight;
    cumulative_.push_back(acc);
  }
  cumulative_.back() = 1.0;
}

std::vector<std::size_t> filter_points(const ExtendedPointSet& set, const ClassFunction& func, double z) {
  require(set.class_dim() == func.arity(), Errc::invalid_argument,
          "class function arity does not match the point set");
  require(std::isfinite(z) && z >= 0.0, Errc::invalid_argument, "threshold must be >= 0");
  if (z >= func.max_value()) raise(Errc::empty_selection, "threshold at or above the class maximum");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < set.size(); ++i)
    if (func.eval_unchecked(set.class_coord(i)) > z) out.push_back(i);
  if (out.empty()) raise(Errc::empty_selection, "no point passes the threshold");
  return out;
}

std::size_t select_class(const ClassConfig& config, Rng& rng) {
  if (config.size() == 1) return 0;
  const double u = uniform01(rng);
  const auto it = std::upper_bound(config.cumulative_.begin(), config.cumulative_.end(), u);
  return std::min(std::size_t(it - config.cumulative_.begin()), config.size() - 1);
}

double sample_threshold(const ClassFunction& func, Rng& rng) { return uniform01(rng) * func.max_value(); }

ClassIndex::ClassIndex(const ExtendedPointSet& set, int cells_per_axis) : class_dim_(set.class_dim()) {
  require(class_dim_ <= 2, Errc::invalid_argument, "class index supports at most two class dimensions");
  const std::size_t n = set.size();
  if (cells_per_axis <= 0)
    cells_per_axis = class_dim_ == 1 ? int(std::clamp<std::size_t>(n / 4, 1, 4096))
                                     : int(std::clamp(std::sqrt(double(n)), 1.0, 1024.0));
  cells_ = cells_per_axis;
  const std::size_t total_cells = class_dim_ == 1 ? std::size_t(cells_) : std::size_t(cells_) * cells_;
  std::vector<std::size_t> cell_of(n);
  offsets_.assign(total_cells + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = set.class_coord(i);
    std::size_t cell = std::min(cells_ - 1, int(c[0] * cells_));
    if (class_dim_ == 2) cell += std::size_t(std::min(cells_ - 1, int(c[1] * cells_))) * cells_;
    cell_of[i] = cell;
    ++offsets_[cell + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  members_.resize(n);
  auto fill = offsets_;
  for (std::size_t i = 0; i < n; ++i) members_[fill[cell_of[i]]++] = i;
}

std::size_t ClassIndex::filter(const ExtendedPointSet& set, const ClassFunction& func, double z,
                               std::vector<std::size_t>& out) const {
  const std::size_t start = out.size();
  const auto bounds = func.support_bounds();
  auto cell_range = [&](double lo, double hi, bool periodic) {
    long long a = (long long)std::floor(lo * cells_);
    long long b = (long long)std::floor(hi * cells_);
    if (!periodic) {
      a = std::clamp<long long>(a, 0, cells_ - 1);
      b = std::clamp<long long>(b, 0, cells_ - 1);
    }
    if (b - a + 1 >= cells_) {
      a = 0;
      b = cells_ - 1;
    }
    return std::pair{a, b};
  };

  const auto [x0, x1] = cell_range(bounds.lo[0], bounds.hi[0], bounds.periodic);
  long long y0 = 0, y1 = 0;
  if (class_dim_ == 2) std::tie(y0, y1) = cell_range(bounds.lo[1], bounds.hi[1], bounds.periodic);
  const double covered = double(x1 - x0 + 1) / cells_ * (class_dim_ == 2 ? double(y1 - y0 + 1) / cells_ : 1.0);

  if (covered > 0.5) {
    for (std::size_t i = 0; i < set.size(); ++i)
      if (func.eval_unchecked(set.class_coord(i)) > z) out.push_back(i);
    return out.size() - start;
  }
  for (long long y = y0; y <= y1; ++y) {
    const std::size_t row = class_dim_ == 2 ? std::size_t(floor_mod(y, cells_)) * cells_ : 0;
    for (long long x = x0; x <= x1; ++x) {
      const std::size_t cell = row + std::size_t(floor_mod(x, cells_));
      for (std::size_t m = offsets_[cell]; m < offsets_[cell + 1]; ++m) {
        const std::size_t i = members_[m];
        if (func.eval_unchecked(set.class_coord(i)) > z) out.push_back(i);
      }
    }
  }
  std::sort(out.begin() + std::ptrdiff_t(start), out.end());
  return out.size() - start;
}

}  // namespace fsot
