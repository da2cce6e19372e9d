#include "fsot/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "fsot/error.hpp"

namespace fsot {
namespace {

using cd = std::complex<double>;

void fill_radial(SpectrumResult& spec) {
  const int r = spec.resolution;
  const int half = r / 2;
  const int n_bins = int(std::floor(std::sqrt(2.0) * half)) + 1;
  std::vector<double> sum(std::size_t(n_bins), 0.0);
  std::vector<std::size_t> count(std::size_t(n_bins), 0);
  for (int ky = -half; ky < r - half; ++ky)
    for (int kx = -half; kx < r - half; ++kx) {
      const int bin = int(std::lround(std::hypot(double(kx), double(ky))));
      if (bin < 1 || bin >= n_bins) continue;
      sum[std::size_t(bin)] += spec.at(kx, ky);
      ++count[std::size_t(bin)];
    }
  const double scale = 1.0 / std::sqrt(spec.normalizer);
  spec.radial_freq.clear();
  spec.radial_power.clear();
  for (int b = 1; b < n_bins; ++b) {
    if (count[std::size_t(b)] == 0) continue;
    spec.radial_freq.push_back(double(b) * scale);
    spec.radial_power.push_back(sum[std::size_t(b)] / double(count[std::size_t(b)]));
  }
}

// exp(-2 pi i k x) for k in [-R/2, R/2), by repeated multiplication from k = 0
void phase_row(double x, int r, cd* out) {
  const int half = r / 2;
  const double a = -2.0 * std::numbers::pi * x;
  const cd step(std::cos(a), std::sin(a));
  cd v(1.0, 0.0);
  for (int k = 0; k < r - half; ++k) {
    out[k + half] = v;
    v *= step;
  }
  v = std::conj(step);
  for (int k = -1; k >= -half; --k) {
    out[k + half] = v;
    v *= std::conj(step);
  }
}

// |F(x)| integrated over [0, len] for F linear from ga to gb
double abs_linear_integral(double ga, double gb, double len) {
  if ((ga >= 0.0) == (gb >= 0.0)) return 0.5 * (std::abs(ga) + std::abs(gb)) * len;
  const double s = std::abs(ga) + std::abs(gb);
  return s > 0.0 ? 0.5 * (ga * ga + gb * gb) / s * len : 0.0;
}

std::vector<double> sorted_copy(std::span<const double> v) {
  std::vector<double> s(v.begin(), v.end());
  std::sort(s.begin(), s.end());
  return s;
}

double lebesgue_measure(std::span<const Interval> support) {
  double m = 0.0;
  for (const auto& iv : support) m += iv.hi - iv.lo;
  return m;
}

}  // namespace

SpectrumResult power_spectrum(const PointList& points, int resolution) {
  if (points.dim() != 2) raise(Errc::unsupported_dimension, "power spectrum needs 2D points");
  require(resolution >= 2 && resolution % 2 == 0, Errc::invalid_argument, "resolution must be even and >= 2");
  require(!points.empty(), Errc::invalid_argument, "power spectrum of an empty point set");
  const std::size_t n = points.size();
  const int r = resolution;
  SpectrumResult spec;
  spec.resolution = r;
  spec.normalizer = double(n);

  std::vector<cd> sums(std::size_t(r) * std::size_t(r), cd(0.0, 0.0));
  // phases of a block of points, then rows in parallel; every row adds its
  // points in index order, so the result does not depend on the thread count
  constexpr std::size_t block = 2048;
  const std::size_t ur = std::size_t(r);
  std::vector<cd> ex(block * ur), ey(block * ur);
  for (std::size_t b0 = 0; b0 < n; b0 += block) {
    const std::size_t b1 = std::min(n, b0 + block);
    for (std::size_t j = b0; j < b1; ++j) {
      phase_row(points[j][0], r, ex.data() + (j - b0) * ur);
      phase_row(points[j][1], r, ey.data() + (j - b0) * ur);
    }
#pragma omp parallel for schedule(static)
    for (int iy = 0; iy < r; ++iy) {
      cd* row = sums.data() + std::size_t(iy) * ur;
      for (std::size_t j = b0; j < b1; ++j) {
        const cd fy = ey[(j - b0) * ur + std::size_t(iy)];
        const cd* px = ex.data() + (j - b0) * ur;
        for (std::size_t ix = 0; ix < ur; ++ix) row[ix] += fy * px[ix];
      }
    }
  }
  spec.power.resize(sums.size());
  for (std::size_t i = 0; i < sums.size(); ++i) spec.power[i] = std::norm(sums[i]) / double(n);
  spec.power[std::size_t(r / 2) * std::size_t(r) + std::size_t(r / 2)] = 0.0;
  fill_radial(spec);
  return spec;
}

SpectrumResult image_spectrum(const Image& image) {
  require(image.channels == 1, Errc::invalid_argument, "image spectrum needs a single-channel image");
  require(image.width == image.height && image.width % 2 == 0, Errc::invalid_argument,
          "image spectrum needs a square image with even size");
  const int r = image.width;
  const std::size_t rr = std::size_t(r);
  // row transform, then column transform
  std::vector<cd> tw(rr);
  for (std::size_t k = 0; k < rr; ++k) {
    const double a = -2.0 * std::numbers::pi * double(k) / double(r);
    tw[k] = cd(std::cos(a), std::sin(a));
  }
  std::vector<cd> rows(rr * rr, cd(0.0, 0.0));
  for (std::size_t y = 0; y < rr; ++y)
    for (std::size_t k = 0; k < rr; ++k) {
      cd s(0.0, 0.0);
      for (std::size_t x = 0; x < rr; ++x) s += image.data[y * rr + x] * tw[(k * x) % rr];
      rows[y * rr + k] = s;
    }
  SpectrumResult spec;
  spec.resolution = r;
  spec.normalizer = double(rr * rr);
  spec.power.assign(rr * rr, 0.0);
  const int half = r / 2;
  for (std::size_t kx = 0; kx < rr; ++kx)
    for (std::size_t ky = 0; ky < rr; ++ky) {
      cd s(0.0, 0.0);
      for (std::size_t y = 0; y < rr; ++y) s += rows[y * rr + kx] * tw[(ky * y) % rr];
      // frequency index k maps to signed k or k - R
      const int sx = int(kx) < r - half ? int(kx) : int(kx) - r;
      const int sy = int(ky) < r - half ? int(ky) : int(ky) - r;
      spec.power[std::size_t(sy + half) * rr + std::size_t(sx + half)] = std::norm(s) / spec.normalizer;
    }
  spec.power[std::size_t(half) * rr + std::size_t(half)] = 0.0;
  fill_radial(spec);
  return spec;
}

SpectrumResult average_spectra(std::span<const SpectrumResult> spectra) {
  require(!spectra.empty(), Errc::invalid_argument, "no spectra to average");
  SpectrumResult avg = spectra[0];
  for (std::size_t s = 1; s < spectra.size(); ++s) {
    require(spectra[s].power.size() == avg.power.size() &&
                spectra[s].radial_power.size() == avg.radial_power.size(),
            Errc::invalid_argument, "spectra have different layouts");
    for (std::size_t i = 0; i < avg.power.size(); ++i) avg.power[i] += spectra[s].power[i];
    for (std::size_t i = 0; i < avg.radial_power.size(); ++i) avg.radial_power[i] += spectra[s].radial_power[i];
  }
  const double inv = 1.0 / double(spectra.size());
  for (double& p : avg.power) p *= inv;
  for (double& p : avg.radial_power) p *= inv;
  return avg;
}

double low_freq_power(const SpectrumResult& spec, double f_cut) {
  require(f_cut > 0.0, Errc::invalid_argument, "f_cut must be > 0");
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < spec.radial_freq.size(); ++i)
    if (spec.radial_freq[i] > 0.0 && spec.radial_freq[i] <= f_cut) {
      sum += spec.radial_power[i];
      ++count;
    }
  require(count > 0, Errc::invalid_argument, "no frequency annulus below the cut-off");
  return sum / double(count);
}

double anisotropy_ratio(const SpectrumResult& spec, double f_max, double half_angle_degrees) {
  require(f_max > 0.0 && half_angle_degrees > 0.0 && half_angle_degrees < 22.5, Errc::invalid_argument,
          "invalid wedge parameters");
  const int r = spec.resolution;
  const int half = r / 2;
  const double scale = 1.0 / std::sqrt(spec.normalizer);
  double axis = 0.0, diag = 0.0;
  std::size_t n_axis = 0, n_diag = 0;
  for (int ky = -half; ky < r - half; ++ky)
    for (int kx = -half; kx < r - half; ++kx) {
      if (kx == 0 && ky == 0) continue;
      const double f = std::hypot(double(kx), double(ky)) * scale;
      if (f > f_max) continue;
      // angle folded into [0, 45] degrees away from the nearest axis
      double a = std::atan2(double(std::abs(ky)), double(std::abs(kx))) * 180.0 / std::numbers::pi;
      if (a > 45.0) a = 90.0 - a;
      if (a <= half_angle_degrees) {
        axis += spec.at(kx, ky);
        ++n_axis;
      } else if (a >= 45.0 - half_angle_degrees) {
        diag += spec.at(kx, ky);
        ++n_diag;
      }
    }
  require(n_axis > 0 && n_diag > 0, Errc::invalid_argument, "frequency band too small for wedge statistics");
  const double d = diag / double(n_diag);
  require(d > 0.0, Errc::invalid_argument, "zero power in the diagonal wedges");
  return (axis / double(n_axis)) / d;
}

double w1_1d(std::span<const double> xs, std::span<const double> ys) {
  require(xs.size() == ys.size(), Errc::invalid_argument, "w1_1d needs equal-size samples");
  require(!xs.empty(), Errc::invalid_argument, "w1_1d of empty samples");
  const auto a = sorted_copy(xs), b = sorted_copy(ys);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s / double(a.size());
}

PiecewiseLinear1D::PiecewiseLinear1D(std::vector<Knot> knots) : knots_(std::move(knots)) {
  require(knots_.size() >= 2, Errc::invalid_argument, "piecewise-linear function needs two knots");
  require(knots_.front().x <= 0.0 && knots_.back().x >= 1.0, Errc::invalid_argument,
          "piecewise-linear knots must cover [0,1]");
  for (std::size_t i = 1; i < knots_.size(); ++i)
    require(knots_[i].x > knots_[i - 1].x, Errc::invalid_argument, "knots must be strictly increasing");
  for (const auto& k : knots_)
    require(std::isfinite(k.x) && std::isfinite(k.y), Errc::invalid_argument, "non-finite knot");
}

double PiecewiseLinear1D::operator()(double x) const {
  auto it = std::upper_bound(knots_.begin(), knots_.end(), x, [](double v, const Knot& k) { return v < k.x; });
  if (it == knots_.begin()) return knots_.front().y;
  if (it == knots_.end()) return knots_.back().y;
  const Knot& a = *(it - 1);
  const Knot& b = *it;
  return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
}

double PiecewiseLinear1D::lipschitz() const {
  double l = 0.0;
  for (std::size_t i = 1; i < knots_.size(); ++i)
    l = std::max(l, std::abs(knots_[i].y - knots_[i - 1].y) / (knots_[i].x - knots_[i - 1].x));
  return l;
}

double PiecewiseLinear1D::integral(double a, double b) const {
  require(a <= b, Errc::invalid_argument, "integral bounds out of order");
  double s = 0.0;
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    const double lo = std::max(a, knots_[i - 1].x);
    const double hi = std::min(b, knots_[i].x);
    if (hi > lo) s += 0.5 * ((*this)(lo) + (*this)(hi)) * (hi - lo);
  }
  return s;
}

double w1_to_lebesgue(std::span<const double> points, std::size_t n_total, std::span<const Interval> support,
                      std::size_t n_ref) {
  require(n_total >= 1, Errc::invalid_argument, "n_total must be >= 1");
  const auto pts = sorted_copy(points);
  const double mass = 1.0 / double(n_total);

  if (n_ref > 0) {
    // both measures are atomic: integrate the step difference between events
    std::vector<double> atoms;
    for (std::size_t j = 0; j < n_ref; ++j) {
      const double a = (double(j) + 0.5) / double(n_ref);
      for (const auto& iv : support)
        if (a >= iv.lo && a <= iv.hi) {
          atoms.push_back(a);
          break;
        }
    }
    const double atom_mass = 1.0 / double(n_ref);
    std::size_t i = 0, j = 0;
    double prev = 0.0, diff = 0.0, total = 0.0;
    while (i < pts.size() || j < atoms.size()) {
      const bool take_point = j == atoms.size() || (i < pts.size() && pts[i] <= atoms[j]);
      const double x = take_point ? pts[i] : atoms[j];
      total += std::abs(diff) * (x - prev);
      prev = x;
      if (take_point) {
        diff += mass;
        ++i;
      } else {
        diff -= atom_mass;
        ++j;
      }
    }
    return total + std::abs(diff) * (1.0 - prev);
  }

  std::vector<double> breaks = {0.0, 1.0};
  for (const auto& iv : support) {
    require(iv.lo >= 0.0 && iv.hi <= 1.0 && iv.lo <= iv.hi, Errc::invalid_argument, "support outside [0,1]");
    breaks.push_back(iv.lo);
    breaks.push_back(iv.hi);
  }
  breaks.insert(breaks.end(), pts.begin(), pts.end());
  std::sort(breaks.begin(), breaks.end());

  double total = 0.0, f_lebesgue = 0.0;
  std::size_t below = 0;  // points <= left end of the current segment
  for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
    const double a = breaks[s], b = breaks[s + 1];
    while (below < pts.size() && pts[below] <= a) ++below;
    if (b <= a) continue;
    double density = 0.0;
    const double mid = 0.5 * (a + b);
    for (const auto& iv : support)
      if (mid >= iv.lo && mid <= iv.hi) {
        density = 1.0;
        break;
      }
    const double fp = double(below) * mass;
    const double ga = f_lebesgue - fp;
    const double gb = ga + density * (b - a);
    total += abs_linear_integral(ga, gb, b - a);
    f_lebesgue += density * (b - a);
  }
  return total;
}

BoundCheck check_error_bound_1d(const PiecewiseLinear1D& f, std::span<const double> points, std::size_t n_ref) {
  require(!points.empty(), Errc::invalid_argument, "no points");
  double mean = 0.0;
  for (double x : points) {
    require(x >= 0.0 && x <= 1.0, Errc::invalid_argument, "point outside [0,1]");
    mean += f(x);
  }
  mean /= double(points.size());
  BoundCheck r;
  r.lhs = std::abs(mean - f.integral(0.0, 1.0));
  const Interval unit{0.0, 1.0};
  r.rhs = f.lipschitz() * w1_to_lebesgue(points, points.size(), std::span(&unit, 1), n_ref);
  r.holds = r.lhs <= r.rhs + 1e-9;
  return r;
}

std::vector<LevelSet> staircase_level_sets(const ClassFunction& w) {
  require(w.arity() == 1, Errc::invalid_argument, "level sets need a 1D class function");
  std::vector<double> breaks = {0.0, 1.0};
  if (const auto* st = std::get_if<StaircaseFunction>(&w.repr())) {
    for (const auto& p : st->pieces) {
      breaks.push_back(p.lo);
      breaks.push_back(p.hi);
    }
  } else if (const auto* bx = std::get_if<BoxFunction>(&w.repr())) {
    breaks.push_back(bx->lo[0]);
    breaks.push_back(bx->hi[0]);
  } else {
    raise(Errc::invalid_argument, "level sets need a piecewise-constant class function");
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  std::vector<double> seg_level;
  for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
    const double mid = 0.5 * (breaks[s] + breaks[s + 1]);
    seg_level.push_back(w.eval_unchecked(std::span(&mid, 1)));
  }
  std::vector<double> levels;
  for (double v : seg_level)
    if (v > 0.0) levels.push_back(v);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  std::vector<LevelSet> out;
  for (double z : levels) {
    LevelSet ls{z, {}};
    for (std::size_t s = 0; s < seg_level.size(); ++s) {
      if (seg_level[s] < z) continue;
      if (!ls.intervals.empty() && ls.intervals.back().hi == breaks[s])
        ls.intervals.back().hi = breaks[s + 1];
      else
        ls.intervals.push_back({breaks[s], breaks[s + 1]});
    }
    out.push_back(std::move(ls));
  }
  return out;
}

BoundCheck check_filtered_bound_1d(const ClassFunction& w, const PiecewiseLinear1D& f, std::span<const double> points,
                                   std::size_t n_ref) {
  require(!points.empty(), Errc::invalid_argument, "no points");
  const std::size_t n = points.size();
  const auto sets = staircase_level_sets(w);

  std::vector<double> wx(n);
  double estimate = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    require(points[i] >= 0.0 && points[i] <= 1.0, Errc::invalid_argument, "point outside [0,1]");
    wx[i] = w.eval_unchecked(points.subspan(i, 1));
    estimate += wx[i] * f(points[i]);
  }
  estimate /= double(n);

  // exact integral of w f: layer-cake over the nested level sets
  double exact = 0.0, rhs = 0.0, prev = 0.0;
  const double lf = f.lipschitz();
  for (const auto& ls : sets) {
    const double dz = ls.level - prev;
    prev = ls.level;
    std::vector<double> inside;
    for (std::size_t i = 0; i < n; ++i)
      if (wx[i] >= ls.level) inside.push_back(points[i]);
    const double measure = lebesgue_measure(ls.intervals);
    if (std::abs(double(inside.size()) / double(n) - measure) > 1e-9)
      raise(Errc::precondition_violated, "a level set of w does not hold its uniform share of the points");
    for (const auto& iv : ls.intervals) exact += dz * f.integral(iv.lo, iv.hi);
    rhs += dz * lf * w1_to_lebesgue(inside, n, ls.intervals, n_ref);
  }
  BoundCheck r;
  r.lhs = std::abs(estimate - exact);
  r.rhs = rhs;
  r.holds = r.lhs <= r.rhs + 1e-9;
  return r;
}

}  // namespace fsot
