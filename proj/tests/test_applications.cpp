#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fsot/analysis.hpp"
#include "fsot/applications.hpp"
#include "fsot/error.hpp"

using namespace fsot;

namespace {

Image solid(int w, int h, double r, double g, double b) {
  Image img{w, h, 3, {}};
  for (int i = 0; i < w * h; ++i) img.data.insert(img.data.end(), {r, g, b});
  return img;
}

const std::vector<double>& weights_of(const TargetDensity& t) { return std::get<TargetDensity::Grid>(t.repr()).weights; }

void expect_proportional(const std::vector<double>& a, const std::vector<double>& b) {
  ASSERT_EQ(a.size(), b.size());
  double sa = 0.0, sb = 0.0;
  for (double v : a) sa += v;
  for (double v : b) sb += v;
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i] / sa, b[i] / sb, 1e-12);
}

PointList iid(std::size_t n, std::uint64_t seed) {
  Rng rng = make_stream(seed);
  PointList p(2, n);
  for (double& v : p.data()) v = uniform01(rng);
  return p;
}

int quadrant(std::span<const double> p) { return (p[0] >= 0.5 ? 1 : 0) + (p[1] >= 0.5 ? 2 : 0); }

}  // namespace

TEST(Cmyk, Conversion) {
  Image img{3, 1, 3, {1, 0, 0, 0.5, 0.5, 0.5, 0, 0, 0}};
  const auto c = cmyk_from_rgb(img);
  // red: no cyan or black, full magenta and yellow
  EXPECT_DOUBLE_EQ(c[0].at(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(c[1].at(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(c[2].at(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(c[3].at(0, 0), 0.0);
  for (int ch = 0; ch < 3; ++ch) EXPECT_DOUBLE_EQ(c[ch].at(1, 0), 0.0);
  EXPECT_DOUBLE_EQ(c[3].at(1, 0), 0.5);
  for (int ch = 0; ch < 3; ++ch) EXPECT_DOUBLE_EQ(c[ch].at(2, 0), 0.0);
  EXPECT_DOUBLE_EQ(c[3].at(2, 0), 1.0);
}

TEST(Cmyk, BlackImageLeavesOnlyBlackClasses) {
  const auto dec = cmyk_decompose(solid(4, 4, 0, 0, 0), 100);
  EXPECT_EQ(dec.budgets[3], 100u);
  EXPECT_EQ(dec.config->size(), 8u);
  for (std::size_t c = 0; c < dec.class_members.size(); ++c) {
    EXPECT_TRUE(dec.class_members[c] & 8u);
    expect_proportional(weights_of(*dec.targets[c]), std::vector<double>(16, 1.0));
  }
}

TEST(Cmyk, GrayIsMonochrome) {
  const auto img = solid(4, 4, 0.5, 0.5, 0.5);
  const auto dec = cmyk_decompose(img, 64);
  // only black has ink; every surviving combination contains it, selects
  // all points and targets the mono density
  EXPECT_EQ(dec.budgets[3], 64u);
  ASSERT_EQ(dec.config->size(), 8u);
  for (std::size_t c = 0; c < dec.class_members.size(); ++c) {
    EXPECT_TRUE(dec.class_members[c] & 8u);
    expect_proportional(weights_of(*dec.targets[c]), weights_of(mono_density(img)));
  }
}

TEST(Cmyk, RedBlueBudgetsFollowChannelMass) {
  Image img = solid(8, 4, 1, 0, 0);
  for (int y = 0; y < 4; ++y)
    for (int x = 4; x < 8; ++x) {
      img.at(x, y, 0) = 0.0;
      img.at(x, y, 2) = 1.0;
    }
  const std::size_t n = 1000;
  const auto dec = cmyk_decompose(img, n);
  // cyan only on the blue half, yellow only on the red half, magenta everywhere
  EXPECT_DOUBLE_EQ(dec.channel_mass[0], 0.5);
  EXPECT_DOUBLE_EQ(dec.channel_mass[1], 1.0);
  EXPECT_DOUBLE_EQ(dec.channel_mass[2], 0.5);
  EXPECT_DOUBLE_EQ(dec.channel_mass[3], 0.0);
  EXPECT_EQ(dec.budgets[0] + dec.budgets[1] + dec.budgets[2] + dec.budgets[3], n);
  EXPECT_NEAR(double(dec.budgets[1]) / double(n), 0.5, 0.02);
  EXPECT_NEAR(double(dec.budgets[0]) / double(n), 0.25, 0.02);
  EXPECT_EQ(dec.config->size(), 14u);  // all but black alone
  for (std::size_t c = 0; c < dec.class_members.size(); ++c) {
    const auto& w = weights_of(*dec.targets[c]);
    double left = 0.0, total = 0.0;
    for (int y = 0; y < 4; ++y)
      for (int x = 0; x < 8; ++x) {
        total += w[std::size_t(y * 8 + x)];
        if (x < 4) left += w[std::size_t(y * 8 + x)];
      }
    if (dec.class_members[c] == 1u) EXPECT_EQ(left, 0.0);         // C
    if (dec.class_members[c] == 2u) EXPECT_NEAR(left / total, 0.5, 1e-12);  // M
    if (dec.class_members[c] == 3u) EXPECT_NEAR(left / total, 1.0 / 3.0, 1e-12);  // C+M
  }
  for (std::size_t i = 0; i < n; ++i) {
    const int ch = cmyk_channel_of(dec, i);
    EXPECT_TRUE(i >= dec.range_start[std::size_t(ch)] && i < dec.range_start[std::size_t(ch) + 1]);
  }
}

TEST(Cmyk, BudgetsAlwaysSumToN) {
  Rng rng = make_stream(4);
  for (int t = 0; t < 20; ++t) {
    Image img{5, 3, 3, {}};
    for (int i = 0; i < 45; ++i) img.data.push_back(uniform01(rng));
    const std::size_t n = 1 + uniform_index(rng, 500);
    const auto dec = cmyk_decompose(img, n);
    EXPECT_EQ(dec.budgets[0] + dec.budgets[1] + dec.budgets[2] + dec.budgets[3], n);
    EXPECT_EQ(dec.range_start[4], n);
  }
  EXPECT_THROW(cmyk_decompose(solid(2, 2, 1, 1, 1), 10), Error);
}

TEST(Stipple, UniformGrayIsBlueNoise) {
  StippleJob job;
  job.image = solid(8, 8, 0.5, 0.5, 0.5);
  job.n = 1024;
  job.opt.seed = 3;
  const auto res = stipple(job);
  EXPECT_LT(low_freq_power(power_spectrum(res.points.points(), 64), 0.5), 0.25);
  EXPECT_NE(res.svg.find("<svg"), std::string::npos);
  EXPECT_EQ(res.channel, std::vector<int>(1024, -1));
}

TEST(Stipple, DarkHalfGetsThePoints) {
  StippleJob job;
  job.image = solid(16, 16, 0, 0, 0);
  for (int y = 0; y < 16; ++y)
    for (int x = 8; x < 16; ++x)
      for (int c = 0; c < 3; ++c) job.image.at(x, y, c) = 1.0;
  job.n = 1000;
  job.opt.iterations = 300;
  job.opt.seed = 4;
  const auto res = stipple(job);
  std::size_t left = 0;
  for (std::size_t i = 0; i < res.points.size(); ++i) left += res.points.point(i)[0] < 0.5;
  EXPECT_GE(left, 950u);
}

TEST(Stipple, CmykTestCardChannelsFindTheirQuadrants) {
  // quadrants 0..3 (x-major, then y) printed in pure C, M, Y and K
  const double rgb[4][3] = {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}, {0, 0, 0}};
  StippleJob job;
  job.image = Image{16, 16, 3, std::vector<double>(16 * 16 * 3)};
  for (int y = 0; y < 16; ++y)
    for (int x = 0; x < 16; ++x)
      for (int c = 0; c < 3; ++c) job.image.at(x, y, c) = rgb[(x >= 8 ? 1 : 0) + (y >= 8 ? 2 : 0)][c];
  job.n = 400;
  job.mode = StippleMode::cmyk15;
  job.opt.iterations = 400;
  job.opt.seed = 5;
  const auto res = stipple(job);
  std::array<std::size_t, 4> inside{}, total{};
  for (std::size_t i = 0; i < res.points.size(); ++i) {
    const int ch = res.channel[i];
    ++total[std::size_t(ch)];
    inside[std::size_t(ch)] += quadrant(res.points.point(i)) == ch;
  }
  for (int ch = 0; ch < 4; ++ch) {
    EXPECT_EQ(total[std::size_t(ch)], 100u);
    EXPECT_GE(double(inside[std::size_t(ch)]) / double(total[std::size_t(ch)]), 0.95) << ch;
  }
}

TEST(Progressive, LevelsArePowerOfTwoPrefixes) {
  const auto one = progressive_config(1, 16);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_TRUE(std::holds_alternative<BoxFunction>(one[0].func.repr()));

  const std::size_t n = 16;
  const auto cfg = progressive_config(3, n);
  const auto set = new_random_set({2, Boundary::toroidal}, n, 1);
  std::vector<std::size_t> sizes;
  for (double z : {0.1, 0.5, 0.9}) sizes.push_back(filter_points(set, cfg[0].func, z).size());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{16, 8, 4}));
  for (double z : {0.1, 0.5, 0.9}) {
    const auto idx = filter_points(set, cfg[0].func, z);
    EXPECT_EQ(idx.back(), idx.size() - 1);  // a prefix
  }
  EXPECT_THROW(progressive_config(6, 16), Error);
  EXPECT_THROW(progressive_config(3, 18), Error);
}

TEST(Progressive, RampIsLinear) {
  const auto cfg = progressive_ramp_config();
  for (double c : {0.0, 0.25, 0.8}) {
    const double cc[1] = {c};
    EXPECT_NEAR(cfg[0].func.eval(cc), 1.0 - c, 1e-12);
  }
}

TEST(Progressive, PrefixesAreBlueNoiseOnlyWithLevels) {
  const std::size_t n = 512;
  const auto init = new_random_set({2, Boundary::toroidal}, n, 6);
  OptimizerConfig o;
  o.seed = 6;
  const auto levels = run(init, progressive_config(4, n), o).final_set;
  const auto flat = run(init, progressive_config(1, n), o).final_set;
  for (std::size_t m : {64, 128, 256, 512})
    EXPECT_LT(low_freq_power(power_spectrum(levels.prefix(m), 64), 0.5), 0.25) << m;
  EXPECT_GT(low_freq_power(power_spectrum(flat.prefix(n / 2), 64), 0.5), 0.25);
}

TEST(Integrands, ExactValuesMatchQuadrature) {
  Rng rng = make_stream(7);
  for (auto kind : {Integrand::Kind::constant, Integrand::Kind::disc, Integrand::Kind::aligned_step,
                    Integrand::Kind::gaussian_bump, Integrand::Kind::linear_product}) {
    const auto f = random_integrand(kind, rng);
    double s = 0.0;
    const int n = 1000;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double x[2] = {(i + 0.5) / n, (j + 0.5) / n};
        s += f(x);
      }
    EXPECT_NEAR(s / (n * n), f.exact(), 2e-3) << to_string(kind);
    EXPECT_EQ(parse_integrand_kind(to_string(kind)), kind);
  }
  EXPECT_NEAR(Integrand{Integrand::Kind::disc}.exact(), std::numbers::pi / 16.0, 1e-15);
  EXPECT_THROW(parse_integrand_kind("sphere"), Error);
}

TEST(McConvergence, ConstantIntegrandHasNoVariance) {
  const std::size_t ns[] = {16, 64};
  const auto rows = mc_convergence([](std::size_t n, std::size_t r) { return iid(n, r); }, ns,
                                   Integrand::Kind::constant, 3, 5, 1);
  for (const auto& row : rows) EXPECT_NEAR(row.variance, 0.0, 1e-28);
}

TEST(McConvergence, IidSlopeIsMinusOneAndReproducible) {
  const std::size_t ns[] = {16, 64, 256, 1024, 4096};
  const auto sampler = [](std::size_t n, std::size_t r) { return iid(n, 1000 * n + r); };
  const auto rows = mc_convergence(sampler, ns, Integrand::Kind::disc, 10, 40, 2);
  EXPECT_NEAR(loglog_slope(rows), -1.0, 0.1);
  const auto again = mc_convergence(sampler, ns, Integrand::Kind::disc, 10, 40, 2);
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(rows[i].variance, again[i].variance);
}

TEST(McConvergence, OptimizedPointsConvergeFaster) {
  // desk-scale grid up to N = 512; the N = 1024 comparison with i.i.d.
  // points is part of the acceptance suite
  const std::size_t ns[] = {16, 32, 64, 128, 256, 512};
  const auto optimized = [](std::size_t n, std::size_t r) {
    OptimizerConfig o;
    o.seed = 77 + r;
    const ClassConfig cfg({{ClassFunction::box({0.0}, {1.0}),
                            std::make_shared<const TargetDensity>(TargetDensity::uniform()), 1.0}});
    return run(new_random_set({2, Boundary::toroidal}, n, 77 + r), cfg, o).final_set.points();
  };
  const auto rows = mc_convergence(optimized, ns, Integrand::Kind::disc, 3, 40, 3);
  EXPECT_LE(loglog_slope(rows), -1.3);
}
