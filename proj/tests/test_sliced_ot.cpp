#include <gtest/gtest.h>

#include <cmath>

#include "fsot/classes.hpp"
#include "fsot/error.hpp"
#include "fsot/optimizer.hpp"
#include "fsot/sliced_ot.hpp"
#include "oracles.hpp"

using namespace fsot;

TEST(W2, HandExamples) {
  EXPECT_EQ(w2_sq_1d(std::vector<double>{0.2, 0.8}, std::vector<double>{0.8, 0.2}), 0.0);
  EXPECT_DOUBLE_EQ(w2_sq_1d(std::vector<double>{0.0, 1.0}, std::vector<double>{0.5, 0.5}), 0.25);
  EXPECT_THROW(w2_sq_1d(std::vector<double>{0.0}, std::vector<double>{0.0, 1.0}), Error);
}

TEST(W2, SymmetricAndZeroOnItself) {
  Rng rng = make_stream(1);
  std::vector<double> a(16), b(16);
  for (double& v : a) v = uniform01(rng);
  for (double& v : b) v = uniform01(rng);
  EXPECT_EQ(w2_sq_1d(a, a), 0.0);
  EXPECT_EQ(w2_sq_1d(a, b), w2_sq_1d(b, a));
}

TEST(W2, SortedMatchingIsTheOptimalAssignment) {
  Rng rng = make_stream(2);
  for (int t = 0; t < 200; ++t) {
    const std::size_t m = 1 + uniform_index(rng, 8);
    std::vector<double> a(m), b(m);
    for (double& v : a) v = uniform01(rng);
    for (double& v : b) v = uniform01(rng);
    EXPECT_NEAR(w2_sq_1d(a, b), oracle::assignment_cost(a, b, 2.0), 1e-12);
  }
}

TEST(Offsets, HandExamples) {
  EXPECT_EQ(compute_offsets(std::vector<double>{0.5}, std::vector<double>{0.5}, 1),
            (std::vector<double>{0.0}));
  const auto d = compute_offsets(std::vector<double>{1.0, 0.0}, std::vector<double>{0.25, 0.75}, 2);
  // keyed to the input order: the point at 1.0 has rank 1
  EXPECT_DOUBLE_EQ(d[0], 0.25);
  EXPECT_DOUBLE_EQ(d[1], -0.25);
}

TEST(Offsets, EmptySelection) {
  try {
    compute_offsets(std::vector<double>{}, std::vector<double>{}, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::empty_selection);
  }
}

TEST(Offsets, MatchFiniteDifferencesAcrossSizes) {
  Rng rng = make_stream(3);
  const double h = 1e-6;
  for (std::size_t m : {2, 4, 8, 16})
    for (std::size_t n : {m, 2 * m, 4 * m}) {
      std::vector<double> x(m), y(m);
      for (double& v : x) v = uniform01(rng);
      for (double& v : y) v = uniform01(rng);
      std::sort(y.begin(), y.end());
      const auto term = [&](const std::vector<double>& p) { return double(m) / double(n) * w2_sq_1d(p, y); };
      const auto d = compute_offsets(x, y, n);
      double scale = 0.0;
      for (double v : d) scale = std::max(scale, std::abs(v));
      for (std::size_t i = 0; i < m; ++i) {
        auto xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        EXPECT_LE(std::abs((term(xp) - term(xm)) / (2 * h) - d[i]), 1e-4 * scale) << "m=" << m << " n=" << n;
      }
    }
}

TEST(Offsets, CrossingPairsNeverCheaper) {
  // the rank pairing used by compute_offsets is the oracle's optimum
  Rng rng = make_stream(4);
  for (int t = 0; t < 100; ++t) {
    const std::size_t m = 2 + uniform_index(rng, 7);
    std::vector<double> x(m), b(m);
    for (double& v : x) v = uniform01(rng);
    for (double& v : b) v = uniform01(rng);
    std::sort(b.begin(), b.end());
    const auto d = compute_offsets(x, b, m);
    double rank_cost = 0.0;
    for (double v : d) rank_cost += (v / 2.0 * double(m)) * (v / 2.0 * double(m));
    EXPECT_LE(rank_cost / double(m), oracle::assignment_cost(x, b, 2.0) + 1e-12);
  }
}

TEST(Gamma, HandExamples) {
  const auto g1 = gamma_factors(std::vector<double>{0, 0.25, 0.5, 0.75, 1});
  for (double g : g1) EXPECT_DOUBLE_EQ(g, 1.0);
  const auto g2 = gamma_factors(std::vector<double>{0, 0.1, 1});
  EXPECT_DOUBLE_EQ(g2[0], 5.0);
  EXPECT_DOUBLE_EQ(g2[1], 0.5 / 0.9);
}

TEST(Gamma, DegenerateBinsAreCappedAndPointMassIsInvalid) {
  const auto g = gamma_factors(std::vector<double>{0, 0, 1});
  EXPECT_EQ(g[0], 10.0);
  try {
    gamma_factors(std::vector<double>{0.3, 0.3, 0.3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_projection);
  }
}

TEST(Gamma, ApproachesOneForLargeOversampling) {
  Rng rng = make_stream(5);
  const std::size_t m = 16;
  double dev4 = 0.0, dev64 = 0.0, mean64 = 0.0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t)
    for (std::size_t c : {4, 64}) {
      std::vector<double> v(m * c);
      for (double& x : v) x = uniform01(rng);
      std::sort(v.begin(), v.end());
      const auto g = gamma_factors(build_bins(v, m).bounds);
      for (double x : g) {
        (c == 4 ? dev4 : dev64) += std::abs(x - 1.0) / double(m * trials);
        if (c == 64) mean64 += x / double(m * trials);
      }
    }
  EXPECT_NEAR(mean64, 1.0, 0.05);
  EXPECT_LT(dev64, 0.15);
  EXPECT_LT(dev64, dev4 / 2.0);
}

TEST(OffsetVectors, AlongDirectionOnly) {
  SlicedStep s;
  s.direction = {1.0, 0.0};
  s.selected = {1};
  s.offsets = {0.1};
  s.gamma = {1.0};
  const auto v = offset_vectors(s, 1.0, 2, 2);
  EXPECT_EQ(v, (std::vector<double>{0, 0, -0.1, 0}));

  s.direction = {0.6, 0.8};
  s.selected = {0, 1};
  s.offsets = {0.3, 0.0};
  s.gamma = {2.0, 1.0};
  const auto w = offset_vectors(s, 0.7, 2, 2);
  // component perpendicular to theta vanishes
  EXPECT_NEAR(w[0] * -0.8 + w[1] * 0.6, 0.0, 1e-15);
  EXPECT_EQ(w[2], 0.0);
  EXPECT_EQ(w[3], 0.0);
}

TEST(OffsetVectors, RampDensityShowsNoAxisBias) {
  // points drawn from a density that is a ramp along x; at this equilibrium
  // the gamma-scaled offsets should be noise of similar size on both axes
  const int w = 32;
  std::vector<double> weights;
  for (int y = 0; y < w; ++y)
    for (int x = 0; x < w; ++x) weights.push_back(x + 0.5);
  const auto ramp = std::make_shared<const TargetDensity>(TargetDensity::grid(w, w, weights));
  Rng rng = make_stream(6);
  const std::size_t m = 64;
  auto pts = sample_target(*ramp, 2, m, rng);
  const auto set = ExtendedPointSet::with_index_classes({2, Boundary::bounded}, pts);
  const ClassConfig cfg({{ClassFunction::box({0.0}, {1.0}), ramp, 1.0}});
  OptimizerConfig opt;
  opt.oversampling = 8;
  const StepSampler sampler(set, cfg, opt);
  double vx = 0.0, vy = 0.0;
  std::size_t draws = 0, empties = 0;
  for (int k = 0; k < 1000; ++k) {
    SlicedStep step;
    ASSERT_TRUE(sampler.draw(set, rng, step, draws, empties));
    for (std::size_t s = 0; s < step.selected.size(); ++s) {
      const double a = step.gamma[s] * step.offsets[s];
      vx += a * a * step.direction[0] * step.direction[0];
      vy += a * a * step.direction[1] * step.direction[1];
    }
  }
  const double ratio = vx / vy;
  EXPECT_GE(ratio, 0.5);
  EXPECT_LE(ratio, 2.0);
}
