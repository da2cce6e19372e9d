#include <gtest/gtest.h>

#include "fsot/classes.hpp"
#include "fsot/error.hpp"
#include "fsot/targets.hpp"
#include "oracles.hpp"

using namespace fsot;

namespace {

std::shared_ptr<const TargetDensity> uniform() {
  return std::make_shared<const TargetDensity>(TargetDensity::uniform());
}

ExtendedPointSet index_set(std::size_t n) { return new_random_set({2, Boundary::toroidal}, n, 1); }

}  // namespace

TEST(ClassFunction, StaircaseFirstMatchingPieceWins) {
  const auto w = ClassFunction::staircase({{0.0, 0.5, 1.0}, {0.5, 1.0, 0.25}});
  EXPECT_EQ(w.eval(std::vector<double>{0.2}), 1.0);
  EXPECT_EQ(w.eval(std::vector<double>{0.5}), 1.0);
  EXPECT_EQ(w.eval(std::vector<double>{0.7}), 0.25);
  const auto gap = ClassFunction::staircase({{0.0, 0.25, 1.0}});
  EXPECT_EQ(gap.eval(std::vector<double>{0.5}), 0.0);
}

TEST(ClassFunction, PiecewiseLinearInterpolates) {
  const auto w = ClassFunction::piecewise_linear({{0.0, 1.0}, {1.0, 0.0}});
  EXPECT_DOUBLE_EQ(w.eval(std::vector<double>{0.25}), 0.75);
  EXPECT_DOUBLE_EQ(w.eval(std::vector<double>{1.0}), 0.0);
}

TEST(ClassFunction, EvalChecksDomainAndArity) {
  const auto w = ClassFunction::box({0.0}, {1.0});
  EXPECT_THROW(w.eval(std::vector<double>{1.5}), Error);
  EXPECT_THROW(w.eval(std::vector<double>{0.5, 0.5}), Error);
  EXPECT_THROW(ClassFunction::box({0.6}, {0.4}), Error);
  EXPECT_THROW(ClassFunction::staircase({{0.0, 1.0, -0.1}}), Error);
}

TEST(ClassConfig, NormalizesWeightsAndRescalesLowMaxima) {
  const ClassConfig cfg({{ClassFunction::box({0.0}, {1.0}), uniform(), 3.0},
                         {ClassFunction::staircase({{0.0, 1.0, 0.5}}), uniform(), 1.0}});
  EXPECT_DOUBLE_EQ(cfg[0].weight, 0.75);
  EXPECT_DOUBLE_EQ(cfg[1].weight, 0.25);
  EXPECT_DOUBLE_EQ(cfg[1].func.max_value(), 1.0);
  EXPECT_EQ(cfg.warnings().size(), 1u);
}

TEST(ClassConfig, RejectsMixedArityAndMaximaAboveOne) {
  EXPECT_THROW(ClassConfig({{ClassFunction::box({0.0}, {1.0}), uniform(), 1.0},
                            {ClassFunction::box({0.0, 0.0}, {1.0, 1.0}), uniform(), 1.0}}),
               Error);
  EXPECT_THROW(ClassConfig({{ClassFunction::staircase({{0.0, 1.0, 2.0}}), uniform(), 1.0}}), Error);
}

TEST(FilterPoints, BoxSelectsClassInterval) {
  const auto s = index_set(8);  // class coords 1/16, 3/16, ...
  const auto sel = filter_points(s, ClassFunction::box({0.0}, {0.5}), 0.3);
  EXPECT_EQ(sel, (std::vector<std::size_t>{0, 1, 2, 3}));
}

TEST(FilterPoints, StaircaseThresholdsAreNested) {
  const auto s = index_set(8);
  const auto w = ClassFunction::staircase({{0.0, 0.5, 1.0}, {0.5, 1.0, 1.0 / 3.0}});
  EXPECT_EQ(filter_points(s, w, 0.2).size(), 8u);
  EXPECT_EQ(filter_points(s, w, 0.5).size(), 4u);
}

TEST(FilterPoints, EmptySelectionIsReported) {
  const auto s = index_set(8);
  try {
    filter_points(s, ClassFunction::box({0.0}, {1.0}), 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::empty_selection);
  }
  try {
    filter_points(s, ClassFunction::box({0.0}, {0.01}), 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::empty_selection);
  }
}

TEST(ClassIndex, MatchesLinearFilter) {
  Rng rng = make_stream(4);
  const auto s = index_set(500);
  const ClassIndex index(s);
  for (int t = 0; t < 200; ++t) {
    double a = uniform01(rng), b = uniform01(rng);
    if (a > b) std::swap(a, b);
    const auto w = ClassFunction::staircase({{a, b, 1.0}, {b, std::min(1.0, b + 0.1), 0.5}});
    const double z = sample_threshold(w, rng);
    std::vector<std::size_t> got;
    index.filter(s, w, z, got);
    std::vector<std::size_t> want;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (w.eval(s.class_coord(i)) > z) want.push_back(i);
    EXPECT_EQ(got, want);
  }
}

TEST(SelectClass, FrequenciesFollowWeights) {
  const ClassConfig cfg({{ClassFunction::box({0.0}, {1.0}), uniform(), 1.0},
                         {ClassFunction::box({0.0}, {1.0}), uniform(), 2.0},
                         {ClassFunction::box({0.0}, {1.0}), uniform(), 5.0}});
  Rng rng = make_stream(9);
  std::vector<double> counts(3, 0.0);
  const int n = 80000;
  for (int i = 0; i < n; ++i) counts[select_class(cfg, rng)] += 1.0;
  // chi-square with 2 degrees of freedom, 99.9% quantile 13.8
  EXPECT_LT(oracle::chi_square(counts, {n / 8.0, n / 4.0, n * 5.0 / 8.0}), 13.8);
}

TEST(SampleThreshold, UniformBelowMaximum) {
  Rng rng = make_stream(10);
  const auto w = ClassFunction::box({0.0}, {1.0});
  double sum = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double z = sample_threshold(w, rng);
    ASSERT_GE(z, 0.0);
    ASSERT_LT(z, 1.0);
    sum += z;
  }
  EXPECT_NEAR(sum / 20000, 0.5, 0.01);
}
