#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "fsot/classes.hpp"
#include "fsot/core.hpp"
#include "fsot/sliced_ot.hpp"

namespace fsot {

enum class EtaSchedule { constant, linear };

struct OptimizerConfig {
  std::size_t iterations = 1000;
  std::size_t projections = 32;  // sliced steps per iteration
  /// Dimensionless step size: 1 moves a fully selected point onto its matched
  /// bin mean along the projection axis.
  double learning_rate = 1.0;
  EtaSchedule schedule = EtaSchedule::linear;
  std::size_t oversampling = 4;  // target samples per selected point
  double axis_priority = 0.0;
  std::uint64_t seed = 0;
  /// Coordinates that are neither projected nor moved.
  std::vector<int> fixed_dims;
  bool offset_correction = true;
  GammaLimits gamma_limits;
  int threads = 1;

  void validate() const;
};

/// Iteration count used when none is given: max(1000, N), plus 25% for
/// two or three classes and 50% for four or more.
std::size_t default_iterations(std::size_t n_points, std::size_t n_classes);

struct RunReport {
  std::vector<double> loss_trace;  // mean step loss per iteration
  std::vector<double> eta_trace;
  std::size_t iterations = 0;
  double wall_seconds = 0.0;
  std::size_t total_draws = 0;
  std::size_t empty_draws = 0;
  ExtendedPointSet final_set;
};

using ProgressFn = std::function<void(std::size_t iteration, double loss)>;

/// Stochastic gradient descent on the sliced multi-class barycenter. Each
/// iteration draws `projections` independent sliced steps against the current
/// positions, averages every point's offsets over the steps that selected it,
/// and moves it. Results are bitwise identical for any thread count.
RunReport run(ExtendedPointSet set, const ClassConfig& config, const OptimizerConfig& opt,
              const ProgressFn& progress = {});

/// Draws sliced steps against a point set. Exposed for tests and benchmarks;
/// `run` is the normal entry point.
class StepSampler {
 public:
  StepSampler(const ExtendedPointSet& set, const ClassConfig& config, const OptimizerConfig& opt);

  /// Fills `step`; empty subclass selections and degenerate projections are
  /// redrawn. Returns false when every attempt selected nothing.
  bool draw(const ExtendedPointSet& set, Rng& rng, SlicedStep& step, std::size_t& draws,
            std::size_t& empty_draws) const;

  const std::vector<int>& free_dims() const noexcept { return free_dims_; }

 private:
  const ClassConfig& config_;
  const OptimizerConfig& opt_;
  ClassIndex index_;
  std::vector<int> free_dims_;
  bool toroidal_;
};

/// Monte-Carlo estimate of the sliced objective: mean of (m / N) W2^2 over
/// `n_probe` random (class, threshold, direction) draws, with the target
/// discretized at `opt.oversampling` samples per selected point.
double estimate_loss(const ExtendedPointSet& set, const ClassConfig& config, std::size_t n_probe, Rng& rng,
                     const OptimizerConfig& opt = {});

}  // namespace fsot
