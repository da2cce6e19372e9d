#include "fsot/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <numeric>

#include <omp.h>

#include "fsot/error.hpp"
#include "fsot/targets.hpp"

namespace fsot {
namespace {

constexpr int kMaxSelectionAttempts = 64;
constexpr int kMaxDirectionAttempts = 8;

struct Workspace {
  std::vector<std::size_t> selected;
  std::vector<double> projected;
  std::vector<double> samples;
  std::vector<double> target_projected;
  std::vector<double> point_buffer;
  std::vector<std::size_t> order;
  Bins bins;
};

Workspace& workspace() {
  thread_local Workspace ws;
  return ws;
}

}  // namespace

void OptimizerConfig::validate() const {
  require(iterations >= 1, Errc::invalid_argument, "iterations must be >= 1");
  require(projections >= 1, Errc::invalid_argument, "projections per iteration must be >= 1");
  require(oversampling >= 1, Errc::invalid_argument, "oversampling must be >= 1");
  require(std::isfinite(learning_rate) && learning_rate > 0.0, Errc::invalid_argument,
          "learning rate must be > 0");
  require(axis_priority >= 0.0 && axis_priority <= 1.0, Errc::invalid_argument,
          "axis priority must be in [0,1]");
  require(threads >= 1, Errc::invalid_argument, "thread count must be >= 1");
  require(gamma_limits.max > 0.0 && gamma_limits.min_length >= 0.0, Errc::invalid_argument,
          "invalid offset-correction limits");
}

std::size_t default_iterations(std::size_t n_points, std::size_t n_classes) {
  const double base = double(std::max<std::size_t>(1000, n_points));
  const double tier = n_classes <= 1 ? 1.0 : n_classes <= 3 ? 1.25 : 1.5;
  return std::size_t(std::llround(base * tier));
}

StepSampler::StepSampler(const ExtendedPointSet& set, const ClassConfig& config, const OptimizerConfig& opt)
    : config_(config), opt_(opt), index_(set), toroidal_(set.domain().boundary == Boundary::toroidal) {
  const int d = set.domain().dim;
  for (int j = 0; j < d; ++j)
    if (std::find(opt.fixed_dims.begin(), opt.fixed_dims.end(), j) == opt.fixed_dims.end())
      free_dims_.push_back(j);
  for (int j : opt.fixed_dims)
    require(j >= 0 && j < d, Errc::invalid_argument, "fixed dimension outside the domain");
  require(!free_dims_.empty(), Errc::invalid_argument, "every dimension is fixed");
  require(config.class_dim() == set.class_dim(), Errc::invalid_argument,
          "class configuration and point set have different class dimensions");
  for (const auto& c : config.classes())
    require(c.target->supports_dim(int(free_dims_.size())), Errc::invalid_argument,
            "a target density does not match the optimized dimension");
}

bool StepSampler::draw(const ExtendedPointSet& set, Rng& rng, SlicedStep& step, std::size_t& draws,
                       std::size_t& empty_draws) const {
  Workspace& ws = workspace();
  const int df = int(free_dims_.size());
  const bool identity_dims = df == set.domain().dim;
  const std::size_t n = set.size();

  for (int attempt = 0; attempt < kMaxSelectionAttempts; ++attempt) {
    ++draws;
    const std::size_t ci = select_class(config_, rng);
    const Class& cls = config_[ci];
    const double z = sample_threshold(cls.func, rng);
    ws.selected.clear();
    index_.filter(set, cls.func, z, ws.selected);
    if (ws.selected.empty()) {
      ++empty_draws;
      continue;
    }
    const std::size_t m = ws.selected.size();

    for (int dir_attempt = 0; dir_attempt < kMaxDirectionAttempts; ++dir_attempt) {
      step.direction = sample_direction(df, opt_.axis_priority, rng);
      step.shift.clear();
      if (toroidal_) {
        step.shift.resize(std::size_t(df));
        for (double& t : step.shift) t = uniform01(rng);
      }

      ws.projected.resize(m);
      ws.point_buffer.resize(std::size_t(df));
      for (std::size_t s = 0; s < m; ++s) {
        const auto p = set.point(ws.selected[s]);
        if (identity_dims) {
          ws.projected[s] = project_point(p, step.direction, step.shift);
        } else {
          for (int j = 0; j < df; ++j) ws.point_buffer[std::size_t(j)] = p[std::size_t(free_dims_[j])];
          ws.projected[s] = project_point(ws.point_buffer, step.direction, step.shift);
        }
      }

      const std::size_t count = m * opt_.oversampling;
      sample_target_into(*cls.target, df, count, rng, ws.samples);
      ws.target_projected.resize(count);
      // a toroidal shift maps uniform samples to uniform samples, so it is
      // only applied to non-uniform targets
      const std::span<const double> target_shift =
          cls.target->is_uniform() ? std::span<const double>() : std::span<const double>(step.shift);
      for (std::size_t s = 0; s < count; ++s)
        ws.target_projected[s] = project_point(
            std::span<const double>(ws.samples.data() + s * std::size_t(df), std::size_t(df)), step.direction,
            target_shift);
      std::sort(ws.target_projected.begin(), ws.target_projected.end());
      build_bins_into(ws.target_projected, m, ws.bins);

      const bool degenerate = !(ws.bins.bounds.back() > ws.bins.bounds.front());
      if (degenerate && (opt_.offset_correction || m > 1)) continue;

      // rank order of the projected subset
      ws.order.resize(m);
      std::iota(ws.order.begin(), ws.order.end(), std::size_t{0});
      std::sort(ws.order.begin(), ws.order.end(), [&](std::size_t a, std::size_t b) {
        return ws.projected[a] < ws.projected[b] || (ws.projected[a] == ws.projected[b] && a < b);
      });

      std::vector<double> gamma_by_rank;
      if (opt_.offset_correction) gamma_by_rank = gamma_factors(ws.bins.bounds, opt_.gamma_limits);

      step.class_index = ci;
      step.threshold = z;
      step.selected.assign(ws.selected.begin(), ws.selected.end());
      step.offsets.resize(m);
      step.gamma.resize(m);
      const double scale = 2.0 / double(n);
      double loss = 0.0;
      for (std::size_t rank = 0; rank < m; ++rank) {
        const std::size_t s = ws.order[rank];
        const double diff = ws.projected[s] - ws.bins.means[rank];
        step.offsets[s] = scale * diff;
        step.gamma[s] = opt_.offset_correction ? gamma_by_rank[rank] : 1.0;
        loss += diff * diff;
      }
      step.loss = loss / double(n);
      return true;
    }
    ++empty_draws;
  }
  return false;
}

RunReport run(ExtendedPointSet set, const ClassConfig& config, const OptimizerConfig& opt,
              const ProgressFn& progress) {
  opt.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const StepSampler sampler(set, config, opt);
  const auto& free_dims = sampler.free_dims();
  const std::size_t n = set.size();
  const std::size_t d = std::size_t(set.domain().dim);
  const std::size_t k = opt.projections;

  std::vector<SlicedStep> steps(k);
  std::vector<char> ok(k);
  std::vector<std::size_t> draws(k), empties(k);
  std::vector<double> acc(n * d);
  std::vector<std::uint32_t> hits(n);

  RunReport report{{}, {}, 0, 0.0, 0, 0, set};
  report.loss_trace.reserve(opt.iterations);
  report.eta_trace.reserve(opt.iterations);

  for (std::size_t it = 0; it < opt.iterations; ++it) {
    const double eta = opt.schedule == EtaSchedule::linear
                           ? opt.learning_rate * (1.0 - double(it) / double(opt.iterations))
                           : opt.learning_rate;
    // the 2/N factor of the offsets is undone here so that eta is dimensionless
    const double step_size = eta * double(n) / 2.0;

    std::exception_ptr failure;
#pragma omp parallel for num_threads(opt.threads) schedule(dynamic, 1)
    for (std::size_t s = 0; s < k; ++s) {
      try {
        Rng rng = make_stream(opt.seed, it + 1, s);
        draws[s] = empties[s] = 0;
        ok[s] = sampler.draw(set, rng, steps[s], draws[s], empties[s]);
      } catch (...) {
#pragma omp critical
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);

    std::fill(acc.begin(), acc.end(), 0.0);
    std::fill(hits.begin(), hits.end(), 0u);
    double loss = 0.0;
    std::size_t used = 0;
    for (std::size_t s = 0; s < k; ++s) {
      report.total_draws += draws[s];
      report.empty_draws += empties[s];
      if (!ok[s]) continue;
      const SlicedStep& st = steps[s];
      loss += st.loss;
      ++used;
      for (std::size_t q = 0; q < st.selected.size(); ++q) {
        const std::size_t i = st.selected[q];
        const double scale = -step_size * st.gamma[q] * st.offsets[q];
        double* a = acc.data() + i * d;
        for (std::size_t j = 0; j < free_dims.size(); ++j) a[free_dims[j]] += scale * st.direction[j];
        ++hits[i];
      }
    }
    if (report.total_draws >= 64 && 2 * report.empty_draws > report.total_draws)
      raise(Errc::config_degenerate, "more than half of the subclass draws selected no point");

    for (std::size_t i = 0; i < n; ++i) {
      if (hits[i] == 0) continue;
      auto p = set.point(i);
      const double inv = 1.0 / double(hits[i]);
      for (int j : free_dims) {
        double x = p[std::size_t(j)] + acc[i * d + std::size_t(j)] * inv;
        x = set.domain().boundary == Boundary::toroidal ? wrap_unit(x) : std::clamp(x, 0.0, 1.0);
        p[std::size_t(j)] = x;
      }
    }

    const double mean_loss = used ? loss / double(used) : 0.0;
    report.loss_trace.push_back(mean_loss);
    report.eta_trace.push_back(eta);
    if (progress) progress(it, mean_loss);
  }

  report.iterations = opt.iterations;
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report.final_set = std::move(set);
  return report;
}

double estimate_loss(const ExtendedPointSet& set, const ClassConfig& config, std::size_t n_probe, Rng& rng,
                     const OptimizerConfig& opt) {
  require(n_probe >= 1, Errc::invalid_argument, "n_probe must be >= 1");
  OptimizerConfig probe = opt;
  probe.offset_correction = false;
  const StepSampler sampler(set, config, probe);
  SlicedStep step;
  double total = 0.0;
  std::size_t draws = 0, empties = 0;
  for (std::size_t p = 0; p < n_probe; ++p) {
    if (!sampler.draw(set, rng, step, draws, empties))
      raise(Errc::config_degenerate, "no subclass selected any point");
    total += step.loss;
  }
  return total / double(n_probe);
}

}  // namespace fsot
