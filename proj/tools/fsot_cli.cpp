// fsot command-line front end.
//
// Exit codes: 0 success, 2 usage error (bad or missing flags, unknown preset,
// invalid parameter values), 1 runtime failure. Errors go to stderr as
// "fsot: error: <message>".

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fsot/fsot.hpp"

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Setup code whose invalid-argument failures are the user's flags, not a
// runtime problem.
template <class F>
auto setup(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const fsot::Error& e) {
    if (e.code() == fsot::Errc::invalid_argument) throw UsageError(e.what());
    throw;
  }
}

int default_threads() {
  if (const char* env = std::getenv("FSOT_THREADS")) {
    const int t = std::atoi(env);
    if (t >= 1) return t;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string trace_csv(const fsot::RunReport& r) {
  std::string out = "iter,loss,eta\n";
  for (std::size_t i = 0; i < r.loss_trace.size(); ++i)
    out += std::to_string(i) + "," + fsot::format_double(r.loss_trace[i]) + "," +
           fsot::format_double(r.eta_trace[i]) + "\n";
  return out;
}

struct OptFlags {
  std::optional<std::size_t> iterations;
  std::size_t projections = 32;
  double learning_rate = 1.0;
  std::string schedule = "linear";
  std::size_t oversampling = 4;
  double axis_priority = 0.0;
  std::uint64_t seed = 0;
  bool no_correction = false;
  int threads = 0;

  void add(CLI::App* app, bool with_projections = true) {
    app->add_option("--iters", iterations, "Iterations (default depends on N and the class count)");
    if (with_projections) app->add_option("--proj", projections, "Sliced steps per iteration")->capture_default_str();
    app->add_option("--lr", learning_rate, "Initial step size")->capture_default_str();
    app->add_option("--schedule", schedule, "Step-size schedule")
        ->check(CLI::IsMember({"linear", "constant"}))
        ->capture_default_str();
    app->add_option("--oversampling", oversampling, "Target samples per selected point")->capture_default_str();
    app->add_option("--axis-priority", axis_priority, "Probability of an axis-aligned projection")
        ->capture_default_str();
    app->add_option("--seed", seed, "Random seed")->capture_default_str();
    app->add_flag("--no-correction", no_correction, "Disable the bin-length offset correction");
    app->add_option("--threads", threads, "Worker threads (default: FSOT_THREADS or all cores)");
  }

  fsot::OptimizerConfig build(std::size_t n, std::size_t n_classes) const {
    fsot::OptimizerConfig o;
    o.iterations = iterations ? *iterations : fsot::default_iterations(n, n_classes);
    o.projections = projections;
    o.learning_rate = learning_rate;
    o.schedule = schedule == "constant" ? fsot::EtaSchedule::constant : fsot::EtaSchedule::linear;
    o.oversampling = oversampling;
    o.axis_priority = axis_priority;
    o.seed = seed;
    o.offset_correction = !no_correction;
    o.threads = threads > 0 ? threads : default_threads();
    o.validate();
    fsot::set_worker_threads(o.threads);
    return o;
  }
};

// ---- optimize ----------------------------------------------------------------

struct OptimizeCmd {
  std::string config;
  std::size_t n = 0;
  int dim = 2;
  std::string boundary;
  std::string out, trace;
  OptFlags opt;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("optimize", "Optimize a point set for a preset or JSON class configuration");
    c->add_option("--config", config,
                  "Preset name or JSON file (default: one class, uniform target, blue noise)");
    c->add_option("--n", n, "Number of points")->required()->check(CLI::PositiveNumber);
    c->add_option("--dim", dim, "Dimension for the default single-class problem")->capture_default_str();
    c->add_option("--boundary", boundary, "Override the domain boundary")
        ->check(CLI::IsMember({"bounded", "toroidal"}));
    c->add_option("--out", out, "Output point file")->required();
    c->add_option("--trace", trace, "Loss trace CSV (iter,loss,eta)");
    opt.add(c);
    c->callback([this] { run(); });
  }

  void run() {
    auto [problem, o] = setup([&] {
      fsot::Problem p;
      if (config.empty()) {
        fsot::Domain d{dim, fsot::Boundary::toroidal};
        d.validate();
        p = {"single", d,
             std::make_shared<const fsot::ClassConfig>(std::vector<fsot::Class>{
                 {fsot::ClassFunction::box({0.0}, {1.0}),
                  std::make_shared<const fsot::TargetDensity>(fsot::TargetDensity::uniform()), 1.0}})};
      } else {
        p = fsot::resolve_problem(config, n);
      }
      if (!boundary.empty()) p.domain.boundary = fsot::parse_boundary(boundary);
      return std::pair{p, opt.build(n, p.config->size())};
    });
    const auto init = fsot::new_random_set(problem.domain, n, o.seed);
    const auto report = fsot::run(init, *problem.config, o);
    fsot::write_file_atomic(out, fsot::format_points(report.final_set));
    if (!trace.empty()) fsot::write_file_atomic(trace, trace_csv(report));
  }
};

// ---- stipple -----------------------------------------------------------------

struct StippleCmd {
  std::string image, mode = "mono", svg, out, pgm;
  std::size_t n = 0;
  double gamma = 1.0;
  OptFlags opt;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("stipple", "Stipple a PGM/PPM image (mono or 15-class CMYK)");
    c->add_option("--image", image, "Input image (PGM or PPM)")->required()->check(CLI::ExistingFile);
    c->add_option("--n", n, "Number of dots")->required()->check(CLI::PositiveNumber);
    c->add_option("--mode", mode, "Stippling mode")->check(CLI::IsMember({"mono", "cmyk15"}))->capture_default_str();
    c->add_option("--gamma", gamma, "Ink gamma")->capture_default_str();
    c->add_option("--svg", svg, "SVG output");
    c->add_option("--out", out, "Point file output");
    c->add_option("--pgm", pgm, "Rasterized dots as PGM at the image resolution");
    opt.add(c);
    c->callback([this] { run(); });
  }

  void run() {
    if (svg.empty() && out.empty() && pgm.empty()) throw UsageError("stipple needs at least one of --svg, --out, --pgm");
    const fsot::Image img = fsot::read_image(image);
    fsot::StippleJob job = setup([&] {
      fsot::StippleJob j;
      j.image = img;
      j.n = n;
      j.mode = mode == "mono" ? fsot::StippleMode::mono : fsot::StippleMode::cmyk15;
      j.gamma = gamma;
      j.opt = opt.build(n, j.mode == fsot::StippleMode::mono ? 1 : 15);
      // validate densities before the run
      if (j.mode == fsot::StippleMode::mono) (void)fsot::mono_density(img, gamma);
      return j;
    });
    const auto res = fsot::stipple(job);
    if (!svg.empty()) fsot::write_file_atomic(svg, res.svg);
    if (!out.empty()) fsot::write_file_atomic(out, fsot::format_points(res.points));
    if (!pgm.empty()) {
      fsot::Image r{img.width, img.height, 1, std::vector<double>(img.data.size() / img.channels, 1.0)};
      for (std::size_t i = 0; i < res.points.size(); ++i) {
        const auto p = res.points.point(i);
        const int x = std::min(img.width - 1, int(p[0] * img.width));
        const int y = std::min(img.height - 1, int(p[1] * img.height));
        r.at(x, y) = 0.0;
      }
      fsot::write_pgm(pgm, r);
    }
  }
};

// ---- tile --------------------------------------------------------------------

struct TileCmd {
  int size = 64, spp = 1, pathdim = 2;
  std::string recon = "box", percept = "none", out, error_pgm, trace;
  OptFlags opt;
  std::optional<std::size_t> projections;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("tile", "Optimize a toroidal per-pixel sample tile");
    c->add_option("--size", size, "Tile width and height in pixels")->capture_default_str();
    c->add_option("--spp", spp, "Samples per pixel")->capture_default_str();
    c->add_option("--pathdim", pathdim, "Path-space dimensions")->capture_default_str();
    c->add_option("--recon", recon, "Reconstruction kernel: box or gaussian:<sigma>")->capture_default_str();
    c->add_option("--percept", percept, "Perceptual kernel: none, box or gaussian:<sigma>")->capture_default_str();
    c->add_option("--out", out, "Tile point file")->required();
    c->add_option("--error-pgm", error_pgm, "Perceived absolute error of a test integrand, as PGM");
    c->add_option("--trace", trace, "Loss trace CSV");
    c->add_option("--proj", projections, "Sliced steps per iteration (default: one per pixel)");
    opt.add(c, false);
    c->callback([this] { run(); });
  }

  void run() {
    auto [spec, o] = setup([&] {
      fsot::TileSpec s;
      s.width = s.height = size;
      s.spp = spp;
      s.path_dim = pathdim;
      s.recon = fsot::parse_kernel(recon);
      if (percept != "none") s.percept = fsot::parse_kernel(percept);
      s.validate();
      (void)fsot::build_pixel_classes(s);
      opt.projections = projections ? *projections : s.pixels();
      auto oc = opt.build(s.n_points(), 1);
      return std::pair{s, oc};
    });
    const auto tile = fsot::initial_tile(spec, o.seed);
    const auto report = fsot::optimize_tile(spec, tile, o);
    fsot::write_file_atomic(out, fsot::format_points(report.final_set));
    if (!trace.empty()) fsot::write_file_atomic(trace, trace_csv(report));
    if (!error_pgm.empty()) {
      const auto prof = fsot::tile_profile(spec);
      auto pe = fsot::perceived_error_image(report.final_set, spec.width, spec.height,
                                            fsot::von_mises_integrand(spec.path_dim), *prof);
      double mx = 0.0;
      for (double v : pe.abs_error.data) mx = std::max(mx, v);
      if (mx > 0.0)
        for (double& v : pe.abs_error.data) v /= mx;
      fsot::write_pgm(error_pgm, pe.abs_error);
    }
  }
};

// ---- analyze -----------------------------------------------------------------

struct AnalyzeCmd {
  std::string points, spectrum, radial;
  int res = 256;
  std::vector<int> dims = {0, 1};
  double f_cut = 0.5;
  int threads = 0;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("analyze", "Fourier power spectrum and radial profile of a point file");
    c->add_option("--points", points, "Point file")->required()->check(CLI::ExistingFile);
    c->add_option("--spectrum", spectrum, "Power spectrum image (PGM)");
    c->add_option("--radial", radial, "Radial profile CSV (freq_over_sqrtN,power)");
    c->add_option("--res", res, "Frequency grid resolution")->capture_default_str();
    c->add_option("--dims", dims, "The two coordinates to analyze")->expected(2)->delimiter(',');
    c->add_option("--fcut", f_cut, "Cut-off for the printed low-frequency power")->capture_default_str();
    c->add_option("--threads", threads, "Worker threads (default: FSOT_THREADS or all cores)");
    c->callback([this] { run(); });
  }

  void run() {
    const auto set = fsot::load_points(points);
    setup([&] {
      fsot::require(res >= 2 && res % 2 == 0, fsot::Errc::invalid_argument, "--res must be even and >= 2");
      for (int d : dims)
        fsot::require(d >= 0 && d < set.domain().dim, fsot::Errc::invalid_argument, "--dims outside the point dimension");
      fsot::set_worker_threads(threads > 0 ? threads : default_threads());
      return 0;
    });
    if (set.domain().dim < 2) fsot::raise(fsot::Errc::unsupported_dimension, "spectrum needs 2D points");
    fsot::PointList pts(2, set.size());
    for (std::size_t i = 0; i < set.size(); ++i) {
      pts[i][0] = set.point(i)[std::size_t(dims[0])];
      pts[i][1] = set.point(i)[std::size_t(dims[1])];
    }
    const auto spec = fsot::power_spectrum(pts, res);
    if (!spectrum.empty()) {
      fsot::Image img{res, res, 1, spec.power};
      // white noise maps to mid gray
      for (double& v : img.data) v = std::min(1.0, 0.5 * v);
      fsot::write_pgm(spectrum, img);
    }
    if (!radial.empty()) {
      std::string csv = "freq_over_sqrtN,power\n";
      for (std::size_t i = 0; i < spec.radial_freq.size(); ++i)
        csv += fsot::format_double(spec.radial_freq[i]) + "," + fsot::format_double(spec.radial_power[i]) + "\n";
      fsot::write_file_atomic(radial, csv);
    }
    std::cout << "points " << set.size() << "\nlow_freq_power " << fsot::format_double(fsot::low_freq_power(spec, f_cut))
              << "\n";
  }
};

// ---- mc-bench ----------------------------------------------------------------

struct McBenchCmd {
  std::string sampler = "fsot", integrand = "disc", csv;
  std::size_t nmin = 16, nmax = 4096, realizations = 10, variants = 40;
  OptFlags opt;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("mc-bench", "Monte-Carlo integration error versus point count");
    c->add_option("--sampler", sampler, "Point sampler")->check(CLI::IsMember({"fsot", "random"}))->capture_default_str();
    c->add_option("--integrand", integrand, "disc, step, gaussian, linear or constant")->capture_default_str();
    c->add_option("--nmin", nmin, "Smallest N (power of two)")->capture_default_str();
    c->add_option("--nmax", nmax, "Largest N (power of two)")->capture_default_str();
    c->add_option("--realizations", realizations, "Point sets per N")->capture_default_str();
    c->add_option("--variants", variants, "Random integrand translations")->capture_default_str();
    c->add_option("--csv", csv, "Output CSV (n,variance)")->required();
    opt.add(c);
    c->callback([this] { run(); });
  }

  void run() {
    const auto kind = setup([&] {
      fsot::require(nmin >= 1 && nmin <= nmax, fsot::Errc::invalid_argument, "need 1 <= nmin <= nmax");
      fsot::require(realizations >= 1 && variants >= 1, fsot::Errc::invalid_argument,
                    "realizations and variants must be >= 1");
      (void)opt.build(nmin, 1);
      return fsot::parse_integrand_kind(integrand);
    });
    std::vector<std::size_t> ns;
    for (std::size_t n = nmin; n <= nmax; n *= 2) ns.push_back(n);
    const fsot::Domain dom{2, fsot::Boundary::toroidal};
    const fsot::ClassConfig single({{fsot::ClassFunction::box({0.0}, {1.0}),
                                     std::make_shared<const fsot::TargetDensity>(fsot::TargetDensity::uniform()), 1.0}});
    const auto rows = fsot::mc_convergence(
        [&](std::size_t n, std::size_t r) {
          const std::uint64_t s = fsot::mix64(opt.seed ^ fsot::mix64(n * 1000003 + r));
          auto init = fsot::new_random_set(dom, n, s);
          if (sampler == "random") return init.points();
          auto o = opt.build(n, 1);
          o.seed = s;
          return fsot::run(init, single, o).final_set.points();
        },
        ns, kind, realizations, variants, opt.seed);
    std::string out = "n,variance\n";
    for (const auto& row : rows) out += std::to_string(row.n) + "," + fsot::format_double(row.variance) + "\n";
    fsot::write_file_atomic(csv, out);
  }
};

// ---- progressive ---------------------------------------------------------------

struct ProgressiveCmd {
  int levels = 4;
  bool ramp = false;
  std::size_t n = 0;
  std::string out, trace;
  OptFlags opt;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("progressive", "Optimize a progressive (prefix-stratified) point sequence");
    c->add_option("--levels", levels, "Power-of-two prefix levels")->capture_default_str();
    c->add_flag("--ramp", ramp, "Fully progressive linear ramp instead of levels");
    c->add_option("--n", n, "Number of points")->required()->check(CLI::PositiveNumber);
    c->add_option("--out", out, "Output point file")->required();
    c->add_option("--trace", trace, "Loss trace CSV");
    opt.add(c);
    c->callback([this] { run(); });
  }

  void run() {
    auto [config, o] = setup([&] {
      auto cfg = ramp ? fsot::progressive_ramp_config() : fsot::progressive_config(levels, n);
      return std::pair{cfg, opt.build(n, 1)};
    });
    const auto init = fsot::new_random_set({2, fsot::Boundary::toroidal}, n, o.seed);
    const auto report = fsot::run(init, config, o);
    fsot::write_file_atomic(out, fsot::format_points(report.final_set));
    if (!trace.empty()) fsot::write_file_atomic(trace, trace_csv(report));
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Filtered sliced optimal transport point-set optimizer"};
  app.require_subcommand(1);
  OptimizeCmd optimize;
  StippleCmd stipple;
  TileCmd tile;
  AnalyzeCmd analyze;
  McBenchCmd mc;
  ProgressiveCmd progressive;
  optimize.add(app);
  stipple.add(app);
  tile.add(app);
  analyze.add(app);
  mc.add(app);
  progressive.add(app);
  app.add_subcommand("presets", "List built-in class presets")->callback([] {
    for (const auto& p : fsot::preset_list()) std::cout << p.name << "\t" << p.description << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "fsot: error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "fsot: error: " << e.what() << "\n";
    return 2;
  } catch (const fsot::Error& e) {
    std::cerr << "fsot: error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "fsot: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
