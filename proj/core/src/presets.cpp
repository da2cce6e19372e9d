#include "fsot/presets.hpp"

#include <charconv>
#include <fstream>

#include <json.hpp>

#include "fsot/applications.hpp"
#include "fsot/error.hpp"
#include "fsot/image.hpp"
#include "fsot/targets.hpp"

namespace fsot {
namespace {

using json = nlohmann::json;

std::shared_ptr<const TargetDensity> uniform_target() {
  static const auto u = std::make_shared<const TargetDensity>(TargetDensity::uniform());
  return u;
}

Problem make(std::string name, std::vector<Class> classes) {
  return {std::move(name), Domain{2, Boundary::toroidal}, std::make_shared<const ClassConfig>(std::move(classes))};
}

ClassFunction parse_function(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "box") return ClassFunction::box(j.at("lo").get<std::vector<double>>(), j.at("hi").get<std::vector<double>>());
  if (type == "staircase") {
    std::vector<StaircaseFunction::Piece> pieces;
    for (const auto& p : j.at("pieces")) {
      if (!p.is_array() || p.size() != 3) raise(Errc::invalid_argument, "staircase pieces are [lo, hi, level]");
      pieces.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
    }
    return ClassFunction::staircase(std::move(pieces));
  }
  if (type == "piecewise_linear") {
    std::vector<PiecewiseLinearFunction::Knot> knots;
    for (const auto& k : j.at("knots")) {
      if (!k.is_array() || k.size() != 2) raise(Errc::invalid_argument, "knots are [c, w]");
      knots.push_back({k[0].get<double>(), k[1].get<double>()});
    }
    return ClassFunction::piecewise_linear(std::move(knots));
  }
  raise(Errc::invalid_argument, "unknown class function type '" + type + "'");
}

std::shared_ptr<const TargetDensity> parse_target(const json& j, const std::filesystem::path& base) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "uniform") return uniform_target();
  if (type == "image") {
    std::filesystem::path p = j.at("path").get<std::string>();
    if (p.is_relative()) p = base / p;
    return std::make_shared<const TargetDensity>(mono_density(read_image(p), j.value("gamma", 1.0)));
  }
  raise(Errc::invalid_argument, "unknown target type '" + type + "'");
}

}  // namespace

const std::vector<PresetInfo>& preset_list() {
  static const std::vector<PresetInfo> list = {
      {"three-class", "two staircase classes: each half of the points and their union"},
      {"seven-class-rgb", "three colours over thirds of the points; every colour, pair and the union"},
      {"cmyk15", "four equal index ranges and all fifteen channel combinations, uniform targets"},
      {"progressive", "power-of-two prefixes (progressive:<k> for k levels, default 4)"},
      {"continuous-split", "two linear-ramp classes w = 1 - c and w = c"},
  };
  return list;
}

Problem make_preset(const std::string& name, std::size_t n) {
  require(n >= 1, Errc::invalid_argument, "point count must be >= 1");
  const auto u = uniform_target();
  if (name == "three-class") {
    return make(name, {{ClassFunction::staircase({{0.0, 0.5, 1.0}, {0.5, 1.0, 1.0 / 3.0}}), u, 1.0},
                       {ClassFunction::staircase({{0.5, 1.0, 1.0}, {0.0, 0.5, 1.0 / 3.0}}), u, 1.0}});
  }
  if (name == "seven-class-rgb") {
    // own third at level 1, the next third at 2/3, the remaining one at 1/3:
    // thresholds select {own}, {own, next} and all points
    const double third = 1.0 / 3.0;
    std::vector<Class> classes;
    for (int c = 0; c < 3; ++c) {
      std::vector<StaircaseFunction::Piece> pieces;
      for (int o = 0; o < 3; ++o) {
        const int r = (c + o) % 3;
        pieces.push_back({r * third, r == 2 ? 1.0 : (r + 1) * third, 1.0 - o * third});
      }
      classes.push_back({ClassFunction::staircase(std::move(pieces)), u, 1.0});
    }
    return make(name, std::move(classes));
  }
  if (name == "cmyk15") {
    std::vector<Class> classes;
    for (unsigned mask = 1; mask < 16; ++mask) {
      std::vector<StaircaseFunction::Piece> pieces;
      for (int j = 0; j < 4; ++j)
        if (mask & (1u << j)) pieces.push_back({0.25 * j, 0.25 * (j + 1), 1.0});
      classes.push_back({ClassFunction::staircase(std::move(pieces)), u, 1.0});
    }
    return make(name, std::move(classes));
  }
  if (name == "progressive" || name.rfind("progressive:", 0) == 0) {
    int k = 4;
    if (name.size() > 11) {
      const char* first = name.data() + 12;
      const char* last = name.data() + name.size();
      auto [ptr, ec] = std::from_chars(first, last, k);
      if (ec != std::errc() || ptr != last) raise(Errc::invalid_argument, "bad level count in '" + name + "'");
    }
    return {name, Domain{2, Boundary::toroidal}, std::make_shared<const ClassConfig>(progressive_config(k, n))};
  }
  if (name == "continuous-split") {
    return make(name, {{ClassFunction::piecewise_linear({{0.0, 1.0}, {1.0, 0.0}}), u, 1.0},
                       {ClassFunction::piecewise_linear({{0.0, 0.0}, {1.0, 1.0}}), u, 1.0}});
  }
  raise(Errc::invalid_argument, "unknown preset '" + name + "'");
}

Problem load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::io, "cannot open config " + path.string());
  try {
    const json j = json::parse(in);
    Domain domain;
    if (j.contains("domain")) {
      domain.dim = j["domain"].value("dim", 2);
      domain.boundary = parse_boundary(j["domain"].value("boundary", std::string("toroidal")));
    }
    domain.validate();
    std::vector<Class> classes;
    for (const auto& c : j.at("classes"))
      classes.push_back({parse_function(c.at("function")),
                         c.contains("target") ? parse_target(c["target"], path.parent_path()) : uniform_target(),
                         c.value("weight", 1.0)});
    require(!classes.empty(), Errc::invalid_argument, "config has no classes");
    return {path.stem().string(), domain, std::make_shared<const ClassConfig>(std::move(classes))};
  } catch (const json::exception& e) {
    raise(Errc::invalid_argument, "invalid config " + path.string() + ": " + e.what());
  }
}

Problem resolve_problem(const std::string& name_or_path, std::size_t n) {
  for (const auto& p : preset_list())
    if (name_or_path == p.name) return make_preset(name_or_path, n);
  if (name_or_path.rfind("progressive:", 0) == 0) return make_preset(name_or_path, n);
  require(std::filesystem::exists(name_or_path), Errc::invalid_argument,
          ("not a preset name or an existing file: " + name_or_path).c_str());
  return load_problem(name_or_path);
}

}  // namespace fsot
