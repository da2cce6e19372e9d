#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "fsot/classes.hpp"
#include "fsot/core.hpp"

namespace fsot {

/// A ready-to-run problem: class configuration plus the domain it lives on.
struct Problem {
  std::string name;
  Domain domain;
  std::shared_ptr<const ClassConfig> config;
};

struct PresetInfo {
  std::string name;
  std::string description;
};

const std::vector<PresetInfo>& preset_list();

/// Presets over N index-ordered points: three-class, seven-class-rgb, cmyk15,
/// progressive (4 levels), progressive:<k>, continuous-split.
Problem make_preset(const std::string& name, std::size_t n);

/// JSON problem description:
///   {"domain": {"dim": 2, "boundary": "toroidal"},
///    "classes": [{"function": {"type": "staircase", "pieces": [[0, 0.5, 1], [0.5, 1, 0.33]]},
///                 "target": {"type": "uniform"}, "weight": 1}]}
/// Function types: box (lo, hi), staircase (pieces), piecewise_linear
/// (knots [[c, w], ...]). Target types: uniform, image (path to a PGM/PPM,
/// dark is dense; relative paths resolve against the file's directory).
Problem load_problem(const std::filesystem::path& path);

/// Preset name or path to a JSON file.
Problem resolve_problem(const std::string& name_or_path, std::size_t n);

}  // namespace fsot
