#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "fsot/core.hpp"

namespace fsot {

// Text format:
//   fsot-points v1 dim=<d> classdim=<k> n=<N> boundary=<bounded|toroidal>
//   c_1 .. c_k x_1 .. x_d        (N lines, 17 significant digits)

void write_points(std::ostream& out, const ExtendedPointSet& set);
ExtendedPointSet read_points(std::istream& in);

std::string format_points(const ExtendedPointSet& set);
ExtendedPointSet load_points(const std::filesystem::path& path);

/// Shortest-exact decimal for a double: "%.17g".
std::string format_double(double value);

/// Writes to a sibling temporary file and renames it into place, so an error
/// never leaves a partial file at `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace fsot
