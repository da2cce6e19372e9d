#include "fsot/point_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unistd.h>

#include "fsot/error.hpp"

namespace fsot {
namespace {

constexpr std::string_view kMagic = "fsot-points";

std::string header_value(const std::string& token, std::string_view key) {
  const std::string prefix = std::string(key) + "=";
  if (token.rfind(prefix, 0) != 0)
    raise(Errc::io, "malformed point-file header: expected '" + prefix + "...'");
  return token.substr(prefix.size());
}

long long parse_integer(const std::string& text) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    raise(Errc::io, "malformed integer '" + text + "' in point-file header");
  return v;
}

}  // namespace

std::string format_double(double value) {
  char buffer[32];
  const int n = std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return std::string(buffer, std::size_t(n));
}

void write_points(std::ostream& out, const ExtendedPointSet& set) {
  const int k = set.class_dim();
  const int d = set.domain().dim;
  out << kMagic << " v1 dim=" << d << " classdim=" << k << " n=" << set.size()
      << " boundary=" << to_string(set.domain().boundary) << '\n';
  std::string line;
  for (std::size_t i = 0; i < set.size(); ++i) {
    line.clear();
    for (double c : set.class_coord(i)) {
      if (!line.empty()) line += ' ';
      line += format_double(c);
    }
    for (double x : set.point(i)) {
      line += ' ';
      line += format_double(x);
    }
    out << line << '\n';
  }
}

std::string format_points(const ExtendedPointSet& set) {
  std::ostringstream out;
  write_points(out, set);
  return out.str();
}

ExtendedPointSet read_points(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) raise(Errc::io, "empty point file");
  std::istringstream hs(header);
  std::string magic, version, dim_tok, class_tok, n_tok, boundary_tok;
  hs >> magic >> version >> dim_tok >> class_tok >> n_tok >> boundary_tok;
  if (magic != kMagic || version != "v1") raise(Errc::io, "not an fsot-points v1 file");

  Domain domain;
  domain.dim = int(parse_integer(header_value(dim_tok, "dim")));
  const int k = int(parse_integer(header_value(class_tok, "classdim")));
  const long long n = parse_integer(header_value(n_tok, "n"));
  domain.boundary = parse_boundary(header_value(boundary_tok, "boundary"));
  if (domain.dim < 1 || k < 1 || n < 1) raise(Errc::io, "invalid point-file header values");

  PointList points(domain.dim, std::size_t(n));
  std::vector<double> classes(std::size_t(n) * std::size_t(k));
  std::string line;
  for (long long i = 0; i < n; ++i) {
    if (!std::getline(in, line)) raise(Errc::io, "point file truncated");
    const char* p = line.data();
    const char* end = p + line.size();
    auto next = [&](double& v) {
      while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
      auto [ptr, ec] = std::from_chars(p, end, v);
      if (ec != std::errc()) raise(Errc::io, "malformed number on point line " + std::to_string(i + 1));
      p = ptr;
    };
    for (int j = 0; j < k; ++j) next(classes[std::size_t(i) * k + j]);
    auto pt = points[std::size_t(i)];
    for (int j = 0; j < domain.dim; ++j) next(pt[j]);
  }
  return ExtendedPointSet(domain, k, std::move(points), std::move(classes));
}

ExtendedPointSet load_points(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::io, "cannot open '" + path.string() + "'");
  return read_points(in);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) raise(Errc::io, "cannot write '" + tmp.string() + "'");
    out.write(contents.data(), std::streamsize(contents.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      raise(Errc::io, "write failed for '" + path.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    raise(Errc::io, "cannot move output into place at '" + path.string() + "'");
  }
}

}  // namespace fsot
