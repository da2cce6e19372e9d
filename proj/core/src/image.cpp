#include "fsot/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>

#include "fsot/error.hpp"
#include "fsot/point_io.hpp"

namespace fsot {
namespace {

class Reader {
 public:
  explicit Reader(std::string bytes) : bytes_(std::move(bytes)) {}

  // header token, skipping whitespace and '#' comments
  long token() {
    skip();
    std::size_t start = pos_;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) ++pos_;
    if (start == pos_) raise(Errc::io, "malformed netpbm header");
    return std::stol(bytes_.substr(start, pos_ - start));
  }

  std::string magic() {
    if (bytes_.size() < 2) raise(Errc::io, "file too short for a netpbm image");
    pos_ = 2;
    return bytes_.substr(0, 2);
  }

  // exactly one whitespace byte separates the header from binary data
  void end_header() { ++pos_; }

  unsigned binary(bool wide) {
    const std::size_t need = wide ? 2 : 1;
    if (pos_ + need > bytes_.size()) raise(Errc::io, "truncated netpbm raster");
    unsigned v = static_cast<unsigned char>(bytes_[pos_]);
    if (wide) v = (v << 8) | static_cast<unsigned char>(bytes_[pos_ + 1]);
    pos_ += need;
    return v;
  }

 private:
  void skip() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

Image read_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::io, "cannot open image " + path.string());
  Reader r(std::string(std::istreambuf_iterator<char>(in), {}));
  const std::string magic = r.magic();
  const bool ascii = magic == "P2" || magic == "P3";
  const bool rgb = magic == "P3" || magic == "P6";
  if (magic != "P2" && magic != "P3" && magic != "P5" && magic != "P6")
    raise(Errc::io, "unsupported image format (expected PGM or PPM)");

  Image img;
  img.width = int(r.token());
  img.height = int(r.token());
  const long maxval = r.token();
  if (img.width <= 0 || img.height <= 0 || maxval <= 0 || maxval > 65535)
    raise(Errc::io, "invalid netpbm header values");
  img.channels = rgb ? 3 : 1;
  const std::size_t count = std::size_t(img.width) * std::size_t(img.height) * std::size_t(img.channels);
  img.data.resize(count);
  if (!ascii) r.end_header();
  for (std::size_t i = 0; i < count; ++i) {
    const long v = ascii ? r.token() : long(r.binary(maxval > 255));
    if (v > maxval) raise(Errc::io, "pixel value exceeds maxval");
    img.data[i] = double(v) / double(maxval);
  }
  return img;
}

void write_pgm(const std::filesystem::path& path, const Image& image) {
  require(image.channels == 1, Errc::invalid_argument, "PGM output needs a single-channel image");
  std::string out = "P5\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
  out.reserve(out.size() + image.data.size());
  for (double v : image.data) {
    const double c = std::isfinite(v) ? std::clamp(v, 0.0, 1.0) : 0.0;
    out.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(c * 255.0))));
  }
  write_file_atomic(path, out);
}

Image to_gray(const Image& image) {
  if (image.channels == 1) return image;
  Image g{image.width, image.height, 1, {}};
  g.data.resize(std::size_t(image.width) * std::size_t(image.height));
  for (std::size_t i = 0; i < g.data.size(); ++i)
    g.data[i] = 0.299 * image.data[3 * i] + 0.587 * image.data[3 * i + 1] + 0.114 * image.data[3 * i + 2];
  return g;
}

}  // namespace fsot
