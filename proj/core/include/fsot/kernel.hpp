#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fsot {

/// Pixel filter: a one-pixel box or a truncated, renormalized Gaussian.
/// Lengths are in pixels.
struct Kernel {
  enum class Kind { box, gaussian };

  Kind kind = Kind::box;
  double sigma = 0.5;
  double truncation = 3.0;  // in units of sigma

  static Kernel box() { return {}; }
  static Kernel gaussian(double sigma, double truncation = 3.0) {
    return {Kind::gaussian, sigma, truncation};
  }

  /// Half-width of the support.
  double radius() const { return kind == Kind::box ? 0.5 : truncation * sigma; }

  /// Mass of the 1D profile inside [a, b]; the full profile has unit mass.
  double window_mass(double a, double b) const;

  void validate() const;
};

/// "box" or "gaussian:<sigma>".
Kernel parse_kernel(std::string_view text);
std::string to_string(const Kernel& kernel);

/// Separable footprint h(x) h(y) of the effective kernel g * r, tabulated at
/// `samples_per_pixel` resolution. h has unit integral.
class KernelProfile {
 public:
  KernelProfile(const Kernel& recon, const std::optional<Kernel>& percept, int samples_per_pixel = 64);

  double radius() const noexcept { return radius_; }
  bool is_box() const noexcept { return box_; }

  /// 1D profile value, zero outside [-radius, radius].
  double value(double x) const;
  /// 2D footprint with unit integral.
  double density(double dx, double dy) const { return value(dx) * value(dy); }
  /// 2D footprint normalized to 1 at the origin, i.e. a class function.
  double weight(double dx, double dy) const { return density(dx, dy) * inv_peak_sq_; }

  double step() const noexcept { return step_; }
  const std::vector<double>& table() const noexcept { return table_; }

 private:
  bool box_ = false;
  double radius_ = 0.5;
  double step_ = 0.0;
  double inv_peak_sq_ = 1.0;
  std::vector<double> table_;  // samples at -radius + j * step
};

}  // namespace fsot
