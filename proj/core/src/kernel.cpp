#include "fsot/kernel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "fsot/error.hpp"

namespace fsot {
namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

}  // namespace

void Kernel::validate() const {
  if (kind == Kind::gaussian) {
    require(std::isfinite(sigma) && sigma > 0.0, Errc::invalid_argument, "Gaussian sigma must be > 0");
    require(std::isfinite(truncation) && truncation > 0.0, Errc::invalid_argument,
            "Gaussian truncation must be > 0");
  }
}

double Kernel::window_mass(double a, double b) const {
  const double r = radius();
  a = std::max(a, -r);
  b = std::min(b, r);
  if (b <= a) return 0.0;
  if (kind == Kind::box) return b - a;
  const double total = normal_cdf(truncation) - normal_cdf(-truncation);
  return (normal_cdf(b / sigma) - normal_cdf(a / sigma)) / total;
}

Kernel parse_kernel(std::string_view text) {
  if (text == "box") return Kernel::box();
  constexpr std::string_view prefix = "gaussian:";
  if (text.substr(0, prefix.size()) == prefix) {
    const std::string_view num = text.substr(prefix.size());
    double sigma = 0.0;
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), sigma);
    if (ec != std::errc() || ptr != num.data() + num.size())
      raise(Errc::invalid_argument, "bad Gaussian sigma in '" + std::string(text) + "'");
    Kernel k = Kernel::gaussian(sigma);
    k.validate();
    return k;
  }
  raise(Errc::invalid_argument, "unknown kernel '" + std::string(text) + "' (expected box or gaussian:<sigma>)");
}

std::string to_string(const Kernel& kernel) {
  if (kernel.kind == Kernel::Kind::box) return "box";
  char buf[64];
  std::snprintf(buf, sizeof buf, "gaussian:%g", kernel.sigma);
  return buf;
}

KernelProfile::KernelProfile(const Kernel& recon, const std::optional<Kernel>& percept,
                             int samples_per_pixel) {
  recon.validate();
  if (percept) percept->validate();
  require(samples_per_pixel >= 4, Errc::invalid_argument, "kernel table resolution too low");

  box_ = recon.kind == Kernel::Kind::box && !percept;
  // round the support up to the table grid so the centre sample sits at x = 0
  const double support = recon.radius() + (percept ? percept->radius() : 0.0);
  const double half_count = std::ceil(support * samples_per_pixel - 1e-9);
  step_ = 1.0 / samples_per_pixel;
  radius_ = half_count * step_;
  const auto count = std::size_t(2.0 * half_count) + 1;
  table_.assign(count, 0.0);

  if (!percept) {
    for (std::size_t j = 0; j < count; ++j) {
      const double x = -radius_ + double(j) * step_;
      table_[j] = recon.kind == Kernel::Kind::box ? (std::abs(x) <= 0.5 ? 1.0 : 0.0)
                                                  : std::exp(-0.5 * (x / recon.sigma) * (x / recon.sigma)) *
                                                        (std::abs(x) <= recon.radius() ? 1.0 : 0.0);
    }
  } else if (recon.kind == Kernel::Kind::box || percept->kind == Kernel::Kind::box) {
    // box * k evaluates exactly as the mass of k in a one-pixel window
    const Kernel& other = recon.kind == Kernel::Kind::box ? *percept : recon;
    for (std::size_t j = 0; j < count; ++j) {
      const double x = -radius_ + double(j) * step_;
      table_[j] = other.window_mass(x - 0.5, x + 0.5);
    }
  } else {
    // product of the two Gaussians is a Gaussian in t, so the truncated
    // convolution is N(x; sigma_eff) times the mass of N(t; mu, s) over the
    // overlap of both supports
    const double sr = recon.sigma, sg = percept->sigma;
    const double var = sr * sr + sg * sg;
    const double s = sr * sg / std::sqrt(var);
    for (std::size_t j = 0; j < count; ++j) {
      const double x = -radius_ + double(j) * step_;
      const double lo = std::max(-recon.radius(), x - percept->radius());
      const double hi = std::min(recon.radius(), x + percept->radius());
      if (hi <= lo) continue;
      const double mu = x * sr * sr / var;
      table_[j] = std::exp(-0.5 * x * x / var) * (normal_cdf((hi - mu) / s) - normal_cdf((lo - mu) / s));
    }
  }

  // unit integral (trapezoid rule)
  double mass = 0.0;
  for (std::size_t j = 0; j + 1 < count; ++j) mass += 0.5 * (table_[j] + table_[j + 1]) * step_;
  if (box_) mass = 1.0;
  require(mass > 0.0, Errc::invalid_argument, "kernel has zero mass");
  for (double& v : table_) v /= mass;

  const double peak = value(0.0);
  inv_peak_sq_ = 1.0 / (peak * peak);
}

double KernelProfile::value(double x) const {
  if (box_) return (x >= -0.5 && x < 0.5) ? 1.0 : 0.0;
  const double u = (x + radius_) / step_;
  if (u < 0.0) return 0.0;
  const auto j = std::size_t(u);
  if (j + 1 >= table_.size()) return j + 1 == table_.size() ? table_[j] : 0.0;
  const double t = u - double(j);
  return table_[j] * (1.0 - t) + table_[j + 1] * t;
}

}  // namespace fsot
