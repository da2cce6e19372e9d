#pragma once

// Independent reference computations used by the unit tests.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace oracle {

// Minimum-cost assignment by enumerating every permutation; cost |x - y|^p,
// averaged over the m pairs.
inline double assignment_cost(const std::vector<double>& xs, const std::vector<double>& ys, double p) {
  std::vector<std::size_t> perm(xs.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double best = INFINITY;
  do {
    double c = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) c += std::pow(std::abs(xs[i] - ys[perm[i]]), p);
    best = std::min(best, c);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best / double(xs.size());
}

// Pearson chi-square statistic of observed counts against expected counts.
inline double chi_square(const std::vector<double>& observed, const std::vector<double>& expected) {
  double s = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i)
    s += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
  return s;
}

// W1 between sorted atoms (mass 1/N each) and Lebesgue measure on [0,1] by a
// fine Riemann sum of |F_points - F_uniform|.
inline double w1_to_uniform_riemann(std::vector<double> pts, int steps = 2000000) {
  std::sort(pts.begin(), pts.end());
  double s = 0.0;
  std::size_t below = 0;
  for (int k = 0; k < steps; ++k) {
    const double x = (k + 0.5) / steps;
    while (below < pts.size() && pts[below] <= x) ++below;
    s += std::abs(double(below) / double(pts.size()) - x);
  }
  return s / steps;
}

}  // namespace oracle
