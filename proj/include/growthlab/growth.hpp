#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "growthlab/orbit_space.hpp"

namespace growthlab {

enum class GrowthMethod { kTailSlope, kRatio, kExactRecurrence, kAuto };

std::string growth_method_name(GrowthMethod m);

// Growth-rate estimate in nats per unit length from ball counts N(o, n).
struct GrowthReport {
  std::vector<std::uint64_t> counts;        // balls
  std::vector<std::uint64_t> spheres;
  double delta = 0.0;
  std::string method;
  int window_lo = 0;
  int window_hi = 0;
  std::vector<double> residuals;            // per window point (tail-slope)
  std::vector<long long> recurrence;        // s_n = sum c_j s_{n-j} (scaled by den)
  long long recurrence_den = 1;
  bool monotone = true;
  bool degenerate = false;                  // flagged zero growth
  std::optional<double> oracle;
  double fekete_upper = 0.0;                // min_r log N(r) / r
};

GrowthReport growth_rate(const std::vector<std::uint64_t>& ball_counts,
                         GrowthMethod method = GrowthMethod::kAuto);

// Least-squares slope of log N over the window, with an extra log(n)
// regressor soaking up polynomial drift. Used for general-p product counts
// whose sphere sequences satisfy no integer recurrence.
double drift_corrected_slope(const std::vector<std::uint64_t>& ball_counts,
                             int window_lo, int window_hi);

// Classical spherical-series identity 1/F = sum 1/f_i - (m-1) for a free
// product of one-generator cyclic factors (order 0 = infinite cyclic).
// Returns -log of the smallest positive pole of F.
struct FreeProductRate {
  double rate = 0.0;
  bool degenerate = false;  // series radius >= 1, rate 0
};
FreeProductRate exact_free_product_rate(const std::vector<int>& cyclic_orders);

// A(o, n, delta): elements with |d(o, g.o) - n| <= delta.
struct AnnulusSet {
  int n = 0;
  int delta = 0;
  PointSet ids;
};
AnnulusSet annulus(const OrbitSpace& space, int n, int delta);

// Greedy maximal pairwise > C separated subset, scanning in id order.
PointSet separated_net(OrbitSpace& space, const PointSet& ids, int C);

// ||(d_1..d_n)||_q with q dual to p (p=1 -> max, p=infinity -> sum).
double lq_norm_rate(const std::vector<double>& deltas, double p);

}  // namespace growthlab
