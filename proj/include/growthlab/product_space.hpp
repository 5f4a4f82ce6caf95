#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "growthlab/orbit_space.hpp"

namespace growthlab {

inline constexpr double kLInfinity = std::numeric_limits<double>::infinity();

// L^p product of explored orbit spaces. Distances combine factor word
// metrics; ball counts come from the factor sphere sequences (convolution
// for p=1, ball products for p=infinity, lattice summation in general), so
// no product element is ever enumerated.
class ProductSpace {
 public:
  ProductSpace(std::vector<OrbitSpace*> factors, double p_exponent);

  double p_exponent() const { return p_; }
  std::size_t factor_count() const { return factors_.size(); }
  OrbitSpace& factor(std::size_t i) { return *factors_[i]; }

  double distance(const std::vector<OrbitSpace::Id>& x,
                  const std::vector<OrbitSpace::Id>& y) const;

  // True if the tuple of factor radii lies in the closed ball of radius R.
  // Integer exponents compare exactly; otherwise floats with 1e-12 slack.
  bool within_ball(const std::vector<int>& radii, int R) const;

  std::vector<std::uint64_t> ball_counts(int radius) const;
  std::vector<std::uint64_t> sphere_counts(int radius) const;

 private:
  std::vector<OrbitSpace*> factors_;
  double p_;
};

// Convolution of factor sphere sequences: the exact p=1 sphere counts.
std::vector<std::uint64_t> convolve_spheres(
    const std::vector<std::vector<std::uint64_t>>& factor_spheres, int radius);

}  // namespace growthlab
