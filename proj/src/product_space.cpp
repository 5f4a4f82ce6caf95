#include "growthlab/product_space.hpp"

#include <cmath>

#include "growthlab/errors.hpp"

namespace growthlab {

ProductSpace::ProductSpace(std::vector<OrbitSpace*> factors, double p_exponent)
    : factors_(std::move(factors)), p_(p_exponent) {
  if (factors_.size() < 2) throw ConfigError("product needs >= 2 factors");
  if (!(p_ >= 1.0)) throw ConfigError("p must lie in [1, infinity]");
}

double ProductSpace::distance(const std::vector<OrbitSpace::Id>& x,
                              const std::vector<OrbitSpace::Id>& y) const {
  if (x.size() != factors_.size() || y.size() != factors_.size()) {
    throw ConfigError("tuple arity does not match the factor count");
  }
  if (p_ == kLInfinity) {
    int best = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      best = std::max(best, factors_[i]->distance(x[i], y[i]));
    }
    return best;
  }
  double sum = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    sum += std::pow(factors_[i]->distance(x[i], y[i]), p_);
  }
  return std::pow(sum, 1.0 / p_);
}

bool ProductSpace::within_ball(const std::vector<int>& radii, int R) const {
  if (p_ == kLInfinity) {
    for (int r : radii) {
      if (r > R) return false;
    }
    return true;
  }
  double ip;
  if (std::modf(p_, &ip) == 0.0 && p_ <= 8) {
    // Exact integer comparison sum r_i^p <= R^p.
    auto int_pow = [](long long base, int e) {
      long long out = 1;
      for (int i = 0; i < e; ++i) out *= base;
      return out;
    };
    long long lhs = 0;
    for (int r : radii) lhs += int_pow(r, static_cast<int>(p_));
    return lhs <= int_pow(R, static_cast<int>(p_));
  }
  double sum = 0;
  for (int r : radii) sum += std::pow(r, p_);
  return std::pow(sum, 1.0 / p_) <= R + 1e-12;
}

std::vector<std::uint64_t> ProductSpace::ball_counts(int radius) const {
  std::vector<std::vector<std::uint64_t>> spheres;
  for (auto* f : factors_) {
    if (f->explored_radius() < radius) {
      throw Unexplored("factor not explored to the product radius");
    }
    spheres.push_back(f->sphere_counts());
  }

  std::vector<std::uint64_t> balls(radius + 1, 0);
  if (p_ == kLInfinity) {
    for (int n = 0; n <= radius; ++n) {
      std::uint64_t prod = 1;
      for (auto* f : factors_) prod *= f->ball_count(n);
      balls[n] = prod;
    }
    return balls;
  }
  if (p_ == 1.0) {
    auto sp = convolve_spheres(spheres, radius);
    std::uint64_t acc = 0;
    for (int n = 0; n <= radius; ++n) {
      acc += sp[n];
      balls[n] = acc;
    }
    return balls;
  }
  // General p: lattice sum over factor radius tuples.
  std::vector<int> radii(factors_.size(), 0);
  auto recurse = [&](auto&& self, std::size_t i, std::uint64_t weight) -> void {
    if (i == factors_.size()) {
      for (int n = radius; n >= 0; --n) {
        if (within_ball(radii, n)) {
          balls[n] += weight;
        } else {
          break;
        }
      }
      return;
    }
    for (int r = 0; r <= radius; ++r) {
      if (spheres[i][r] == 0) continue;
      radii[i] = r;
      // Prune tuples already outside the largest ball.
      if (!within_ball(std::vector<int>(radii.begin(), radii.begin() + i + 1), radius)) {
        continue;
      }
      self(self, i + 1, weight * spheres[i][r]);
    }
    radii[i] = 0;
  };
  recurse(recurse, 0, 1);
  return balls;
}

std::vector<std::uint64_t> ProductSpace::sphere_counts(int radius) const {
  auto balls = ball_counts(radius);
  std::vector<std::uint64_t> out(radius + 1);
  for (int n = 0; n <= radius; ++n) out[n] = balls[n] - (n ? balls[n - 1] : 0);
  return out;
}

std::vector<std::uint64_t> convolve_spheres(
    const std::vector<std::vector<std::uint64_t>>& factor_spheres, int radius) {
  std::vector<std::uint64_t> acc{1};
  for (const auto& s : factor_spheres) {
    std::vector<std::uint64_t> next(radius + 1, 0);
    for (int i = 0; i < static_cast<int>(acc.size()) && i <= radius; ++i) {
      if (acc[i] == 0) continue;
      for (int j = 0; j + i <= radius && j < static_cast<int>(s.size()); ++j) {
        next[i + j] += acc[i] * s[j];
      }
    }
    acc = std::move(next);
  }
  acc.resize(radius + 1, 0);
  return acc;
}

}  // namespace growthlab
