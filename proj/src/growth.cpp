#include "growthlab/growth.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "growthlab/errors.hpp"
#include "growthlab/product_space.hpp"

namespace growthlab {

std::string growth_method_name(GrowthMethod m) {
  switch (m) {
    case GrowthMethod::kTailSlope: return "tail-slope";
    case GrowthMethod::kRatio: return "ratio";
    case GrowthMethod::kExactRecurrence: return "exact-recurrence";
    case GrowthMethod::kAuto: return "auto";
  }
  return "?";
}

namespace {

using int128 = __int128;

// Try to express s_n = (1/den) sum_j num_j s_{n-j} for all n >= burn with a
// fixed small order. Solves on the last rows in doubles, snaps to small
// rationals and verifies exactly over every available term.
struct Recurrence {
  std::vector<long long> num;
  long long den = 1;
  int burn = 0;
};

std::optional<Recurrence> detect_recurrence(const std::vector<std::uint64_t>& s) {
  const int terms = static_cast<int>(s.size());
  for (int k = 1; 3 * k <= terms; ++k) {
    // Solve the k x k system on the most recent rows.
    std::vector<std::vector<double>> m(k, std::vector<double>(k + 1));
    bool usable = true;
    for (int row = 0; row < k; ++row) {
      int n = terms - 1 - row;
      if (n - k < 0) usable = false;
      if (!usable) break;
      for (int j = 1; j <= k; ++j) m[row][j - 1] = static_cast<double>(s[n - j]);
      m[row][k] = static_cast<double>(s[n]);
    }
    if (!usable) continue;
    for (int col = 0; col < k; ++col) {
      int pivot = -1;
      double best = 1e-9;
      for (int row = col; row < k; ++row) {
        if (std::fabs(m[row][col]) > best) {
          best = std::fabs(m[row][col]);
          pivot = row;
        }
      }
      if (pivot < 0) {
        usable = false;
        break;
      }
      std::swap(m[col], m[pivot]);
      for (int row = 0; row < k; ++row) {
        if (row == col) continue;
        double f = m[row][col] / m[col][col];
        for (int c2 = col; c2 <= k; ++c2) m[row][c2] -= f * m[col][c2];
      }
    }
    if (!usable) continue;

    for (long long den : {1LL, 2LL, 3LL, 4LL, 6LL, 12LL}) {
      std::vector<long long> num(k);
      bool snapped = true;
      for (int j = 0; j < k; ++j) {
        double c = m[j][k] / m[j][j];
        double scaled = c * static_cast<double>(den);
        double rounded = std::round(scaled);
        if (std::fabs(scaled - rounded) > 1e-6 || std::fabs(rounded) > 1e15) {
          snapped = false;
          break;
        }
        num[j] = static_cast<long long>(rounded);
      }
      if (!snapped) continue;

      // Exact verification; allow a short burn-in prefix.
      int first_bad = -1;
      for (int n = k; n < terms; ++n) {
        int128 lhs = static_cast<int128>(den) * static_cast<int128>(s[n]);
        int128 rhs = 0;
        for (int j = 1; j <= k; ++j) {
          rhs += static_cast<int128>(num[j - 1]) * static_cast<int128>(s[n - j]);
        }
        if (lhs != rhs) first_bad = n;
      }
      int burn = first_bad + 1;
      int verified = terms - std::max(burn, k);
      if (verified >= k + 3 && burn <= terms / 2) {
        return Recurrence{std::move(num), den, std::max(burn, k)};
      }
      break;  // coefficients snapped but failed; other denominators are rescalings
    }
  }
  return {};
}

// Dominant root of x^k - (num_1/den) x^{k-1} - ... - num_k/den. Orders one
// and two are closed-form (exact on double roots like (x-3)^2); higher
// orders go through the companion-matrix spectrum.
double dominant_root(const std::vector<long long>& num, long long den) {
  const int k = static_cast<int>(num.size());
  std::vector<double> c(k);
  for (int j = 0; j < k; ++j) c[j] = static_cast<double>(num[j]) / den;
  if (k == 1) return c[0];
  if (k == 2) {
    double disc = c[0] * c[0] + 4 * c[1];
    if (disc < -1e-9) return std::sqrt(std::max(0.0, -c[1]));  // complex pair
    return 0.5 * (c[0] + std::sqrt(std::max(0.0, disc)));
  }
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(k, k);
  for (int j = 0; j < k; ++j) companion(0, j) = c[j];
  for (int i = 1; i < k; ++i) companion(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  double radius = 0.0, best_real = 0.0;
  for (int i = 0; i < k; ++i) {
    auto ev = solver.eigenvalues()[i];
    radius = std::max(radius, std::abs(ev));
    if (std::fabs(ev.imag()) < 1e-8) best_real = std::max(best_real, ev.real());
  }
  return best_real > radius - 1e-6 ? best_real : radius;
}

struct SlopeFit {
  double slope = 0;
  std::vector<double> residuals;
};

SlopeFit least_squares_log(const std::vector<std::uint64_t>& balls, int lo, int hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = hi - lo + 1;
  for (int i = lo; i <= hi; ++i) {
    double x = i, y = std::log(static_cast<double>(balls[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double denom = n * sxx - sx * sx;
  SlopeFit fit;
  fit.slope = denom == 0 ? 0 : (n * sxy - sx * sy) / denom;
  double intercept = (sy - fit.slope * sx) / n;
  for (int i = lo; i <= hi; ++i) {
    double y = std::log(static_cast<double>(balls[i]));
    fit.residuals.push_back(y - (fit.slope * i + intercept));
  }
  return fit;
}

}  // namespace

GrowthReport growth_rate(const std::vector<std::uint64_t>& balls, GrowthMethod method) {
  if (balls.size() < 4) throw InsufficientData("growth_rate needs >= 4 ball counts");
  for (auto c : balls) {
    if (c == 0) throw InsufficientData("growth_rate needs strictly positive counts");
  }
  GrowthReport rep;
  rep.counts = balls;
  rep.spheres.resize(balls.size());
  for (std::size_t n = 0; n < balls.size(); ++n) {
    rep.spheres[n] = balls[n] - (n ? balls[n - 1] : 0);
    if (n && balls[n] < balls[n - 1]) rep.monotone = false;
  }
  const int R = static_cast<int>(balls.size()) - 1;
  rep.fekete_upper = std::log(static_cast<double>(balls[1]));
  for (int r = 1; r <= R; ++r) {
    rep.fekete_upper =
        std::min(rep.fekete_upper, std::log(static_cast<double>(balls[r])) / r);
  }

  // Constant tail: zero growth.
  bool constant_tail = true;
  for (std::size_t n = balls.size() / 2; n < balls.size(); ++n) {
    if (rep.spheres[n] != 0) constant_tail = false;
  }
  if (constant_tail) {
    rep.delta = 0.0;
    rep.degenerate = true;
    rep.method = "constant";
    return rep;
  }

  auto run_recurrence = [&]() -> bool {
    auto rec = detect_recurrence(rep.spheres);
    if (!rec) return false;
    double root = dominant_root(rec->num, rec->den);
    if (root <= 0) return false;
    rep.delta = std::max(0.0, std::log(root));
    rep.degenerate = root <= 1.0 + 1e-12;
    rep.method = "exact-recurrence";
    rep.recurrence = rec->num;
    rep.recurrence_den = rec->den;
    rep.window_lo = rec->burn;
    rep.window_hi = R;
    return true;
  };
  auto run_tail_slope = [&]() {
    int lo = std::max(1, (R + 1) / 2);
    auto fit = least_squares_log(balls, lo, R);
    rep.delta = std::max(0.0, fit.slope);
    rep.method = "tail-slope";
    rep.window_lo = lo;
    rep.window_hi = R;
    rep.residuals = std::move(fit.residuals);
    rep.degenerate = rep.delta < 1e-9;
  };

  switch (method) {
    case GrowthMethod::kExactRecurrence:
      if (!run_recurrence()) {
        throw InsufficientData("no integer linear recurrence detected in sphere counts");
      }
      break;
    case GrowthMethod::kTailSlope:
      run_tail_slope();
      break;
    case GrowthMethod::kRatio: {
      if (rep.spheres[R - 1] == 0) throw InsufficientData("empty sphere for ratio");
      rep.delta = std::log(static_cast<double>(rep.spheres[R]) /
                           static_cast<double>(rep.spheres[R - 1]));
      rep.method = "ratio";
      rep.window_lo = R - 1;
      rep.window_hi = R;
      break;
    }
    case GrowthMethod::kAuto:
      if (!run_recurrence()) run_tail_slope();
      break;
  }
  return rep;
}

double drift_corrected_slope(const std::vector<std::uint64_t>& balls, int lo, int hi) {
  // Fit log N = a n + b log n + c by normal equations.
  double a11 = 0, a12 = 0, a13 = 0, a22 = 0, a23 = 0, a33 = 0;
  double b1 = 0, b2 = 0, b3 = 0;
  for (int n = lo; n <= hi; ++n) {
    double x1 = n, x2 = std::log(static_cast<double>(n)), x3 = 1;
    double y = std::log(static_cast<double>(balls[n]));
    a11 += x1 * x1; a12 += x1 * x2; a13 += x1 * x3;
    a22 += x2 * x2; a23 += x2 * x3; a33 += x3 * x3;
    b1 += x1 * y; b2 += x2 * y; b3 += x3 * y;
  }
  double m[3][4] = {{a11, a12, a13, b1}, {a12, a22, a23, b2}, {a13, a23, a33, b3}};
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int row = col + 1; row < 3; ++row) {
      if (std::fabs(m[row][col]) > std::fabs(m[pivot][col])) pivot = row;
    }
    std::swap(m[col], m[pivot]);
    for (int row = 0; row < 3; ++row) {
      if (row == col) continue;
      double f = m[row][col] / m[col][col];
      for (int c2 = col; c2 < 4; ++c2) m[row][c2] -= f * m[col][c2];
    }
  }
  return m[0][3] / m[0][0];
}

namespace {

using Poly = std::vector<long long>;

Poly mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Poly add(Poly a, const Poly& b, long long scale = 1) {
  if (b.size() > a.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += scale * b[i];
  return a;
}

double eval(const Poly& p, double t) {
  double v = 0;
  for (std::size_t i = p.size(); i-- > 0;) v = v * t + static_cast<double>(p[i]);
  return v;
}

}  // namespace

FreeProductRate exact_free_product_rate(const std::vector<int>& cyclic_orders) {
  if (cyclic_orders.size() < 2) {
    throw ConfigError("free product rate needs at least two factors");
  }
  // Factor spherical series N_i / D_i on one generator.
  std::vector<Poly> nums, dens;
  for (int n : cyclic_orders) {
    if (n < 0) throw ConfigError("cyclic order must be >= 0");
    if (n == 0) {
      nums.push_back({1, 1});        // (1+t)/(1-t): the integers
      dens.push_back({1, -1});
    } else {
      Poly p((n / 2) + 1, 2);        // 1 + 2t + ... (+ t^{n/2} if n even)
      p[0] = 1;
      if (n % 2 == 0) p[n / 2] = 1;
      p.resize(n / 2 + 1);
      nums.push_back(std::move(p));
      dens.push_back({1});
    }
  }
  // 1/F = sum D_i/N_i - (m-1)  =>  F = prod N_i / E.
  const std::size_t m = cyclic_orders.size();
  Poly all_num{1};
  for (const auto& n : nums) all_num = mul(all_num, n);
  Poly E{0};
  for (std::size_t i = 0; i < m; ++i) {
    Poly term = dens[i];
    for (std::size_t j = 0; j < m; ++j) {
      if (j != i) term = mul(term, nums[j]);
    }
    E = add(E, term);
  }
  E = add(E, all_num, -static_cast<long long>(m - 1));

  // Smallest positive root of E in (0, 1); factor numerators have positive
  // coefficients, so no cancellation can occur there.
  double lo = 0.0, hi = -1.0;
  const int grid = 1 << 16;
  double prev = eval(E, 1e-12);
  for (int i = 1; i <= grid; ++i) {
    double t = static_cast<double>(i) / grid;
    double v = eval(E, t);
    if ((prev > 0) != (v > 0) || v == 0) {
      lo = static_cast<double>(i - 1) / grid;
      hi = t;
      break;
    }
    prev = v;
  }
  if (hi < 0 || hi >= 1.0 - 1e-9) {
    return {0.0, true};
  }
  bool lo_pos = eval(E, lo) > 0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if ((eval(E, mid) > 0) == lo_pos) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-15) break;
  }
  double pole = 0.5 * (lo + hi);
  return {-std::log(pole), false};
}

AnnulusSet annulus(const OrbitSpace& space, int n, int delta) {
  if (n < 0 || delta < 0) throw ConfigError("annulus needs n, delta >= 0");
  if (space.explored_radius() < n + delta) {
    throw Unexplored("annulus needs the ball of radius n + delta explored");
  }
  std::vector<OrbitSpace::Id> ids;
  for (int r = std::max(0, n - delta); r <= n + delta; ++r) {
    const auto& layer = space.sphere_ids(r);
    ids.insert(ids.end(), layer.begin(), layer.end());
  }
  return AnnulusSet{n, delta,
                    PointSet::of(std::move(ids), "annulus(" + std::to_string(n) +
                                                     "," + std::to_string(delta) + ")")};
}

PointSet separated_net(OrbitSpace& space, const PointSet& ids, int C) {
  std::vector<OrbitSpace::Id> kept;
  for (auto id : ids.ids) {
    bool ok = true;
    for (auto k : kept) {
      if (space.distance(id, k) <= C) {
        ok = false;
        break;
      }
    }
    if (ok) kept.push_back(id);
  }
  return PointSet::of(std::move(kept), ids.label + "/net>" + std::to_string(C));
}

double lq_norm_rate(const std::vector<double>& deltas, double p) {
  if (!(p >= 1.0)) throw ConfigError("p must lie in [1, infinity]");
  for (double d : deltas) {
    if (d < 0) throw ConfigError("growth rates must be >= 0");
  }
  if (deltas.empty()) return 0.0;
  if (p == 1.0) return *std::max_element(deltas.begin(), deltas.end());
  if (p == kLInfinity) {
    double s = 0;
    for (double d : deltas) s += d;
    return s;
  }
  double q = p / (p - 1.0);
  double s = 0;
  for (double d : deltas) s += std::pow(d, q);
  return std::pow(s, 1.0 / q);
}

}  // namespace growthlab
