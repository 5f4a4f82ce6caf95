#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "growthlab/errors.hpp"
#include "growthlab/growth.hpp"
#include "growthlab/orbit_space.hpp"
#include "growthlab/product_space.hpp"

using namespace growthlab;

namespace {

std::vector<std::uint64_t> free2_balls(int radius) {
  std::vector<std::uint64_t> balls{1};
  std::uint64_t sphere = 4, acc = 1;
  for (int n = 1; n <= radius; ++n) {
    acc += sphere;
    balls.push_back(acc);
    sphere *= 3;
  }
  return balls;
}

}  // namespace

TEST_CASE("exact recurrence on geometric spheres") {
  auto rep = growth_rate(free2_balls(12), GrowthMethod::kExactRecurrence);
  CHECK(rep.method == "exact-recurrence");
  CHECK(std::fabs(rep.delta - std::log(3.0)) < 1e-9);
  CHECK(rep.recurrence == std::vector<long long>{3});
  CHECK(rep.monotone);
}

TEST_CASE("constant counts give zero growth") {
  std::vector<std::uint64_t> balls(10, 7);
  auto rep = growth_rate(balls);
  CHECK(rep.delta == 0.0);
  CHECK(rep.degenerate);
}

TEST_CASE("tail slope recovers a forced exponent") {
  std::vector<std::uint64_t> balls;
  for (int n = 0; n <= 14; ++n) {
    balls.push_back(static_cast<std::uint64_t>(std::llround(std::exp(2.0 * n))));
  }
  auto rep = growth_rate(balls, GrowthMethod::kTailSlope);
  CHECK(std::fabs(rep.delta - 2.0) < 0.01);
}

TEST_CASE("ratio estimator") {
  auto rep = growth_rate(free2_balls(10), GrowthMethod::kRatio);
  CHECK(std::fabs(rep.delta - std::log(3.0)) < 1e-12);
}

TEST_CASE("insufficient data") {
  CHECK_THROWS_AS(growth_rate({1, 5, 17}), InsufficientData);
  CHECK_THROWS_AS(growth_rate({1, 0, 0, 0, 0}), InsufficientData);
}

TEST_CASE("fekete upper bound dominates the estimate on free counts") {
  auto rep = growth_rate(free2_balls(12));
  CHECK(rep.fekete_upper >= rep.delta - 1e-9);
}

TEST_CASE("free product rate examples") {
  auto r = exact_free_product_rate({2, 0});
  CHECK(!r.degenerate);
  CHECK(std::fabs(r.rate - std::log(2.0)) < 1e-10);

  r = exact_free_product_rate({0, 0});
  CHECK(std::fabs(r.rate - std::log(3.0)) < 1e-10);

  r = exact_free_product_rate({2, 2});  // infinite dihedral
  CHECK(r.degenerate);
  CHECK(r.rate == 0.0);

  CHECK_THROWS_AS(exact_free_product_rate({2}), ConfigError);
}

TEST_CASE("free product rates increase toward log 3") {
  double prev = 0;
  for (int n = 2; n <= 12; ++n) {
    auto r = exact_free_product_rate({n, 0});
    CHECK(r.rate > prev);
    CHECK(r.rate < std::log(3.0));
    prev = r.rate;
  }
}

TEST_CASE("series oracle matches BFS counts for Z_n * Z") {
  for (int n : {2, 3, 4, 5}) {
    std::string rel(n, 'a');
    OrbitSpace q(Presentation::from_relators(2, {Word(rel)}));
    q.explore(11);
    auto rep = growth_rate(q.ball_counts());
    auto oracle = exact_free_product_rate({n, 0});
    CHECK(rep.method == "exact-recurrence");
    CHECK(std::fabs(rep.delta - oracle.rate) < 1e-9);
  }
}

TEST_CASE("quotient growth never exceeds free growth") {
  OrbitSpace f2(Presentation::free_group(2));
  f2.explore(10);
  auto free_rep = growth_rate(f2.ball_counts());
  for (const std::string rel : {"aaa", "aaaa", "abababababab"}) {
    OrbitSpace q(Presentation::from_relators(2, {Word(rel)}));
    q.explore(10);
    auto rep = growth_rate(q.ball_counts());
    CHECK(rep.delta <= free_rep.delta + 1e-9);
  }
}

TEST_CASE("annulus examples") {
  OrbitSpace f2(Presentation::free_group(2));
  f2.explore(4);
  CHECK(annulus(f2, 1, 0).ids.ids.size() == 4);
  CHECK(annulus(f2, 2, 1).ids.ids.size() == 4 + 12 + 36);
  CHECK(annulus(f2, 0, 0).ids.ids == std::vector<OrbitSpace::Id>{OrbitSpace::kBase});
  CHECK_THROWS_AS(annulus(f2, 4, 1), Unexplored);
}

TEST_CASE("separated net examples and maximality") {
  OrbitSpace f2(Presentation::free_group(2));
  f2.explore(2);
  auto sphere1 = annulus(f2, 1, 0).ids;
  auto net = separated_net(f2, sphere1, 1);
  CHECK(net.ids.size() == 4);  // pairwise distance 2 > 1

  auto all = separated_net(f2, sphere1, 0);
  CHECK(all.ids == sphere1.ids);

  PointSet singleton = PointSet::of({f2.id_of(Word("ab"))});
  CHECK(separated_net(f2, singleton, 5).ids == singleton.ids);

  // Maximality: every excluded point lies within C of a kept one.
  f2.explore(3);
  auto sphere3 = annulus(f2, 3, 0).ids;
  int C = 3;
  auto net3 = separated_net(f2, sphere3, C);
  for (auto id : sphere3.ids) {
    int best = 1 << 20;
    for (auto k : net3.ids) best = std::min(best, f2.distance(id, k));
    CHECK(best <= C);
  }
}

TEST_CASE("lq norm rate") {
  double l3 = std::log(3.0);
  CHECK(lq_norm_rate({l3, l3}, 1.0) == doctest::Approx(l3));
  CHECK(lq_norm_rate({l3, l3}, kLInfinity) == doctest::Approx(2 * l3));
  CHECK(lq_norm_rate({0.7, 0.0}, 2.0) == doctest::Approx(0.7));
  CHECK(lq_norm_rate({3.0, 4.0}, 2.0) == doctest::Approx(5.0));
  // Monotone in each coordinate.
  for (double p : {1.0, 1.5, 2.0, 3.0, kLInfinity}) {
    CHECK(lq_norm_rate({0.6, 0.4}, p) <= lq_norm_rate({0.7, 0.4}, p));
    CHECK(lq_norm_rate({0.6, 0.4}, p) <= lq_norm_rate({0.6, 0.5}, p));
  }
}

TEST_CASE("p=1 product growth of unequal factors approaches the max rate") {
  OrbitSpace f2(Presentation::free_group(2));
  OrbitSpace z2z(Presentation::from_relators(2, {Word("aa")}));
  f2.explore(12);
  z2z.explore(12);
  ProductSpace l1({&f2, &z2z}, 1.0);
  auto rep = growth_rate(l1.ball_counts(12), GrowthMethod::kTailSlope);
  CHECK(std::fabs(rep.delta - std::log(3.0)) < 0.05);
}

TEST_CASE("p=1 product of equal factors has the exact 6,-9 recurrence") {
  OrbitSpace a(Presentation::free_group(2));
  OrbitSpace b(Presentation::free_group(2));
  a.explore(12);
  b.explore(12);
  ProductSpace l1({&a, &b}, 1.0);
  auto rep = growth_rate(l1.ball_counts(12));
  CHECK(rep.method == "exact-recurrence");
  CHECK(std::fabs(rep.delta - std::log(3.0)) < 1e-9);
}
