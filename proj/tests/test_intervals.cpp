#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "thinspec/errors.hpp"
#include "thinspec/intervals.hpp"

using namespace thinspec;

namespace {

IntervalUnion random_union(oracle::Rng& rng, int max_parts) {
  std::vector<Interval> parts;
  long n = rng.integer(1, max_parts);
  for (long i = 0; i < n; ++i) {
    double lo = rng.uniform(-5, 5);
    parts.push_back({lo, lo + rng.uniform(0, 1)});
  }
  return IntervalUnion(parts);
}

bool close_unions(const IntervalUnion& x, const IntervalUnion& y, double tol) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (std::abs(x.components()[i].lo - y.components()[i].lo) > tol ||
        std::abs(x.components()[i].hi - y.components()[i].hi) > tol)
      return false;
  return true;
}

}  // namespace

TEST_CASE("canonical form merges overlaps and sorts") {
  IntervalUnion x{{3, 4}, {0, 1}, {0.5, 2}, {2 + 1e-13, 2.5}};
  REQUIRE(x.size() == 2);
  CHECK(x.components()[0].lo == 0);
  CHECK(x.components()[0].hi == 2.5);
  CHECK(x.components()[1].lo == 3);
  CHECK(IntervalUnion(x.components()) == x);
  CHECK_THROWS_AS(IntervalUnion({{1, 0}}), DomainError);
}

TEST_CASE("measure") {
  CHECK(measure(IntervalUnion{{-2, 2}}) == 4.0);
  CHECK(measure(IntervalUnion{{-3, -1}, {1, 3}}) == 4.0);
  CHECK(measure(IntervalUnion{}) == 0.0);
}

TEST_CASE("hausdorff distance examples") {
  CHECK(hausdorff_distance(IntervalUnion{{0, 1}}, IntervalUnion{{0, 1}}) == 0.0);
  CHECK(hausdorff_distance(IntervalUnion{{-2, 2}}, IntervalUnion{{-1, 1}}) == doctest::Approx(1.0));
  CHECK(hausdorff_distance(IntervalUnion{{0, 1}, {3, 4}}, IntervalUnion{{0, 1}}) == doctest::Approx(3.0));
  // a hole in the middle of the other set
  CHECK(hausdorff_distance(IntervalUnion{{0, 10}}, IntervalUnion{{0, 1}, {9, 10}}) == doctest::Approx(4.0));
  CHECK_THROWS_AS(hausdorff_distance(IntervalUnion{}, IntervalUnion{{0, 1}}), DomainError);
}

TEST_CASE("hausdorff distance against a sampled oracle") {
  oracle::Rng rng(11);
  for (int t = 0; t < 100; ++t) {
    auto x = random_union(rng, 4), y = random_union(rng, 4);
    // sup over a fine sample of each set of the distance to the other
    auto directed = [](const IntervalUnion& u, const IntervalUnion& v) {
      double d = 0;
      for (const auto& c : u.components())
        for (int i = 0; i <= 2000; ++i) d = std::max(d, v.distance_to(c.lo + (c.hi - c.lo) * i / 2000.0));
      return d;
    };
    double ref = std::max(directed(x, y), directed(y, x));
    CHECK(hausdorff_distance(x, y) == doctest::Approx(ref).epsilon(1e-3));
    CHECK(hausdorff_distance(x, y) >= ref - 1e-12);
  }
}

TEST_CASE("hausdorff metric properties") {
  oracle::Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    auto x = random_union(rng, 5), y = random_union(rng, 5), z = random_union(rng, 5);
    CHECK(hausdorff_distance(x, y) == hausdorff_distance(y, x));
    CHECK(hausdorff_distance(x, z) <= hausdorff_distance(x, y) + hausdorff_distance(y, z) + 1e-12);
    double e = rng.uniform(0.01, 1);
    CHECK(hausdorff_distance(x, epsilon_neighborhood(x, e)) <= e + 1e-12);
  }
}

TEST_CASE("minkowski sum") {
  CHECK(minkowski_sum(IntervalUnion{{-2, 2}}, IntervalUnion{{-2, 2}}) == IntervalUnion{{-4, 4}});
  IntervalUnion x{{-3, -1}, {1, 3}};
  CHECK(minkowski_sum(x, x) == IntervalUnion{{-6, 6}});
  CHECK(minkowski_sum(x, IntervalUnion{{0, 0}}) == x);

  oracle::Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    auto a = random_union(rng, 4), b = random_union(rng, 4), c = random_union(rng, 4);
    CHECK(close_unions(minkowski_sum(a, b), minkowski_sum(b, a), 1e-12));
    CHECK(close_unions(minkowski_sum(minkowski_sum(a, b), c), minkowski_sum(a, minkowski_sum(b, c)), 1e-12));
  }
}

TEST_CASE("epsilon neighborhood") {
  CHECK(epsilon_neighborhood(IntervalUnion{{0, 1}}, 0.5) == IntervalUnion{{-0.5, 1.5}});
  auto m = epsilon_neighborhood(IntervalUnion{{0, 1}, {1.5, 2}}, 0.3);
  REQUIRE(m.size() == 1);
  CHECK(m.components()[0].lo == doctest::Approx(-0.3));
  CHECK(m.components()[0].hi == doctest::Approx(2.3));
  IntervalUnion three{{0, 1}, {5, 6}, {10, 11}};
  CHECK(measure(epsilon_neighborhood(three, 0.25)) == doctest::Approx(measure(three) + 2 * 3 * 0.25));
  CHECK_THROWS_AS(epsilon_neighborhood(three, 0.0), DomainError);
}

TEST_CASE("intersection, scaling and shifting") {
  IntervalUnion x{{0, 2}, {4, 6}};
  CHECK(intersect(x, IntervalUnion{{1, 5}}) == IntervalUnion{{1, 2}, {4, 5}});
  CHECK(intersect(x, IntervalUnion{{2.5, 3.5}}).empty());
  CHECK(scale(x, 2.0) == IntervalUnion{{0, 4}, {8, 12}});
  CHECK(shift(x, -1.0) == IntervalUnion{{-1, 1}, {3, 5}});
}

TEST_CASE("cover counts") {
  long n = cover_count(IntervalUnion{{0, 1}}, 0.1);
  CHECK(n >= 10);
  CHECK(n <= 11);
  CHECK(cover_count(IntervalUnion{{0.37, 0.37}}, 0.01) == 1);
  CHECK(cover_count(IntervalUnion{{1e6 + 0.5, 1e6 + 0.5}}, 3.0) == 1);
  long m = cover_count(IntervalUnion{{-3, -1}, {1, 3}}, 0.5);
  CHECK(m >= 8);
  CHECK(m <= 10);
  // components sharing a box are counted once
  CHECK(cover_count(IntervalUnion{{0.1, 0.2}, {0.3, 0.4}}, 1.0) == 1);
  CHECK_THROWS_AS(cover_count(IntervalUnion{}, 0.1), DomainError);
}

TEST_CASE("cover count against brute-force box enumeration") {
  oracle::Rng rng(8);
  for (int t = 0; t < 100; ++t) {
    auto x = random_union(rng, 6);
    double eps = rng.uniform(0.05, 1.0);
    long brute = 0;
    for (long k = -200; k <= 200; ++k) {
      double lo = k * eps, hi = (k + 1) * eps;
      bool hit = false;
      for (const auto& c : x.components())
        if (c.lo < hi && c.hi >= lo) hit = true;
      brute += hit;
    }
    CHECK(cover_count(x, eps) == brute);
  }
}

TEST_CASE("box dimension estimates") {
  std::vector<CoverSample> c{CoverSample::from_count(10, 0.5), CoverSample::from_logs(std::log(1e4), 100 - std::log(2.0))};
  CHECK(box_dim_ratios(c)[1] == doctest::Approx(0.09274).epsilon(1e-4));
  CHECK(box_dim_estimate(c) == doctest::Approx(0.09274).epsilon(1e-4));

  std::vector<CoverSample> line;
  for (double e : {0.1, 0.01, 0.001}) line.push_back(CoverSample::from_count(1.0 / e, e));
  CHECK(box_dim_estimate(line) == doctest::Approx(1.0));

  std::vector<CoverSample> chain;
  for (double p : {1e2, 1e4, 1e6}) chain.push_back(CoverSample::from_logs(std::log(p), std::sqrt(p) - std::log(2.0)));
  auto r = box_dim_ratios(chain);
  CHECK(r[0] > r[1]);
  CHECK(r[1] > r[2]);

  CHECK_THROWS_AS(box_dim_estimate(std::vector<CoverSample>{line[0]}), DomainError);
  std::vector<CoverSample> increasing{line[1], line[0]};
  CHECK_THROWS_AS(box_dim_estimate(increasing), DomainError);
  CHECK_THROWS_AS(CoverSample::from_count(3, 1.5), DomainError);
}
