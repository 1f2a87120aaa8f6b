#include <doctest.h>

#include <algorithm>
#include <array>
#include <map>

#include "oracles.hpp"
#include "thinspec/errors.hpp"
#include "thinspec/lattice.hpp"
#include "thinspec/spectrum.hpp"

using namespace thinspec;

TEST_CASE("laplacian spectrum as a Minkowski sum") {
  SeparableWeights one({1, 2}, 1), two({1, 2}, 2);
  IntervalUnion X{{-3, -1}, {1, 3}};
  CHECK(laplacian_spectrum(one, X) == X);
  CHECK(laplacian_spectrum(two, X) == IntervalUnion{{-6, 6}});
  CHECK(laplacian_spectrum(SeparableWeights({1}, 2), IntervalUnion{{-2, 2}}) == IntervalUnion{{-4, 4}});
  // a thin gap pattern survives in d = 2 only when the gaps are wide
  IntervalUnion Y{{-5, -4}, {4, 5}};
  CHECK(laplacian_spectrum(SeparableWeights({1}, 2), Y) == IntervalUnion{{-10, -8}, {-1, 1}, {8, 10}});
  CHECK_THROWS_AS(SeparableWeights({1}, 0), DomainError);
}

TEST_CASE("weight lookup") {
  SeparableWeights free({1}, 3);
  std::array<long, 3> n{4, -2, 7}, m{4, -1, 7};
  CHECK(weight_lookup(free, n, m) == 1.0);

  SeparableWeights w({1, 2}, 2);
  std::array<long, 2> x{0, 5}, y{1, 5};
  // a_0 is the last stored entry
  CHECK(weight_lookup(w, x, y) == 2.0);
  std::array<long, 2> u{1, 5}, v{2, 5};
  CHECK(weight_lookup(w, u, v) == 1.0);
  std::array<long, 2> far{2, 5}, diag{1, 6};
  CHECK_THROWS_AS(weight_lookup(w, x, far), DomainError);
  CHECK_THROWS_AS(weight_lookup(w, x, diag), DomainError);
  CHECK_THROWS_AS(weight_lookup(w, x, x), DomainError);

  oracle::Rng rng(1);
  SeparableWeights r({0.5, 1.5, 2.5}, 3);
  for (int t = 0; t < 1000; ++t) {
    std::array<long, 3> p{rng.integer(-50, 50), rng.integer(-50, 50), rng.integer(-50, 50)};
    auto q = p;
    q[static_cast<std::size_t>(rng.integer(0, 2))] += rng.integer(0, 1) ? 1 : -1;
    CHECK(weight_lookup(r, p, q) == weight_lookup(r, q, p));
  }
}

TEST_CASE("torus matrix") {
  SeparableWeights w({1, 2}, 2);
  auto coo = torus_laplacian(w, 4);
  std::map<std::pair<long, long>, double> entries;
  for (const auto& e : coo) entries[{e.row, e.col}] += e.value;
  // symmetric with four neighbours per site and no diagonal
  CHECK(entries.size() == 16 * 4);
  for (const auto& [k, v] : entries) {
    CHECK(k.first != k.second);
    CHECK(entries.at({k.second, k.first}) == v);
  }
  CHECK_THROWS_AS(torus_laplacian(w, 3), DomainError);
  CHECK_THROWS_AS(torus_eigenvalues(SeparableWeights({1}, 2), 65), DomainError);
}

TEST_CASE("torus eigenvalues lie in the computed spectrum") {
  for (auto a : {std::vector<double>{1, 2}, std::vector<double>{1}, std::vector<double>{0.6, 1.4, 1.0}}) {
    long side = 12;
    auto bs = band_structure(PeriodicJacobi::off_diagonal(a));
    for (int d : {1, 2}) {
      SeparableWeights w(a, d);
      auto sigma = laplacian_spectrum(w, bs.spectrum());
      auto ev = torus_eigenvalues(w, side);
      CHECK(ev.size() == static_cast<std::size_t>(d == 1 ? side : side * side));
      for (double e : ev) CHECK(sigma.distance_to(e) < 1e-8);
    }
  }
}

TEST_CASE("one-dimensional torus matches the periodic eigenvalues") {
  auto a = std::vector<double>{1, 2, 0.5};
  SeparableWeights w(a, 1);
  auto ev = torus_eigenvalues(w, 3);
  auto ref = periodic_eigenvalues(PeriodicJacobi::off_diagonal(a), 1);
  REQUIRE(ev.size() == ref.size());
  for (std::size_t i = 0; i < ev.size(); ++i) CHECK(ev[i] == doctest::Approx(ref[i]).epsilon(1e-12).scale(1));
}
