#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "thinspec/errors.hpp"
#include "thinspec/jacobi.hpp"
#include "thinspec/sl2.hpp"

using namespace thinspec;

namespace {

void check_mat(const Mat2& x, const Mat2& y, double tol = 1e-12) {
  CHECK(x.m11 == doctest::Approx(y.m11).epsilon(tol).scale(1));
  CHECK(x.m12 == doctest::Approx(y.m12).epsilon(tol).scale(1));
  CHECK(x.m21 == doctest::Approx(y.m21).epsilon(tol).scale(1));
  CHECK(x.m22 == doctest::Approx(y.m22).epsilon(tol).scale(1));
}

PeriodicJacobi make(const oracle::RandomJacobi& r) { return PeriodicJacobi(r.a, r.b); }

}  // namespace

TEST_CASE("transfer step examples") {
  check_mat(transfer_step(1, 0, 3), {3, -1, 1, 0});
  check_mat(transfer_step(2, 0, 0), {0, -0.5, 2, 0});
  check_mat(transfer_step(1, 5, 5), {0, -1, 1, 0});
  CHECK_THROWS_AS(transfer_step(0, 0, 1), DomainError);
  CHECK_THROWS_AS(transfer_step(-1, 0, 1), DomainError);
  CHECK_THROWS_AS(PeriodicJacobi({1, 0}, {0, 0}), PositivityError);
}

TEST_CASE("monodromy examples") {
  auto free = PeriodicJacobi::off_diagonal({1});
  check_mat(monodromy(free, 0.7), {0.7, -1, 1, 0});
  auto J = PeriodicJacobi::off_diagonal({1, 2});
  check_mat(monodromy(J, 0.0), {-0.5, 0, 0, -2});
  CHECK(monodromy(J, 1.7, 0).trace() == doctest::Approx(monodromy(J, 1.7, 1).trace()).epsilon(1e-12));
  CHECK_THROWS_AS(monodromy(J, 0.0, 2), DomainError);
}

TEST_CASE("cocycle identities on random operators") {
  oracle::Rng rng(21);
  for (int t = 0; t < 100; ++t) {
    auto J = make(oracle::random_jacobi(rng, 8, 3, t % 2 == 0));
    double E = rng.uniform(-6, 6);
    long p = static_cast<long>(J.period());
    // determinant one
    CHECK(transfer_step(J.a_at(1), J.b_at(1), E).det() == doctest::Approx(1.0).epsilon(1e-12));
    Mat2 M = monodromy(J, E);
    CHECK(std::abs(M.det() - 1) <= 1e-12 * (1 + std::abs(M.m11 * M.m22) + std::abs(M.m12 * M.m21)));
    // A(n, m) A(m, k) = A(n, k)
    long n = rng.integer(-10, 20), m = rng.integer(-10, 20), k = rng.integer(-10, 20);
    Mat2 X = transfer_matrix(J, E, n, m), Y = transfer_matrix(J, E, m, k);
    Mat2 lhs = X * Y;
    Mat2 rhs = transfer_matrix(J, E, n, k);
    double s = 1 + X.max_abs() * Y.max_abs();
    CHECK((lhs - rhs).max_abs() / s < 1e-9);
    // periodicity A(n + p, m + p) = A(n, m)
    CHECK((transfer_matrix(J, E, n + p, m + p) - transfer_matrix(J, E, n, m)).max_abs() /
              (1 + transfer_matrix(J, E, n, m).max_abs()) <
          1e-9);
    // shifted monodromies are conjugate: same trace
    std::size_t base = static_cast<std::size_t>(rng.integer(0, p - 1));
    Mat2 M0 = monodromy(J, E, 0), Mb = monodromy(J, E, base);
    CHECK(Mb.trace() == doctest::Approx(M0.trace()).epsilon(1e-9).scale(1));
    // monodromy base j is A(j + p, j)
    check_mat(Mb, transfer_matrix(J, E, static_cast<long>(base) + p, static_cast<long>(base)), 1e-9);
  }
}

TEST_CASE("monodromy trace matches the three-term recurrence") {
  oracle::Rng rng(4);
  for (int t = 0; t < 100; ++t) {
    auto r = oracle::random_jacobi(rng, 8, 3, false);
    double E = rng.uniform(-6, 6);
    double D = monodromy(make(r), E).trace();
    CHECK(D == doctest::Approx(oracle::discriminant(r.a, r.b, E)).epsilon(1e-9).scale(1));
  }
}

TEST_CASE("scaled monodromy agrees with the plain product") {
  oracle::Rng rng(9);
  for (int t = 0; t < 50; ++t) {
    auto J = make(oracle::random_jacobi(rng, 8, 3, false));
    double E = rng.uniform(-8, 8);
    Mat2 M = monodromy(J, E);
    ScaledMat2 S = monodromy_scaled(J, E);
    double f = std::exp(S.log_scale);
    check_mat(f * S.m, M, 1e-10);
  }
  // long period: the scale grows but the entries stay bounded
  auto long_J = PeriodicJacobi::off_diagonal({1, 2}).repeated(2000);
  ScaledMat2 S = monodromy_scaled(long_J, 0.0);
  CHECK(std::isfinite(S.log_scale));
  CHECK(S.m.max_abs() <= 1e8);
  CHECK(S.log_scale + std::log(S.m.max_abs()) == doctest::Approx(2000 * std::log(2.0)).epsilon(1e-10));
}

TEST_CASE("elliptic fixed points") {
  ComplexPoint z = elliptic_fixed_point({0, -1, 1, 0});
  CHECK(z.re == doctest::Approx(0.0));
  CHECK(z.im == doctest::Approx(1.0));
  z = elliptic_fixed_point({1, -1, 1, 0});
  CHECK(z.re == doctest::Approx(0.5));
  CHECK(z.im == doctest::Approx(std::sqrt(3.0) / 2));
  CHECK_THROWS_AS(elliptic_fixed_point({3, -1, 1, 0}), NotEllipticError);
  CHECK_THROWS_AS(elliptic_fixed_point({2, -1, 1, 0}), NotEllipticError);

  oracle::Rng rng(13);
  for (int t = 0; t < 200; ++t) {
    double th = rng.uniform(0.01, std::numbers::pi - 0.01);
    double x = rng.uniform(-2, 2), y = rng.uniform(0.2, 3);
    // C^{-1} R C with C = (1/sqrt y)[[1, -x],[0, y]] fixes z = x + i y
    Mat2 C{1 / std::sqrt(y), -x / std::sqrt(y), 0, std::sqrt(y)};
    Mat2 M = C.inverse() * Mat2::rotation(th) * C;
    ComplexPoint w = elliptic_fixed_point(M);
    CHECK(w.re == doctest::Approx(x).epsilon(1e-9).scale(1));
    CHECK(w.im == doctest::Approx(y).epsilon(1e-9));
    // Möbius fixed-point equation m21 z^2 + (m22 - m11) z - m12 = 0
    double re = M.m21 * (w.re * w.re - w.im * w.im) + (M.m22 - M.m11) * w.re - M.m12;
    double im = M.m21 * 2 * w.re * w.im + (M.m22 - M.m11) * w.im;
    CHECK(std::abs(re) < 1e-9);
    CHECK(std::abs(im) < 1e-9);
  }
}

TEST_CASE("rotation conjugacy") {
  check_mat(rotation_conjugacy({0, -1, 1, 0}), Mat2::identity());
  Mat2 M{1, -1, 1, 0};
  Mat2 C = rotation_conjugacy(M);
  Mat2 R = C * M * C.inverse();
  CHECK(R.m11 == doctest::Approx(0.5));
  CHECK(R.m22 == doctest::Approx(0.5));
  CHECK(R.m12 == doctest::Approx(-R.m21));
  CHECK(rotation_conjugacy({0, -1, 1, 0}).frobenius2() == doctest::Approx(2.0));

  oracle::Rng rng(17);
  for (int t = 0; t < 200; ++t) {
    double th = rng.uniform(0.01, std::numbers::pi - 0.01);
    Mat2 G{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
    if (std::abs(G.det()) < 0.1) continue;
    Mat2 A = G * Mat2::rotation(th) * G.inverse();
    Mat2 Cj = rotation_conjugacy(A);
    Mat2 Rj = Cj * A * Cj.inverse();
    CHECK(std::abs(Rj.m11 - Rj.m22) < 1e-8);
    CHECK(std::abs(Rj.m12 + Rj.m21) < 1e-8);
    CHECK(Rj.m11 == doctest::Approx(std::cos(th)).epsilon(1e-8).scale(1));
    ComplexPoint z = elliptic_fixed_point(A);
    CHECK(Cj.frobenius2() == doctest::Approx((1 + z.abs2()) / z.im).epsilon(1e-9));
    CHECK(Cj.det() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("antitrace") {
  CHECK(antitrace({7, 1, 4, -3}) == 3.0);
  Mat2 A{1, 2, 3, 4};
  oracle::Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    Mat2 R = Mat2::rotation(rng.uniform(-4, 4));
    CHECK(antitrace(R.inverse() * A * R) == doctest::Approx(1.0).epsilon(1e-12));
    Mat2 X{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
    Mat2 Y{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
    CHECK(antitrace(X + 2.0 * Y) == doctest::Approx(antitrace(X) + 2 * antitrace(Y)).epsilon(1e-12).scale(1));
  }
}

TEST_CASE("near parabolic flag") {
  Mat2 M{2 - 1e-9, -1, 1, 0};
  CHECK(is_near_parabolic(M));
  CHECK_FALSE(is_near_parabolic({0, -1, 1, 0}));
}
