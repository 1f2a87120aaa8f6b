#pragma once

// Reference computations that share no code with the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

// Cyclic Jacobi rotations on a dense symmetric matrix; ascending eigenvalues.
inline std::vector<double> jacobi_eigenvalues(Matrix A) {
  const std::size_t n = A.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += A[i][j] * A[i][j];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(A[p][q]) < 1e-300) continue;
        double theta = (A[q][q] - A[p][p]) / (2.0 * A[p][q]);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          double akp = A[k][p], akq = A[k][q];
          A[k][p] = c * akp - s * akq;
          A[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double apk = A[p][k], aqk = A[q][k];
          A[p][k] = c * apk - s * aqk;
          A[q][k] = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = A[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

// One period with Floquet phase +1 or -1 (dense).
inline Matrix floquet_matrix(const std::vector<double>& a, const std::vector<double>& b, int sign) {
  const std::size_t p = a.size();
  Matrix H(p, std::vector<double>(p, 0.0));
  if (p == 1) {
    H[0][0] = b[0] + 2.0 * sign * a[0];
    return H;
  }
  for (std::size_t i = 0; i < p; ++i) H[i][i] = b[i];
  for (std::size_t i = 0; i + 1 < p; ++i) {
    H[i][i + 1] += a[i];
    H[i + 1][i] += a[i];
  }
  H[p - 1][0] += sign * a[p - 1];
  H[0][p - 1] += sign * a[p - 1];
  return H;
}

// Discriminant via the three-term recurrence for two fundamental solutions.
inline double discriminant(const std::vector<double>& a, const std::vector<double>& b, double E) {
  const std::size_t p = a.size();
  // u_0, u_1 -> u_p, u_{p+1} with a_0 = a_p
  auto propagate = [&](double u0, double u1, double& up, double& up1) {
    double prev = u0, cur = u1;
    for (std::size_t n = 1; n <= p; ++n) {
      double a_prev = n == 1 ? a[p - 1] : a[n - 2];
      double next = ((E - b[n - 1]) * cur - a_prev * prev) / a[n - 1];
      prev = cur;
      cur = next;
    }
    up = prev;
    up1 = cur;
  };
  double c_p, c_p1, s_p, s_p1;
  propagate(1.0, 0.0, c_p, c_p1);
  propagate(0.0, 1.0, s_p, s_p1);
  // trace of the transfer map on (u_0, u_1)
  return c_p + s_p1;
}

// Sign-change bisection of D -/+ 2 on a uniform grid.
inline std::vector<double> edges_by_bisection(const std::vector<double>& a, const std::vector<double>& b,
                                              double lo, double hi, std::size_t points) {
  std::vector<double> roots;
  for (double level : {2.0, -2.0}) {
    auto f = [&](double E) { return discriminant(a, b, E) - level; };
    double x0 = lo, f0 = f(x0);
    for (std::size_t i = 1; i < points; ++i) {
      double x1 = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
      double f1 = f(x1);
      if ((f0 < 0) != (f1 < 0)) {
        double l = x0, r = x1, fl = f0;
        for (int it = 0; it < 200 && r - l > 1e-15; ++it) {
          double m = 0.5 * (l + r), fm = f(m);
          if ((fm < 0) == (fl < 0)) {
            l = m;
            fl = fm;
          } else {
            r = m;
          }
        }
        roots.push_back(0.5 * (l + r));
      }
      x0 = x1;
      f0 = f1;
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// Number of eigenvalues below E of the N x N Dirichlet truncation (Sturm count).
inline long dirichlet_count(const std::vector<double>& a, const std::vector<double>& b, long N, double E) {
  const std::size_t p = a.size();
  long count = 0;
  double d = 1.0;
  for (long n = 0; n < N; ++n) {
    double off = n == 0 ? 0.0 : a[static_cast<std::size_t>(n - 1) % p];
    double diag = b[static_cast<std::size_t>(n) % p] - E;
    d = n == 0 ? diag : diag - off * off / d;
    if (d == 0.0) d = -1e-300;
    if (d < 0) ++count;
  }
  return count;
}

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); }
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen); }
};

struct RandomJacobi {
  std::vector<double> a, b;
};

// Period in [1, max_p]; a in [1/bound, bound], b in [-bound, bound] (so <J> <= bound).
inline RandomJacobi random_jacobi(Rng& rng, long max_p, double bound, bool off_diagonal) {
  long p = rng.integer(1, max_p);
  RandomJacobi r;
  for (long i = 0; i < p; ++i) {
    r.a.push_back(rng.uniform(1.0 / bound, bound));
    r.b.push_back(off_diagonal ? 0.0 : rng.uniform(-bound, bound));
  }
  return r;
}

}  // namespace oracle
