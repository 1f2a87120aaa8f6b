#pragma once

#include <cstddef>

#include "thinspec/jacobi.hpp"

namespace thinspec {

struct Mat2 {
  double m11 = 1.0, m12 = 0.0, m21 = 0.0, m22 = 1.0;

  static Mat2 identity() { return {}; }
  static Mat2 rotation(double theta);
  double det() const { return m11 * m22 - m12 * m21; }
  double trace() const { return m11 + m22; }
  Mat2 inverse() const;
  Mat2 transpose() const { return {m11, m21, m12, m22}; }
  double max_abs() const;
  double frobenius2() const { return m11 * m11 + m12 * m12 + m21 * m21 + m22 * m22; }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.m11 * y.m11 + x.m12 * y.m21, x.m11 * y.m12 + x.m12 * y.m22,
            x.m21 * y.m11 + x.m22 * y.m21, x.m21 * y.m12 + x.m22 * y.m22};
  }
  friend Mat2 operator+(const Mat2& x, const Mat2& y) {
    return {x.m11 + y.m11, x.m12 + y.m12, x.m21 + y.m21, x.m22 + y.m22};
  }
  friend Mat2 operator-(const Mat2& x, const Mat2& y) {
    return {x.m11 - y.m11, x.m12 - y.m12, x.m21 - y.m21, x.m22 - y.m22};
  }
  friend Mat2 operator*(double s, const Mat2& x) {
    return {s * x.m11, s * x.m12, s * x.m21, s * x.m22};
  }
};

struct ComplexPoint {
  double re = 0.0;
  double im = 0.0;
  double abs2() const { return re * re + im * im; }
};

// Matrix value is exp(log_scale) * m.
struct ScaledMat2 {
  Mat2 m;
  double log_scale = 0.0;
};

inline constexpr double kNearParabolicWidth = 1e-8;

// One step (u_n, a_{n-1} u_{n-1}) -> (u_{n+1}, a_n u_n).
Mat2 transfer_step(double a_n, double b_n, double E);

// A_E(n, m): product of steps m+1..n, or the inverse of A_E(m, n) when n < m.
Mat2 transfer_matrix(const PeriodicJacobi& J, double E, long n, long m);

// A_E(base + p, base), base in [0, p).
Mat2 monodromy(const PeriodicJacobi& J, double E, std::size_t base = 0);

// Same product, renormalized after each step so large periods do not overflow.
ScaledMat2 monodromy_scaled(const PeriodicJacobi& J, double E, std::size_t base = 0);

// Fixed point of z -> (m11 z + m12)/(m21 z + m22) in the upper half-plane.
ComplexPoint elliptic_fixed_point(const Mat2& M);

// |Tr M| in (2 - 1e-8, 2): fixed point close to the real axis.
bool is_near_parabolic(const Mat2& M);

// C with C M C^{-1} a rotation.
Mat2 rotation_conjugacy(const Mat2& M);

double antitrace(const Mat2& M);

}  // namespace thinspec
