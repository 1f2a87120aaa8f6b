#include "thinspec/sl2.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "thinspec/errors.hpp"

namespace thinspec {

Mat2 Mat2::rotation(double theta) {
  double c = std::cos(theta), s = std::sin(theta);
  return {c, -s, s, c};
}

Mat2 Mat2::inverse() const {
  double d = det();
  if (d == 0.0) throw DegenerateInputError("singular 2x2 matrix");
  return {m22 / d, -m12 / d, -m21 / d, m11 / d};
}

double Mat2::max_abs() const {
  return std::max({std::abs(m11), std::abs(m12), std::abs(m21), std::abs(m22)});
}

Mat2 transfer_step(double a_n, double b_n, double E) {
  if (!(a_n > 0.0)) throw DomainError("transfer step needs a_n > 0, got " + std::to_string(a_n));
  return {(E - b_n) / a_n, -1.0 / a_n, a_n, 0.0};
}

Mat2 transfer_matrix(const PeriodicJacobi& J, double E, long n, long m) {
  if (n < m) {
    // det is 1 exactly, so the inverse is the adjugate
    Mat2 B = transfer_matrix(J, E, m, n);
    return {B.m22, -B.m12, -B.m21, B.m11};
  }
  Mat2 A;
  for (long k = m + 1; k <= n; ++k) A = transfer_step(J.a_at(k), J.b_at(k), E) * A;
  return A;
}

Mat2 monodromy(const PeriodicJacobi& J, double E, std::size_t base) {
  if (base >= J.period())
    throw DomainError("monodromy base " + std::to_string(base) + " outside [0, " +
                      std::to_string(J.period()) + ")");
  long m = static_cast<long>(base);
  return transfer_matrix(J, E, m + static_cast<long>(J.period()), m);
}

ScaledMat2 monodromy_scaled(const PeriodicJacobi& J, double E, std::size_t base) {
  if (base >= J.period()) throw DomainError("monodromy base outside [0, p)");
  ScaledMat2 out;
  const auto a = J.a();
  const auto b = J.b();
  const std::size_t p = J.period();
  for (std::size_t k = 0; k < p; ++k) {
    std::size_t s = (base + k) % p;
    out.m = transfer_step(a[s], b[s], E) * out.m;
    double n = out.m.max_abs();
    if (n > 1e8 || n < 1e-8) {
      out.m = (1.0 / n) * out.m;
      out.log_scale += std::log(n);
    }
  }
  return out;
}

ComplexPoint elliptic_fixed_point(const Mat2& M) {
  double tr = M.trace();
  double disc = 4.0 * M.det() - tr * tr;
  if (!(std::abs(tr) < 2.0) || !(disc > 0.0))
    throw NotEllipticError("matrix is not elliptic (trace " + std::to_string(tr) + ")");
  if (M.m21 == 0.0) throw DegenerateInputError("elliptic matrix with m21 = 0");
  return {(M.m11 - M.m22) / (2.0 * M.m21), std::sqrt(disc) / (2.0 * std::abs(M.m21))};
}

bool is_near_parabolic(const Mat2& M) {
  double t = std::abs(M.trace());
  return t > 2.0 - kNearParabolicWidth && t < 2.0;
}

Mat2 rotation_conjugacy(const Mat2& M) {
  ComplexPoint z = elliptic_fixed_point(M);
  double s = 1.0 / std::sqrt(z.im);
  return {s, -s * z.re, 0.0, s * z.im};
}

double antitrace(const Mat2& M) { return M.m21 - M.m12; }

}  // namespace thinspec
