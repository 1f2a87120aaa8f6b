#include <lapacke.h>

#include <string>
#include <vector>

#include "thinspec/errors.hpp"
#include "thinspec/spectrum.hpp"

namespace thinspec {

namespace {

// Position of cyclic site n in the order 0, p-1, 1, p-2, ...; cyclic
// neighbours end up at most two apart, so the matrix is pentadiagonal.
std::size_t zigzag_position(std::size_t n, std::size_t p) {
  return (n <= (p - 1) / 2) ? 2 * n : 2 * (p - 1 - n) + 1;
}

}  // namespace

std::vector<double> periodic_eigenvalues(const PeriodicJacobi& J, int sign) {
  const std::size_t p = J.period();
  const auto a = J.a();
  const auto b = J.b();
  const double s = sign >= 0 ? 1.0 : -1.0;
  if (p == 1) return {b[0] + 2.0 * s * a[0]};

  const lapack_int kd = p == 2 ? 1 : 2;
  const lapack_int ldab = kd + 1;
  const lapack_int n = static_cast<lapack_int>(p);
  std::vector<double> ab(static_cast<std::size_t>(ldab) * p, 0.0);
  // column-major upper band storage: A(i,j) at ab[kd + i - j + j*ldab], i <= j
  auto add = [&](std::size_t u, std::size_t v, double val) {
    std::size_t i = zigzag_position(u, p), j = zigzag_position(v, p);
    if (i > j) std::swap(i, j);
    ab[static_cast<std::size_t>(kd) + i - j + j * static_cast<std::size_t>(ldab)] += val;
  };
  for (std::size_t k = 0; k < p; ++k) add(k, k, b[k]);
  for (std::size_t k = 0; k + 1 < p; ++k) add(k, k + 1, a[k]);
  add(p - 1, 0, s * a[p - 1]);

  std::vector<double> w(p);
  lapack_int info = LAPACKE_dsbev(LAPACK_COL_MAJOR, 'N', 'U', n, kd, ab.data(), ldab, w.data(),
                                  nullptr, 1);
  if (info != 0)
    throw EigensolverError("banded eigensolver failed (info " + std::to_string(info) +
                           ") for the roots of D(E) " + (s > 0 ? "- 2" : "+ 2") +
                           " at period " + std::to_string(p));
  return w;
}

}  // namespace thinspec
