#include "thinspec/lattice.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "thinspec/errors.hpp"

namespace thinspec {

SeparableWeights::SeparableWeights(std::vector<double> a, int d)
    : base_(PeriodicJacobi::off_diagonal(std::move(a))), d_(d) {
  if (d < 1) throw DomainError("lattice dimension must be at least 1");
}

double SeparableWeights::bound() const { return std::max(base_.a_max(), 1.0 / base_.a_min()); }

double weight_lookup(const SeparableWeights& w, std::span<const long> n, std::span<const long> m) {
  const auto d = static_cast<std::size_t>(w.dimension());
  if (n.size() != d || m.size() != d) throw DomainError("lattice points must have d coordinates");
  long l1 = 0;
  std::size_t axis = 0;
  for (std::size_t j = 0; j < d; ++j) {
    long diff = m[j] - n[j];
    l1 += std::abs(diff);
    if (diff != 0) axis = j;
  }
  if (l1 != 1) throw DomainError("weights are defined only for nearest neighbours");
  // the edge {x, x + e_j} carries a_{x_j}
  return w.base().a_at(std::min(n[axis], m[axis]));
}

IntervalUnion laplacian_spectrum(const SeparableWeights& w, const IntervalUnion& spectrum_1d) {
  if (spectrum_1d.empty()) throw DomainError("one-dimensional spectrum is empty");
  IntervalUnion acc = spectrum_1d;
  for (int j = 1; j < w.dimension(); ++j) acc = minkowski_sum(acc, spectrum_1d);
  return acc;
}

std::vector<CooEntry> torus_laplacian(const SeparableWeights& w, long side) {
  const long p = static_cast<long>(w.base().period());
  if (side < 1 || side % p != 0)
    throw DomainError("torus side must be a positive multiple of the period " + std::to_string(p));
  const int d = w.dimension();
  long sites = 1;
  for (int j = 0; j < d; ++j) sites *= side;
  if (sites > 1000000) throw DomainError("torus too large");

  std::map<std::pair<long, long>, double> acc;
  std::vector<long> x(static_cast<std::size_t>(d));
  for (long s = 0; s < sites; ++s) {
    long r = s;
    for (int j = 0; j < d; ++j) {
      x[static_cast<std::size_t>(j)] = r % side;
      r /= side;
    }
    long stride = 1;
    for (int j = 0; j < d; ++j, stride *= side) {
      long xj = x[static_cast<std::size_t>(j)];
      long t = s + ((xj + 1) % side - xj) * stride;
      double wv = w.base().a_at(xj);
      acc[{s, t}] += wv;
      acc[{t, s}] += wv;
    }
  }
  std::vector<CooEntry> out;
  out.reserve(acc.size());
  for (const auto& [k, v] : acc) out.push_back({k.first, k.second, v});
  return out;
}

std::vector<double> torus_eigenvalues(const SeparableWeights& w, long side) {
  auto coo = torus_laplacian(w, side);
  long n = 1;
  for (int j = 0; j < w.dimension(); ++j) n *= side;
  if (n > 4096) throw DomainError("dense torus eigensolve limited to 4096 sites");
  std::vector<double> A(static_cast<std::size_t>(n * n), 0.0);
  for (const auto& e : coo) A[static_cast<std::size_t>(e.col * n + e.row)] = e.value;
  std::vector<double> ev(static_cast<std::size_t>(n));
  lapack_int info = LAPACKE_dsyev(LAPACK_COL_MAJOR, 'N', 'U', static_cast<lapack_int>(n), A.data(),
                                  static_cast<lapack_int>(n), ev.data());
  if (info != 0) throw EigensolverError("dense torus eigensolver failed (info " + std::to_string(info) + ")");
  return ev;
}

}  // namespace thinspec
