#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "thinspec/intervals.hpp"
#include "thinspec/jacobi.hpp"

namespace thinspec {

// Weights on Z^d: w(n, n+e_j) = a_{n_j}, w(n, n-e_j) = a_{n_j - 1}, with the
// sequence convention of PeriodicJacobi.
class SeparableWeights {
 public:
  SeparableWeights(std::vector<double> a, int d);

  int dimension() const { return d_; }
  const PeriodicJacobi& base() const { return base_; }
  double bound() const;  // <a> = max(|a|_inf, |1/a|_inf)

 private:
  PeriodicJacobi base_;
  int d_;
};

double weight_lookup(const SeparableWeights& w, std::span<const long> n, std::span<const long> m);

// d-fold Minkowski sum of the one-dimensional spectrum.
IntervalUnion laplacian_spectrum(const SeparableWeights& w, const IntervalUnion& spectrum_1d);

struct CooEntry {
  long row = 0;
  long col = 0;
  double value = 0.0;
};

// L_w on the discrete torus (Z / side Z)^d; side must be a multiple of the period.
std::vector<CooEntry> torus_laplacian(const SeparableWeights& w, long side);
std::vector<double> torus_eigenvalues(const SeparableWeights& w, long side);

}  // namespace thinspec
