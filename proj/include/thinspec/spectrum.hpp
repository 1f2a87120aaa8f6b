#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "thinspec/intervals.hpp"
#include "thinspec/jacobi.hpp"

namespace thinspec {

inline constexpr double kEdgeTolerance = 1e-9;
inline constexpr double kClosedGapMonodromyTolerance = 1e-6;

struct Gap {
  bool closed = false;
  double lo = 0.0;
  double hi = 0.0;
  double at() const { return 0.5 * (lo + hi); }
  double length() const { return closed ? 0.0 : hi - lo; }
};

struct BandStructure {
  std::size_t period = 0;
  std::vector<Interval> bands;  // p bands, left to right; touching at closed gaps
  std::vector<Gap> gaps;        // p - 1 entries
  std::vector<double> edges;    // 2p sorted roots of D - 2 and D + 2
  double measure = 0.0;

  IntervalUnion spectrum() const;
  std::size_t closed_gap_count() const;
  double max_band_length() const;
  bool in_spectrum(double E, double tol = kEdgeTolerance) const;
};

double discriminant(const PeriodicJacobi& J, double E);

// Eigenvalues (ascending) of one period with corner coupling sign * a_p:
// sign = +1 gives the roots of D - 2, sign = -1 those of D + 2.
std::vector<double> periodic_eigenvalues(const PeriodicJacobi& J, int sign);

BandStructure band_structure(const PeriodicJacobi& J);

// (1/p) log of the spectral radius of the monodromy.
double lyapunov(const PeriodicJacobi& J, double E);

// Distance from 0 to the spectrum; 0 when a band covers 0 within the edge tolerance.
double lambda0(const BandStructure& bs);
double lambda0(const PeriodicJacobi& J);

// Parity/product test for b = 0: p odd, or prod a_{2j} = prod a_{2j-1}.
bool zero_in_spectrum_offdiag(std::span<const double> a);

// lambda * J, i.e. (lambda a, lambda b).
PeriodicJacobi rescale(const PeriodicJacobi& J, double lambda);

}  // namespace thinspec
