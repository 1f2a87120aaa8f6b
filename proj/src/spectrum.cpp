#include "thinspec/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "thinspec/errors.hpp"
#include "thinspec/sl2.hpp"

namespace thinspec {

IntervalUnion BandStructure::spectrum() const { return IntervalUnion(bands); }

std::size_t BandStructure::closed_gap_count() const {
  return static_cast<std::size_t>(
      std::count_if(gaps.begin(), gaps.end(), [](const Gap& g) { return g.closed; }));
}

double BandStructure::max_band_length() const {
  double m = 0.0;
  for (const auto& b : bands) m = std::max(m, b.length());
  return m;
}

bool BandStructure::in_spectrum(double E, double tol) const {
  for (const auto& b : bands)
    if (E >= b.lo - tol && E <= b.hi + tol) return true;
  return false;
}

double discriminant(const PeriodicJacobi& J, double E) { return monodromy(J, E, 0).trace(); }

BandStructure band_structure(const PeriodicJacobi& J) {
  const std::size_t p = J.period();
  BandStructure bs;
  bs.period = p;
  auto plus = periodic_eigenvalues(J, +1);
  auto minus = periodic_eigenvalues(J, -1);
  bs.edges.resize(2 * p);
  std::merge(plus.begin(), plus.end(), minus.begin(), minus.end(), bs.edges.begin());

  for (std::size_t j = 0; j < p; ++j) {
    bs.bands.push_back({bs.edges[2 * j], bs.edges[2 * j + 1]});
    bs.measure += bs.edges[2 * j + 1] - bs.edges[2 * j];
  }
  for (std::size_t j = 0; j + 1 < p; ++j) {
    Gap g{false, bs.edges[2 * j + 1], bs.edges[2 * j + 2]};
    if (g.hi - g.lo < kEdgeTolerance * (1.0 + std::abs(g.lo))) {
      double E = g.at();
      Mat2 phi = monodromy(J, E, 0);
      double s = phi.trace() >= 0.0 ? 1.0 : -1.0;
      if ((phi - s * Mat2::identity()).max_abs() < kClosedGapMonodromyTolerance) g.closed = true;
    }
    bs.gaps.push_back(g);
  }
  return bs;
}

double lyapunov(const PeriodicJacobi& J, double E) {
  ScaledMat2 s = monodromy_scaled(J, E, 0);
  // the true determinant is 1, so the scaled one is exp(-2 log_scale)
  double d = std::exp(-2.0 * s.log_scale);
  double t = s.m.trace();
  double disc = t * t - 4.0 * d;
  if (disc <= 0.0) return 0.0;
  double spr = 0.5 * (std::abs(t) + std::sqrt(disc));
  double L = (s.log_scale + std::log(spr)) / static_cast<double>(J.period());
  return std::max(0.0, L);
}

double lambda0(const BandStructure& bs) {
  double m = INFINITY;
  for (const auto& b : bs.bands) {
    if (b.lo <= kEdgeTolerance && b.hi >= -kEdgeTolerance) return 0.0;
    m = std::min({m, std::abs(b.lo), std::abs(b.hi)});
  }
  return m;
}

double lambda0(const PeriodicJacobi& J) { return lambda0(band_structure(J)); }

bool zero_in_spectrum_offdiag(std::span<const double> a) {
  if (a.empty()) throw DomainError("empty coefficient sequence");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] > 0.0)) throw PositivityError(i + 1, a[i]);
  if (a.size() % 2 == 1) return true;
  double log_odd = 0.0, log_even = 0.0;  // 1-based parity
  for (std::size_t i = 0; i < a.size(); ++i) (i % 2 == 0 ? log_odd : log_even) += std::log(a[i]);
  return std::abs(log_odd - log_even) <= 1e-12;
}

PeriodicJacobi rescale(const PeriodicJacobi& J, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("rescaling factor must be positive");
  std::vector<double> a(J.a().begin(), J.a().end());
  std::vector<double> b(J.b().begin(), J.b().end());
  for (auto& x : a) x *= lambda;
  for (auto& x : b) x *= lambda;
  return PeriodicJacobi(std::move(a), std::move(b));
}

}  // namespace thinspec
