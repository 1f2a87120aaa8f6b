#include "thinspec/dos.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "thinspec/errors.hpp"

namespace thinspec {

namespace {

double theta_of(double D) { return std::acos(std::clamp(0.5 * D, -1.0, 1.0)); }

void require_interior(const PeriodicJacobi& J, double E) {
  double D = discriminant(J, E);
  if (!(std::abs(D) < 2.0))
    throw NotInBandInteriorError("energy " + std::to_string(E) +
                                 " is not inside a band (|D| = " + std::to_string(std::abs(D)) +
                                 ")");
}

}  // namespace

IdsProfile::IdsProfile(PeriodicJacobi J) : J_(std::move(J)), bands_(band_structure(J_)) {
  for (const auto& b : bands_.bands) plus_left_.push_back(discriminant(J_, b.lo) > 0.0);
}

double IdsProfile::operator()(double E) const {
  const double p = static_cast<double>(bands_.period);
  const auto& bs = bands_.bands;
  if (E < bs.front().lo) return 0.0;
  if (E > bs.back().hi) return 1.0;
  // first band whose right edge is >= E
  auto it = std::lower_bound(bs.begin(), bs.end(), E,
                             [](const Interval& b, double v) { return b.hi < v; });
  std::size_t j = static_cast<std::size_t>(it - bs.begin());
  if (E < it->lo) return static_cast<double>(j) / p;
  double theta0 = plus_left_[j] ? 0.0 : std::numbers::pi;
  double frac = std::abs(theta_of(discriminant(J_, E)) - theta0) / std::numbers::pi;
  return (static_cast<double>(j) + std::min(frac, 1.0)) / p;
}

double ids(const IdsProfile& profile, double E) { return profile(E); }

std::vector<ComplexPoint> fixed_points(const PeriodicJacobi& J, double E) {
  require_interior(J, E);
  std::vector<ComplexPoint> z;
  z.reserve(J.period());
  for (std::size_t j = 0; j < J.period(); ++j) z.push_back(elliptic_fixed_point(monodromy(J, E, j)));
  return z;
}

double dtheta_dE(const PeriodicJacobi& J, double E) {
  double s = 0.0;
  for (const auto& z : fixed_points(J, E)) s += z.abs2() / z.im;
  return 0.5 * s;
}

double hs_sum(const PeriodicJacobi& J, double E) {
  double s = 0.0;
  for (const auto& z : fixed_points(J, E)) s += (1.0 + z.abs2()) / z.im;
  return s;
}

double ids_bound_constant(const PeriodicJacobi& J) {
  double m = J.a_max();
  return 1.0 / (2.0 * (1.0 + m * m) * std::numbers::pi);
}

IdsBoundCheck check_ids_bound(const PeriodicJacobi& J, double E) {
  const double p = static_cast<double>(J.period());
  auto z = fixed_points(J, E);
  double th = 0.0, hs = 0.0;
  for (const auto& w : z) {
    th += w.abs2() / w.im;
    hs += (1.0 + w.abs2()) / w.im;
  }
  IdsBoundCheck c;
  c.lhs = 0.5 * th / (p * std::numbers::pi);
  c.rhs = ids_bound_constant(J) / p * hs;
  c.ok = c.lhs >= c.rhs - 1e-9;
  c.equality_case = J.has_constant_a();
  c.near_parabolic = is_near_parabolic(monodromy(J, E, 0));
  return c;
}

}  // namespace thinspec
