#pragma once

#include <vector>

#include "thinspec/jacobi.hpp"
#include "thinspec/sl2.hpp"
#include "thinspec/spectrum.hpp"

namespace thinspec {

// Integrated density of states of a periodic operator: weight 1/p per band,
// interpolated inside bands through 2 cos(theta) = D(E).
class IdsProfile {
 public:
  explicit IdsProfile(PeriodicJacobi J);

  const PeriodicJacobi& jacobi() const { return J_; }
  const BandStructure& bands() const { return bands_; }
  // true when D = +2 at the left edge of band j, so theta starts at 0
  const std::vector<bool>& starts_at_plus_two() const { return plus_left_; }

  double operator()(double E) const;

 private:
  PeriodicJacobi J_;
  BandStructure bands_;
  std::vector<bool> plus_left_;
};

double ids(const IdsProfile& profile, double E);

// Fixed points z_1..z_p of the shifted monodromies Phi_j; requires |D(E)| < 2.
std::vector<ComplexPoint> fixed_points(const PeriodicJacobi& J, double E);

// |d theta / dE| = (1/2) sum |z_j|^2 / Im z_j
double dtheta_dE(const PeriodicJacobi& J, double E);

// sum (1 + |z_j|^2) / Im z_j, the squared Frobenius norms of the conjugacies
double hs_sum(const PeriodicJacobi& J, double E);

// 1 / (2 (1 + |a|_inf^2) pi)
double ids_bound_constant(const PeriodicJacobi& J);

struct IdsBoundCheck {
  double lhs = 0.0;  // dk/dE = |d theta/dE| / (p pi)
  double rhs = 0.0;  // (C/p) * hs_sum
  bool ok = false;
  bool equality_case = false;
  bool near_parabolic = false;
};

IdsBoundCheck check_ids_bound(const PeriodicJacobi& J, double E);

}  // namespace thinspec
