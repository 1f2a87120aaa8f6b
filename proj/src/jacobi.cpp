#include "thinspec/jacobi.hpp"

#include <algorithm>
#include <cmath>

#include "thinspec/errors.hpp"

namespace thinspec {

PeriodicJacobi::PeriodicJacobi(std::vector<double> a, std::vector<double> b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (a_.empty()) throw DomainError("period must be at least 1");
  if (b_.empty()) b_.assign(a_.size(), 0.0);
  if (b_.size() != a_.size())
    throw DomainError("diagonal and off-diagonal periods differ");
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (!std::isfinite(a_[i]) || !(a_[i] > 0.0)) throw PositivityError(i + 1, a_[i]);
    if (!std::isfinite(b_[i])) throw DomainError("diagonal entries must be finite");
  }
}

PeriodicJacobi PeriodicJacobi::off_diagonal(std::vector<double> a) {
  std::vector<double> b(a.size(), 0.0);
  return PeriodicJacobi(std::move(a), std::move(b));
}

bool PeriodicJacobi::is_off_diagonal() const {
  return std::all_of(b_.begin(), b_.end(), [](double x) { return x == 0.0; });
}

bool PeriodicJacobi::has_constant_a(double rel_tol) const {
  double lo = a_min(), hi = a_max();
  return hi - lo <= rel_tol * hi;
}

double PeriodicJacobi::a_max() const { return *std::max_element(a_.begin(), a_.end()); }
double PeriodicJacobi::a_min() const { return *std::min_element(a_.begin(), a_.end()); }

double PeriodicJacobi::b_sup() const {
  double m = 0.0;
  for (double x : b_) m = std::max(m, std::abs(x));
  return m;
}

double PeriodicJacobi::norm_bound() const { return std::max({a_max(), 1.0 / a_min(), b_sup()}); }

PeriodicJacobi PeriodicJacobi::repeated(std::size_t times) const {
  if (times == 0) throw DomainError("repetition count must be positive");
  std::vector<double> a, b;
  a.reserve(times * a_.size());
  b.reserve(times * b_.size());
  for (std::size_t t = 0; t < times; ++t) {
    a.insert(a.end(), a_.begin(), a_.end());
    b.insert(b.end(), b_.begin(), b_.end());
  }
  return PeriodicJacobi(std::move(a), std::move(b));
}

double sup_distance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("sup distance needs equal lengths");
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(x[i] - y[i]));
  return d;
}

}  // namespace thinspec
