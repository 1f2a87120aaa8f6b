#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace thinspec {

// Periodic Jacobi operator (Ju)_n = a_{n-1} u_{n-1} + b_n u_n + a_n u_{n+1}.
// One period is stored as a_1..a_p, b_1..b_p; sequence index n maps to
// slot (n-1) mod p, so a_0 is the last stored entry.
class PeriodicJacobi {
 public:
  PeriodicJacobi(std::vector<double> a, std::vector<double> b);
  static PeriodicJacobi off_diagonal(std::vector<double> a);

  std::size_t period() const { return a_.size(); }
  std::span<const double> a() const { return a_; }
  std::span<const double> b() const { return b_; }
  const std::vector<double>& a_vec() const { return a_; }
  const std::vector<double>& b_vec() const { return b_; }

  double a_at(long n) const { return a_[slot(n)]; }
  double b_at(long n) const { return b_[slot(n)]; }

  bool is_off_diagonal() const;
  bool has_constant_a(double rel_tol = 1e-14) const;
  double a_max() const;
  double a_min() const;
  double b_sup() const;
  // <J> = max(|a|_inf, |1/a|_inf, |b|_inf)
  double norm_bound() const;

  // Same operator viewed with period times * p.
  PeriodicJacobi repeated(std::size_t times) const;

  bool operator==(const PeriodicJacobi&) const = default;

 private:
  std::size_t slot(long n) const {
    long p = static_cast<long>(a_.size());
    long r = (n - 1) % p;
    return static_cast<std::size_t>(r < 0 ? r + p : r);
  }

  std::vector<double> a_;
  std::vector<double> b_;
};

double sup_distance(std::span<const double> x, std::span<const double> y);

}  // namespace thinspec
