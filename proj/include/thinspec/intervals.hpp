#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace thinspec {

inline constexpr double kMergeTolerance = 1e-12;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
  bool operator==(const Interval&) const = default;
};

// Sorted, pairwise disjoint closed intervals. Components whose gap is at most
// the merge tolerance are fused on construction.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  explicit IntervalUnion(std::vector<Interval> parts, double merge_tol = kMergeTolerance);
  IntervalUnion(std::initializer_list<Interval> parts);

  const std::vector<Interval>& components() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }
  double min() const;
  double max() const;
  double measure() const;
  bool contains(double x, double tol = 0.0) const;
  // Distance from x to the set; requires a nonempty union.
  double distance_to(double x) const;

  bool operator==(const IntervalUnion&) const = default;

 private:
  std::vector<Interval> parts_;
};

double measure(const IntervalUnion& x);
double hausdorff_distance(const IntervalUnion& x, const IntervalUnion& y);
IntervalUnion minkowski_sum(const IntervalUnion& x, const IntervalUnion& y);
IntervalUnion epsilon_neighborhood(const IntervalUnion& x, double eps);
IntervalUnion intersect(const IntervalUnion& x, const IntervalUnion& y);
IntervalUnion scale(const IntervalUnion& x, double factor);
IntervalUnion shift(const IntervalUnion& x, double offset);

// Number of grid boxes [k eps, (k+1) eps) meeting x.
long cover_count(const IntervalUnion& x, double eps);

// One covering scale, stored in log form so scales like exp(-1000) survive.
struct CoverSample {
  double log_count = 0.0;
  double log_inv_scale = 0.0;

  static CoverSample from_count(double count, double scale);
  static CoverSample from_logs(double log_count, double log_inv_scale);
  double ratio() const { return log_count / log_inv_scale; }
};

std::vector<double> box_dim_ratios(std::span<const CoverSample> covers);
// min_n log N_n / log(1/eps_n) over at least two decreasing scales.
double box_dim_estimate(std::span<const CoverSample> covers);

}  // namespace thinspec
