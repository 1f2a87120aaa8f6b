#include "thinspec/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "thinspec/errors.hpp"

namespace thinspec {

IntervalUnion::IntervalUnion(std::vector<Interval> parts, double merge_tol) {
  if (!(merge_tol >= 0.0)) throw DomainError("merge tolerance must be nonnegative");
  for (const auto& c : parts) {
    if (!std::isfinite(c.lo) || !std::isfinite(c.hi))
      throw DomainError("interval endpoints must be finite");
    if (c.lo > c.hi)
      throw DomainError("interval with lo > hi: [" + std::to_string(c.lo) + ", " +
                        std::to_string(c.hi) + "]");
  }
  std::sort(parts.begin(), parts.end(),
            [](const Interval& l, const Interval& r) { return l.lo < r.lo; });
  for (const auto& c : parts) {
    if (!parts_.empty() && c.lo - parts_.back().hi <= merge_tol)
      parts_.back().hi = std::max(parts_.back().hi, c.hi);
    else
      parts_.push_back(c);
  }
}

IntervalUnion::IntervalUnion(std::initializer_list<Interval> parts)
    : IntervalUnion(std::vector<Interval>(parts)) {}

double IntervalUnion::min() const {
  if (parts_.empty()) throw DomainError("empty interval union has no minimum");
  return parts_.front().lo;
}

double IntervalUnion::max() const {
  if (parts_.empty()) throw DomainError("empty interval union has no maximum");
  return parts_.back().hi;
}

double IntervalUnion::measure() const {
  double m = 0.0;
  for (const auto& c : parts_) m += c.length();
  return m;
}

bool IntervalUnion::contains(double x, double tol) const {
  return !parts_.empty() && distance_to(x) <= tol;
}

double IntervalUnion::distance_to(double x) const {
  if (parts_.empty()) throw DomainError("distance to an empty set");
  // first component with hi >= x
  auto it = std::lower_bound(parts_.begin(), parts_.end(), x,
                             [](const Interval& c, double v) { return c.hi < v; });
  double d = std::numeric_limits<double>::infinity();
  if (it != parts_.end()) d = std::max(0.0, it->lo - x);
  if (it != parts_.begin()) d = std::min(d, x - std::prev(it)->hi);
  return d;
}

double measure(const IntervalUnion& x) { return x.measure(); }

namespace {

// sup over x in X of dist(x, Y). On each component of X the distance is
// piecewise linear, so endpoints and midpoints of the gaps of Y suffice.
double directed_hausdorff(const IntervalUnion& x, const IntervalUnion& y) {
  const auto& yc = y.components();
  double d = 0.0;
  std::size_t g = 0;
  for (const auto& c : x.components()) {
    d = std::max({d, y.distance_to(c.lo), y.distance_to(c.hi)});
    while (g + 1 < yc.size() && 0.5 * (yc[g].hi + yc[g + 1].lo) < c.lo) ++g;
    for (std::size_t k = g; k + 1 < yc.size(); ++k) {
      double mid = 0.5 * (yc[k].hi + yc[k + 1].lo);
      if (mid > c.hi) break;
      if (mid >= c.lo) d = std::max(d, y.distance_to(mid));
    }
  }
  return d;
}

}  // namespace

double hausdorff_distance(const IntervalUnion& x, const IntervalUnion& y) {
  if (x.empty() || y.empty()) throw DomainError("Hausdorff distance needs nonempty sets");
  return std::max(directed_hausdorff(x, y), directed_hausdorff(y, x));
}

IntervalUnion minkowski_sum(const IntervalUnion& x, const IntervalUnion& y) {
  std::vector<Interval> parts;
  parts.reserve(x.size() * y.size());
  for (const auto& u : x.components())
    for (const auto& v : y.components()) parts.push_back({u.lo + v.lo, u.hi + v.hi});
  return IntervalUnion(std::move(parts));
}

IntervalUnion epsilon_neighborhood(const IntervalUnion& x, double eps) {
  if (!(eps > 0.0)) throw DomainError("neighborhood radius must be positive");
  std::vector<Interval> parts;
  parts.reserve(x.size());
  for (const auto& c : x.components()) parts.push_back({c.lo - eps, c.hi + eps});
  return IntervalUnion(std::move(parts));
}

IntervalUnion intersect(const IntervalUnion& x, const IntervalUnion& y) {
  const auto& xc = x.components();
  const auto& yc = y.components();
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  while (i < xc.size() && j < yc.size()) {
    double lo = std::max(xc[i].lo, yc[j].lo);
    double hi = std::min(xc[i].hi, yc[j].hi);
    if (lo <= hi) out.push_back({lo, hi});
    if (xc[i].hi < yc[j].hi)
      ++i;
    else
      ++j;
  }
  return IntervalUnion(std::move(out), 0.0);
}

IntervalUnion scale(const IntervalUnion& x, double factor) {
  std::vector<Interval> parts;
  for (const auto& c : x.components()) {
    double l = factor * c.lo, h = factor * c.hi;
    parts.push_back({std::min(l, h), std::max(l, h)});
  }
  return IntervalUnion(std::move(parts), 0.0);
}

IntervalUnion shift(const IntervalUnion& x, double offset) {
  std::vector<Interval> parts;
  for (const auto& c : x.components()) parts.push_back({c.lo + offset, c.hi + offset});
  return IntervalUnion(std::move(parts), 0.0);
}

long cover_count(const IntervalUnion& x, double eps) {
  if (!(eps > 0.0)) throw DomainError("box size must be positive");
  if (x.empty()) throw DomainError("cover count of an empty set");
  long count = 0;
  bool have = false;
  double last = 0.0;
  for (const auto& c : x.components()) {
    double k0 = std::floor(c.lo / eps);
    double k1 = std::floor(c.hi / eps);
    if (have && k0 <= last) k0 = last + 1;
    if (k1 >= k0) count += static_cast<long>(k1 - k0) + 1;
    if (!have || k1 > last) last = k1;
    have = true;
  }
  return count;
}

CoverSample CoverSample::from_count(double count, double scale) {
  if (!(count >= 1.0)) throw DomainError("cover count must be at least 1");
  if (!(scale > 0.0 && scale < 1.0)) throw DomainError("cover scale must lie in (0,1)");
  return {std::log(count), -std::log(scale)};
}

CoverSample CoverSample::from_logs(double log_count, double log_inv_scale) {
  if (!(log_count >= 0.0)) throw DomainError("log cover count must be nonnegative");
  if (!(log_inv_scale > 0.0)) throw DomainError("cover scale must lie in (0,1)");
  return {log_count, log_inv_scale};
}

std::vector<double> box_dim_ratios(std::span<const CoverSample> covers) {
  if (covers.size() < 2) throw DomainError("box dimension needs at least two scales");
  std::vector<double> r;
  for (std::size_t n = 0; n < covers.size(); ++n) {
    if (!(covers[n].log_inv_scale > 0.0)) throw DomainError("cover scale must lie in (0,1)");
    if (n > 0 && !(covers[n].log_inv_scale > covers[n - 1].log_inv_scale))
      throw DomainError("cover scales must be strictly decreasing");
    r.push_back(covers[n].ratio());
  }
  return r;
}

double box_dim_estimate(std::span<const CoverSample> covers) {
  auto r = box_dim_ratios(covers);
  return *std::min_element(r.begin(), r.end());
}

}  // namespace thinspec
