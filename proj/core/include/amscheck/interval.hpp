#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace amscheck {

// Endpoint tolerance for time comparisons (seconds).
inline constexpr double kDefaultTimeTol = 1e-9;
// Band half-width used when desugaring analog equality (volts).
inline constexpr double kDefaultValueTol = 1e-6;

/// A convex set of instants on the real time line. Each endpoint is
/// independently open or closed; lo > hi (or lo == hi with an open end)
/// denotes the empty interval.
struct Interval {
  double lo = 1.0;
  double hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = true;

  static Interval closed(double lo, double hi) { return {lo, hi, true, true}; }
  static Interval open(double lo, double hi) { return {lo, hi, false, false}; }
  static Interval left_open(double lo, double hi) { return {lo, hi, false, true}; }
  static Interval right_open(double lo, double hi) { return {lo, hi, true, false}; }
  static Interval point(double t) { return {t, t, true, true}; }
  static Interval empty_interval() { return {}; }

  bool empty() const { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }
  bool is_point() const { return lo == hi && lo_closed && hi_closed; }
  double length() const { return empty() ? 0.0 : hi - lo; }
  bool contains(double t) const {
    if (empty()) return false;
    const bool above = lo_closed ? t >= lo : t > lo;
    const bool below = hi_closed ? t <= hi : t < hi;
    return above && below;
  }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// I ⊕ [c:d] = [lo+c : hi+d]. Empty stays empty. Requires 0 <= c <= d.
Interval minkowski_sum(const Interval& iv, double c, double d);
/// I ⊖ [c:d] = [lo-d : hi-c]. Requires 0 <= c <= d. Not clipped at zero.
Interval minkowski_diff(const Interval& iv, double c, double d);
/// Uniform translation by delta (negative shifts left).
Interval shift(const Interval& iv, double delta);
Interval intersect(const Interval& a, const Interval& b);

bool approx_equal(const Interval& a, const Interval& b, double tol = kDefaultTimeTol);

std::string to_string(const Interval& iv);
std::ostream& operator<<(std::ostream& os, const Interval& iv);

/// A normalized finite union of intervals: sorted, pairwise disjoint, and no
/// two neighbours can be coalesced.
///
/// Normalization works at endpoint tolerance `tol`. A piece whose width is at
/// most `tol` survives only when both of its endpoints are closed (it then
/// stands for an instant). The same rule applies to the gap between two
/// neighbours, so a gap narrower than `tol` separates them only when both
/// facing endpoints are open. Applying one rule to pieces and gaps keeps
/// complement an involution on normalized sets.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(const Interval& iv, double tol = kDefaultTimeTol);
  /// Normalizes an arbitrary (unsorted, overlapping) list.
  static IntervalSet from(std::vector<Interval> items, double tol = kDefaultTimeTol);

  const std::vector<Interval>& intervals() const { return items_; }
  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  const Interval& operator[](std::size_t i) const { return items_[i]; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  bool contains(double t) const;
  /// Total measure.
  double measure() const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  friend class IntervalSetBuilder;
  std::vector<Interval> items_;
};

/// Accumulates intervals supplied in non-decreasing order of lower bound and
/// produces a normalized set in linear time.
class IntervalSetBuilder {
 public:
  explicit IntervalSetBuilder(double tol = kDefaultTimeTol) : tol_(tol) {}

  void add(const Interval& iv);
  const std::vector<Interval>& current() const { return items_; }
  std::vector<Interval>& mutable_items() { return items_; }
  IntervalSet build() &&;
  IntervalSet snapshot() const;

 private:
  double tol_;
  std::vector<Interval> items_;
};

IntervalSet normalize(const IntervalSet& s, double tol = kDefaultTimeTol);
IntervalSet set_intersect(const IntervalSet& a, const IntervalSet& b,
                          double tol = kDefaultTimeTol);
IntervalSet set_intersect(const IntervalSet& a, const Interval& b,
                          double tol = kDefaultTimeTol);
IntervalSet set_union(const IntervalSet& a, const IntervalSet& b,
                      double tol = kDefaultTimeTol);
/// Set difference a \ b.
IntervalSet set_difference(const IntervalSet& a, const IntervalSet& b, const Interval& domain,
                           double tol = kDefaultTimeTol);
/// Complement of `a` inside `domain`. Throws IntervalError when a component of
/// `a` lies (beyond tolerance) outside the domain.
IntervalSet set_complement(const IntervalSet& a, const Interval& domain,
                           double tol = kDefaultTimeTol);

IntervalSet minkowski_sum(const IntervalSet& s, double c, double d, double tol = kDefaultTimeTol);
IntervalSet minkowski_diff(const IntervalSet& s, double c, double d, double tol = kDefaultTimeTol);
IntervalSet shift(const IntervalSet& s, double delta, double tol = kDefaultTimeTol);

bool approx_equal(const IntervalSet& a, const IntervalSet& b, double tol = kDefaultTimeTol);

std::string to_string(const IntervalSet& s);
std::ostream& operator<<(std::ostream& os, const IntervalSet& s);

}  // namespace amscheck
