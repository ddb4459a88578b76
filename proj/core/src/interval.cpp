#include "amscheck/interval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

#include "amscheck/errors.hpp"

namespace amscheck {

namespace {

void check_delay(double c, double d) {
  if (!(c >= 0.0) || !(d >= c) || !std::isfinite(d)) {
    throw IntervalError("invalid delay bounds [" + std::to_string(c) + ":" + std::to_string(d) +
                        "]: need 0 <= c <= d");
  }
}

std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Pieces narrower than tol are kept only when they stand for an instant.
bool negligible(const Interval& iv, double tol) {
  return iv.empty() || (iv.hi - iv.lo <= tol && !(iv.lo_closed && iv.hi_closed));
}

bool lo_before(const Interval& a, const Interval& b) {
  if (a.lo != b.lo) return a.lo < b.lo;
  return a.lo_closed && !b.lo_closed;
}

}  // namespace

Interval minkowski_sum(const Interval& iv, double c, double d) {
  check_delay(c, d);
  if (iv.empty()) return Interval::empty_interval();
  return {iv.lo + c, iv.hi + d, iv.lo_closed, iv.hi_closed};
}

Interval minkowski_diff(const Interval& iv, double c, double d) {
  check_delay(c, d);
  if (iv.empty()) return Interval::empty_interval();
  return {iv.lo - d, iv.hi - c, iv.lo_closed, iv.hi_closed};
}

Interval shift(const Interval& iv, double delta) {
  if (iv.empty()) return Interval::empty_interval();
  return {iv.lo + delta, iv.hi + delta, iv.lo_closed, iv.hi_closed};
}

namespace {

// Bounds of a ∩ b without collapsing an empty result, so callers can still
// adjust endpoints before testing for emptiness.
Interval intersect_bounds(const Interval& a, const Interval& b) {
  Interval r;
  if (a.lo > b.lo) {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed;
  } else if (b.lo > a.lo) {
    r.lo = b.lo;
    r.lo_closed = b.lo_closed;
  } else {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed && b.lo_closed;
  }
  if (a.hi < b.hi) {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed;
  } else if (b.hi < a.hi) {
    r.hi = b.hi;
    r.hi_closed = b.hi_closed;
  } else {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed && b.hi_closed;
  }
  return r;
}

}  // namespace

Interval intersect(const Interval& a, const Interval& b) {
  if (a.empty() || b.empty()) return Interval::empty_interval();
  const Interval r = intersect_bounds(a, b);
  return r.empty() ? Interval::empty_interval() : r;
}

bool approx_equal(const Interval& a, const Interval& b, double tol) {
  if (a.empty() || b.empty()) return a.empty() && b.empty();
  return std::abs(a.lo - b.lo) <= tol && std::abs(a.hi - b.hi) <= tol &&
         a.lo_closed == b.lo_closed && a.hi_closed == b.hi_closed;
}

std::string to_string(const Interval& iv) {
  if (iv.empty()) return "{}";
  return std::string(iv.lo_closed ? "[" : "(") + fmt(iv.lo) + ":" + fmt(iv.hi) +
         (iv.hi_closed ? "]" : ")");
}

std::ostream& operator<<(std::ostream& os, const Interval& iv) { return os << to_string(iv); }

// ---------------------------------------------------------------------------

void IntervalSetBuilder::add(const Interval& iv) {
  if (negligible(iv, tol_)) return;
  if (!items_.empty()) {
    Interval& last = items_.back();
    const double gap = iv.lo - last.hi;
    const bool touching = last.hi_closed || iv.lo_closed;
    if (gap < 0.0 || (gap <= tol_ && touching)) {
      if (iv.lo == last.lo) last.lo_closed = last.lo_closed || iv.lo_closed;
      if (iv.hi > last.hi) {
        last.hi = iv.hi;
        last.hi_closed = iv.hi_closed;
      } else if (iv.hi == last.hi) {
        last.hi_closed = last.hi_closed || iv.hi_closed;
      }
      return;
    }
  }
  items_.push_back(iv);
}

IntervalSet IntervalSetBuilder::build() && {
  IntervalSet s;
  s.items_ = std::move(items_);
  return s;
}

IntervalSet IntervalSetBuilder::snapshot() const {
  IntervalSet s;
  s.items_ = items_;
  return s;
}

IntervalSet::IntervalSet(const Interval& iv, double tol) {
  if (!negligible(iv, tol)) items_.push_back(iv);
}

IntervalSet IntervalSet::from(std::vector<Interval> items, double tol) {
  std::sort(items.begin(), items.end(), lo_before);
  IntervalSetBuilder b(tol);
  for (const auto& iv : items) b.add(iv);
  return std::move(b).build();
}

bool IntervalSet::contains(double t) const {
  // First component whose hi is >= t.
  auto it = std::lower_bound(items_.begin(), items_.end(), t,
                             [](const Interval& iv, double v) { return iv.hi < v; });
  return it != items_.end() && it->contains(t);
}

double IntervalSet::measure() const {
  double m = 0.0;
  for (const auto& iv : items_) m += iv.length();
  return m;
}

IntervalSet normalize(const IntervalSet& s, double tol) {
  return IntervalSet::from(s.intervals(), tol);
}

namespace {

// Like intersect(), but endpoints of the two operands that agree within tol
// are taken to be the same instant, at the first operand's value. Keeping
// a's endpoints makes a ∩ b and a \ b tile a exactly; an exact max/min would
// leave a sub-tolerance open sliver between them that normalization drops.
Interval intersect_tol(const Interval& a, const Interval& b, double tol) {
  if (a.empty() || b.empty()) return Interval::empty_interval();
  Interval r = intersect_bounds(a, b);
  if (std::abs(a.lo - b.lo) <= tol) {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed && b.lo_closed;
  }
  if (std::abs(a.hi - b.hi) <= tol) {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed && b.hi_closed;
  }
  return r.empty() ? Interval::empty_interval() : r;
}

}  // namespace

IntervalSet set_intersect(const IntervalSet& a, const IntervalSet& b, double tol) {
  IntervalSetBuilder out(tol);
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const Interval& x = a[i];
    const Interval& y = b[j];
    out.add(intersect_tol(x, y, tol));
    const bool x_ends_first = x.hi < y.hi || (x.hi == y.hi && !x.hi_closed && y.hi_closed);
    if (x_ends_first) {
      ++i;
    } else {
      ++j;
    }
  }
  return std::move(out).build();
}

IntervalSet set_intersect(const IntervalSet& a, const Interval& b, double tol) {
  IntervalSetBuilder out(tol);
  for (const auto& x : a) out.add(intersect_tol(x, b, tol));
  return std::move(out).build();
}

IntervalSet set_union(const IntervalSet& a, const IntervalSet& b, double tol) {
  IntervalSetBuilder out(tol);
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && !lo_before(b[j], a[i]))) {
      out.add(a[i++]);
    } else {
      out.add(b[j++]);
    }
  }
  return std::move(out).build();
}

IntervalSet set_complement(const IntervalSet& a, const Interval& domain, double tol) {
  if (domain.empty()) {
    if (!a.empty()) throw IntervalError("complement of a non-empty set in an empty domain");
    return {};
  }
  IntervalSetBuilder out(tol);
  double cursor = domain.lo;
  bool cursor_closed = domain.lo_closed;
  for (const auto& iv : a) {
    if (iv.lo < domain.lo - tol || iv.hi > domain.hi + tol) {
      throw IntervalError("component " + to_string(iv) + " lies outside the complement domain " +
                          to_string(domain));
    }
    const Interval clipped = intersect(iv, domain);
    if (clipped.empty()) continue;
    out.add({cursor, clipped.lo, cursor_closed, !clipped.lo_closed});
    cursor = clipped.hi;
    cursor_closed = !clipped.hi_closed;
  }
  out.add({cursor, domain.hi, cursor_closed, domain.hi_closed});
  return std::move(out).build();
}

IntervalSet set_difference(const IntervalSet& a, const IntervalSet& b, const Interval& domain,
                           double tol) {
  return set_intersect(a, set_complement(set_intersect(b, domain, tol), domain, tol), tol);
}

IntervalSet minkowski_sum(const IntervalSet& s, double c, double d, double tol) {
  check_delay(c, d);
  IntervalSetBuilder out(tol);
  for (const auto& iv : s) out.add(minkowski_sum(iv, c, d));
  return std::move(out).build();
}

IntervalSet minkowski_diff(const IntervalSet& s, double c, double d, double tol) {
  check_delay(c, d);
  IntervalSetBuilder out(tol);
  for (const auto& iv : s) out.add(minkowski_diff(iv, c, d));
  return std::move(out).build();
}

IntervalSet shift(const IntervalSet& s, double delta, double tol) {
  IntervalSetBuilder out(tol);
  for (const auto& iv : s) out.add(shift(iv, delta));
  return std::move(out).build();
}

bool approx_equal(const IntervalSet& a, const IntervalSet& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!approx_equal(a[i], b[i], tol)) return false;
  }
  return true;
}

std::string to_string(const IntervalSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += to_string(s[i]);
  }
  return out + "}";
}

std::ostream& operator<<(std::ostream& os, const IntervalSet& s) { return os << to_string(s); }

}  // namespace amscheck
