#pragma once

// Random piecewise-linear traces and random properties shared by the
// property tests and the acceptance runner.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "amscheck/analysis.hpp"
#include "amscheck/ast.hpp"
#include "amscheck/interval.hpp"
#include "amscheck/oracle.hpp"
#include "amscheck/trace.hpp"

namespace amscheck::testing {

struct RandomCase {
  Trace trace;
  Property property;
  double dt = 0.0;
};

inline constexpr double kTraceLength = 1.0;
inline constexpr double kMinSpacing = 0.02;

/// Two analog signals `a`, `b` and a Boolean `d` over roughly [0:1]. Each has
/// at most 20 linear segments; sample instants are the union of all
/// breakpoints and never closer than kMinSpacing.
///
/// With `grid` > 0 every sample instant is an integer multiple of `grid`, so
/// a grid of that step passes through every breakpoint. A predicate that is
/// monotone on each segment then has a grid point inside every maximal truth
/// and falsity piece, which is what lets a grid oracle see the same pieces.
inline Trace random_trace(std::mt19937_64& rng, double grid = 0.0) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> nbreaks(3, 19);

  const long per_slot = grid > 0.0 ? static_cast<long>(std::ceil(kMinSpacing / grid - 1e-9)) : 1;
  const double step = grid > 0.0 ? grid : kMinSpacing;
  const auto slots = static_cast<long>(std::ceil(kTraceLength / (step * static_cast<double>(per_slot)) - 1e-9));
  std::vector<long> chosen{0, slots};
  for (int s = 0; s < 2; ++s) {
    const int n = nbreaks(rng);
    for (int i = 0; i < n; ++i) chosen.push_back(std::uniform_int_distribution<long>(1, slots - 1)(rng));
  }
  std::sort(chosen.begin(), chosen.end());
  chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());

  // Same expression the oracle uses for its grid instants (L + k*dt, L = 0).
  std::vector<double> times;
  for (long c : chosen) times.push_back(static_cast<double>(c * per_slot) * step);

  std::vector<std::vector<double>> cols(3);
  for (int s = 0; s < 2; ++s) {
    for (std::size_t i = 0; i < times.size(); ++i) cols[s].push_back(2.0 * unit(rng) - 1.0);
  }
  double level = unit(rng) < 0.5 ? 0.0 : 1.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (i > 0 && unit(rng) < 0.3) level = 1.0 - level;
    cols[2].push_back(level);
  }
  return Trace::from_columns({{"a", SignalKind::Analog}, {"b", SignalKind::Analog}, {"d", SignalKind::Boolean}},
                             std::move(times), std::move(cols));
}

class PropertyGen {
 public:
  explicit PropertyGen(std::mt19937_64& rng) : rng_(rng) {}

  Property property(int max_depth) {
    Property p;
    p.name = "P";
    p.antecedent = seq(pick(0, max_depth));
    p.consequent = seq(pick(0, max_depth));
    if (coin(0.5)) {
      const auto [a, b] = window();
      p.delay = DelayWindow{a, b};
    }
    return p;
  }

 private:
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p; }
  double uni(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  // Bounds are multiples of 0.01 s. The 0.32 cap keeps them under a third
  // of the trace even after snap_bounds() moves them by up to dt / 2.
  double bound(int lo_steps) { return pick(lo_steps, 32) * 0.01; }
  std::pair<double, double> window() {
    const double a = coin(0.3) ? 0.0 : bound(2);
    double b = a + bound(2);
    if (b > 0.32) b = 0.32;
    return {std::min(a, b - 0.02), b};
  }

  ExprPtr analog() {
    const std::string s = coin(0.5) ? "a" : "b";
    const int form = pick(0, 3);
    if (form == 0) return make_binary('-', make_signal("a", true), make_signal("b", true));
    // Non-affine but monotone on every segment, so it still has no sub-grid
    // truth pieces between breakpoints.
    if (form == 1) {
      return make_binary('*', make_binary('*', make_signal(s, true), make_signal(s, true)),
                         make_signal(s, true));
    }
    return make_signal(s, true);
  }

  Atom porv_or_bool() {
    if (coin(0.25)) return BoolSignal{"d", coin(0.7), coin(0.3)};
    Porv p;
    p.lhs = analog();
    const RelOp ops[] = {RelOp::Gt, RelOp::Ge, RelOp::Lt, RelOp::Le};
    p.op = ops[pick(0, 3)];
    // Continuous thresholds: two atoms over the same expression never share a
    // crossing instant, which no sampling grid could resolve.
    p.rhs = make_number(uni(-0.6, 0.6));
    return p;
  }

  BExprPtr leaf() {
    Atom base = porv_or_bool();
    if (coin(0.25)) {
      const Edge edges[] = {Edge::Pos, Edge::Neg, Edge::Any};
      Event e;
      e.edge = edges[pick(0, 2)];
      if (const auto* porv = std::get_if<Porv>(&base)) {
        e.target = *porv;
      } else {
        e.target = std::get<BoolSignal>(base);
      }
      return make_leaf(e);
    }
    return make_leaf(base);
  }

  BExprPtr bexpr(int depth, bool allow_events = true) {
    if (depth == 0 || coin(0.5)) {
      if (!allow_events) return make_leaf(porv_or_bool());
      return leaf();
    }
    switch (pick(0, 2)) {
      case 0: return make_and({bexpr(depth - 1, allow_events), bexpr(depth - 1, allow_events)});
      case 1: return make_or({bexpr(depth - 1, allow_events), bexpr(depth - 1, allow_events)});
      default: return make_not(bexpr(depth - 1, false));
    }
  }

  SeqPtr seq(int depth) {
    if (depth == 0) return make_bool(bexpr(1));
    switch (pick(0, 2)) {
      case 0: return make_repeat(seq(depth - 1), bound(2));
      case 1: {
        const auto [a, b] = window();
        return make_delay(seq(depth - 1), a, b, seq(pick(0, depth - 1)));
      }
      default: {
        const auto [a, b] = window();
        return make_repeat_until(seq(depth - 1), std::max(a, 0.02), std::max(b, 0.04), seq(pick(0, depth - 1)));
      }
    }
  }

  std::mt19937_64& rng_;
};

/// Rewrites every bound to an integer multiple of dt = (smallest positive
/// bound) / 20, so that the oracle's grid windows line up exactly.
inline double snap_bounds(Property& p) {
  const double dt = min_positive_bound(p) / 20.0;
  auto snap = [&](double v) { return std::round(v / dt) * dt; };
  std::function<SeqPtr(const SeqPtr&)> walk = [&](const SeqPtr& s) -> SeqPtr {
    switch (s->kind) {
      case SeqNode::Kind::Bool: return s;
      case SeqNode::Kind::Repeat: return make_repeat(walk(s->lhs), snap(s->lo));
      case SeqNode::Kind::Delay: return make_delay(walk(s->lhs), snap(s->lo), snap(s->hi), walk(s->rhs));
      case SeqNode::Kind::RepeatUntil:
        return make_repeat_until(walk(s->lhs), snap(s->lo), snap(s->hi), walk(s->rhs));
    }
    return s;
  };
  p.antecedent = walk(p.antecedent);
  p.consequent = walk(p.consequent);
  if (p.delay) p.delay = DelayWindow{snap(p.delay->lo), snap(p.delay->hi)};
  return dt;
}

inline RandomCase random_case(std::mt19937_64& rng, int max_depth = 3) {
  PropertyGen gen(rng);
  Property p = gen.property(max_depth);
  while (!(min_positive_bound(p) > 0.0)) p = gen.property(max_depth);
  const double dt = snap_bounds(p);
  return {random_trace(rng, dt), std::move(p), dt};
}

/// Which of the four report sets holds t; -1 when none does.
template <typename Report>
int classify_at(const Report& r, double t) {
  if (r.nonvacuous.contains(t)) return static_cast<int>(GridClass::Match);
  if (r.vacuous.contains(t)) return static_cast<int>(GridClass::Vacuous);
  if (r.fail.contains(t)) return static_cast<int>(GridClass::Fail);
  if (r.undetermined.contains(t)) return static_cast<int>(GridClass::Undetermined);
  return -1;
}

/// Distance from t to the nearest endpoint of any component of the report.
template <typename Report>
double boundary_distance(const Report& r, double t) {
  double best = std::numeric_limits<double>::infinity();
  for (const IntervalSet* s : {&r.nonvacuous, &r.vacuous, &r.fail, &r.undetermined}) {
    for (const auto& c : *s) best = std::min({best, std::abs(t - c.lo), std::abs(t - c.hi)});
  }
  return best;
}

}  // namespace amscheck::testing
