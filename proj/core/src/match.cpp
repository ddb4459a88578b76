#include "amscheck/match.hpp"

#include "amscheck/analysis.hpp"

namespace amscheck {

IntervalSet SeqEvaluator::clip(const IntervalSet& s) const {
  return set_intersect(s, tab_.domain(), tab_.tol());
}

const IntervalSet& SeqEvaluator::end_match(const SeqPtr& s) {
  auto it = end_cache_.find(s.get());
  if (it != end_cache_.end()) return it->second;
  IntervalSet result = compute_end(s);
  return end_cache_.emplace(s.get(), std::move(result)).first->second;
}

namespace {

// {φ}[*a] per convex component: φ must hold over the whole window [t-a : t].
IntervalSet recurrence_end(const IntervalSet& body, double a, double tol) {
  IntervalSetBuilder out(tol);
  for (const auto& c : body) {
    if (c.hi - c.lo < a - tol) continue;
    Interval r = c;
    if (c.lo + a < c.hi) {
      r.lo = c.lo + a;
    } else {
      r.lo = c.hi;
      r.lo_closed = c.hi_closed;
    }
    out.add(r);
  }
  return std::move(out).build();
}

}  // namespace

IntervalSet SeqEvaluator::compute_end(const SeqPtr& s) {
  const double tol = tab_.tol();
  switch (s->kind) {
    case SeqNode::Kind::Bool:
      return clip(bexpr_truth(tab_, s->bexpr));
    case SeqNode::Kind::Repeat:
      return clip(recurrence_end(end_match(s->lhs), s->lo, tol));
    case SeqNode::Kind::Delay: {
      const IntervalSet shifted = minkowski_sum(end_match(s->lhs), s->lo, s->hi, tol);
      return clip(set_intersect(shifted, end_match(s->rhs), tol));
    }
    case SeqNode::Kind::RepeatUntil: {
      const IntervalSet held = recurrence_end(end_match(s->lhs), s->lo, tol);
      return clip(set_intersect(held, end_match(s->rhs), tol));
    }
  }
  return {};
}

IntervalSet SeqEvaluator::begin_match(const SeqPtr& s, const IntervalSet& restrict) {
  const double tol = tab_.tol();
  if (restrict.empty()) return {};
  switch (s->kind) {
    case SeqNode::Kind::Bool:
      return set_intersect(end_match(s), restrict, tol);
    case SeqNode::Kind::Repeat: {
      const IntervalSet ends = set_intersect(restrict, end_match(s), tol);
      return begin_match(s->lhs, clip(shift(ends, -s->lo, tol)));
    }
    case SeqNode::Kind::Delay:
    case SeqNode::Kind::RepeatUntil: {
      const IntervalSet ends = set_intersect(restrict, end_match(s), tol);
      const IntervalSet back = clip(minkowski_diff(ends, s->lo, s->hi, tol));
      return begin_match(s->lhs, set_intersect(back, end_match(s->lhs), tol));
    }
  }
  return {};
}

IntervalSet end_match(const SeqPtr& s, const AtomTable& tab) {
  SeqEvaluator ev(tab);
  return ev.end_match(s);
}

IntervalSet begin_match(const SeqPtr& s, const IntervalSet& restrict, const AtomTable& tab) {
  SeqEvaluator ev(tab);
  return ev.begin_match(s, restrict);
}

MatchReport assertion_match(const Property& p, const AtomTable& tab, bool trace_end_open) {
  SeqEvaluator ev(tab);
  return assertion_match(p, ev, trace_end_open);
}

MatchReport assertion_match(const Property& p, SeqEvaluator& ev, bool trace_end_open) {
  const double tol = ev.table().tol();
  const Interval& dom = ev.table().domain();

  MatchReport rep;
  rep.name = p.name;
  rep.horizon = horizon(p);
  rep.domain = dom;

  const IntervalSet ante = ev.end_match(p.antecedent);
  IntervalSet cons_begin = ev.begin_match(p.consequent, IntervalSet(dom, tol));
  if (p.delay) {
    cons_begin = set_intersect(minkowski_diff(cons_begin, p.delay->lo, p.delay->hi, tol), dom, tol);
  }
  rep.nonvacuous = set_intersect(ante, cons_begin, tol);
  rep.vacuous = set_complement(ante, dom, tol);
  IntervalSet fail = set_difference(ante, rep.nonvacuous, dom, tol);

  if (trace_end_open && rep.horizon > 0.0 && !fail.empty()) {
    const Interval tail = Interval::left_open(dom.hi - rep.horizon, dom.hi);
    rep.undetermined = set_intersect(fail, tail, tol);
    if (!rep.undetermined.empty()) fail = set_difference(fail, rep.undetermined, dom, tol);
  }
  rep.fail = std::move(fail);
  return rep;
}

}  // namespace amscheck
