#include "amscheck/online.hpp"

#include <algorithm>
#include <cmath>

#include "amscheck/analysis.hpp"
#include "amscheck/errors.hpp"
#include "amscheck/match.hpp"

namespace amscheck {

std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Match: return "match";
    case VerdictKind::VacuousEnd: return "vacuous-end";
    case VerdictKind::Fail: return "fail";
    case VerdictKind::Undetermined: return "undetermined";
  }
  return "?";
}

Session::Session(std::vector<Property> props, std::vector<SignalInfo> signals,
                 const SessionOptions& opts)
    : props_(std::move(props)), signals_(std::move(signals)), tol_(opts.time_tol) {
  std::vector<SignalKind> kinds;
  for (const auto& s : signals_) kinds.push_back(s.kind);

  auto base_index = [&](const auto& target) -> std::size_t {
    const std::string key = to_string(Atom(target));
    auto it = std::find(base_keys_.begin(), base_keys_.end(), key);
    if (it != base_keys_.end()) return static_cast<std::size_t>(it - base_keys_.begin());
    trackers_.emplace_back(compile_predicate(target, signals_), kinds, tol_);
    base_keys_.push_back(key);
    return base_keys_.size() - 1;
  };

  for (const auto& p : props_) {
    for (const auto& a : collect_atoms(p)) {
      std::string key = to_string(a);
      if (std::any_of(atoms_.begin(), atoms_.end(), [&](const AtomSlot& s) { return s.key == key; })) {
        continue;
      }
      AtomSlot slot;
      slot.key = std::move(key);
      if (const auto* e = std::get_if<Event>(&a)) {
        slot.is_event = true;
        slot.edge = e->edge;
        slot.base = std::visit(base_index, e->target);
      } else if (const auto* porv = std::get_if<Porv>(&a)) {
        slot.base = base_index(*porv);
      } else {
        slot.base = base_index(std::get<BoolSignal>(a));
      }
      atoms_.push_back(std::move(slot));
    }
    PropState st;
    st.horizon = horizon(p);
    st.lookback = lookback(p);
    st.vacuous = IntervalSetBuilder(tol_);
    state_.push_back(std::move(st));
  }
}

std::vector<Verdict> Session::feed(double t, std::span<const double> values) {
  if (finalized_) throw TraceError("session already finalized");
  if (values.size() != signals_.size()) {
    throw TraceError("sample has " + std::to_string(values.size()) + " values, expected " +
                     std::to_string(signals_.size()));
  }
  if (!std::isfinite(t) || (samples_ > 0 && !(t > now_))) {
    throw TraceError("sample time " + format_number(t) + " does not advance past " +
                     format_number(now_));
  }
  for (std::size_t s = 0; s < values.size(); ++s) {
    if (!std::isfinite(values[s]) ||
        (signals_[s].kind == SignalKind::Boolean && values[s] != 0.0 && values[s] != 1.0)) {
      throw TraceError("bad value " + format_number(values[s]) + " for '" + signals_[s].name + "'");
    }
  }
  if (samples_ == 0) start_ = t;
  for (auto& tr : trackers_) tr.push(t, values);
  now_ = t;
  ++samples_;

  std::vector<Verdict> out;
  if (samples_ < 2) return out;
  for (std::size_t i = 0; i < props_.size(); ++i) {
    const PropState& st = state_[i];
    // Keep a small guard below the horizon so that edges landing exactly on
    // the newest sample, which are only confirmed by the next one, never
    // influence an emitted verdict.
    const double frontier = t - st.horizon - 2.0 * tol_;
    if (frontier < start_) continue;
    if (st.any_decided && !(frontier > st.decided)) continue;
    evaluate(i, frontier, false, out);
  }
  prune();
  return out;
}

std::vector<Verdict> Session::finalize() {
  if (finalized_) return {};
  if (samples_ < 2) {
    throw TraceError("stream ended after " + std::to_string(samples_) +
                     " sample(s); at least two are needed");
  }
  std::vector<Verdict> out;
  for (std::size_t i = 0; i < props_.size(); ++i) {
    PropState& st = state_[i];
    if (!st.any_decided || st.decided < now_) evaluate(i, now_, true, out);
    const IntervalSet vac = std::move(st.vacuous).build();
    for (const auto& c : vac) out.push_back({props_[i].name, VerdictKind::VacuousEnd, c, now_});
    st.vacuous = IntervalSetBuilder(tol_);
  }
  finalized_ = true;
  return out;
}

std::vector<Obligation> Session::pending() const {
  std::vector<Obligation> out;
  if (samples_ < 2 || finalized_) return out;
  for (std::size_t i = 0; i < props_.size(); ++i) {
    const PropState& st = state_[i];
    const double region_lo = st.any_decided ? st.decided : start_;
    const Interval open_region = st.any_decided ? Interval::left_open(st.decided, now_)
                                                : Interval::closed(start_, now_);
    const AtomTable tab = window_table(std::max(start_, region_lo - st.lookback - 4.0 * tol_), now_);
    SeqEvaluator ev(tab);
    for (const auto& c : ev.end_match(props_[i].antecedent)) {
      const Interval open_part = intersect(c, open_region);
      if (!open_part.empty()) out.push_back({props_[i].name, open_part, open_part.lo + st.horizon});
    }
  }
  return out;
}

std::size_t Session::retained_pieces() const {
  std::size_t n = 0;
  for (const auto& tr : trackers_) n += tr.builder().current().size();
  return n;
}

AtomTable Session::window_table(double lo, double hi) const {
  const Interval dom = Interval::closed(lo, hi);
  AtomTable tab(dom, tol_);
  for (const auto& slot : atoms_) {
    const IntervalSet base = trackers_[slot.base].builder().snapshot();
    if (slot.is_event) {
      // Edges come from whole components so that a component cut by the
      // window start does not produce a spurious rising edge there.
      tab.set(slot.key, set_intersect(edge_points(base, slot.edge, start_, now_, tol_), dom, tol_));
    } else {
      tab.set(slot.key, set_intersect(base, dom, tol_));
    }
  }
  return tab;
}

void Session::evaluate(std::size_t idx, double region_hi, bool final, std::vector<Verdict>& out) {
  PropState& st = state_[idx];
  const Property& p = props_[idx];
  const Interval region = st.any_decided ? Interval::left_open(st.decided, region_hi)
                                         : Interval::closed(start_, region_hi);
  const double region_lo = st.any_decided ? st.decided : start_;
  const double window_lo = std::max(start_, region_lo - st.lookback - 4.0 * tol_);

  const AtomTable tab = window_table(window_lo, now_);
  SeqEvaluator ev(tab);
  const MatchReport rep = assertion_match(p, ev, final);

  std::vector<Verdict> found;
  for (const auto& c : set_intersect(rep.nonvacuous, region, tol_)) {
    found.push_back({p.name, VerdictKind::Match, c, now_});
  }
  for (const auto& c : set_intersect(rep.fail, region, tol_)) {
    found.push_back({p.name, VerdictKind::Fail, c, now_});
  }
  if (final) {
    for (const auto& c : set_intersect(rep.undetermined, region, tol_)) {
      found.push_back({p.name, VerdictKind::Undetermined, c, now_});
    }
  }
  std::sort(found.begin(), found.end(),
            [](const Verdict& a, const Verdict& b) { return a.interval.lo < b.interval.lo; });
  out.insert(out.end(), found.begin(), found.end());

  for (const auto& c : set_intersect(rep.vacuous, region, tol_)) st.vacuous.add(c);

  st.decided = region_hi;
  st.any_decided = true;
}

void Session::prune() {
  double cutoff = std::numeric_limits<double>::infinity();
  for (const auto& st : state_) {
    if (!st.any_decided) return;
    cutoff = std::min(cutoff, st.decided - st.lookback - 8.0 * tol_);
  }
  if (!std::isfinite(cutoff)) return;
  for (auto& tr : trackers_) {
    auto& items = tr.builder().mutable_items();
    if (items.size() < 2) continue;
    auto first_kept = std::partition_point(items.begin(), items.end() - 1,
                                           [&](const Interval& iv) { return iv.hi < cutoff; });
    items.erase(items.begin(), first_kept);
  }
}

}  // namespace amscheck
