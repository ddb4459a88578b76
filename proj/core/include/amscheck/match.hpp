#pragma once

#include <string>
#include <unordered_map>

#include "amscheck/ast.hpp"
#include "amscheck/atom_eval.hpp"
#include "amscheck/interval.hpp"

namespace amscheck {

/// Verdict sets of one assertion over a trace domain. The four sets are
/// pairwise disjoint and cover the domain.
struct MatchReport {
  std::string name;
  IntervalSet nonvacuous;
  IntervalSet vacuous;
  IntervalSet fail;
  /// Instants that failed so far but whose outcome could still change with
  /// more trace, because their decision horizon reaches past the trace end.
  IntervalSet undetermined;
  double horizon = 0.0;
  Interval domain = Interval::empty_interval();
};

/// Evaluates sequence expressions against one AtomTable. End-match sets are
/// cached per AST node, so an evaluator should not outlive its table.
class SeqEvaluator {
 public:
  explicit SeqEvaluator(const AtomTable& tab) : tab_(tab) {}

  /// Every t at which some match of `s` ends.
  const IntervalSet& end_match(const SeqPtr& s);

  /// Every t̂ at which a match of `s` begins, among matches that end inside
  /// `restrict`.
  IntervalSet begin_match(const SeqPtr& s, const IntervalSet& restrict);

  const AtomTable& table() const { return tab_; }

 private:
  IntervalSet compute_end(const SeqPtr& s);
  IntervalSet clip(const IntervalSet& s) const;

  const AtomTable& tab_;
  std::unordered_map<const SeqNode*, IntervalSet> end_cache_;
};

IntervalSet end_match(const SeqPtr& s, const AtomTable& tab);
IntervalSet begin_match(const SeqPtr& s, const IntervalSet& restrict, const AtomTable& tab);

/// Classifies every instant of the table domain. With `trace_end_open` set,
/// fail instants within one horizon of the domain end are reported as
/// undetermined.
MatchReport assertion_match(const Property& p, const AtomTable& tab, bool trace_end_open = true);
/// Same, reusing the end-match cache of `ev`.
MatchReport assertion_match(const Property& p, SeqEvaluator& ev, bool trace_end_open = true);

}  // namespace amscheck
