#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "amscheck/ast.hpp"
#include "amscheck/atom_eval.hpp"
#include "amscheck/interval.hpp"
#include "amscheck/trace.hpp"

namespace amscheck {

enum class VerdictKind { Match, VacuousEnd, Fail, Undetermined };

std::string to_string(VerdictKind k);

struct Verdict {
  std::string assertion;
  VerdictKind kind = VerdictKind::Match;
  Interval interval;
  double decided_at = 0.0;
};

/// An antecedent end-match component whose outcome is still open.
struct Obligation {
  std::string assertion;
  Interval component;
  double deadline = 0.0;  // component start + horizon
};

struct SessionOptions {
  double time_tol = kDefaultTimeTol;
};

/// Streaming checker. Samples arrive one at a time; each call to feed()
/// returns the match and fail verdicts that have become final, which happens
/// once the stream has advanced one horizon past them. Vacuous stretches are
/// reported by finalize(), together with whatever remains open.
///
/// Only the latest sample is kept. Truth sets are kept as far back as the
/// oldest undecided instant minus the property's look-back.
class Session {
 public:
  /// Throws EvalError when a property references a signal not in `signals`.
  Session(std::vector<Property> props, std::vector<SignalInfo> signals,
          const SessionOptions& opts = {});

  /// Throws TraceError on non-increasing time, a value count mismatch or a
  /// non-binary Boolean value.
  std::vector<Verdict> feed(double t, std::span<const double> values);

  /// Ends the stream. Throws TraceError when fewer than two samples arrived.
  std::vector<Verdict> finalize();

  /// Antecedent matches not yet covered by an emitted verdict, computed from
  /// the retained window on each call.
  std::vector<Obligation> pending() const;

  const std::vector<SignalInfo>& signals() const { return signals_; }
  const std::vector<Property>& properties() const { return props_; }
  std::size_t samples() const { return samples_; }
  /// Truth-interval pieces still held across all predicate trackers. Pieces
  /// older than every assertion's decided frontier minus its lookback are
  /// discarded, so this stays bounded on an unbounded stream.
  std::size_t retained_pieces() const;
  bool finalized() const { return finalized_; }

 private:
  struct AtomSlot {
    std::string key;
    std::size_t base = 0;
    bool is_event = false;
    Edge edge = Edge::Pos;
  };
  struct PropState {
    double horizon = 0.0;
    double lookback = 0.0;
    double decided = -std::numeric_limits<double>::infinity();
    bool any_decided = false;
    IntervalSetBuilder vacuous;
  };

  AtomTable window_table(double lo, double hi) const;
  void evaluate(std::size_t idx, double region_hi, bool final, std::vector<Verdict>& out);
  void prune();

  std::vector<Property> props_;
  std::vector<SignalInfo> signals_;
  double tol_;
  std::vector<std::string> base_keys_;
  std::vector<PredicateTracker> trackers_;
  std::vector<AtomSlot> atoms_;
  std::vector<PropState> state_;
  std::size_t samples_ = 0;
  double start_ = 0.0;
  double now_ = 0.0;
  bool finalized_ = false;
};

}  // namespace amscheck
