#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "amscheck/ast.hpp"
#include "amscheck/interval.hpp"
#include "amscheck/trace.hpp"

namespace amscheck {

struct Property;

/// Arithmetic expression with signal names resolved to trace column indices.
class CompiledExpr {
 public:
  CompiledExpr() = default;
  /// Throws EvalError for names not in `signals`.
  CompiledExpr(const ExprPtr& e, const std::vector<SignalInfo>& signals);

  /// `row` holds one value per trace signal, in trace order.
  double eval(std::span<const double> row) const;

  /// True when the expression is affine in the signal values, which makes it
  /// linear in time on every sample segment.
  bool affine() const { return affine_; }
  const std::vector<std::size_t>& signals_used() const { return used_; }

 private:
  struct Node {
    enum class Op { Const, Signal, Neg, Add, Sub, Mul, Div } op = Op::Const;
    double value = 0.0;
    std::size_t signal = 0;
    int lhs = -1;
    int rhs = -1;
  };
  int compile(const ExprPtr& e, const std::vector<SignalInfo>& signals);
  double eval_node(int idx, std::span<const double> row) const;

  std::vector<Node> nodes_;
  std::vector<std::size_t> used_;
  int root_ = -1;
  bool affine_ = true;
};

/// A PORV or Boolean-signal test reduced to `g(x) > 0` (strict) or `g(x) >= 0`.
struct Predicate {
  CompiledExpr g;
  bool strict = true;
};

Predicate compile_predicate(const Porv& p, const std::vector<SignalInfo>& signals);
/// `d` (or `d==1`) becomes d - 0.5 > 0; `d==0` becomes 0.5 - d >= 0.
Predicate compile_predicate(const BoolSignal& b, const std::vector<SignalInfo>& signals);

/// Truth set of one predicate built sample by sample. Each new sample adds the
/// truth of the open segment since the previous sample followed by the truth
/// at the sample instant. On a segment analog signals follow the straight line
/// between samples and Boolean signals hold their earlier value.
class PredicateTracker {
 public:
  PredicateTracker(Predicate pred, std::vector<SignalKind> kinds, double tol);

  void push(double t, std::span<const double> row);

  const IntervalSetBuilder& builder() const { return builder_; }
  IntervalSetBuilder& builder() { return builder_; }
  bool started() const { return have_prev_; }

 private:
  double segment_value(double theta, std::span<const double> row);
  void emit_piece(double ta, double tb, double ga, double gb, double theta_a, double theta_b,
                  std::span<const double> row);
  double find_root(double ta, double tb, double ga, double gb, double theta_a, double theta_b,
                   std::span<const double> row);
  bool holds(double g) const { return pred_.strict ? g > 0.0 : g >= 0.0; }

  Predicate pred_;
  std::vector<SignalKind> kinds_;
  double tol_;
  IntervalSetBuilder builder_;
  bool have_prev_ = false;
  double prev_t_ = 0.0;
  std::vector<double> prev_row_;
  std::vector<double> scratch_;
};

/// Event instants derived from the truth set of the underlying predicate. A
/// rising edge sits at the left end of each truth component and a falling
/// edge at the right end. Components that start at the trace start L carry no
/// edge there, since nothing is known before L. A component that reaches the
/// current trace end R carries a falling edge only when it is open at R, that
/// is, when the predicate is already false at R.
IntervalSet edge_points(const IntervalSet& base, Edge edge, double L, double R, double tol);

/// Truth sets of every atom referenced by one or more properties. Keys are the
/// canonical atom spellings.
class AtomTable {
 public:
  AtomTable() = default;
  AtomTable(Interval domain, double tol) : domain_(domain), tol_(tol) {}

  void set(std::string key, IntervalSet s) { sets_[std::move(key)] = std::move(s); }
  /// Throws EvalError when the atom is missing.
  const IntervalSet& get(const Atom& a) const;
  const IntervalSet* find(std::string_view key) const;

  const Interval& domain() const { return domain_; }
  double tol() const { return tol_; }
  std::size_t size() const { return sets_.size(); }
  const std::map<std::string, IntervalSet, std::less<>>& sets() const { return sets_; }

 private:
  Interval domain_ = Interval::empty_interval();
  double tol_ = kDefaultTimeTol;
  std::map<std::string, IntervalSet, std::less<>> sets_;
};

struct EvalOptions {
  double time_tol = kDefaultTimeTol;
};

IntervalSet porv_truth(const Trace& tr, const Porv& p, const EvalOptions& opts = {});
IntervalSet bool_signal_truth(const Trace& tr, const BoolSignal& b, const EvalOptions& opts = {});
IntervalSet event_truth(const Trace& tr, const Event& e, const EvalOptions& opts = {});
IntervalSet atom_truth(const Trace& tr, const Atom& a, const EvalOptions& opts = {});

/// AND intersects, OR unites, NOT complements within the table domain.
IntervalSet bexpr_truth(const AtomTable& tab, const BExprPtr& b);

AtomTable build_atom_table(const Trace& tr, std::span<const Atom> atoms,
                           const EvalOptions& opts = {});
AtomTable build_atom_table(const Trace& tr, const Property& p, const EvalOptions& opts = {});
AtomTable build_atom_table(const Trace& tr, std::span<const Property> props,
                           const EvalOptions& opts = {});

}  // namespace amscheck
