#include "amscheck/atom_eval.hpp"

#include <algorithm>
#include <cmath>

#include "amscheck/analysis.hpp"
#include "amscheck/errors.hpp"

namespace amscheck {

// ---------------------------------------------------------------------------
// CompiledExpr

CompiledExpr::CompiledExpr(const ExprPtr& e, const std::vector<SignalInfo>& signals) {
  root_ = compile(e, signals);
}

namespace {

bool has_signal(const ExprPtr& e) {
  if (!e) return false;
  if (e->kind == ExprNode::Kind::Signal) return true;
  return has_signal(e->lhs) || has_signal(e->rhs);
}

}  // namespace

int CompiledExpr::compile(const ExprPtr& e, const std::vector<SignalInfo>& signals) {
  Node n;
  switch (e->kind) {
    case ExprNode::Kind::Number:
      n.op = Node::Op::Const;
      n.value = e->value;
      break;
    case ExprNode::Kind::Signal: {
      auto it = std::find_if(signals.begin(), signals.end(),
                             [&](const SignalInfo& s) { return s.name == e->name; });
      if (it == signals.end()) throw EvalError("unknown signal '" + e->name + "'");
      n.op = Node::Op::Signal;
      n.signal = static_cast<std::size_t>(it - signals.begin());
      if (std::find(used_.begin(), used_.end(), n.signal) == used_.end()) used_.push_back(n.signal);
      break;
    }
    case ExprNode::Kind::Negate:
      n.op = Node::Op::Neg;
      n.lhs = compile(e->lhs, signals);
      break;
    case ExprNode::Kind::Binary:
      switch (e->op) {
        case '+': n.op = Node::Op::Add; break;
        case '-': n.op = Node::Op::Sub; break;
        case '*':
          n.op = Node::Op::Mul;
          if (has_signal(e->lhs) && has_signal(e->rhs)) affine_ = false;
          break;
        case '/':
          n.op = Node::Op::Div;
          if (has_signal(e->rhs)) affine_ = false;
          break;
        default:
          throw EvalError(std::string("unknown operator '") + e->op + "'");
      }
      n.lhs = compile(e->lhs, signals);
      n.rhs = compile(e->rhs, signals);
      break;
  }
  nodes_.push_back(n);
  return static_cast<int>(nodes_.size()) - 1;
}

double CompiledExpr::eval_node(int idx, std::span<const double> row) const {
  const Node& n = nodes_[static_cast<std::size_t>(idx)];
  switch (n.op) {
    case Node::Op::Const: return n.value;
    case Node::Op::Signal: return row[n.signal];
    case Node::Op::Neg: return -eval_node(n.lhs, row);
    case Node::Op::Add: return eval_node(n.lhs, row) + eval_node(n.rhs, row);
    case Node::Op::Sub: return eval_node(n.lhs, row) - eval_node(n.rhs, row);
    case Node::Op::Mul: return eval_node(n.lhs, row) * eval_node(n.rhs, row);
    case Node::Op::Div: return eval_node(n.lhs, row) / eval_node(n.rhs, row);
  }
  return 0.0;
}

double CompiledExpr::eval(std::span<const double> row) const {
  const double v = eval_node(root_, row);
  if (std::isnan(v)) throw EvalError("predicate evaluates to NaN");
  return v;
}

Predicate compile_predicate(const Porv& p, const std::vector<SignalInfo>& signals) {
  const bool up = p.rising_sense();
  const ExprPtr diff = up ? make_binary('-', p.lhs, p.rhs) : make_binary('-', p.rhs, p.lhs);
  return {CompiledExpr(diff, signals), p.strict()};
}

Predicate compile_predicate(const BoolSignal& b, const std::vector<SignalInfo>& signals) {
  const ExprPtr sig = make_signal(b.name, false);
  const ExprPtr half = make_number(0.5);
  if (b.value) return {CompiledExpr(make_binary('-', sig, half), signals), true};
  return {CompiledExpr(make_binary('-', half, sig), signals), false};
}

// ---------------------------------------------------------------------------
// PredicateTracker

namespace {

// Sub-pieces per segment for expressions that are not linear in time. Roots
// are bracketed per sub-piece, so two crossings closer than a sub-piece width
// can be missed.
constexpr int kNonlinearSubdivisions = 16;

}  // namespace

PredicateTracker::PredicateTracker(Predicate pred, std::vector<SignalKind> kinds, double tol)
    : pred_(std::move(pred)), kinds_(std::move(kinds)), tol_(tol), builder_(tol) {
  prev_row_.assign(kinds_.size(), 0.0);
  scratch_.assign(kinds_.size(), 0.0);
}

double PredicateTracker::segment_value(double theta, std::span<const double> row) {
  for (std::size_t s : pred_.g.signals_used()) {
    if (kinds_[s] == SignalKind::Boolean) {
      scratch_[s] = prev_row_[s];
    } else {
      scratch_[s] = prev_row_[s] + theta * (row[s] - prev_row_[s]);
    }
  }
  return pred_.g.eval(scratch_);
}

double PredicateTracker::find_root(double ta, double tb, double ga, double gb, double theta_a,
                                   double theta_b, std::span<const double> row) {
  if (pred_.g.affine()) {
    const double tc = ta + (tb - ta) * (ga / (ga - gb));
    return std::clamp(tc, ta, tb);
  }
  // Bisection down to the time tolerance, then one chord step in the bracket.
  double lo = theta_a;
  double hi = theta_b;
  double glo = ga;
  double ghi = gb;
  const double span = tb - ta;
  const double t0 = ta - theta_a * span / (theta_b - theta_a);
  const double full = span / (theta_b - theta_a);
  while ((hi - lo) * full > tol_) {
    const double mid = 0.5 * (lo + hi);
    const double gm = segment_value(mid, row);
    if ((gm > 0.0) == (glo > 0.0) && gm != 0.0) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
      ghi = gm;
    }
  }
  double theta = lo;
  if (ghi != glo) theta = lo + (hi - lo) * (glo / (glo - ghi));
  return std::clamp(t0 + theta * full, ta, tb);
}

void PredicateTracker::emit_piece(double ta, double tb, double ga, double gb, double theta_a,
                                  double theta_b, std::span<const double> row) {
  const bool strict = pred_.strict;
  if ((ga > 0.0 && gb > 0.0) || (ga > 0.0 && gb == 0.0) || (ga == 0.0 && gb > 0.0)) {
    builder_.add(Interval::open(ta, tb));
    return;
  }
  if (ga == 0.0 && gb == 0.0) {
    if (!strict) builder_.add(Interval::open(ta, tb));
    return;
  }
  if (ga > 0.0 && gb < 0.0) {
    const double tc = find_root(ta, tb, ga, gb, theta_a, theta_b, row);
    builder_.add({ta, tc, false, !strict && tc < tb});
    return;
  }
  if (ga < 0.0 && gb > 0.0) {
    const double tc = find_root(ta, tb, ga, gb, theta_a, theta_b, row);
    builder_.add({tc, tb, !strict && tc > ta, false});
  }
}

void PredicateTracker::push(double t, std::span<const double> row) {
  if (have_prev_) {
    if (!(t > prev_t_)) throw TraceError("predicate tracker fed non-increasing time");
    const int pieces = pred_.g.affine() ? 1 : kNonlinearSubdivisions;
    const double span = t - prev_t_;
    double ta = prev_t_;
    double theta_a = 0.0;
    double ga = segment_value(0.0, row);
    for (int k = 1; k <= pieces; ++k) {
      const double theta_b = static_cast<double>(k) / pieces;
      const double tb = k == pieces ? t : prev_t_ + theta_b * span;
      const double gb = segment_value(theta_b, row);
      emit_piece(ta, tb, ga, gb, theta_a, theta_b, row);
      if (k < pieces && holds(gb)) builder_.add(Interval::point(tb));
      ta = tb;
      theta_a = theta_b;
      ga = gb;
    }
  }
  if (holds(pred_.g.eval(row))) builder_.add(Interval::point(t));
  prev_t_ = t;
  have_prev_ = true;
  for (std::size_t s : pred_.g.signals_used()) prev_row_[s] = row[s];
}

// ---------------------------------------------------------------------------
// Events

IntervalSet edge_points(const IntervalSet& base, Edge edge, double L, double R, double tol) {
  IntervalSetBuilder out(tol);
  for (const auto& c : base) {
    if ((edge == Edge::Pos || edge == Edge::Any) && c.lo > L + tol) out.add(Interval::point(c.lo));
    // A component open at R means the predicate is already false at R.
    const bool falls = c.hi < R - tol || !c.hi_closed;
    if ((edge == Edge::Neg || edge == Edge::Any) && falls) out.add(Interval::point(c.hi));
  }
  return std::move(out).build();
}

// ---------------------------------------------------------------------------
// Offline truth sets

namespace {

std::vector<SignalKind> kinds_of(const Trace& tr) {
  std::vector<SignalKind> kinds;
  kinds.reserve(tr.signals().size());
  for (const auto& s : tr.signals()) kinds.push_back(s.kind);
  return kinds;
}

IntervalSet track(const Trace& tr, Predicate pred, double tol) {
  tr.require_complete();
  PredicateTracker tracker(std::move(pred), kinds_of(tr), tol);
  const std::size_t nsig = tr.signals().size();
  std::vector<double> row(nsig);
  for (std::size_t i = 0; i < tr.size(); ++i) {
    for (std::size_t s = 0; s < nsig; ++s) row[s] = tr.column(s)[i];
    tracker.push(tr.times()[i], row);
  }
  return std::move(tracker.builder()).build();
}

}  // namespace

IntervalSet porv_truth(const Trace& tr, const Porv& p, const EvalOptions& opts) {
  return track(tr, compile_predicate(p, tr.signals()), opts.time_tol);
}

IntervalSet bool_signal_truth(const Trace& tr, const BoolSignal& b, const EvalOptions& opts) {
  return track(tr, compile_predicate(b, tr.signals()), opts.time_tol);
}

IntervalSet event_truth(const Trace& tr, const Event& e, const EvalOptions& opts) {
  const IntervalSet base = std::visit(
      [&](const auto& target) {
        return track(tr, compile_predicate(target, tr.signals()), opts.time_tol);
      },
      e.target);
  const Interval dom = tr.domain();
  return edge_points(base, e.edge, dom.lo, dom.hi, opts.time_tol);
}

IntervalSet atom_truth(const Trace& tr, const Atom& a, const EvalOptions& opts) {
  if (const auto* p = std::get_if<Porv>(&a)) return porv_truth(tr, *p, opts);
  if (const auto* b = std::get_if<BoolSignal>(&a)) return bool_signal_truth(tr, *b, opts);
  return event_truth(tr, std::get<Event>(a), opts);
}

// ---------------------------------------------------------------------------
// AtomTable

const IntervalSet& AtomTable::get(const Atom& a) const {
  const std::string key = to_string(a);
  if (const auto* s = find(key)) return *s;
  throw EvalError("atom '" + key + "' missing from the truth table");
}

const IntervalSet* AtomTable::find(std::string_view key) const {
  auto it = sets_.find(key);
  return it == sets_.end() ? nullptr : &it->second;
}

IntervalSet bexpr_truth(const AtomTable& tab, const BExprPtr& b) {
  switch (b->kind) {
    case BoolNode::Kind::Leaf:
      return tab.get(b->atom);
    case BoolNode::Kind::And: {
      IntervalSet acc = bexpr_truth(tab, b->children.front());
      for (std::size_t i = 1; i < b->children.size() && !acc.empty(); ++i) {
        acc = set_intersect(acc, bexpr_truth(tab, b->children[i]), tab.tol());
      }
      return acc;
    }
    case BoolNode::Kind::Or: {
      IntervalSet acc = bexpr_truth(tab, b->children.front());
      for (std::size_t i = 1; i < b->children.size(); ++i) {
        acc = set_union(acc, bexpr_truth(tab, b->children[i]), tab.tol());
      }
      return acc;
    }
    case BoolNode::Kind::Not:
      return set_complement(bexpr_truth(tab, b->children.front()), tab.domain(), tab.tol());
  }
  return {};
}

AtomTable build_atom_table(const Trace& tr, std::span<const Atom> atoms, const EvalOptions& opts) {
  tr.require_complete();
  AtomTable tab(tr.domain(), opts.time_tol);
  // Events share the truth set of their underlying predicate.
  std::map<std::string, IntervalSet, std::less<>> base_cache;
  auto base_of = [&](const auto& target) -> const IntervalSet& {
    std::string key = to_string(Atom(target));
    auto it = base_cache.find(key);
    if (it == base_cache.end()) {
      it = base_cache
               .emplace(std::move(key),
                        track(tr, compile_predicate(target, tr.signals()), opts.time_tol))
               .first;
    }
    return it->second;
  };
  const Interval dom = tr.domain();
  for (const auto& a : atoms) {
    std::string key = to_string(a);
    if (tab.find(key)) continue;
    if (const auto* e = std::get_if<Event>(&a)) {
      const IntervalSet& base = std::visit(base_of, e->target);
      tab.set(std::move(key), edge_points(base, e->edge, dom.lo, dom.hi, opts.time_tol));
    } else {
      IntervalSet s = std::visit(
          [&](const auto& x) -> IntervalSet {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Event>) {
              return {};
            } else {
              return base_of(x);
            }
          },
          a);
      tab.set(std::move(key), std::move(s));
    }
  }
  return tab;
}

AtomTable build_atom_table(const Trace& tr, const Property& p, const EvalOptions& opts) {
  const auto atoms = collect_atoms(p);
  return build_atom_table(tr, std::span<const Atom>(atoms), opts);
}

AtomTable build_atom_table(const Trace& tr, std::span<const Property> props,
                           const EvalOptions& opts) {
  std::vector<Atom> atoms;
  for (const auto& p : props) {
    for (auto& a : collect_atoms(p)) atoms.push_back(std::move(a));
  }
  return build_atom_table(tr, std::span<const Atom>(atoms), opts);
}

}  // namespace amscheck
