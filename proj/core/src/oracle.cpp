#include "amscheck/oracle.hpp"

#include <cmath>
#include <map>
#include <unordered_map>

#include "amscheck/analysis.hpp"
#include "amscheck/errors.hpp"

namespace amscheck {

std::string to_string(GridClass c) {
  switch (c) {
    case GridClass::Match: return "match";
    case GridClass::Vacuous: return "vacuous";
    case GridClass::Fail: return "fail";
    case GridClass::Undetermined: return "undetermined";
  }
  return "?";
}

namespace {

constexpr double kIndexSlack = 1e-9;

using Bits = std::vector<std::uint64_t>;

void set_bit(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }
bool get_bit(const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1U; }
void or_into(Bits& dst, const Bits& src) {
  for (std::size_t w = 0; w < dst.size(); ++w) dst[w] |= src[w];
}

class Oracle {
 public:
  Oracle(const Trace& tr, double dt) : tr_(tr), dt_(dt) {
    const Interval dom = tr.domain();
    const auto n = static_cast<std::size_t>(std::floor((dom.hi - dom.lo) / dt + kIndexSlack));
    times_.reserve(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
      times_.push_back(std::min(dom.lo + static_cast<double>(k) * dt, dom.hi));
    }
    words_ = (times_.size() + 63) / 64;
  }

  std::size_t size() const { return times_.size(); }
  const std::vector<double>& times() const { return times_; }

  // Smallest index count covering a duration (a window of a seconds spans
  // ceil(a/dt) steps).
  long steps_up(double a) const { return static_cast<long>(std::ceil(a / dt_ - kIndexSlack)); }
  long steps_down(double b) const { return static_cast<long>(std::floor(b / dt_ + kIndexSlack)); }

  // τ(t_k) |=_e s
  const std::vector<char>& ends(const SeqPtr& s) {
    auto it = end_memo_.find(s.get());
    if (it != end_memo_.end()) return it->second;
    std::vector<char> out(size(), 0);
    const long n = static_cast<long>(size());
    switch (s->kind) {
      case SeqNode::Kind::Bool:
        for (long k = 0; k < n; ++k) out[k] = holds(s->bexpr, static_cast<std::size_t>(k));
        break;
      case SeqNode::Kind::Repeat: {
        const auto& body = ends(s->lhs);
        const long m = steps_up(s->lo);
        for (long k = m; k < n; ++k) out[k] = all_of(body, k - m, k);
        break;
      }
      case SeqNode::Kind::RepeatUntil: {
        const auto& body = ends(s->lhs);
        const auto& tail = ends(s->rhs);
        const long m = steps_up(s->lo);
        for (long k = m; k < n; ++k) out[k] = tail[k] && all_of(body, k - m, k);
        break;
      }
      case SeqNode::Kind::Delay: {
        const auto& first = ends(s->lhs);
        const auto& second = ends(s->rhs);
        const long na = steps_up(s->lo);
        const long nb = steps_down(s->hi);
        for (long k = 0; k < n; ++k) {
          if (!second[k]) continue;
          for (long j = std::max(0L, k - nb); j <= k - na; ++j) {
            if (first[j]) {
              out[k] = 1;
              break;
            }
          }
        }
        break;
      }
    }
    return end_memo_.emplace(s.get(), std::move(out)).first->second;
  }

  // 𝔹(τ, s, t_k) for an end match at index k.
  const Bits& begins(const SeqPtr& s, long k) {
    auto& row = begin_memo_[s.get()];
    if (row.empty()) row.resize(size());
    auto& slot = row[static_cast<std::size_t>(k)];
    if (!slot.empty()) return slot;
    Bits out(words_, 0);
    switch (s->kind) {
      case SeqNode::Kind::Bool:
        set_bit(out, static_cast<std::size_t>(k));
        break;
      case SeqNode::Kind::Repeat: {
        const long j = k - steps_up(s->lo);
        if (j >= 0 && ends(s->lhs)[j]) or_into(out, begins(s->lhs, j));
        break;
      }
      case SeqNode::Kind::Delay:
      case SeqNode::Kind::RepeatUntil: {
        const auto& first = ends(s->lhs);
        const long na = steps_up(s->lo);
        const long nb = steps_down(s->hi);
        for (long j = std::max(0L, k - nb); j <= k - na; ++j) {
          if (first[j]) or_into(out, begins(s->lhs, j));
        }
        break;
      }
    }
    slot = std::move(out);
    return slot;
  }

  // Union of begin matches over every end match of s.
  Bits all_begins(const SeqPtr& s) {
    Bits out(words_, 0);
    const auto& e = ends(s);
    for (long k = 0; k < static_cast<long>(size()); ++k) {
      if (e[k]) or_into(out, begins(s, k));
    }
    return out;
  }

 private:
  static bool all_of(const std::vector<char>& v, long from, long to) {
    for (long j = from; j <= to; ++j) {
      if (!v[j]) return false;
    }
    return true;
  }

  double eval_expr(const ExprNode& e, double t) const {
    switch (e.kind) {
      case ExprNode::Kind::Number: return e.value;
      case ExprNode::Kind::Signal: return tr_.value_at(e.name, t);
      case ExprNode::Kind::Negate: return -eval_expr(*e.lhs, t);
      case ExprNode::Kind::Binary: {
        const double a = eval_expr(*e.lhs, t);
        const double b = eval_expr(*e.rhs, t);
        switch (e.op) {
          case '+': return a + b;
          case '-': return a - b;
          case '*': return a * b;
          case '/': return a / b;
        }
      }
    }
    throw OracleError("malformed expression");
  }

  bool level(const Porv& p, double t) const {
    const double l = eval_expr(*p.lhs, t);
    const double r = eval_expr(*p.rhs, t);
    switch (p.op) {
      case RelOp::Gt: return l > r;
      case RelOp::Ge: return l >= r;
      case RelOp::Lt: return l < r;
      case RelOp::Le: return l <= r;
    }
    return false;
  }

  bool level(const BoolSignal& b, double t) const {
    return (tr_.value_at(b.name, t) > 0.5) == b.value;
  }

  const std::vector<char>& atom_levels(const Atom& a) {
    const std::string key = to_string(a);
    auto it = atom_memo_.find(key);
    if (it != atom_memo_.end()) return it->second;
    std::vector<char> out(size(), 0);
    if (const auto* e = std::get_if<Event>(&a)) {
      std::vector<char> lv(size(), 0);
      for (std::size_t k = 0; k < size(); ++k) {
        lv[k] = std::visit([&](const auto& x) { return level(x, times_[k]); }, e->target);
      }
      // No history before the first instant, so no edge there.
      for (std::size_t k = 1; k < size(); ++k) {
        const bool rise = lv[k] && !lv[k - 1];
        const bool fall = !lv[k] && lv[k - 1];
        out[k] = (e->edge == Edge::Pos && rise) || (e->edge == Edge::Neg && fall) ||
                 (e->edge == Edge::Any && (rise || fall));
      }
    } else {
      for (std::size_t k = 0; k < size(); ++k) {
        out[k] = std::visit(
            [&](const auto& x) -> bool {
              if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Event>) {
                return false;
              } else {
                return level(x, times_[k]);
              }
            },
            a);
      }
    }
    return atom_memo_.emplace(key, std::move(out)).first->second;
  }

  bool holds(const BExprPtr& b, std::size_t k) {
    switch (b->kind) {
      case BoolNode::Kind::Leaf: return atom_levels(b->atom)[k];
      case BoolNode::Kind::Not: return !holds(b->children[0], k);
      case BoolNode::Kind::And:
        for (const auto& c : b->children) {
          if (!holds(c, k)) return false;
        }
        return true;
      case BoolNode::Kind::Or:
        for (const auto& c : b->children) {
          if (holds(c, k)) return true;
        }
        return false;
    }
    return false;
  }

  const Trace& tr_;
  double dt_;
  std::vector<double> times_;
  std::size_t words_ = 0;
  std::map<std::string, std::vector<char>> atom_memo_;
  std::unordered_map<const SeqNode*, std::vector<char>> end_memo_;
  std::unordered_map<const SeqNode*, std::vector<Bits>> begin_memo_;
};

}  // namespace

OracleResult oracle_classify(const Trace& tr, const Property& p, double dt,
                             const OracleOptions& opts) {
  tr.require_complete();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw OracleError("grid step must be positive");
  if (!opts.force) {
    const double bound = min_positive_bound(p);
    if (bound > 0.0 && dt > bound / 10.0 * (1.0 + kIndexSlack)) {
      throw OracleError("grid step " + format_number(dt) + " exceeds a tenth of the smallest bound " +
                        format_number(bound));
    }
    const auto& ts = tr.times();
    for (std::size_t i = 1; i < ts.size(); ++i) {
      if (ts[i] - ts[i - 1] < dt * (1.0 - kIndexSlack)) {
        throw OracleError("grid step " + format_number(dt) + " exceeds the sample spacing at t=" +
                          format_number(ts[i - 1]));
      }
    }
  }

  Oracle o(tr, dt);
  const auto& ante = o.ends(p.antecedent);
  const Bits cons = o.all_begins(p.consequent);
  const double h = horizon(p);
  const double R = tr.domain().hi;
  const long n = static_cast<long>(o.size());

  OracleResult res;
  res.dt = dt;
  res.times = o.times();
  res.classes.resize(o.size());
  for (long k = 0; k < n; ++k) {
    GridClass c;
    if (!ante[k]) {
      c = GridClass::Vacuous;
    } else {
      bool matched = false;
      if (p.delay) {
        const long lo = k + o.steps_up(p.delay->lo);
        const long hi = std::min(n - 1, k + o.steps_down(p.delay->hi));
        for (long j = lo; j <= hi && !matched; ++j) matched = get_bit(cons, static_cast<std::size_t>(j));
      } else {
        matched = get_bit(cons, static_cast<std::size_t>(k));
      }
      if (matched) {
        c = GridClass::Match;
      } else if (opts.trace_end_open && res.times[k] + h > R) {
        c = GridClass::Undetermined;
      } else {
        c = GridClass::Fail;
      }
    }
    res.classes[k] = c;
  }
  return res;
}

}  // namespace amscheck
