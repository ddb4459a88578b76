#include "amscheck/clocked.hpp"

#include <cmath>

#include "amscheck/atom_eval.hpp"
#include "amscheck/errors.hpp"

namespace amscheck {

namespace {

class Sampler {
 public:
  Sampler(const Trace& tr, std::vector<double> ticks) : tr_(tr), ticks_(std::move(ticks)) {
    row_.resize(tr.signals().size());
  }

  bool level(const Predicate& pred, std::size_t k) {
    for (std::size_t s : pred.g.signals_used()) row_[s] = tr_.value_at(s, ticks_[k]);
    const double g = pred.g.eval(row_);
    return pred.strict ? g > 0.0 : g >= 0.0;
  }

  bool holds(const BExprPtr& b, std::size_t k) {
    switch (b->kind) {
      case BoolNode::Kind::Leaf:
        return atom(b->atom, k);
      case BoolNode::Kind::Not:
        return !holds(b->children[0], k);
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

 private:
  bool atom(const Atom& a, std::size_t k) {
    if (const auto* e = std::get_if<Event>(&a)) {
      if (k == 0) return false;
      const Predicate pred =
          std::visit([&](const auto& t) { return compile_predicate(t, tr_.signals()); }, e->target);
      const bool now = level(pred, k);
      const bool before = level(pred, k - 1);
      switch (e->edge) {
        case Edge::Pos: return now && !before;
        case Edge::Neg: return !now && before;
        case Edge::Any: return now != before;
      }
      return false;
    }
    const Predicate pred = std::visit(
        [&](const auto& x) -> Predicate {
          if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Event>) {
            return {};
          } else {
            return compile_predicate(x, tr_.signals());
          }
        },
        a);
    return level(pred, k);
  }

  const Trace& tr_;
  std::vector<double> ticks_;
  std::vector<double> row_;
};

}  // namespace

ClockedResult clocked_check(const Trace& tr, const Property& p, const ClockedConfig& cfg) {
  tr.require_complete();
  if (!(cfg.period > 0.0)) throw EvalError("clock period must be positive");
  if (cfg.max_cycles < cfg.min_cycles) throw EvalError("clock window upper bound below lower bound");
  if (p.antecedent->kind != SeqNode::Kind::Bool || p.consequent->kind != SeqNode::Kind::Bool ||
      !p.delay) {
    throw EvalError("clocked approximation needs the form 'BEXPR |-> ##[a:b] BEXPR'");
  }

  const Interval dom = tr.domain();
  std::vector<double> ticks;
  const double first = std::max(dom.lo, cfg.phase);
  const auto k0 = static_cast<long>(std::ceil((first - cfg.phase) / cfg.period - 1e-9));
  for (long k = k0;; ++k) {
    const double t = cfg.phase + static_cast<double>(k) * cfg.period;
    if (t > dom.hi + 1e-12) break;
    ticks.push_back(std::min(t, dom.hi));
  }

  Sampler sampler(tr, ticks);
  std::vector<char> cons(ticks.size());
  for (std::size_t k = 0; k < ticks.size(); ++k) cons[k] = sampler.holds(p.consequent->bexpr, k);

  ClockedResult res;
  for (std::size_t k = 0; k < ticks.size(); ++k) {
    if (!sampler.holds(p.antecedent->bexpr, k)) continue;
    ClockedAttempt att;
    att.tick = ticks[k];
    const std::size_t lo = k + cfg.min_cycles;
    const std::size_t hi = k + cfg.max_cycles;
    for (std::size_t j = lo; j <= hi && j < ticks.size(); ++j) {
      if (cons[j]) {
        att.outcome = ClockedAttempt::Outcome::Pass;
        att.witness = ticks[j];
        break;
      }
    }
    if (att.outcome != ClockedAttempt::Outcome::Pass && hi < ticks.size()) {
      att.outcome = ClockedAttempt::Outcome::Fail;
    }
    if (att.outcome == ClockedAttempt::Outcome::Pass) ++res.passes;
    if (att.outcome == ClockedAttempt::Outcome::Fail) ++res.failures;
    res.attempts.push_back(att);
  }
  return res;
}

}  // namespace amscheck
