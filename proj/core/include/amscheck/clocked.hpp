#pragma once

#include <vector>

#include "amscheck/ast.hpp"
#include "amscheck/trace.hpp"

namespace amscheck {

/// Cycle-based reading of `A |-> ##[m:n] C` in the style of a clocked SVA
/// checker. Predicates are sampled on clock ticks t = phase + k*period; an
/// event atom becomes $rose/$fell/$changed of its predicate between two
/// consecutive ticks. This is the discrete approximation that dense-time
/// checking is compared against.
struct ClockedConfig {
  double period = 0.4e-6;
  double phase = 0.0;
  unsigned min_cycles = 0;
  unsigned max_cycles = 0;
};

struct ClockedAttempt {
  enum class Outcome { Pass, Fail, Incomplete };
  double tick = 0.0;  // antecedent tick
  Outcome outcome = Outcome::Incomplete;
  double witness = 0.0;  // consequent tick for Pass
};

struct ClockedResult {
  std::vector<ClockedAttempt> attempts;
  std::size_t passes = 0;
  std::size_t failures = 0;
  bool passed() const { return failures == 0; }
};

/// Requires a property whose antecedent and consequent are plain Boolean
/// expressions and whose implication carries a delay window; the window is
/// replaced by [min_cycles:max_cycles] clock cycles. Throws EvalError otherwise.
ClockedResult clocked_check(const Trace& tr, const Property& p, const ClockedConfig& cfg);

}  // namespace amscheck
