#pragma once

#include <vector>

#include "amscheck/ast.hpp"

namespace amscheck {

/// Worst-case look-ahead of a sequence: 0 for Boolean expressions, +a for
/// {s}[*a], D(lhs)+D(rhs)+b for ##[a:b] and [*a:b].
double depth(const SeqPtr& s);

/// How far past an antecedent end-match the trace must extend before the
/// assertion can be decided there: D(consequent), plus b for `|-> ##[a:b]`.
double horizon(const Property& p);

/// Look-back an online evaluator needs to reproduce end-matches of every
/// subsequence: depth of antecedent plus depth of consequent.
double lookback(const Property& p);

/// Distinct atoms in source order (antecedent first). Events are atoms in
/// their own right; their inner predicate is not listed separately.
std::vector<Atom> collect_atoms(const Property& p);
std::vector<Atom> collect_atoms(const SeqPtr& s);
void collect_atoms(const BExprPtr& b, std::vector<Atom>& out);

/// Checks delay/recurrence bounds, signal names and unsupported constructs.
/// Throws ParseError.
void validate(const Property& p);

/// Smallest strictly positive bound mentioned anywhere in the property, or 0
/// when every bound is zero.
double min_positive_bound(const Property& p);

}  // namespace amscheck
