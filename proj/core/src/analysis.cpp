#include "amscheck/analysis.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "amscheck/parser.hpp"

namespace amscheck {

double depth(const SeqPtr& s) {
  switch (s->kind) {
    case SeqNode::Kind::Bool:
      return 0.0;
    case SeqNode::Kind::Repeat:
      return depth(s->lhs) + std::abs(s->lo);
    case SeqNode::Kind::RepeatUntil:
    case SeqNode::Kind::Delay:
      return depth(s->lhs) + depth(s->rhs) + s->hi;
  }
  return 0.0;
}

double horizon(const Property& p) {
  return depth(p.consequent) + (p.delay ? p.delay->hi : 0.0);
}

double lookback(const Property& p) { return depth(p.antecedent) + depth(p.consequent); }

namespace {

void add_unique(const Atom& a, std::vector<Atom>& out) {
  const std::string key = to_string(a);
  for (const auto& existing : out) {
    if (to_string(existing) == key) return;
  }
  out.push_back(a);
}

void collect(const SeqPtr& s, std::vector<Atom>& out) {
  if (!s) return;
  if (s->kind == SeqNode::Kind::Bool) {
    collect_atoms(s->bexpr, out);
    return;
  }
  collect(s->lhs, out);
  collect(s->rhs, out);
}

bool well_formed_name(const std::string& name) {
  if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) {
    return false;
  }
  if (name == "OR" || name == "property" || name == "endproperty") return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '$';
  });
}

void check_window(double a, double b, SourcePos pos) {
  if (!std::isfinite(a) || !std::isfinite(b) || a < 0.0) {
    throw ParseError(ParseError::Kind::Bound, pos, "time bounds must be finite and non-negative");
  }
  if (b < a) {
    throw ParseError(ParseError::Kind::Bound, pos,
                     "upper bound " + format_number(b) + " below lower bound " + format_number(a));
  }
}

void check_atom(const Atom& a, SourcePos pos) {
  const auto names = referenced_signals(a);
  if (names.empty()) {
    throw ParseError(ParseError::Kind::Syntax, pos,
                     "predicate '" + to_string(a) + "' references no signal");
  }
  for (const auto& n : names) {
    if (!well_formed_name(n)) {
      throw ParseError(ParseError::Kind::Syntax, pos, "malformed signal name '" + n + "'");
    }
  }
}

void check_bexpr(const BExprPtr& b) {
  if (b->assignment) {
    throw ParseError(ParseError::Kind::Unsupported, b->pos,
                     "local-variable assignment '" + *b->assignment + "' has no defined semantics");
  }
  if (b->kind == BoolNode::Kind::Leaf) {
    check_atom(b->atom, b->pos);
    return;
  }
  if (b->children.empty()) {
    throw ParseError(ParseError::Kind::Syntax, b->pos, "empty Boolean operator");
  }
  for (const auto& c : b->children) check_bexpr(c);
}

void check_seq(const SeqPtr& s) {
  switch (s->kind) {
    case SeqNode::Kind::Bool:
      check_bexpr(s->bexpr);
      return;
    case SeqNode::Kind::Repeat:
      if (s->lo == 0.0) {
        throw ParseError(ParseError::Kind::RecurrenceZero, s->pos, "recurrence [*0] is not allowed");
      }
      check_window(s->lo, s->lo, s->pos);
      check_seq(s->lhs);
      return;
    case SeqNode::Kind::RepeatUntil:
    case SeqNode::Kind::Delay:
      check_window(s->lo, s->hi, s->pos);
      check_seq(s->lhs);
      check_seq(s->rhs);
      return;
  }
}

void bounds_of(const SeqPtr& s, std::vector<double>& out) {
  if (!s || s->kind == SeqNode::Kind::Bool) return;
  out.push_back(s->lo);
  if (s->kind != SeqNode::Kind::Repeat) out.push_back(s->hi);
  bounds_of(s->lhs, out);
  bounds_of(s->rhs, out);
}

}  // namespace

void collect_atoms(const BExprPtr& b, std::vector<Atom>& out) {
  if (b->kind == BoolNode::Kind::Leaf) {
    add_unique(b->atom, out);
    return;
  }
  for (const auto& c : b->children) collect_atoms(c, out);
}

std::vector<Atom> collect_atoms(const SeqPtr& s) {
  std::vector<Atom> out;
  collect(s, out);
  return out;
}

std::vector<Atom> collect_atoms(const Property& p) {
  std::vector<Atom> out;
  collect(p.antecedent, out);
  collect(p.consequent, out);
  return out;
}

void validate(const Property& p) {
  if (!p.antecedent || !p.consequent) {
    throw ParseError(ParseError::Kind::Syntax, p.pos, "property needs an antecedent and a consequent");
  }
  check_seq(p.antecedent);
  check_seq(p.consequent);
  if (p.delay) check_window(p.delay->lo, p.delay->hi, p.pos);
}

double min_positive_bound(const Property& p) {
  std::vector<double> bounds;
  bounds_of(p.antecedent, bounds);
  bounds_of(p.consequent, bounds);
  if (p.delay) {
    bounds.push_back(p.delay->lo);
    bounds.push_back(p.delay->hi);
  }
  double best = 0.0;
  for (double b : bounds) {
    if (b > 0.0 && (best == 0.0 || b < best)) best = b;
  }
  return best;
}

}  // namespace amscheck
