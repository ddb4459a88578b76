#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace amscheck {

struct SourcePos {
  int line = 0;
  int column = 0;
};

// ---------------------------------------------------------------------------
// Arithmetic expressions over signals

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum class Kind { Number, Signal, Negate, Binary };

  Kind kind = Kind::Number;
  double value = 0.0;
  std::string lexeme;  // Number: source spelling, reused by the printers
  std::string name;    // Signal
  bool voltage = false;  // Signal written as V(name)
  char op = 0;           // Binary: one of + - * /
  ExprPtr lhs;
  ExprPtr rhs;
};

ExprPtr make_number(double value, std::string lexeme = {});
ExprPtr make_signal(std::string name, bool voltage);
ExprPtr make_negate(ExprPtr operand);
ExprPtr make_binary(char op, ExprPtr lhs, ExprPtr rhs);

struct ExprPrintOptions {
  // Print V(x) as plain x (Verilog-AMS monitor text uses bare net names).
  bool strip_voltage = false;
};
std::string to_string(const ExprPtr& e, const ExprPrintOptions& opts = {});
void collect_signals(const ExprPtr& e, std::vector<std::string>& out);
bool structurally_equal(const ExprPtr& a, const ExprPtr& b);

// ---------------------------------------------------------------------------
// Atoms: predicates over real variables, Boolean signals, events

enum class RelOp { Gt, Ge, Lt, Le };

/// lhs ~ rhs. The predicate is true where the oriented difference
/// (lhs - rhs for Gt/Ge, rhs - lhs for Lt/Le) is positive (strict) or
/// non-negative.
struct Porv {
  ExprPtr lhs;
  RelOp op = RelOp::Gt;
  ExprPtr rhs;

  bool strict() const { return op == RelOp::Gt || op == RelOp::Lt; }
  // True when truth onset corresponds to lhs - rhs rising.
  bool rising_sense() const { return op == RelOp::Gt || op == RelOp::Ge; }
};

/// A digital signal compared against 0 or 1. A bare identifier means `name==1`.
struct BoolSignal {
  std::string name;
  bool value = true;
  bool explicit_compare = false;
};

enum class Edge { Pos, Neg, Any };

struct Event {
  Edge edge = Edge::Pos;
  std::variant<Porv, BoolSignal> target;
};

using Atom = std::variant<Porv, BoolSignal, Event>;

std::string to_string(RelOp op);
std::string to_string(const Porv& p);
std::string to_string(const BoolSignal& b);
std::string to_string(const Event& e);
/// Canonical spelling; also the atom's identity in an AtomTable.
std::string to_string(const Atom& a);
bool is_event(const Atom& a);
std::vector<std::string> referenced_signals(const Atom& a);

// ---------------------------------------------------------------------------
// Boolean expressions

struct BoolNode;
using BExprPtr = std::shared_ptr<const BoolNode>;

struct BoolNode {
  enum class Kind { Leaf, And, Or, Not };

  Kind kind = Kind::Leaf;
  Atom atom;                      // Leaf
  std::vector<BExprPtr> children;  // And/Or: two or more; Not: one
  std::optional<std::string> assignment;  // `, x = expr` suffix; never evaluated
  SourcePos pos;
};

BExprPtr make_leaf(Atom atom, SourcePos pos = {});
BExprPtr make_and(std::vector<BExprPtr> children, SourcePos pos = {});
BExprPtr make_or(std::vector<BExprPtr> children, SourcePos pos = {});
BExprPtr make_not(BExprPtr child, SourcePos pos = {});

std::string to_string(const BExprPtr& b);
bool structurally_equal(const BExprPtr& a, const BExprPtr& b);

// ---------------------------------------------------------------------------
// Sequence expressions and properties

struct SeqNode;
using SeqPtr = std::shared_ptr<const SeqNode>;

struct SeqNode {
  enum class Kind {
    Bool,         // BExpr (including ~{BExpr})
    Repeat,       // {lhs}[*lo]
    RepeatUntil,  // {lhs}[*lo:hi] rhs
    Delay,        // lhs ##[lo:hi] rhs
  };

  Kind kind = Kind::Bool;
  BExprPtr bexpr;
  SeqPtr lhs;
  SeqPtr rhs;
  double lo = 0.0;
  double hi = 0.0;
  SourcePos pos;
};

SeqPtr make_bool(BExprPtr b, SourcePos pos = {});
SeqPtr make_repeat(SeqPtr body, double a, SourcePos pos = {});
SeqPtr make_repeat_until(SeqPtr body, double a, double b, SeqPtr tail, SourcePos pos = {});
SeqPtr make_delay(SeqPtr lhs, double a, double b, SeqPtr rhs, SourcePos pos = {});

std::string to_string(const SeqPtr& s);
bool structurally_equal(const SeqPtr& a, const SeqPtr& b);

struct DelayWindow {
  double lo = 0.0;
  double hi = 0.0;
};

/// `antecedent |-> consequent` or `antecedent |-> ##[lo:hi] consequent`.
struct Property {
  std::string name;
  SeqPtr antecedent;
  std::optional<DelayWindow> delay;
  SeqPtr consequent;
  SourcePos pos;
};

std::string to_string(const Property& p);
bool structurally_equal(const Property& a, const Property& b);

std::string format_number(double v);

}  // namespace amscheck
