#include "amscheck/ast.hpp"

#include <charconv>

namespace amscheck {

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  std::string out(buf, res.ptr);
  // to_chars pads the exponent to two digits ("1e-04"); drop the padding.
  const auto e = out.find('e');
  if (e != std::string::npos) {
    std::size_t digits = e + 1;
    if (digits < out.size() && (out[digits] == '-' || out[digits] == '+')) ++digits;
    while (digits + 1 < out.size() && out[digits] == '0') out.erase(digits, 1);
  }
  return out;
}

// ---------------------------------------------------------------------------

ExprPtr make_number(double value, std::string lexeme) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::Number;
  n->value = value;
  n->lexeme = lexeme.empty() ? format_number(value) : std::move(lexeme);
  return n;
}

ExprPtr make_signal(std::string name, bool voltage) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::Signal;
  n->name = std::move(name);
  n->voltage = voltage;
  return n;
}

ExprPtr make_negate(ExprPtr operand) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::Negate;
  n->lhs = std::move(operand);
  return n;
}

ExprPtr make_binary(char op, ExprPtr lhs, ExprPtr rhs) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprNode::Kind::Binary;
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

namespace {

int precedence(const ExprNode& e) {
  switch (e.kind) {
    case ExprNode::Kind::Binary:
      return (e.op == '+' || e.op == '-') ? 1 : 2;
    case ExprNode::Kind::Negate:
      return 3;
    case ExprNode::Kind::Number:
      return e.value < 0 ? 3 : 4;
    default:
      return 4;
  }
}

void print_expr(const ExprNode& e, const ExprPrintOptions& opts, std::string& out) {
  switch (e.kind) {
    case ExprNode::Kind::Number:
      out += e.lexeme;
      return;
    case ExprNode::Kind::Signal:
      if (e.voltage && !opts.strip_voltage) {
        out += "V(" + e.name + ")";
      } else {
        out += e.name;
      }
      return;
    case ExprNode::Kind::Negate: {
      out += '-';
      const bool paren = precedence(*e.lhs) < 3;
      if (paren) out += '(';
      print_expr(*e.lhs, opts, out);
      if (paren) out += ')';
      return;
    }
    case ExprNode::Kind::Binary: {
      const int p = precedence(e);
      const bool lparen = precedence(*e.lhs) < p;
      const bool rparen =
          precedence(*e.rhs) < p || (precedence(*e.rhs) == p && (e.op == '-' || e.op == '/'));
      if (lparen) out += '(';
      print_expr(*e.lhs, opts, out);
      if (lparen) out += ')';
      out += e.op;
      if (rparen) out += '(';
      print_expr(*e.rhs, opts, out);
      if (rparen) out += ')';
      return;
    }
  }
}

}  // namespace

std::string to_string(const ExprPtr& e, const ExprPrintOptions& opts) {
  std::string out;
  print_expr(*e, opts, out);
  return out;
}

void collect_signals(const ExprPtr& e, std::vector<std::string>& out) {
  if (!e) return;
  if (e->kind == ExprNode::Kind::Signal) {
    for (const auto& s : out) {
      if (s == e->name) return;
    }
    out.push_back(e->name);
    return;
  }
  collect_signals(e->lhs, out);
  collect_signals(e->rhs, out);
}

bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case ExprNode::Kind::Number:
      return a->value == b->value;
    case ExprNode::Kind::Signal:
      return a->name == b->name && a->voltage == b->voltage;
    case ExprNode::Kind::Negate:
      return structurally_equal(a->lhs, b->lhs);
    case ExprNode::Kind::Binary:
      return a->op == b->op && structurally_equal(a->lhs, b->lhs) &&
             structurally_equal(a->rhs, b->rhs);
  }
  return false;
}

// ---------------------------------------------------------------------------

std::string to_string(RelOp op) {
  switch (op) {
    case RelOp::Gt:
      return ">";
    case RelOp::Ge:
      return ">=";
    case RelOp::Lt:
      return "<";
    case RelOp::Le:
      return "<=";
  }
  return "?";
}

std::string to_string(const Porv& p) { return to_string(p.lhs) + to_string(p.op) + to_string(p.rhs); }

std::string to_string(const BoolSignal& b) {
  if (!b.explicit_compare && b.value) return b.name;
  return b.name + "==" + (b.value ? "1" : "0");
}

std::string to_string(const Event& e) {
  std::string out = "@";
  if (e.edge == Edge::Pos) out += '+';
  if (e.edge == Edge::Neg) out += '-';
  out += '{';
  std::visit([&](const auto& t) { out += to_string(t); }, e.target);
  return out + '}';
}

std::string to_string(const Atom& a) {
  return std::visit([](const auto& x) { return to_string(x); }, a);
}

bool is_event(const Atom& a) { return std::holds_alternative<Event>(a); }

namespace {

void signals_of(const Porv& p, std::vector<std::string>& out) {
  collect_signals(p.lhs, out);
  collect_signals(p.rhs, out);
}

void signals_of(const BoolSignal& b, std::vector<std::string>& out) {
  for (const auto& s : out) {
    if (s == b.name) return;
  }
  out.push_back(b.name);
}

bool atom_equal(const Porv& a, const Porv& b) {
  return a.op == b.op && structurally_equal(a.lhs, b.lhs) && structurally_equal(a.rhs, b.rhs);
}

bool atom_equal(const BoolSignal& a, const BoolSignal& b) {
  return a.name == b.name && a.value == b.value;
}

bool atom_equal(const Event& a, const Event& b) {
  if (a.edge != b.edge || a.target.index() != b.target.index()) return false;
  if (const auto* p = std::get_if<Porv>(&a.target)) return atom_equal(*p, std::get<Porv>(b.target));
  return atom_equal(std::get<BoolSignal>(a.target), std::get<BoolSignal>(b.target));
}

}  // namespace

std::vector<std::string> referenced_signals(const Atom& a) {
  std::vector<std::string> out;
  if (const auto* p = std::get_if<Porv>(&a)) {
    signals_of(*p, out);
  } else if (const auto* b = std::get_if<BoolSignal>(&a)) {
    signals_of(*b, out);
  } else {
    const auto& e = std::get<Event>(a);
    std::visit([&](const auto& t) { signals_of(t, out); }, e.target);
  }
  return out;
}

// ---------------------------------------------------------------------------

BExprPtr make_leaf(Atom atom, SourcePos pos) {
  auto n = std::make_shared<BoolNode>();
  n->kind = BoolNode::Kind::Leaf;
  n->atom = std::move(atom);
  n->pos = pos;
  return n;
}

BExprPtr make_and(std::vector<BExprPtr> children, SourcePos pos) {
  auto n = std::make_shared<BoolNode>();
  n->kind = BoolNode::Kind::And;
  n->children = std::move(children);
  n->pos = pos;
  return n;
}

BExprPtr make_or(std::vector<BExprPtr> children, SourcePos pos) {
  auto n = std::make_shared<BoolNode>();
  n->kind = BoolNode::Kind::Or;
  n->children = std::move(children);
  n->pos = pos;
  return n;
}

BExprPtr make_not(BExprPtr child, SourcePos pos) {
  auto n = std::make_shared<BoolNode>();
  n->kind = BoolNode::Kind::Not;
  n->children.push_back(std::move(child));
  n->pos = pos;
  return n;
}

std::string to_string(const BExprPtr& b) {
  std::string out;
  switch (b->kind) {
    case BoolNode::Kind::Leaf:
      out = to_string(b->atom);
      break;
    case BoolNode::Kind::Not:
      out = "~{" + to_string(b->children[0]) + "}";
      break;
    case BoolNode::Kind::And:
    case BoolNode::Kind::Or: {
      const bool is_and = b->kind == BoolNode::Kind::And;
      for (std::size_t i = 0; i < b->children.size(); ++i) {
        if (i) out += is_and ? " && " : " OR ";
        const auto& c = b->children[i];
        const bool paren = c->kind == BoolNode::Kind::Or || (is_and && c->kind == BoolNode::Kind::And);
        if (paren) out += '(';
        out += to_string(c);
        if (paren) out += ')';
      }
      break;
    }
  }
  if (b->assignment) out += ", " + *b->assignment;
  return out;
}

bool structurally_equal(const BExprPtr& a, const BExprPtr& b) {
  if (!a || !b) return !a && !b;
  if (a->kind != b->kind || a->children.size() != b->children.size()) return false;
  if (a->assignment != b->assignment) return false;
  if (a->kind == BoolNode::Kind::Leaf) {
    if (a->atom.index() != b->atom.index()) return false;
    return std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          return atom_equal(x, std::get<T>(b->atom));
        },
        a->atom);
  }
  for (std::size_t i = 0; i < a->children.size(); ++i) {
    if (!structurally_equal(a->children[i], b->children[i])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

SeqPtr make_bool(BExprPtr b, SourcePos pos) {
  auto n = std::make_shared<SeqNode>();
  n->kind = SeqNode::Kind::Bool;
  n->bexpr = std::move(b);
  n->pos = pos;
  return n;
}

SeqPtr make_repeat(SeqPtr body, double a, SourcePos pos) {
  auto n = std::make_shared<SeqNode>();
  n->kind = SeqNode::Kind::Repeat;
  n->lhs = std::move(body);
  n->lo = a;
  n->hi = a;
  n->pos = pos;
  return n;
}

SeqPtr make_repeat_until(SeqPtr body, double a, double b, SeqPtr tail, SourcePos pos) {
  auto n = std::make_shared<SeqNode>();
  n->kind = SeqNode::Kind::RepeatUntil;
  n->lhs = std::move(body);
  n->rhs = std::move(tail);
  n->lo = a;
  n->hi = b;
  n->pos = pos;
  return n;
}

SeqPtr make_delay(SeqPtr lhs, double a, double b, SeqPtr rhs, SourcePos pos) {
  auto n = std::make_shared<SeqNode>();
  n->kind = SeqNode::Kind::Delay;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  n->lo = a;
  n->hi = b;
  n->pos = pos;
  return n;
}

namespace {

// Braced primary: {bexpr} or {seq}.
std::string braced(const SeqPtr& s) {
  if (s->kind == SeqNode::Kind::Bool) return "{" + to_string(s->bexpr) + "}";
  return "{" + to_string(s) + "}";
}

// Right operand of a binary temporal operator.
std::string right_operand(const SeqPtr& s) {
  if (s->kind == SeqNode::Kind::Bool || s->kind == SeqNode::Kind::Repeat) return to_string(s);
  return "{" + to_string(s) + "}";
}

std::string window(double a, double b) { return format_number(a) + ":" + format_number(b); }

}  // namespace

std::string to_string(const SeqPtr& s) {
  switch (s->kind) {
    case SeqNode::Kind::Bool:
      return braced(s);
    case SeqNode::Kind::Repeat:
      return braced(s->lhs) + "[*" + format_number(s->lo) + "]";
    case SeqNode::Kind::RepeatUntil:
      return braced(s->lhs) + "[*" + window(s->lo, s->hi) + "] " + right_operand(s->rhs);
    case SeqNode::Kind::Delay:
      return to_string(s->lhs) + " ##[" + window(s->lo, s->hi) + "] " + right_operand(s->rhs);
  }
  return {};
}

bool structurally_equal(const SeqPtr& a, const SeqPtr& b) {
  if (!a || !b) return !a && !b;
  if (a->kind != b->kind || a->lo != b->lo || a->hi != b->hi) return false;
  return structurally_equal(a->bexpr, b->bexpr) && structurally_equal(a->lhs, b->lhs) &&
         structurally_equal(a->rhs, b->rhs);
}

std::string to_string(const Property& p) {
  std::string out = to_string(p.antecedent) + " |-> ";
  if (p.delay) out += "##[" + window(p.delay->lo, p.delay->hi) + "] ";
  return out + to_string(p.consequent);
}

bool structurally_equal(const Property& a, const Property& b) {
  if (a.delay.has_value() != b.delay.has_value()) return false;
  if (a.delay && (a.delay->lo != b.delay->lo || a.delay->hi != b.delay->hi)) return false;
  return structurally_equal(a.antecedent, b.antecedent) &&
         structurally_equal(a.consequent, b.consequent);
}

}  // namespace amscheck
