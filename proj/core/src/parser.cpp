#include "amscheck/parser.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <set>

#include "amscheck/analysis.hpp"

namespace amscheck {

ParseError::ParseError(Kind kind, SourcePos pos, const std::string& message)
    : Error(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message),
      kind_(kind),
      pos_(pos) {}

namespace {

enum class Tok {
  End,
  Ident,
  Number,
  LBrace,
  RBrace,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Semi,
  Colon,
  Tilde,
  At,
  Plus,
  Minus,
  Star,
  Slash,
  HashHash,
  Implies,
  AndAnd,
  OrOr,
  Gt,
  Ge,
  Lt,
  Le,
  EqEq,
  NotEq,
  Assign,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  double number = 0.0;
  SourcePos pos;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + t.text + "'";
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto peek = [&](std::size_t k) -> char { return i + k < src.size() ? src[i + k] : '\0'; };

  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    // `#` comments, but `##` is the delay operator.
    if ((c == '#' && peek(1) != '#') || (c == '/' && peek(1) == '/')) {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.pos = {line, col};
    auto punct = [&](Tok k, std::size_t n) {
      t.kind = k;
      t.text = std::string(src.substr(i, n));
      advance(n);
      out.push_back(t);
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size()) {
        const char d = src[j];
        const bool dotted = d == '.' && j + 1 < src.size() &&
                            (std::isalnum(static_cast<unsigned char>(src[j + 1])) || src[j + 1] == '_');
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '$' || dotted) {
          ++j;
        } else {
          break;
        }
      }
      t.kind = Tok::Ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
      out.push_back(t);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      std::size_t j = i;
      while (j < src.size() && (std::isdigit(static_cast<unsigned char>(src[j])) || src[j] == '.')) ++j;
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
          j = k;
        }
      }
      t.kind = Tok::Number;
      t.text = std::string(src.substr(i, j - i));
      const auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.number);
      if (res.ec != std::errc() || res.ptr != t.text.data() + t.text.size()) {
        throw ParseError(ParseError::Kind::Syntax, t.pos, "malformed number '" + t.text + "'");
      }
      advance(j - i);
      out.push_back(t);
      continue;
    }
    switch (c) {
      case '{': punct(Tok::LBrace, 1); continue;
      case '}': punct(Tok::RBrace, 1); continue;
      case '(': punct(Tok::LParen, 1); continue;
      case ')': punct(Tok::RParen, 1); continue;
      case '[': punct(Tok::LBracket, 1); continue;
      case ']': punct(Tok::RBracket, 1); continue;
      case ',': punct(Tok::Comma, 1); continue;
      case ';': punct(Tok::Semi, 1); continue;
      case ':': punct(Tok::Colon, 1); continue;
      case '~': punct(Tok::Tilde, 1); continue;
      case '@': punct(Tok::At, 1); continue;
      case '+': punct(Tok::Plus, 1); continue;
      case '-': punct(Tok::Minus, 1); continue;
      case '*': punct(Tok::Star, 1); continue;
      case '/': punct(Tok::Slash, 1); continue;
      case '#': punct(Tok::HashHash, 2); continue;
      case '|':
        if (peek(1) == '-' && peek(2) == '>') {
          punct(Tok::Implies, 3);
          continue;
        }
        if (peek(1) == '|') {
          punct(Tok::OrOr, 2);
          continue;
        }
        break;
      case '&':
        if (peek(1) == '&') {
          punct(Tok::AndAnd, 2);
          continue;
        }
        break;
      case '>':
        punct(peek(1) == '=' ? Tok::Ge : Tok::Gt, peek(1) == '=' ? 2 : 1);
        continue;
      case '<':
        punct(peek(1) == '=' ? Tok::Le : Tok::Lt, peek(1) == '=' ? 2 : 1);
        continue;
      case '=':
        punct(peek(1) == '=' ? Tok::EqEq : Tok::Assign, peek(1) == '=' ? 2 : 1);
        continue;
      case '!':
        if (peek(1) == '=') {
          punct(Tok::NotEq, 2);
          continue;
        }
        break;
      default:
        break;
    }
    throw ParseError(ParseError::Kind::Syntax, t.pos,
                     std::string("unexpected character '") + c + "'");
  }
  Token end;
  end.kind = Tok::End;
  end.pos = {line, col};
  out.push_back(end);
  return out;
}

bool is_relop(Tok k) {
  return k == Tok::Gt || k == Tok::Ge || k == Tok::Lt || k == Tok::Le || k == Tok::EqEq ||
         k == Tok::NotEq;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const ParseOptions& opts) : toks_(std::move(toks)), opts_(opts) {}

  Property parse_body() {
    Property p;
    p.pos = cur().pos;
    p.antecedent = parse_seq();
    expect(Tok::Implies, "'|->'");
    if (at(Tok::HashHash)) {
      advance();
      const auto [a, b] = parse_window(/*repetition=*/false);
      p.delay = DelayWindow{a, b};
    }
    p.consequent = parse_seq();
    return p;
  }

  std::vector<Property> parse_file() {
    std::vector<Property> out;
    std::set<std::string> names;
    int unnamed = 0;
    while (!at(Tok::End)) {
      if (at(Tok::Semi)) {
        advance();
        continue;
      }
      if (at_ident("assert")) {
        while (!at(Tok::Semi) && !at(Tok::End)) advance();
        continue;
      }
      Property p;
      if (at_ident("property")) {
        advance();
        const Token name = expect(Tok::Ident, "property name");
        if (at(Tok::LBrace) && peek(1).kind == Tok::RBrace) {
          advance();
          advance();
        } else if (at(Tok::LParen) && peek(1).kind == Tok::RParen) {
          advance();
          advance();
        }
        if (at(Tok::Semi)) advance();
        p = parse_body();
        p.name = name.text;
        if (at(Tok::Semi)) advance();
        if (!at_ident("endproperty")) {
          throw ParseError(ParseError::Kind::Syntax, cur().pos,
                           "expected 'endproperty', found " + describe(cur()));
        }
        advance();
      } else {
        std::string label;
        if (at(Tok::Ident) && peek(1).kind == Tok::Colon) {
          label = cur().text;
          advance();
          advance();
        }
        p = parse_body();
        if (!at(Tok::End)) expect(Tok::Semi, "';'");
        p.name = label.empty() ? "assertion_" + std::to_string(++unnamed) : label;
      }
      if (!names.insert(p.name).second) {
        throw ParseError(ParseError::Kind::Syntax, p.pos, "duplicate assertion name '" + p.name + "'");
      }
      validate(p);
      out.push_back(std::move(p));
    }
    return out;
  }

  bool done() const { return at(Tok::End); }
  void skip_semicolon() {
    if (at(Tok::Semi)) advance();
  }
  const Token& cur() const { return toks_[pos_]; }

 private:
  const Token& peek(std::size_t k) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  bool at(Tok k) const { return cur().kind == k; }
  bool at_ident(std::string_view word) const { return at(Tok::Ident) && cur().text == word; }
  bool at_or() const { return at(Tok::OrOr) || at_ident("OR"); }
  void advance() {
    if (pos_ + 1 < toks_.size()) ++pos_;
  }
  Token expect(Tok k, const std::string& what) {
    if (!at(k)) {
      throw ParseError(ParseError::Kind::Syntax, cur().pos,
                       "expected " + what + ", found " + describe(cur()));
    }
    Token t = cur();
    advance();
    return t;
  }

  double parse_bound() {
    const SourcePos pos = cur().pos;
    bool negative = false;
    if (at(Tok::Minus)) {
      negative = true;
      advance();
    }
    const Token t = expect(Tok::Number, "time bound");
    const double v = negative ? -t.number : t.number;
    if (v < 0.0) throw ParseError(ParseError::Kind::Bound, pos, "negative time bound -" + t.text);
    return v;
  }

  // `[a:b]` after `##`, or `[*a]` / `[*a:b]`. Returns b = a for `[*a]`.
  std::pair<double, double> parse_window(bool repetition) {
    const SourcePos pos = cur().pos;
    expect(Tok::LBracket, "'['");
    if (repetition) expect(Tok::Star, "'*'");
    const double a = parse_bound();
    double b = a;
    if (at(Tok::Colon)) {
      advance();
      b = parse_bound();
    } else if (!repetition) {
      throw ParseError(ParseError::Kind::Syntax, cur().pos, "expected ':' in delay window");
    }
    expect(Tok::RBracket, "']'");
    if (b < a) {
      throw ParseError(ParseError::Kind::Bound, pos,
                       "upper bound " + format_number(b) + " below lower bound " + format_number(a));
    }
    return {a, b};
  }

  bool at_repeat_window() const {
    return at(Tok::LBracket) && peek(1).kind == Tok::Star;
  }
  bool at_ranged_repeat() const {
    if (!at_repeat_window()) return false;
    std::size_t k = 2;
    if (peek(k).kind == Tok::Minus) ++k;
    return peek(k + 1).kind == Tok::Colon;
  }

  SeqPtr parse_seq() {
    SeqPtr lhs = parse_seq_unit();
    for (;;) {
      const SourcePos pos = cur().pos;
      if (at(Tok::HashHash)) {
        advance();
        const auto [a, b] = parse_window(false);
        SeqPtr rhs = parse_seq_unit();
        lhs = make_delay(lhs, a, b, rhs, pos);
      } else if (at_ranged_repeat()) {
        const auto [a, b] = parse_window(true);
        SeqPtr rhs = parse_seq_unit();
        lhs = make_repeat_until(lhs, a, b, rhs, pos);
      } else {
        return lhs;
      }
    }
  }

  SeqPtr parse_seq_unit() {
    SeqPtr s = parse_seq_primary();
    while (at_repeat_window() && !at_ranged_repeat()) {
      const SourcePos pos = cur().pos;
      const auto [a, b] = parse_window(true);
      (void)b;
      if (a == 0.0) {
        throw ParseError(ParseError::Kind::RecurrenceZero, pos, "recurrence [*0] is not allowed");
      }
      s = make_repeat(s, a, pos);
    }
    return s;
  }

  SeqPtr parse_seq_primary() {
    const SourcePos pos = cur().pos;
    if (at(Tok::LBrace)) {
      advance();
      SeqPtr inner = parse_seq();
      expect(Tok::RBrace, "'}'");
      if (inner->kind == SeqNode::Kind::Bool && (at(Tok::AndAnd) || at_or())) {
        return make_bool(parse_or_rest(parse_and_rest(inner->bexpr)), pos);
      }
      return inner;
    }
    return make_bool(parse_bexpr(), pos);
  }

  BExprPtr parse_bexpr() { return parse_or_rest(parse_and_rest(parse_bfactor())); }

  BExprPtr parse_and_rest(BExprPtr first) {
    const SourcePos pos = first->pos;
    std::vector<BExprPtr> terms{std::move(first)};
    while (at(Tok::AndAnd)) {
      advance();
      terms.push_back(parse_bfactor());
    }
    return terms.size() == 1 ? terms[0] : make_and(std::move(terms), pos);
  }

  BExprPtr parse_or_rest(BExprPtr first) {
    const SourcePos pos = first->pos;
    std::vector<BExprPtr> terms{std::move(first)};
    while (at_or()) {
      advance();
      terms.push_back(parse_and_rest(parse_bfactor()));
    }
    return terms.size() == 1 ? terms[0] : make_or(std::move(terms), pos);
  }

  // `{seq}` used inside a Boolean context must not be temporal.
  BExprPtr parse_braced_bool(const char* context) {
    const SourcePos pos = cur().pos;
    expect(Tok::LBrace, "'{'");
    SeqPtr inner = parse_seq();
    expect(Tok::RBrace, "'}'");
    if (inner->kind != SeqNode::Kind::Bool) {
      throw ParseError(ParseError::Kind::Unsupported, pos,
                       std::string(context) + " applies to Boolean expressions only, not sequences");
    }
    return inner->bexpr;
  }

  BExprPtr parse_bfactor() {
    const SourcePos pos = cur().pos;
    BExprPtr node;
    if (at(Tok::Tilde)) {
      advance();
      node = make_not(parse_braced_bool("negation"), pos);
    } else if (at(Tok::At)) {
      node = parse_event();
    } else if (at(Tok::LBrace)) {
      node = parse_braced_bool("grouping inside a Boolean expression");
    } else if (at(Tok::LParen)) {
      const std::size_t save = pos_;
      try {
        node = parse_relation_or_signal();
      } catch (const ParseError&) {
        pos_ = save;
        advance();
        node = parse_bexpr();
        expect(Tok::RParen, "')'");
      }
    } else {
      node = parse_relation_or_signal();
    }
    return maybe_assignment(std::move(node));
  }

  // `, name = expr` local-variable assignment; kept only so validation can
  // reject it with a precise message.
  BExprPtr maybe_assignment(BExprPtr node) {
    if (!(at(Tok::Comma) && peek(1).kind == Tok::Ident && peek(2).kind == Tok::Assign)) return node;
    advance();
    const std::string var = cur().text;
    advance();
    advance();
    ExprPtr value = parse_arith();
    auto copy = std::make_shared<BoolNode>(*node);
    copy->assignment = var + "=" + to_string(value);
    return copy;
  }

  BExprPtr parse_event() {
    const SourcePos pos = cur().pos;
    expect(Tok::At, "'@'");
    Edge edge = Edge::Any;
    if (at(Tok::Plus)) {
      edge = Edge::Pos;
      advance();
    } else if (at(Tok::Minus)) {
      edge = Edge::Neg;
      advance();
    }
    Tok close = Tok::RBrace;
    if (at(Tok::LParen)) {
      close = Tok::RParen;
      advance();
    } else {
      expect(Tok::LBrace, "'{' after event edge");
    }
    const SourcePos inner_pos = cur().pos;
    ExprPtr lhs = parse_arith();
    Event ev;
    ev.edge = edge;
    if (at(Tok::Comma)) {
      // @+{V(x), threshold}: crossing of lhs through the threshold.
      advance();
      ExprPtr rhs = parse_arith();
      ev.target = Porv{lhs, RelOp::Gt, rhs};
    } else if (is_relop(cur().kind)) {
      const Token op = cur();
      advance();
      ExprPtr rhs = parse_arith();
      BExprPtr rel = make_relation(lhs, op, rhs);
      if (rel->kind != BoolNode::Kind::Leaf) {
        throw ParseError(ParseError::Kind::Unsupported, inner_pos,
                         "an event needs a single predicate; analog '" + op.text +
                             "' expands into a band of two predicates");
      }
      std::visit(
          [&](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, Porv> || std::is_same_v<T, BoolSignal>) {
              ev.target = a;
            }
          },
          rel->atom);
    } else if (lhs->kind == ExprNode::Kind::Signal && !lhs->voltage) {
      ev.target = BoolSignal{lhs->name, true, false};
    } else {
      throw ParseError(ParseError::Kind::Syntax, inner_pos,
                       "event target must be a predicate or a Boolean signal");
    }
    expect(close, close == Tok::RBrace ? "'}'" : "')'");
    return make_leaf(ev, pos);
  }

  BExprPtr parse_relation_or_signal() {
    const SourcePos pos = cur().pos;
    ExprPtr lhs = parse_arith();
    if (is_relop(cur().kind)) {
      const Token op = cur();
      advance();
      ExprPtr rhs = parse_arith();
      return make_relation(lhs, op, rhs);
    }
    if (lhs->kind == ExprNode::Kind::Signal && !lhs->voltage) {
      return make_leaf(BoolSignal{lhs->name, true, false}, pos);
    }
    throw ParseError(ParseError::Kind::Syntax, cur().pos,
                     "expected a relational operator, found " + describe(cur()));
  }

  BExprPtr make_relation(const ExprPtr& lhs, const Token& op, const ExprPtr& rhs) {
    const SourcePos pos = op.pos;
    switch (op.kind) {
      case Tok::Gt:
        return make_leaf(Porv{lhs, RelOp::Gt, rhs}, pos);
      case Tok::Ge:
        return make_leaf(Porv{lhs, RelOp::Ge, rhs}, pos);
      case Tok::Lt:
        return make_leaf(Porv{lhs, RelOp::Lt, rhs}, pos);
      case Tok::Le:
        return make_leaf(Porv{lhs, RelOp::Le, rhs}, pos);
      default:
        break;
    }
    const bool eq = op.kind == Tok::EqEq;
    const bool digital = lhs->kind == ExprNode::Kind::Signal && !lhs->voltage &&
                         rhs->kind == ExprNode::Kind::Number &&
                         (rhs->value == 0.0 || rhs->value == 1.0);
    if (digital) {
      const bool value = (rhs->value == 1.0) == eq;
      return make_leaf(BoolSignal{lhs->name, value, true}, pos);
    }
    const ExprPtr tol = make_number(opts_.value_tol);
    const ExprPtr below = make_binary('-', rhs, tol);
    const ExprPtr above = make_binary('+', rhs, tol);
    if (eq) {
      return make_and({make_leaf(Porv{lhs, RelOp::Ge, below}, pos),
                       make_leaf(Porv{lhs, RelOp::Le, above}, pos)},
                      pos);
    }
    return make_or({make_leaf(Porv{lhs, RelOp::Lt, below}, pos),
                    make_leaf(Porv{lhs, RelOp::Gt, above}, pos)},
                   pos);
  }

  ExprPtr parse_arith() {
    ExprPtr lhs = parse_term();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      const char op = cur().text[0];
      advance();
      lhs = make_binary(op, lhs, parse_term());
    }
    return lhs;
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_unary();
    while (at(Tok::Star) || at(Tok::Slash)) {
      const char op = cur().text[0];
      advance();
      lhs = make_binary(op, lhs, parse_unary());
    }
    return lhs;
  }

  ExprPtr parse_unary() {
    if (at(Tok::Minus)) {
      advance();
      // A minus directly in front of a literal is part of the literal.
      if (at(Tok::Number)) {
        const Token t = cur();
        advance();
        return make_number(-t.number, "-" + t.text);
      }
      return make_negate(parse_unary());
    }
    if (at(Tok::Plus)) {
      advance();
      return parse_unary();
    }
    return parse_operand();
  }

  ExprPtr parse_operand() {
    if (at(Tok::Number)) {
      const Token t = cur();
      advance();
      return make_number(t.number, t.text);
    }
    if (at(Tok::Ident)) {
      const Token t = cur();
      if (t.text == "OR") {
        throw ParseError(ParseError::Kind::Syntax, t.pos, "unexpected 'OR'");
      }
      advance();
      if (t.text == "V" && at(Tok::LParen)) {
        advance();
        const Token name = expect(Tok::Ident, "signal name");
        expect(Tok::RParen, "')'");
        return make_signal(name.text, true);
      }
      return make_signal(t.text, false);
    }
    if (at(Tok::LParen)) {
      advance();
      ExprPtr e = parse_arith();
      expect(Tok::RParen, "')'");
      return e;
    }
    throw ParseError(ParseError::Kind::Syntax, cur().pos,
                     "expected an expression, found " + describe(cur()));
  }

  std::vector<Token> toks_;
  ParseOptions opts_;
  std::size_t pos_ = 0;
};

}  // namespace

Property parse_property(std::string_view text, const ParseOptions& opts) {
  Parser p(lex(text), opts);
  Property prop = p.parse_body();
  p.skip_semicolon();
  if (!p.done()) {
    throw ParseError(ParseError::Kind::Syntax, p.cur().pos,
                     "unexpected " + describe(p.cur()) + " after property");
  }
  prop.name = "assertion_1";
  validate(prop);
  return prop;
}

std::vector<Property> parse_assertion_file(std::string_view text, const ParseOptions& opts) {
  Parser p(lex(text), opts);
  return p.parse_file();
}

}  // namespace amscheck
