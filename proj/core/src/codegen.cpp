#include "amscheck/codegen.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>

#include "amscheck/errors.hpp"

namespace amscheck {

std::string format_accuracy(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific);
  std::string s(buf, res.ptr);
  const auto e = s.find('e');
  if (e == std::string::npos) return s;
  std::string mant = s.substr(0, e);
  std::string exp = s.substr(e + 1);
  std::string sign;
  if (!exp.empty() && (exp[0] == '-' || exp[0] == '+')) {
    if (exp[0] == '-') sign = "-";
    exp.erase(0, 1);
  }
  while (exp.size() > 1 && exp[0] == '0') exp.erase(0, 1);
  return mant + "e" + sign + exp;
}

namespace {

struct Group {
  int index = 0;
  BExprPtr expr;                 // event leaves removed
  std::vector<Porv> porvs;       // flag bits in order
  std::vector<std::string> keys;  // canonical spellings of porvs
};

struct EventUnit {
  int index = 0;
  Event event;
};

struct Unit {
  bool is_event = false;
  std::size_t slot = 0;  // into events or groups
};

class Generator {
 public:
  Generator(const Property& p, const CodegenConfig& cfg) : p_(p), cfg_(cfg) {
    if (!(cfg.time_accuracy > 0.0) || !std::isfinite(cfg.time_accuracy) ||
        !(cfg.value_accuracy > 0.0) || !std::isfinite(cfg.value_accuracy)) {
      throw CodegenError("cross-event accuracies must be positive and finite");
    }
    tacc_ = format_accuracy(cfg.time_accuracy);
    vacc_ = format_accuracy(cfg.value_accuracy);
    visit_seq(p.antecedent);
    visit_seq(p.consequent);
  }

  std::string text() const {
    std::ostringstream os;
    const bool module = !cfg_.module_name.empty();
    if (module) emit_module_header(os);
    for (const auto& g : groups_) {
      os << "assign flag_" << g.index << " = " << flag_expr(g, g.expr) << ";\n";
    }
    for (const auto& u : units_) {
      if (u.is_event) {
        emit_event(os, events_[u.slot]);
      } else {
        emit_crosses(os, groups_[u.slot]);
      }
    }
    for (const auto& g : groups_) {
      os << "always@(posedge flag_" << g.index << ")\n    $updateTruthInterval(" << cfg_.assertion_id
         << "," << g.index << ",+1,$abstime);\n";
      os << "always@(negedge flag_" << g.index << ")\n    $updateTruthInterval(" << cfg_.assertion_id
         << "," << g.index << ",-1,$abstime);\n";
    }
    if (module) os << "endmodule\n";
    return os.str();
  }

 private:
  void visit_seq(const SeqPtr& s) {
    if (!s) return;
    if (s->kind == SeqNode::Kind::Bool) {
      visit_bexpr(s->bexpr);
      return;
    }
    visit_seq(s->lhs);
    visit_seq(s->rhs);
  }

  static bool has_event(const BExprPtr& b) {
    if (b->kind == BoolNode::Kind::Leaf) return is_event(b->atom);
    for (const auto& c : b->children) {
      if (has_event(c)) return true;
    }
    return false;
  }

  // Copy of b without event leaves; nullopt when nothing remains.
  static std::optional<BExprPtr> prune(const BExprPtr& b) {
    if (b->kind == BoolNode::Kind::Leaf) {
      if (is_event(b->atom)) return std::nullopt;
      return b;
    }
    if (b->kind == BoolNode::Kind::Not) {
      if (has_event(b->children[0])) {
        throw CodegenError("no monitor template for a negated event: " + to_string(b));
      }
      return b;
    }
    std::vector<BExprPtr> kept;
    for (const auto& c : b->children) {
      if (auto k = prune(c)) kept.push_back(*k);
    }
    if (kept.empty()) return std::nullopt;
    if (kept.size() == 1) return kept.front();
    return b->kind == BoolNode::Kind::And ? make_and(std::move(kept), b->pos)
                                          : make_or(std::move(kept), b->pos);
  }

  void visit_bexpr(const BExprPtr& b) {
    const std::optional<BExprPtr> rest = prune(b);
    bool group_done = !rest.has_value();
    walk_leaves(b, [&](const Atom& a) {
      if (const auto* e = std::get_if<Event>(&a)) {
        add_event(*e);
      } else if (!group_done) {
        add_group(*rest);
        group_done = true;
      }
    });
  }

  template <class F>
  static void walk_leaves(const BExprPtr& b, F&& f) {
    if (b->kind == BoolNode::Kind::Leaf) {
      f(b->atom);
      return;
    }
    for (const auto& c : b->children) walk_leaves(c, f);
  }

  void add_event(const Event& e) {
    const std::string key = to_string(e);
    if (std::find(unit_keys_.begin(), unit_keys_.end(), key) != unit_keys_.end()) return;
    unit_keys_.push_back(key);
    events_.push_back({next_index_++, e});
    units_.push_back({true, events_.size() - 1});
  }

  void add_group(const BExprPtr& expr) {
    const std::string key = "group:" + to_string(expr);
    if (std::find(unit_keys_.begin(), unit_keys_.end(), key) != unit_keys_.end()) return;
    unit_keys_.push_back(key);
    Group g;
    g.index = next_index_++;
    g.expr = expr;
    walk_leaves(expr, [&](const Atom& a) {
      if (const auto* porv = std::get_if<Porv>(&a)) {
        const std::string k = to_string(*porv);
        if (std::find(g.keys.begin(), g.keys.end(), k) == g.keys.end()) {
          g.keys.push_back(k);
          g.porvs.push_back(*porv);
        }
      }
    });
    groups_.push_back(std::move(g));
    units_.push_back({false, groups_.size() - 1});
  }

  static std::string cross_expr(const Porv& p) {
    return to_string(make_binary('-', p.lhs, p.rhs), ExprPrintOptions{true});
  }

  std::string flag_expr(const Group& g, const BExprPtr& b) const {
    switch (b->kind) {
      case BoolNode::Kind::Leaf: {
        if (const auto* porv = std::get_if<Porv>(&b->atom)) {
          const auto it = std::find(g.keys.begin(), g.keys.end(), to_string(*porv));
          return "flag_" + std::to_string(g.index) + "_" + std::to_string(it - g.keys.begin());
        }
        const auto& sig = std::get<BoolSignal>(b->atom);
        return sig.value ? sig.name : "!" + sig.name;
      }
      case BoolNode::Kind::Not: {
        const auto& c = b->children[0];
        const std::string inner = flag_expr(g, c);
        return c->kind == BoolNode::Kind::Leaf ? "!" + inner : "!(" + inner + ")";
      }
      case BoolNode::Kind::And:
      case BoolNode::Kind::Or: {
        const bool is_and = b->kind == BoolNode::Kind::And;
        std::string out;
        for (std::size_t i = 0; i < b->children.size(); ++i) {
          if (i) out += is_and ? " && " : " || ";
          const auto& c = b->children[i];
          const bool paren = c->kind == BoolNode::Kind::And || c->kind == BoolNode::Kind::Or;
          out += paren ? "(" + flag_expr(g, c) + ")" : flag_expr(g, c);
        }
        return out;
      }
    }
    return {};
  }

  std::string cross(const std::string& expr, const char* dir) const {
    return "cross(" + expr + "," + dir + "," + tacc_ + "," + vacc_ + ")";
  }

  void emit_event(std::ostream& os, const EventUnit& u) const {
    std::string trigger;
    if (const auto* sig = std::get_if<BoolSignal>(&u.event.target)) {
      if (u.event.edge == Edge::Any) {
        trigger = sig->name;
      } else {
        const bool rising = (u.event.edge == Edge::Pos) == sig->value;
        trigger = std::string(rising ? "posedge " : "negedge ") + sig->name;
      }
    } else {
      const auto& porv = std::get<Porv>(u.event.target);
      const char* dir = "0";
      if (u.event.edge != Edge::Any) {
        const bool up = (u.event.edge == Edge::Pos) == porv.rising_sense();
        dir = up ? "+1" : "-1";
      }
      trigger = cross(cross_expr(porv), dir);
    }
    os << "always @(" << trigger << ")\n    $checkerCall(" << cfg_.assertion_id << "," << u.index
       << ",$abstime);\n";
  }

  void emit_crosses(std::ostream& os, const Group& g) const {
    for (std::size_t j = 0; j < g.porvs.size(); ++j) {
      const Porv& porv = g.porvs[j];
      const std::string flag = "flag_" + std::to_string(g.index) + "_" + std::to_string(j);
      const std::string expr = cross_expr(porv);
      const bool up = porv.rising_sense();
      os << "always @(" << cross(expr, "+1") << ")\n    " << flag << " = " << (up ? "1'b1" : "1'b0")
         << ";\n";
      os << "always @(" << cross(expr, "-1") << ")\n    " << flag << " = " << (up ? "1'b0" : "1'b1")
         << ";\n";
    }
  }

  void emit_module_header(std::ostream& os) const {
    std::vector<std::string> analog;
    std::vector<std::string> digital;
    auto add = [](std::vector<std::string>& v, const std::string& n) {
      if (std::find(v.begin(), v.end(), n) == v.end()) v.push_back(n);
    };
    auto porv_signals = [&](const Porv& p) {
      std::vector<std::string> names;
      collect_signals(p.lhs, names);
      collect_signals(p.rhs, names);
      for (const auto& n : names) add(analog, n);
    };
    for (const auto& e : events_) {
      if (const auto* sig = std::get_if<BoolSignal>(&e.event.target)) {
        add(digital, sig->name);
      } else {
        porv_signals(std::get<Porv>(e.event.target));
      }
    }
    for (const auto& g : groups_) {
      for (const auto& porv : g.porvs) porv_signals(porv);
      walk_leaves(g.expr, [&](const Atom& a) {
        if (const auto* sig = std::get_if<BoolSignal>(&a)) add(digital, sig->name);
      });
    }
    std::vector<std::string> ports = digital;
    for (const auto& n : analog) add(ports, n);

    os << "// monitors for " << (p_.name.empty() ? "assertion" : p_.name) << "\n";
    os << "`include \"disciplines.vams\"\n";
    os << "module " << cfg_.module_name << "(";
    for (std::size_t i = 0; i < ports.size(); ++i) os << (i ? ", " : "") << ports[i];
    os << ");\n";
    for (const auto& n : ports) os << "input " << n << ";\n";
    for (const auto& n : analog) {
      if (std::find(digital.begin(), digital.end(), n) == digital.end()) {
        os << "electrical " << n << ";\n";
      }
    }
    for (const auto& g : groups_) {
      if (!g.porvs.empty()) {
        os << "reg ";
        for (std::size_t j = 0; j < g.porvs.size(); ++j) {
          os << (j ? ", " : "") << "flag_" << g.index << "_" << j;
        }
        os << ";\n";
      }
      os << "wire flag_" << g.index << ";\n";
    }
  }

  const Property& p_;
  const CodegenConfig& cfg_;
  std::string tacc_;
  std::string vacc_;
  int next_index_ = 0;
  std::vector<std::string> unit_keys_;
  std::vector<EventUnit> events_;
  std::vector<Group> groups_;
  std::vector<Unit> units_;
};

}  // namespace

std::string generate_monitors(const Property& p, const CodegenConfig& cfg) {
  return Generator(p, cfg).text();
}

}  // namespace amscheck
