#include "semlex/logic.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace semlex {

Term Term::variable(std::string name) {
  Term t;
  t.kind = Kind::Variable;
  t.text = std::move(name);
  return t;
}

Term Term::constant(std::string sym) {
  Term t;
  t.kind = Kind::Constant;
  t.text = std::move(sym);
  return t;
}

Term Term::expression(ExprPtr e) {
  Term t;
  t.kind = Kind::Expr;
  t.expr = std::move(e);
  return t;
}

bool Term::operator==(const Term& other) const {
  if (kind != other.kind) return false;
  if (kind == Kind::Expr) return expr && other.expr && *expr == *other.expr;
  return text == other.text;
}

bool LogicalExpr::operator==(const LogicalExpr& other) const {
  if (kind != other.kind) return false;
  if (kind == Kind::Atom) return atom == other.atom;
  if (operands.size() != other.operands.size()) return false;
  for (std::size_t i = 0; i < operands.size(); ++i)
    if (!(*operands[i] == *other.operands[i])) return false;
  return true;
}

ExprPtr make_atom(Atom a) {
  auto e = std::make_shared<LogicalExpr>();
  e->kind = LogicalExpr::Kind::Atom;
  e->atom = std::move(a);
  return e;
}

static ExprPtr make_nary(LogicalExpr::Kind kind, std::vector<ExprPtr> ops) {
  auto e = std::make_shared<LogicalExpr>();
  e->kind = kind;
  e->operands = std::move(ops);
  return e;
}

ExprPtr make_and(std::vector<ExprPtr> ops) {
  if (ops.size() == 1) return ops.front();
  return make_nary(LogicalExpr::Kind::And, std::move(ops));
}

ExprPtr make_or(std::vector<ExprPtr> ops) {
  if (ops.size() == 1) return ops.front();
  return make_nary(LogicalExpr::Kind::Or, std::move(ops));
}

ExprPtr make_not(ExprPtr op) { return make_nary(LogicalExpr::Kind::Not, {std::move(op)}); }

ExprPtr make_become(ExprPtr state) {
  return make_nary(LogicalExpr::Kind::Become, {std::move(state)});
}

bool Axiom::structurally_equal(const Axiom& other) const {
  if (antecedent_type != other.antecedent_type) return false;
  if (antecedent_vars != other.antecedent_vars) return false;
  if (!consequent || !other.consequent) return consequent == other.consequent;
  return *consequent == *other.consequent;
}

// --- tokenizer / parser -----------------------------------------------------

namespace {

struct Tok {
  enum Kind { LBracket, RBracket, Symbol, End } kind;
  std::string text;
};

class Lexer {
public:
  explicit Lexer(const std::string& s) : s_(s) {}

  Tok next() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (pos_ >= s_.size()) return {Tok::End, ""};
    char c = s_[pos_];
    if (c == '[') { ++pos_; return {Tok::LBracket, "["}; }
    if (c == ']') { ++pos_; return {Tok::RBracket, "]"}; }
    std::size_t start = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) &&
           s_[pos_] != '[' && s_[pos_] != ']')
      ++pos_;
    return {Tok::Symbol, s_.substr(start, pos_ - start)};
  }

private:
  const std::string& s_;
  std::size_t pos_ = 0;
};

class ExprParser {
public:
  explicit ExprParser(const std::string& text) : lex_(text) { advance(); }

  ExprPtr parse() {
    ExprPtr e = expr();
    if (tok_.kind != Tok::End)
      throw DomainError("trailing input after expression");
    return e;
  }

private:
  void advance() { tok_ = lex_.next(); }

  ExprPtr expr() {
    if (tok_.kind != Tok::LBracket)
      throw DomainError("expected '[' in logical expression");
    advance();
    if (tok_.kind != Tok::Symbol)
      throw DomainError("expected operator or type after '['");
    std::string head = tok_.text;
    advance();
    if (head == "AND" || head == "OR") {
      std::vector<ExprPtr> ops;
      while (tok_.kind == Tok::LBracket) ops.push_back(expr());
      expect_rbracket();
      if (ops.size() < 2)
        throw DomainError(head + " needs at least two operands");
      return make_nary(head == "AND" ? LogicalExpr::Kind::And
                                     : LogicalExpr::Kind::Or,
                       std::move(ops));
    }
    if (head == "NOT") {
      ExprPtr op = expr();
      expect_rbracket();
      return make_not(std::move(op));
    }
    if (head == "ONT::BECOME") {
      // Accepts both [ONT::BECOME <state>] and the display form
      // [ONT::BECOME ?x <state>]; only the state expression is kept.
      if (tok_.kind == Tok::Symbol && tok_.text.front() == '?') advance();
      ExprPtr state = expr();
      expect_rbracket();
      return make_become(std::move(state));
    }
    Atom a;
    a.type = parse_type_id(head);
    while (tok_.kind != Tok::RBracket) {
      if (tok_.kind != Tok::Symbol || tok_.text.front() != ':')
        throw DomainError("expected :role tag in atom for " + head);
      std::string tag = tok_.text.substr(1);
      advance();
      Term t = term();
      if (tag == "ev" || tag == "id") {
        if (a.event_var)
          throw DomainError("duplicate instance variable in atom for " + head);
        a.event_var = t;
        a.event_tag = tag == "ev";
      } else {
        std::string role = tag;
        std::transform(role.begin(), role.end(), role.begin(), [](char c) {
          return static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        });
        a.args.push_back({SemRole{role}, t});
      }
    }
    advance();  // ']'
    return make_atom(std::move(a));
  }

  Term term() {
    if (tok_.kind == Tok::LBracket) return Term::expression(expr());
    if (tok_.kind != Tok::Symbol) throw DomainError("expected term");
    std::string s = tok_.text;
    advance();
    if (s.front() == '?') return Term::variable(s.substr(1));
    return Term::constant(s);
  }

  void expect_rbracket() {
    if (tok_.kind != Tok::RBracket) throw DomainError("expected ']'");
    advance();
  }

  Lexer lex_;
  Tok tok_{Tok::End, ""};
};

std::string lower(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(), [](char c) {
    return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  });
  return out;
}

void print_rec(const ExprPtr& e, std::ostringstream& os, bool abbrev) {
  switch (e->kind) {
    case LogicalExpr::Kind::And:
    case LogicalExpr::Kind::Or: {
      os << '[' << (e->kind == LogicalExpr::Kind::And ? "AND" : "OR");
      for (const auto& op : e->operands) {
        os << ' ';
        print_rec(op, os, abbrev);
      }
      os << ']';
      return;
    }
    case LogicalExpr::Kind::Not: {
      os << "[NOT ";
      print_rec(e->operands.front(), os, abbrev);
      os << ']';
      return;
    }
    case LogicalExpr::Kind::Become: {
      const auto& state = e->operands.front();
      os << "[ONT::BECOME";
      // Display form repeats the state's first argument after the head.
      if (state->kind == LogicalExpr::Kind::Atom && !state->atom.args.empty()) {
        os << ' ';
        os << print_term(state->atom.args.front().term);
      }
      os << ' ';
      print_rec(state, os, abbrev);
      os << ']';
      return;
    }
    case LogicalExpr::Kind::Atom: {
      const Atom& a = e->atom;
      os << '[' << a.type.value;
      if (a.event_var) {
        if (abbrev)
          os << ' ' << print_term(*a.event_var);
        else
          os << (a.event_tag ? " :ev " : " :id ") << print_term(*a.event_var);
      }
      for (const auto& arg : a.args) {
        os << ' ';
        if (!abbrev) os << ':' << lower(arg.role.name) << ' ';
        if (arg.term.kind == Term::Kind::Expr)
          print_rec(arg.term.expr, os, abbrev);
        else
          os << print_term(arg.term);
      }
      os << ']';
      return;
    }
  }
}

}  // namespace

ExprPtr parse_expr(const std::string& text) { return ExprParser(text).parse(); }

std::string print_term(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Variable: return "?" + t.text;
    case Term::Kind::Constant: return t.text;
    case Term::Kind::Expr: return print_expr(t.expr);
  }
  return {};
}

std::string print_expr(const ExprPtr& e) {
  std::ostringstream os;
  print_rec(e, os, false);
  return os.str();
}

std::string print_expr_abbrev(const ExprPtr& e) {
  std::ostringstream os;
  print_rec(e, os, true);
  return os.str();
}

std::string print_axiom_antecedent(const Axiom& ax) {
  std::ostringstream os;
  os << '[' << ax.antecedent_type.value;
  for (const auto& [role, var] : ax.antecedent_vars)
    os << " :" << lower(role.name) << " ?" << var;
  os << ']';
  return os.str();
}

std::string print_time(const TimeStamp& t) {
  const char* tag = t.tag == TimeTag::At      ? "AT"
                    : t.tag == TimeTag::After ? "AFTER"
                                              : "BEFORE";
  return std::string(tag) + "(" + t.instant + ")";
}

std::string print_fact(const GroundFact& f) {
  std::ostringstream os;
  if (f.negated) os << "[NOT ";
  os << '[' << f.type.value;
  for (const auto& [role, c] : f.args) os << " :" << lower(role.name) << ' ' << c;
  os << ']';
  if (f.negated) os << ']';
  os << " @ " << print_time(f.time);
  return os.str();
}

static void collect_rec(const ExprPtr& e, std::set<std::string>& vars) {
  if (e->kind == LogicalExpr::Kind::Atom) {
    if (e->atom.event_var && e->atom.event_var->kind == Term::Kind::Variable)
      vars.insert(e->atom.event_var->text);
    for (const auto& arg : e->atom.args) {
      if (arg.term.kind == Term::Kind::Variable)
        vars.insert(arg.term.text);
      else if (arg.term.kind == Term::Kind::Expr)
        collect_rec(arg.term.expr, vars);
    }
    return;
  }
  for (const auto& op : e->operands) collect_rec(op, vars);
}

std::vector<std::string> collect_variables(const ExprPtr& e) {
  std::set<std::string> vars;
  collect_rec(e, vars);
  return {vars.begin(), vars.end()};
}

}  // namespace semlex
