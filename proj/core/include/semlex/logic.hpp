#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "semlex/types.hpp"

namespace semlex {

// Logical expressions use the bracketed term notation with role tags:
//   [ONT::CAUSE-EFFECT :agent ?agent :formal [ONT::DIE :affected ?affected]]
// Operators AND / OR / NOT / ONT::BECOME are reserved heads, not concepts.

struct LogicalExpr;
using ExprPtr = std::shared_ptr<const LogicalExpr>;

// An argument term: a variable (?agent, ?x1), a constant, or a nested
// expression.
struct Term {
  enum class Kind { Variable, Constant, Expr };
  Kind kind = Kind::Constant;
  std::string text;  // variable name without '?', or constant symbol
  ExprPtr expr;      // when kind == Expr

  static Term variable(std::string name);
  static Term constant(std::string sym);
  static Term expression(ExprPtr e);

  bool operator==(const Term& other) const;
};

struct RoleArg {
  SemRole role;
  Term term;

  bool operator==(const RoleArg&) const = default;
};

struct Atom {
  TypeId type;
  std::optional<Term> event_var;  // instance variable, printed as :ev / :id
  bool event_tag = true;          // display hint only: :ev for events, :id for terms
  std::vector<RoleArg> args;

  bool operator==(const Atom& other) const {
    return type == other.type && event_var == other.event_var && args == other.args;
  }
};

struct LogicalExpr {
  enum class Kind { Atom, And, Or, Not, Become };
  Kind kind = Kind::Atom;
  Atom atom;                     // Kind::Atom
  std::vector<ExprPtr> operands; // And/Or (>=2), Not/Become (1)

  bool operator==(const LogicalExpr& other) const;
};

ExprPtr make_atom(Atom a);
ExprPtr make_and(std::vector<ExprPtr> ops);
ExprPtr make_or(std::vector<ExprPtr> ops);
ExprPtr make_not(ExprPtr op);
ExprPtr make_become(ExprPtr state);

struct AxiomId {
  std::string value;
  auto operator<=>(const AxiomId&) const = default;
};

// Entailment axiom: antecedent event pattern over universal role variables,
// consequent logical expression.
struct Axiom {
  AxiomId id;
  TypeId antecedent_type;
  // Ordered role -> variable-name map (names without '?').
  std::vector<std::pair<SemRole, std::string>> antecedent_vars;
  ExprPtr consequent;

  bool structurally_equal(const Axiom& other) const;
};

// --- term notation ---------------------------------------------------------

// Parses a bracketed term expression; throws DomainError on syntax errors.
ExprPtr parse_expr(const std::string& text);

// Canonical single-line print, role-tagged.
std::string print_expr(const ExprPtr& e);
std::string print_term(const Term& t);

// Abbreviated display with role names suppressed:
//   [ONT::CAUSE-EFFECT ?agent [ONT::DIE ?affected]]
std::string print_expr_abbrev(const ExprPtr& e);

std::string print_axiom_antecedent(const Axiom& ax);

// --- ground facts -----------------------------------------------------------

enum class TimeTag { At, After, Before };

struct TimeStamp {
  TimeTag tag = TimeTag::At;
  std::string instant;  // abstract instant token

  auto operator<=>(const TimeStamp&) const = default;
};

std::string print_time(const TimeStamp& t);

// Ground event/state assertion. Arguments are role-tagged constants.
struct GroundFact {
  TypeId type;
  std::vector<std::pair<SemRole, std::string>> args;
  TimeStamp time;
  bool negated = false;

  auto operator<=>(const GroundFact&) const = default;
};

std::string print_fact(const GroundFact& f);

// Collects every variable occurring in an expression.
std::vector<std::string> collect_variables(const ExprPtr& e);

}  // namespace semlex
