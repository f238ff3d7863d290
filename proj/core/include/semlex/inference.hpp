#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "semlex/logic.hpp"
#include "semlex/resource.hpp"

namespace semlex {

struct Derivation {
  GroundFact fact;
  std::string axiom;          // empty for inputs and built-in steps
  std::string rule;           // "input", "axiom", "and", "become", "embedded"
  std::vector<GroundFact> premises;
  int depth = 0;
};

struct Disjunction {
  std::vector<ExprPtr> branches;
  TimeStamp time;
  std::string axiom;
};

struct Closure {
  std::set<GroundFact> facts;
  std::vector<Disjunction> disjunctions;
  std::vector<Derivation> trace;
  bool depth_exhausted = false;

  const Derivation* derivation_of(const GroundFact& f) const;
};

// Instantiates one axiom against a fact whose type equals or is subsumed by
// the antecedent type. Antecedent variables bind by role name; other
// variables are skolemized per derivation step. Returns nothing when the
// axiom does not apply.
std::optional<ExprPtr> instantiate(const Resource& r, const Axiom& axiom,
                                   const GroundFact& fact, int step);

// Forward chaining to fixpoint or maxDepth. AND splits into facts; OR is
// recorded as an unresolved disjunction; BECOME at AT(t) yields the negated
// state at t and the state after t. Event-typed atoms appearing in argument
// position are asserted as co-occurring facts.
Closure closure(const Resource& r, const std::vector<GroundFact>& facts,
                int max_depth);

struct EntailResult {
  bool yes = false;
  std::vector<Derivation> trace;  // derivation path, inputs first
};

// Open-world query: yes when the query (up to type subsumption and matching
// time tag) is in the closure; otherwise unknown, never "no".
EntailResult entails(const Resource& r, const std::vector<GroundFact>& facts,
                     const GroundFact& query, int max_depth);

// Parses "[ONT::KILL a b] @ AT(t1)" or "[NOT [ONT::DEAD b]] @ AT(t1)";
// positional arguments map onto the type's effective roles.
GroundFact parse_fact(const Resource& r, const std::string& text);

// Detects {F, NOT F} pairs at the same instant.
std::vector<std::pair<GroundFact, GroundFact>> contradictions(const Closure& c);

}  // namespace semlex
