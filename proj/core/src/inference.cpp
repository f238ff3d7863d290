#include "semlex/inference.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace semlex {

const Derivation* Closure::derivation_of(const GroundFact& f) const {
  for (const auto& d : trace)
    if (d.fact == f) return &d;
  return nullptr;
}

namespace {

using Binding = std::map<std::string, Term>;

ExprPtr substitute(const ExprPtr& e, const Binding& binding) {
  auto out = std::make_shared<LogicalExpr>(*e);
  if (e->kind == LogicalExpr::Kind::Atom) {
    if (out->atom.event_var && out->atom.event_var->kind == Term::Kind::Variable) {
      auto it = binding.find(out->atom.event_var->text);
      if (it != binding.end()) out->atom.event_var = it->second;
    }
    for (auto& arg : out->atom.args) {
      if (arg.term.kind == Term::Kind::Variable) {
        auto it = binding.find(arg.term.text);
        if (it != binding.end()) arg.term = it->second;
      } else if (arg.term.kind == Term::Kind::Expr) {
        arg.term = Term::expression(substitute(arg.term.expr, binding));
      }
    }
    return out;
  }
  out->operands.clear();
  for (const auto& op : e->operands) out->operands.push_back(substitute(op, binding));
  return out;
}

void skolemize(const ExprPtr& e, const std::string& ns, Binding& binding) {
  for (const auto& v : collect_variables(e)) {
    if (!binding.count(v)) binding[v] = Term::constant("sk:" + ns + ":" + v);
  }
}

}  // namespace

std::optional<ExprPtr> instantiate(const Resource& r, const Axiom& axiom,
                                   const GroundFact& fact, int step) {
  if (fact.negated) return std::nullopt;
  if (!r.subsumes(axiom.antecedent_type, fact.type)) return std::nullopt;

  Binding binding;
  for (const auto& [role, var] : axiom.antecedent_vars) {
    const std::string* value = nullptr;
    for (const auto& [frole, fval] : fact.args)
      if (frole == role) value = &fval;
    if (!value)
      throw DomainError("fact " + print_fact(fact) + " lacks role " + role.name +
                        " required by axiom " + axiom.id.value);
    binding[var] = Term::constant(*value);
  }
  std::string ns = axiom.id.value + ":" + std::to_string(step);
  skolemize(axiom.consequent, ns, binding);
  return substitute(axiom.consequent, binding);
}

namespace {

struct Engine {
  const Resource& r;
  Closure out;
  int max_depth;

  bool add_fact(const GroundFact& f, Derivation d) {
    if (out.facts.count(f)) return false;
    out.facts.insert(f);
    d.fact = f;
    out.trace.push_back(std::move(d));
    return true;
  }

  std::optional<GroundFact> atom_to_fact(const Atom& a, const TimeStamp& time,
                                         bool negated) {
    if (!r.has_type(a.type)) return std::nullopt;
    GroundFact f;
    f.type = a.type;
    f.time = time;
    f.negated = negated;
    for (const auto& arg : a.args) {
      if (arg.term.kind == Term::Kind::Expr) continue;  // embedded event
      f.args.push_back({arg.role, arg.term.kind == Term::Kind::Constant
                                      ? arg.term.text
                                      : "?" + arg.term.text});
    }
    return f;
  }

  // Decomposes an instantiated consequent into facts, disjunctions, and
  // temporal transitions. Embedded event atoms in argument position co-occur
  // with the outer event.
  void assimilate(const ExprPtr& e, const TimeStamp& time,
                  const std::vector<GroundFact>& premises,
                  const std::string& axiom_id, int depth, bool negated) {
    switch (e->kind) {
      case LogicalExpr::Kind::And: {
        if (negated) return;  // negated conjunctions are not decomposed
        for (const auto& op : e->operands)
          assimilate(op, time, premises, axiom_id, depth, false);
        return;
      }
      case LogicalExpr::Kind::Or: {
        if (negated) return;
        Disjunction d;
        d.branches = e->operands;
        d.time = time;
        d.axiom = axiom_id;
        out.disjunctions.push_back(std::move(d));
        return;
      }
      case LogicalExpr::Kind::Not: {
        assimilate(e->operands.front(), time, premises, axiom_id, depth, !negated);
        return;
      }
      case LogicalExpr::Kind::Become: {
        if (negated) return;
        const auto& state = e->operands.front();
        if (time.tag == TimeTag::At) {
          // The state does not hold at t and holds immediately after t.
          assimilate(state, {TimeTag::At, time.instant}, premises,
                     axiom_id.empty() ? "become" : axiom_id, depth, true);
          assimilate(state, {TimeTag::After, time.instant}, premises,
                     axiom_id.empty() ? "become" : axiom_id, depth, false);
        } else if (time.tag == TimeTag::After) {
          assimilate(state, time, premises, axiom_id, depth, false);
        }
        return;
      }
      case LogicalExpr::Kind::Atom: {
        auto f = atom_to_fact(e->atom, time, negated);
        if (!f) return;
        Derivation d;
        d.axiom = axiom_id;
        d.rule = negated ? "become" : (axiom_id.empty() ? "embedded" : "axiom");
        d.premises = premises;
        d.depth = depth;
        bool fresh = add_fact(*f, d);
        if (!negated) {
          // Embedded event arguments co-occur with the outer event.
          for (const auto& arg : e->atom.args) {
            if (arg.term.kind != Term::Kind::Expr) continue;
            std::vector<GroundFact> ps = premises;
            if (fresh) ps = {*f};
            assimilate(arg.term.expr, time, ps, "", depth, false);
          }
        }
        return;
      }
    }
  }
};

}  // namespace

Closure closure(const Resource& r, const std::vector<GroundFact>& facts,
                int max_depth) {
  if (max_depth < 1) throw DomainError("closure requires maxDepth >= 1");
  Engine engine{r, {}, max_depth};
  for (const auto& f : facts) {
    Derivation d;
    d.rule = "input";
    engine.add_fact(f, d);
  }

  // Collect axioms once; inherited firing walks the subsumption chain inside
  // instantiate().
  std::vector<const Axiom*> axioms;
  for (const auto& [id, ax] : r.axioms) axioms.push_back(&ax);

  // Each (axiom, fact) pair fires once; re-firing would only mint fresh
  // skolems for the same derivation and defeat fixpoint detection.
  std::set<std::pair<std::string, std::string>> fired;
  int step = 0;
  for (int depth = 1; depth <= max_depth; ++depth) {
    std::vector<GroundFact> frontier(engine.out.facts.begin(),
                                     engine.out.facts.end());
    std::size_t before = engine.out.facts.size();
    for (const auto& f : frontier) {
      for (const auto* ax : axioms) {
        if (!fired.insert({ax->id.value, print_fact(f)}).second) continue;
        auto inst = instantiate(r, *ax, f, step);
        if (!inst) continue;
        ++step;
        engine.assimilate(*inst, f.time, {f}, ax->id.value, depth, false);
      }
    }
    bool changed = engine.out.facts.size() != before;
    if (!changed) break;
    if (depth == max_depth && changed) engine.out.depth_exhausted = true;
  }
  return engine.out;
}

namespace {

bool satisfies(const Resource& r, const GroundFact& fact, const GroundFact& query) {
  if (fact.negated != query.negated) return false;
  if (fact.time != query.time) return false;
  if (!r.subsumes(query.type, fact.type)) return false;
  for (const auto& [role, value] : query.args) {
    bool found = false;
    for (const auto& [frole, fvalue] : fact.args)
      if (frole == role && fvalue == value) found = true;
    if (!found) return false;
  }
  return true;
}

}  // namespace

EntailResult entails(const Resource& r, const std::vector<GroundFact>& facts,
                     const GroundFact& query, int max_depth) {
  EntailResult out;
  Closure c = closure(r, facts, max_depth);
  const GroundFact* hit = nullptr;
  for (const auto& f : c.facts)
    if (satisfies(r, f, query)) {
      hit = &f;
      break;
    }
  if (!hit) return out;
  out.yes = true;

  // A query satisfied by an input fact needs no derivation.
  if (const Derivation* d = c.derivation_of(*hit); d && d->rule == "input")
    return out;

  // Reconstruct the derivation path back to the inputs.
  std::vector<Derivation> path;
  std::deque<GroundFact> pending{*hit};
  std::set<std::string> seen;
  while (!pending.empty()) {
    GroundFact f = pending.front();
    pending.pop_front();
    if (!seen.insert(print_fact(f)).second) continue;
    const Derivation* d = c.derivation_of(f);
    if (!d) continue;
    path.push_back(*d);
    for (const auto& p : d->premises) pending.push_back(p);
  }
  std::reverse(path.begin(), path.end());
  out.trace = std::move(path);
  return out;
}

GroundFact parse_fact(const Resource& r, const std::string& text) {
  auto at = text.find('@');
  if (at == std::string::npos)
    throw DomainError("fact needs a time tag: " + text);
  std::string body = text.substr(0, at);
  std::string time_part = text.substr(at + 1);

  auto trim = [](std::string s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    if (b == std::string::npos) return std::string{};
    return s.substr(b, e - b + 1);
  };
  time_part = trim(time_part);

  GroundFact f;
  auto paren = time_part.find('(');
  if (paren == std::string::npos || time_part.back() != ')')
    throw DomainError("malformed time tag: " + time_part);
  std::string tag = time_part.substr(0, paren);
  f.time.instant = time_part.substr(paren + 1, time_part.size() - paren - 2);
  if (tag == "AT")
    f.time.tag = TimeTag::At;
  else if (tag == "AFTER")
    f.time.tag = TimeTag::After;
  else if (tag == "BEFORE")
    f.time.tag = TimeTag::Before;
  else
    throw DomainError("unknown time tag: " + tag);

  // Body: [TYPE c1 c2 ...] or [NOT [TYPE ...]], positional constants.
  std::istringstream is(trim(body));
  std::vector<std::string> toks;
  std::string tok;
  while (is >> tok) {
    std::string cur;
    for (char ch : tok) {
      if (ch == '[' || ch == ']') {
        if (!cur.empty()) toks.push_back(cur);
        cur.clear();
        toks.push_back(std::string(1, ch));
      } else {
        cur += ch;
      }
    }
    if (!cur.empty()) toks.push_back(cur);
  }
  std::size_t i = 0;
  auto expect = [&](const std::string& what) {
    if (i >= toks.size() || toks[i] != what)
      throw DomainError("malformed fact: " + text);
    ++i;
  };
  expect("[");
  if (i < toks.size() && toks[i] == "NOT") {
    f.negated = true;
    ++i;
    expect("[");
  }
  if (i >= toks.size()) throw DomainError("malformed fact: " + text);
  f.type = parse_type_id(toks[i++]);
  std::vector<std::string> constants;
  while (i < toks.size() && toks[i] != "]") constants.push_back(toks[i++]);
  expect("]");
  if (f.negated) expect("]");

  auto roles = r.effective_roles(f.type);
  if (constants.size() > roles.size())
    throw DomainError("fact " + text + " has more arguments than " +
                      f.type.value + " has roles");
  for (std::size_t k = 0; k < constants.size(); ++k)
    f.args.push_back({roles[k].role, constants[k]});
  return f;
}

std::vector<std::pair<GroundFact, GroundFact>> contradictions(const Closure& c) {
  std::vector<std::pair<GroundFact, GroundFact>> out;
  for (const auto& f : c.facts) {
    if (f.negated) continue;
    GroundFact neg = f;
    neg.negated = true;
    if (c.facts.count(neg)) out.push_back({f, neg});
  }
  return out;
}

}  // namespace semlex
