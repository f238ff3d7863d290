#include "semlex/learner.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

namespace semlex {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](char c) {
    return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  });
  return s;
}

std::string evidence_of(const LFNode& n) {
  if (n.indicator == Indicator::Impro) return "IMPRO";
  // Precedence when several marks apply.
  for (SurfaceMark m : {SurfaceMark::Parenthetical, SurfaceMark::IndefPronoun,
                        SurfaceMark::IndefNoun, SurfaceMark::CertainMarked})
    if (n.marks.count(m)) return mark_name(m);
  return "IMPRO";
}

// Role-edge path from the root as (edge, parent) pairs, OPERAND edges skipped.
std::vector<const LFEdge*> edge_path(const LFGraph& g, const std::string& id) {
  std::map<std::string, const LFEdge*> incoming;
  for (const auto& e : g.edges) incoming.emplace(e.to, &e);
  std::vector<const LFEdge*> path;
  std::string cur = id;
  while (cur != g.root) {
    auto it = incoming.find(cur);
    if (it == incoming.end()) return {};
    if (it->second->label != "OPERAND") path.push_back(it->second);
    cur = it->second->from;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

// Main predicate node: descend through operator nodes to the first event.
const LFNode* main_predicate(const LFGraph& g) {
  const LFNode* cur = &g.node(g.root);
  while (cur->indicator == Indicator::Operator) {
    const LFNode* next = nullptr;
    for (const auto* e : g.edges_from(cur->id)) {
      if (e->label == "OPERAND") {
        next = &g.node(e->to);
        break;
      }
    }
    if (!next) return cur;
    cur = next;
  }
  return cur;
}

}  // namespace

std::vector<std::string> candidate_templates_for(const Resource& r, const TypeId& t) {
  std::set<std::string> names;
  for (const auto& [entry, sense] : r.senses_under(t))
    for (const auto& tn : sense->templates) names.insert(tn);
  return {names.begin(), names.end()};
}

std::optional<InducedConstraints> induce_constraints(const Resource& r,
                                                     const HybridOntology& hybrid,
                                                     const std::string& synset_id) {
  auto resolved = hybrid.resolve_mapping(synset_id);
  if (!resolved) return std::nullopt;
  InducedConstraints out;
  out.induced_type = resolved->type;
  out.mapping_hops = resolved->hops;
  out.candidate_roles = r.effective_roles(resolved->type);
  out.candidate_templates = candidate_templates_for(r, resolved->type);
  return out;
}

RoleAssignment identify_roles(const Resource& r, const LearnerConfig& cfg,
                              const LFGraph& graph) {
  RoleAssignment out;

  std::vector<SkeletonRule> rules = cfg.skeleton_rules;
  std::sort(rules.begin(), rules.end(),
            [](const SkeletonRule& a, const SkeletonRule& b) {
              return a.priority > b.priority;
            });

  // Operand nodes of a fully marked coordination bind through the operator.
  std::set<std::string> skip;
  std::set<std::string> bindable_ops;
  for (const auto& n : graph.nodes) {
    if (n.indicator != Indicator::Operator) continue;
    std::vector<const LFNode*> operands;
    bool all_marked = true;
    for (const auto* e : graph.edges_from(n.id)) {
      if (e->label != "OPERAND") continue;
      const auto& child = graph.node(e->to);
      operands.push_back(&child);
      if (child.marks.empty() && child.indicator != Indicator::Impro)
        all_marked = false;
    }
    if (!operands.empty() && all_marked) {
      bindable_ops.insert(n.id);
      for (const auto* o : operands) skip.insert(o->id);
    }
  }

  std::set<std::string> bound_roles;
  for (const auto& n : graph.nodes) {
    bool bindable = n.indicator == Indicator::Impro || !n.marks.empty() ||
                    bindable_ops.count(n.id);
    if (!bindable || skip.count(n.id)) continue;

    auto path = edge_path(graph, n.id);
    if (path.empty()) {
      out.flags.push_back(std::string(reason::kNoRuleForGap) + ":" + n.id);
      continue;
    }
    std::vector<std::string> labels;
    for (const auto* e : path) labels.push_back(e->label);

    const SkeletonRule* fired = nullptr;
    for (const auto& rule : rules) {
      if (rule.path.size() != labels.size()) continue;
      bool match = true;
      for (std::size_t i = 0; i < labels.size(); ++i) {
        if (rule.path[i] == "CORE-ROLE") {
          if (!r.vocabulary.is_core_role(labels[i])) match = false;
        } else if (rule.path[i] != labels[i]) {
          match = false;
        }
        if (!match) break;
      }
      if (match) {
        fired = &rule;
        break;
      }
    }
    if (!fired) {
      out.flags.push_back(std::string(reason::kNoRuleForGap) + ":" + n.id);
      continue;
    }

    std::string role_name = fired->emit == "LIFT"
                                ? labels[static_cast<std::size_t>(fired->lift_index)]
                                : fired->emit;
    std::string ev;
    if (bindable_ops.count(n.id)) {
      // Evidence comes from the first marked operand.
      for (const auto* e : graph.edges_from(n.id))
        if (e->label == "OPERAND") {
          ev = evidence_of(graph.node(e->to));
          break;
        }
    } else {
      ev = evidence_of(n);
    }
    if (!bound_roles.insert(role_name).second) {
      out.flags.push_back(std::string(reason::kDuplicateRole) + ":" + role_name);
      continue;
    }
    out.bindings.push_back({SemRole{role_name}, n.id, fired->id, ev});
  }
  return out;
}

std::vector<RoleSpec> derive_preferences(const Resource& r, const LearnerConfig& cfg,
                                         const LFGraph& graph,
                                         const RoleAssignment& assignment) {
  std::vector<RoleSpec> out;
  for (const auto& b : assignment.bindings) {
    RoleSpec spec;
    spec.role = b.target_role;
    const LFNode& node = graph.node(b.lf_node);

    if (b.evidence == mark_name(SurfaceMark::Parenthetical) ||
        b.evidence == mark_name(SurfaceMark::IndefNoun)) {
      spec.preference.value = node.type;
    } else {
      const SkeletonRule* rule = nullptr;
      for (const auto& sr : cfg.skeleton_rules)
        if (sr.id == b.rule_id) rule = &sr;
      auto path = edge_path(graph, b.lf_node);
      int idx = rule && rule->pref_index >= 0 ? rule->pref_index
                                              : static_cast<int>(path.size()) - 1;
      FeatureSet empty;
      spec.preference.value = empty;
      if (idx >= 0 && static_cast<std::size_t>(idx) < path.size()) {
        const LFEdge* e = path[static_cast<std::size_t>(idx)];
        const LFNode& parent = graph.node(e->from);
        if (parent.indicator != Indicator::Operator) {
          if (auto found = r.find_role(parent.type, SemRole{e->label}))
            spec.preference = found->preference;
        }
      }
    }
    out.push_back(std::move(spec));
  }
  std::sort(out.begin(), out.end(), [&](const RoleSpec& a, const RoleSpec& b) {
    auto ra = r.vocabulary.role_rank(a.role.name);
    auto rb = r.vocabulary.role_rank(b.role.name);
    if (ra != rb) return ra < rb;
    return a.role.name < b.role.name;
  });
  return out;
}

TemplateDerivation derive_templates(const Resource& r,
                                    const std::vector<SemRole>& roles,
                                    const InducedConstraints& constraints) {
  std::set<std::string> have;
  for (const auto& role : roles) have.insert(role.name);

  auto fits = [&](const std::string& name) {
    auto it = r.templates.find(name);
    if (it == r.templates.end()) return false;
    for (const auto& required : it->second.role_names())
      if (!have.count(required)) return false;
    return true;
  };

  TemplateDerivation out;
  std::set<std::string> kept;
  for (const auto& name : constraints.candidate_templates)
    if (fits(name)) kept.insert(name);
  if (!kept.empty()) {
    out.templates.assign(kept.begin(), kept.end());
    return out;
  }

  // Backoff: most frequent templates whose role set equals the identified set.
  out.backoff = true;
  int best = -1;
  std::vector<std::pair<std::string, int>> exact;
  for (const auto& [name, templ] : r.templates) {
    std::set<std::string> tset = templ.role_names();
    if (tset != have) continue;
    int usage = r.template_usage(name);
    exact.push_back({name, usage});
    best = std::max(best, usage);
  }
  for (const auto& [name, usage] : exact)
    if (usage == best) out.templates.push_back(name);
  std::sort(out.templates.begin(), out.templates.end());
  return out;
}

ClassifyResult classify(const Resource& r, const LearnerConfig& cfg,
                        const LFGraph& graph, const InducedConstraints& constraints) {
  ClassifyResult out;
  const LFNode* pred = main_predicate(graph);
  out.main_predicate = pred->type;

  const TypeId& induced = constraints.induced_type;
  if (r.subsumes(induced, out.main_predicate)) {
    out.placement = out.main_predicate;  // refinement
  } else if (r.subsumes(out.main_predicate, induced)) {
    out.placement = induced;
  } else {
    out.placement = induced;
    out.comparable = false;
  }

  // Hand-mapped phrase rules: main predicate under the rule head with all
  // modifiers present moves the placement to the rule target.
  for (const auto& rule : cfg.phrase_rules) {
    if (!r.has_type(rule.head) || !r.subsumes(rule.head, out.main_predicate))
      continue;
    bool all = true;
    for (const auto& want : rule.modifiers) {
      bool found = false;
      for (const auto* e : graph.edges_from(pred->id)) {
        if (e->label != "MOD") continue;
        const auto& mod = graph.node(e->to);
        if (r.has_type(mod.type) && r.subsumes(want, mod.type)) found = true;
      }
      if (!found) all = false;
    }
    if (all) {
      out.placement = rule.target;
      out.phrase_rule = rule.target.value;
      break;
    }
  }
  return out;
}

namespace {

class AxiomBuilder {
public:
  AxiomBuilder(const Resource& r, const LFGraph& g,
               const std::map<std::string, std::string>& universals)
      : r_(r), g_(g), universals_(universals) {}

  ExprPtr build() {
    std::vector<ExprPtr> conjuncts;
    ExprPtr head = node_expr(g_.root, conjuncts);
    if (conjuncts.empty()) return head;
    std::vector<ExprPtr> all{head};
    for (auto& c : conjuncts) all.push_back(std::move(c));
    return make_and(std::move(all));
  }

private:
  std::string fresh_x() { return "x" + std::to_string(x_counter_++); }
  std::string fresh_ev() {
    std::string name = ev_counter_ == 0 ? "ev" : "ev" + std::to_string(ev_counter_);
    ++ev_counter_;
    return name;
  }

  std::vector<const LFEdge*> sorted_edges(const std::string& id) const {
    auto edges = g_.edges_from(id);
    std::sort(edges.begin(), edges.end(), [&](const LFEdge* a, const LFEdge* b) {
      auto ra = r_.vocabulary.role_rank(a->label);
      auto rb = r_.vocabulary.role_rank(b->label);
      if (ra != rb) return ra < rb;
      if (a->label != b->label) return a->label < b->label;
      return a->to < b->to;
    });
    return edges;
  }

  ExprPtr node_expr(const std::string& id, std::vector<ExprPtr>& conjuncts) {
    const LFNode& n = g_.node(id);
    if (n.indicator == Indicator::Operator) {
      std::vector<ExprPtr> ops;
      for (const auto* e : sorted_edges(id))
        if (e->label == "OPERAND") ops.push_back(node_expr(e->to, conjuncts));
      return n.op == "AND" ? make_and(std::move(ops)) : make_or(std::move(ops));
    }
    Atom a;
    a.type = n.type;
    std::vector<const LFEdge*> mods;
    for (const auto* e : sorted_edges(id)) {
      if (e->label == "MOD") {
        mods.push_back(e);
        continue;
      }
      if (e->label == "OPERAND") continue;
      a.args.push_back({SemRole{e->label}, arg_term(e->to, conjuncts)});
    }
    if (!mods.empty()) {
      std::string ev = fresh_ev();
      a.event_var = Term::variable(ev);
      for (const auto* e : mods) mod_conjunct(e->to, Term::variable(ev), conjuncts);
    }
    return make_atom(std::move(a));
  }

  void mod_conjunct(const std::string& id, const Term& bearer,
                    std::vector<ExprPtr>& conjuncts) {
    const LFNode& n = g_.node(id);
    Atom a;
    a.type = n.type;
    a.args.push_back({SemRole{"FIGURE"}, bearer});
    for (const auto* e : sorted_edges(id)) {
      if (e->label == "MOD" || e->label == "OPERAND") continue;
      if (e->label == "FIGURE") continue;  // bearer slot already filled
      a.args.push_back({SemRole{e->label}, arg_term(e->to, conjuncts)});
    }
    conjuncts.push_back(make_atom(std::move(a)));
  }

  Term arg_term(const std::string& id, std::vector<ExprPtr>& conjuncts) {
    auto uni = universals_.find(id);
    if (uni != universals_.end()) return Term::variable(uni->second);

    const LFNode& n = g_.node(id);
    switch (n.indicator) {
      case Indicator::F:
        return Term::expression(node_expr(id, conjuncts));
      case Indicator::Operator: {
        // Unbound coordination in argument position: one existential plus a
        // disjunction/conjunction describing it.
        std::string x = fresh_x();
        std::vector<ExprPtr> ops;
        for (const auto* e : sorted_edges(id)) {
          if (e->label != "OPERAND") continue;
          const LFNode& op = g_.node(e->to);
          Atom a;
          a.type = op.type;
          a.event_var = Term::variable(x);
          a.event_tag = false;
          ops.push_back(make_atom(std::move(a)));
        }
        if (!ops.empty())
          conjuncts.push_back(n.op == "AND" ? make_and(std::move(ops))
                                            : make_or(std::move(ops)));
        return Term::variable(x);
      }
      case Indicator::Impro:
        return Term::variable(fresh_x());
      case Indicator::Term: {
        std::string x = fresh_x();
        if (n.type != r_.vocabulary.referential_type) {
          Atom a;
          a.type = n.type;
          a.event_var = Term::variable(x);
          a.event_tag = false;
          std::vector<const LFEdge*> mods;
          for (const auto* e : sorted_edges(id)) {
            if (e->label == "MOD") {
              mods.push_back(e);
              continue;
            }
            if (e->label == "OPERAND") continue;
            a.args.push_back({SemRole{e->label}, arg_term(e->to, conjuncts)});
          }
          conjuncts.push_back(make_atom(std::move(a)));
          for (const auto* e : mods)
            mod_conjunct(e->to, Term::variable(x), conjuncts);
        }
        return Term::variable(x);
      }
    }
    return Term::constant("?");
  }

  const Resource& r_;
  const LFGraph& g_;
  const std::map<std::string, std::string>& universals_;
  int x_counter_ = 1;
  int ev_counter_ = 0;
};

}  // namespace

Axiom generate_axiom(const Resource& r, const LFGraph& graph,
                     const RoleAssignment& assignment, const TypeId& new_type) {
  Axiom ax;
  ax.antecedent_type = new_type;

  std::vector<RoleBinding> ordered = assignment.bindings;
  std::sort(ordered.begin(), ordered.end(),
            [&](const RoleBinding& a, const RoleBinding& b) {
              auto ra = r.vocabulary.role_rank(a.target_role.name);
              auto rb = r.vocabulary.role_rank(b.target_role.name);
              if (ra != rb) return ra < rb;
              return a.target_role.name < b.target_role.name;
            });
  std::map<std::string, std::string> universals;
  for (const auto& b : ordered) {
    std::string var = lower(b.target_role.name);
    ax.antecedent_vars.push_back({b.target_role, var});
    universals[b.lf_node] = var;
  }

  AxiomBuilder builder(r, graph, universals);
  ax.consequent = builder.build();
  return ax;
}

std::string check_consistency(const Resource& r, const Candidate& candidate) {
  for (const auto& flag : candidate.assignment.flags)
    return flag.substr(0, flag.find(':'));

  const auto& c = candidate.constraints;
  const auto& cls = candidate.classification;

  // Aspect first: a stative definition over an event-class mapping is the
  // telltale bad-definition signal, reported even when the types are also
  // incomparable.
  if (r.is_stative(cls.main_predicate) && !r.is_stative(c.induced_type))
    return reason::kStativeEventConflict;

  if (!cls.comparable) return reason::kIncomparablePlacement;

  std::set<std::string> allowed;
  for (const auto& spec : c.candidate_roles)
    allowed.insert(r.vocabulary.normalize_role(spec.role.name));
  for (const auto& b : candidate.assignment.bindings)
    if (!allowed.count(r.vocabulary.normalize_role(b.target_role.name)))
      return reason::kRolesOutsideConstraints;

  for (const auto& derived : candidate.roles) {
    const RoleSpec* inherited = nullptr;
    for (const auto& spec : c.candidate_roles) {
      if (spec.role.name == derived.role.name ||
          r.vocabulary.normalize_role(spec.role.name) ==
              r.vocabulary.normalize_role(derived.role.name)) {
        inherited = &spec;
        break;
      }
    }
    if (!inherited) continue;
    const auto* ifs = inherited->preference.features();
    const auto* ity = inherited->preference.type();
    const auto* dfs = derived.preference.features();
    const auto* dty = derived.preference.type();
    bool ok = true;
    if (ifs && dfs) {
      ok = feature_compatible(*ifs, *dfs, r.vocabulary.features);
    } else if (ifs && dty) {
      ok = feature_compatible(*ifs, r.type_features(*dty), r.vocabulary.features);
    } else if (ity && dfs) {
      ok = feature_compatible(r.type_features(*ity), *dfs, r.vocabulary.features);
    } else if (ity && dty) {
      ok = r.subsumes(*ity, *dty) || r.subsumes(*dty, *ity);
    }
    if (!ok) return reason::kPreferenceConflict;
  }

  if (candidate.templates.empty()) return reason::kNoTemplates;
  return {};
}

TypeId name_new_type(const Synset& synset, const std::set<std::string>& taken) {
  const SenseKey& first = synset.senses.front();
  std::string lemma;
  for (char ch : first.lemma) {
    if (std::isalnum(static_cast<unsigned char>(ch)))
      lemma += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    else
      lemma += '-';
  }
  std::string base = "ONT::" + lemma + "-WN" + sense_key_digits(first);
  if (!taken.count(base)) return TypeId{base};
  int ordinal = 2;
  while (taken.count(base + "-" + std::to_string(ordinal))) ++ordinal;
  return TypeId{base + "-" + std::to_string(ordinal)};
}

namespace {

std::string filler_descriptor(const LFGraph& g, const LFNode& n) {
  if (n.indicator == Indicator::Impro) return "IMPRO";
  if (n.indicator == Indicator::Operator) {
    std::vector<std::string> parts;
    for (const auto* e : g.edges_from(n.id))
      if (e->label == "OPERAND")
        parts.push_back(filler_descriptor(g, g.node(e->to)));
    std::sort(parts.begin(), parts.end());
    std::string out = n.op + "(";
    for (std::size_t i = 0; i < parts.size(); ++i)
      out += (i ? "," : "") + parts[i];
    return out + ")";
  }
  return n.type.value;
}

std::string group_key_of(const Resource& r, const Candidate& c) {
  const LFNode* pred = main_predicate(c.graph);
  std::vector<std::string> fillers;
  for (const auto* e : c.graph.edges_from(pred->id)) {
    if (e->label == "MOD" || e->label == "OPERAND") continue;
    fillers.push_back(e->label + "=" + filler_descriptor(c.graph, c.graph.node(e->to)));
  }
  std::sort(fillers.begin(), fillers.end());
  std::ostringstream os;
  os << c.classification.placement.value << "|" << c.classification.main_predicate.value;
  for (const auto& f : fillers) os << "|" << f;
  os << "||";
  for (const auto& spec : c.roles) {
    os << spec.role.name << "=";
    if (const auto* ty = spec.preference.type())
      os << ty->value;
    else if (const auto* fs = spec.preference.features())
      for (const auto& [a, v] : fs->pairs()) os << a << ":" << v << ";";
    os << "|";
  }
  (void)r;
  return os.str();
}

Candidate evaluate_candidate(const Resource& snapshot, const LearnerConfig& cfg,
                             const Synset& synset, LFGraph graph,
                             const InducedConstraints& constraints, int def_index,
                             int branch_index) {
  Candidate c;
  c.synset_id = synset.id;
  c.definition_index = def_index;
  c.branch_index = branch_index;
  c.graph = std::move(graph);
  c.constraints = constraints;

  c.assignment = identify_roles(snapshot, cfg, c.graph);
  c.roles = derive_preferences(snapshot, cfg, c.graph, c.assignment);
  c.classification = classify(snapshot, cfg, c.graph, constraints);

  std::vector<SemRole> role_names;
  for (const auto& spec : c.roles) role_names.push_back(spec.role);
  auto tderiv = derive_templates(snapshot, role_names, constraints);
  c.templates = tderiv.templates;
  c.templates_backoff = tderiv.backoff;

  c.new_type = name_new_type(synset, {});
  c.axiom = generate_axiom(snapshot, c.graph, c.assignment, c.new_type);
  c.group_key = group_key_of(snapshot, c);

  std::string verdict = check_consistency(snapshot, c);
  c.status = verdict.empty() ? reason::kAccepted : verdict;
  return c;
}

}  // namespace

std::vector<Candidate> process_synset(const Resource& snapshot, const Corpus& corpus,
                                      const LearnerConfig& cfg, const Synset& synset) {
  std::vector<Candidate> out;
  HybridOntology hybrid(snapshot, corpus);
  auto constraints = induce_constraints(snapshot, hybrid, synset.id);
  if (!constraints) {
    Candidate c;
    c.synset_id = synset.id;
    c.status = reason::kNoMapping;
    out.push_back(std::move(c));
    return out;
  }

  ParseContext ctx;
  for (const auto& spec : constraints->candidate_roles)
    ctx.candidate_role_names.push_back(spec.role.name);

  DefinitionParser parser(snapshot);
  bool selected = false;
  const auto defs = split_definitions(synset.tokens);
  for (std::size_t d = 0; d < defs.size(); ++d) {
    ParseOutcome po = parser.parse(defs[d], ctx);
    if (!po.ok()) {
      Candidate c;
      c.synset_id = synset.id;
      c.definition_index = static_cast<int>(d);
      c.constraints = *constraints;
      c.status = po.error == ParseOutcome::Error::UnknownToken
                     ? reason::kUnknownToken
                     : reason::kNoParse;
      out.push_back(std::move(c));
      continue;
    }
    const LFGraph& top = po.graphs.front();

    // A top-level disjunction offers alternative definitions; each operand is
    // evaluated on its own, in surface order.
    std::vector<LFGraph> branches;
    const LFNode& root = top.node(top.root);
    if (root.indicator == Indicator::Operator && root.op == "OR") {
      for (const auto* e : top.edges_from(top.root))
        if (e->label == "OPERAND") branches.push_back(subgraph(top, e->to));
    } else {
      branches.push_back(top);
    }

    for (std::size_t b = 0; b < branches.size(); ++b) {
      Candidate c = evaluate_candidate(snapshot, cfg, synset, branches[b],
                                       *constraints, static_cast<int>(d),
                                       static_cast<int>(b));
      if (c.status == reason::kAccepted) {
        if (selected) {
          c.status = reason::kAcceptedUnselected;
        } else {
          selected = true;
        }
      }
      out.push_back(std::move(c));
    }
  }
  return out;
}

CoverageSummary summarize(const Resource& r) {
  CoverageSummary out;
  int senses = 0;
  for (const auto& [key, entry] : r.lexicon) {
    if (entry.pos != "v") continue;
    ++out.verbs;
    senses += static_cast<int>(entry.senses.size());
  }
  for (const auto& [id, t] : r.ontology)
    if (r.subsumes(r.vocabulary.situation_root, id)) ++out.sense_types;
  out.avg_senses_per_verb = out.verbs == 0 ? 0.0
                                           : static_cast<double>(senses) / out.verbs;
  return out;
}

BootstrapResult bootstrap(const Corpus& corpus, const Resource& seed,
                          const LearnerConfig& cfg, const BootstrapOptions& options) {
  BootstrapResult result;
  result.resource = seed;

  for (int iteration = 1; iteration <= options.max_iterations; ++iteration) {
    const Resource& snapshot = result.resource;
    HybridOntology hybrid(snapshot, corpus);

    // Unincorporated verb synsets without a direct mapping.
    std::vector<const Synset*> targets;
    for (const auto& s : corpus.synsets()) {
      if (sense_key_pos(s.senses.front()) != '2') continue;
      if (hybrid.directly_mapped(s.id)) continue;
      bool attached = false;
      for (const auto& sk : s.senses)
        if (snapshot.type_for_sense_key(sk.key)) attached = true;
      if (attached) continue;
      targets.push_back(&s);
    }
    std::sort(targets.begin(), targets.end(),
              [](const Synset* a, const Synset* b) { return a->id < b->id; });

    std::vector<std::vector<Candidate>> results(targets.size());
    int jobs = std::max(1, options.jobs);
    if (jobs == 1 || targets.size() <= 1) {
      for (std::size_t i = 0; i < targets.size(); ++i)
        results[i] = process_synset(snapshot, corpus, cfg, *targets[i]);
    } else {
      std::vector<std::thread> workers;
      for (int w = 0; w < jobs; ++w) {
        workers.emplace_back([&, w]() {
          for (std::size_t i = static_cast<std::size_t>(w); i < targets.size();
               i += static_cast<std::size_t>(jobs))
            results[i] = process_synset(snapshot, corpus, cfg, *targets[i]);
        });
      }
      for (auto& t : workers) t.join();
    }

    IterationStats stats;
    stats.index = iteration;
    stats.processed_synsets = static_cast<int>(targets.size());

    // Deterministic merge in synset-id (= lexicographic sense key) order.
    struct Group {
      std::vector<const Candidate*> members;
    };
    std::vector<std::string> group_order;
    std::map<std::string, Group> groups;
    std::map<const Candidate*, std::size_t> record_of;

    for (std::size_t i = 0; i < targets.size(); ++i) {
      for (const auto& c : results[i]) {
        ++stats.candidates;
        CandidateRecord rec;
        rec.synset_id = c.synset_id;
        rec.definition_index = c.definition_index;
        rec.branch_index = c.branch_index;
        rec.status = c.status;
        stats.details.push_back(rec);
        if (c.status == reason::kAccepted) {
          ++stats.accepted;
          if (!groups.count(c.group_key)) group_order.push_back(c.group_key);
          groups[c.group_key].members.push_back(&c);
          record_of[&c] = stats.details.size() - 1;
        } else if (c.status == reason::kAcceptedUnselected) {
          ++stats.accepted_unselected;
        } else {
          ++stats.rejected[c.status];
        }
      }
    }

    // Build the next snapshot.
    Resource next = snapshot;
    std::set<std::string> taken;
    for (const auto& [id, t] : next.ontology) taken.insert(id.value);

    for (const auto& key : group_order) {
      const auto& members = groups[key].members;
      const Candidate* first = members.front();
      TypeId final_name = name_new_type(corpus.synset(first->synset_id), taken);
      taken.insert(final_name.value);

      OntType nt;
      nt.id = final_name;
      nt.parent = first->classification.placement;
      nt.roles = first->roles;
      nt.provenance = {false, iteration};
      for (const auto* m : members) {
        for (const auto& sk : corpus.synset(m->synset_id).senses)
          nt.synsets.push_back(sk);
        result.report.incorporated_iteration[m->synset_id] = iteration;
        if (auto it = record_of.find(m); it != record_of.end())
          stats.details[it->second].new_type = final_name.value;
      }

      // Axioms: retarget antecedents to the final name, dedupe structurally.
      std::vector<Axiom> fresh;
      for (const auto* m : members) {
        if (!m->axiom) continue;
        Axiom ax = *m->axiom;
        ax.antecedent_type = final_name;
        bool dup = false;
        for (const auto& existing : fresh)
          if (existing.structurally_equal(ax)) dup = true;
        if (!dup) fresh.push_back(std::move(ax));
      }
      int ordinal = 1;
      for (auto& ax : fresh) {
        std::string local = final_name.value.substr(5);
        ax.id = AxiomId{"AX::" + local + "-" + std::to_string(ordinal++)};
        nt.axioms.push_back(ax.id);
        next.axioms[ax.id] = ax;
      }

      next.ontology[final_name] = nt;
      ++stats.new_types;

      // Lexical fan-out: every sense of every member synset yields one entry
      // sense on the new type.
      for (const auto* m : members) {
        for (const auto& sk : corpus.synset(m->synset_id).senses) {
          auto lex_key = std::make_pair(sk.lemma, std::string("v"));
          auto it = next.lexicon.find(lex_key);
          if (it == next.lexicon.end()) {
            LexEntry entry;
            entry.word = sk.lemma;
            entry.pos = "v";
            entry.senses.push_back({final_name, m->templates});
            next.lexicon.emplace(lex_key, std::move(entry));
          } else {
            it->second.senses.push_back({final_name, m->templates});
            std::sort(it->second.senses.begin(), it->second.senses.end(),
                      [](const LexSense& a, const LexSense& b) {
                        return a.type < b.type;
                      });
          }
          ++stats.new_lex_entries;
        }
      }
    }

    result.resource = std::move(next);
    result.report.iterations.push_back(std::move(stats));
    if (result.report.iterations.back().accepted == 0) break;
  }

  // Totals.
  auto& rep = result.report;
  for (const auto& it : rep.iterations) {
    rep.processed_candidates += it.candidates;
    rep.accepted += it.accepted;
    rep.new_types += it.new_types;
    rep.new_lex_entries += it.new_lex_entries;
    for (const auto& [reason_id, count] : it.rejected) {
      rep.rejected[reason_id] += count;
      rep.rejected_total += count;
    }
  }
  rep.rejection_rate = rep.processed_candidates == 0
                           ? 0.0
                           : static_cast<double>(rep.rejected_total) /
                                 rep.processed_candidates;
  auto coverage = summarize(result.resource);
  rep.verbs = coverage.verbs;
  rep.sense_types = coverage.sense_types;
  rep.avg_senses_per_verb = coverage.avg_senses_per_verb;
  return result;
}

}  // namespace semlex
