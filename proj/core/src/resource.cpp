#include "semlex/resource.hpp"

#include <algorithm>

namespace semlex {

const TemplateSlot* LinkingTemplate::slot(const std::string& grel) const {
  for (const auto& s : slots)
    if (s.grel == grel) return &s;
  return nullptr;
}

std::set<std::string> LinkingTemplate::role_names() const {
  std::set<std::string> out;
  for (const auto& s : slots) out.insert(s.role.name);
  return out;
}

bool LexEntry::has_flag(const std::string& f) const {
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

bool Vocabulary::role_declared(const std::string& name) const {
  return std::find(roles.begin(), roles.end(), name) != roles.end();
}

std::string Vocabulary::normalize_role(const std::string& name) const {
  auto it = role_variants.find(name);
  return it == role_variants.end() ? name : it->second;
}

bool Vocabulary::is_core_role(const std::string& name) const {
  const std::string base = normalize_role(name);
  return std::find(core_roles.begin(), core_roles.end(), base) != core_roles.end();
}

std::size_t Vocabulary::role_rank(const std::string& name) const {
  auto it = std::find(roles.begin(), roles.end(), name);
  return it == roles.end() ? roles.size() : static_cast<std::size_t>(it - roles.begin());
}

const PrepEntry* Vocabulary::preposition(const std::string& word) const {
  for (const auto& p : prepositions)
    if (p.word == word) return &p;
  return nullptr;
}

const OntType& Resource::type(const TypeId& id) const {
  auto it = ontology.find(id);
  if (it == ontology.end())
    throw DomainError("unknown type id: " + id.value);
  return it->second;
}

TypeId Resource::root() const {
  for (const auto& [id, t] : ontology)
    if (!t.parent) return id;
  throw DomainError("ontology has no root");
}

bool Resource::subsumes(const TypeId& ancestor, const TypeId& descendant) const {
  type(ancestor);
  const OntType* cur = &type(descendant);
  while (true) {
    if (cur->id == ancestor) return true;
    if (!cur->parent) return false;
    cur = &type(*cur->parent);
  }
}

int Resource::edge_distance(const TypeId& ancestor, const TypeId& descendant) const {
  const OntType* cur = &type(descendant);
  int hops = 0;
  while (true) {
    if (cur->id == ancestor) return hops;
    if (!cur->parent)
      throw DomainError(ancestor.value + " does not subsume " + descendant.value);
    cur = &type(*cur->parent);
    ++hops;
  }
}

std::vector<RoleSpec> Resource::effective_roles(const TypeId& t) const {
  std::vector<RoleSpec> out;
  std::set<std::string> seen;
  const OntType* cur = &type(t);
  while (true) {
    for (const auto& spec : cur->roles) {
      if (seen.insert(spec.role.name).second) out.push_back(spec);
    }
    if (!cur->parent) break;
    cur = &type(*cur->parent);
  }
  return out;
}

FeatureSet Resource::type_features(const TypeId& t) const {
  // Collect root-to-leaf so nearer declarations win.
  std::vector<const OntType*> chain;
  const OntType* cur = &type(t);
  while (true) {
    chain.push_back(cur);
    if (!cur->parent) break;
    cur = &type(*cur->parent);
  }
  FeatureSet merged;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    for (const auto& [attr, value] : (*it)->features.pairs()) {
      FeatureSet next;
      for (const auto& [a, v] : merged.pairs())
        if (a != attr) next.set(a, v);
      next.set(attr, value);
      merged = next;
    }
  }
  return merged;
}

std::optional<RoleSpec> Resource::find_role(const TypeId& t, const SemRole& role) const {
  for (const auto& spec : effective_roles(t))
    if (spec.role == role) return spec;
  return std::nullopt;
}

bool Resource::is_stative(const TypeId& t) const {
  for (const auto& root : vocabulary.stative_roots)
    if (has_type(root) && subsumes(root, t)) return true;
  return false;
}

const LexEntry* Resource::lex_entry(const std::string& word, const std::string& pos) const {
  auto it = lexicon.find({word, pos});
  return it == lexicon.end() ? nullptr : &it->second;
}

std::vector<const LexEntry*> Resource::entries_for_word(const std::string& word) const {
  std::vector<const LexEntry*> out;
  for (const auto& [key, entry] : lexicon)
    if (key.first == word) out.push_back(&entry);
  return out;
}

std::vector<std::pair<const LexEntry*, const LexSense*>> Resource::senses_under(
    const TypeId& t) const {
  std::vector<std::pair<const LexEntry*, const LexSense*>> out;
  for (const auto& [key, entry] : lexicon) {
    for (const auto& sense : entry.senses)
      if (subsumes(t, sense.type)) out.push_back({&entry, &sense});
  }
  return out;
}

std::optional<TypeId> Resource::type_for_sense_key(const std::string& key) const {
  for (const auto& [id, t] : ontology) {
    for (const auto& sk : t.synsets)
      if (sk.key == key) return id;
  }
  return std::nullopt;
}

int Resource::template_usage(const std::string& name) const {
  int n = 0;
  for (const auto& [key, entry] : lexicon)
    for (const auto& sense : entry.senses)
      n += static_cast<int>(std::count(sense.templates.begin(),
                                       sense.templates.end(), name));
  return n;
}

void Resource::validate(const std::string& origin) const {
  auto fail = [&](const std::string& record, const std::string& msg) {
    throw LoadError(origin, record, msg);
  };

  // Exactly one root; parent links form a tree.
  int roots = 0;
  for (const auto& [id, t] : ontology) {
    if (id != t.id) fail(id.value, "ontology key does not match record id");
    if (!t.id.valid()) fail(id.value, "malformed type id");
    if (!t.parent) {
      ++roots;
      continue;
    }
    if (!has_type(*t.parent))
      fail(id.value, "dangling parent reference: " + t.parent->value);
  }
  if (roots != 1) fail("", "ontology must have exactly one root, found " +
                           std::to_string(roots));
  for (const auto& [id, t] : ontology) {
    // Walk to the root; revisiting the start means a parent cycle.
    std::set<TypeId> seen{id};
    const OntType* cur = &t;
    while (cur->parent) {
      if (!seen.insert(*cur->parent).second)
        fail(id.value, "cycle in type tree through " + cur->parent->value);
      cur = &ontology.at(*cur->parent);
    }
  }

  for (const auto& [id, t] : ontology) {
    t.features.validate(vocabulary.features);
    std::set<std::string> role_names;
    for (const auto& spec : t.roles) {
      if (!vocabulary.role_declared(spec.role.name))
        fail(id.value, "unknown role: " + spec.role.name);
      if (!role_names.insert(spec.role.name).second)
        fail(id.value, "role declared twice: " + spec.role.name);
      if (const auto* fs = spec.preference.features())
        fs->validate(vocabulary.features);
      if (const auto* ty = spec.preference.type())
        if (!has_type(*ty))
          fail(id.value, "role preference references unknown type: " + ty->value);
    }
    for (const auto& ax : t.axioms)
      if (!axioms.count(ax)) fail(id.value, "dangling axiom reference: " + ax.value);
    for (const auto& sk : t.synsets) parse_sense_key(sk.key);
    if (!t.provenance.seed && t.synsets.empty())
      fail(id.value, "derived type carries no source synsets");
  }

  for (const auto& [name, templ] : templates) {
    if (name != templ.name) fail(name, "template key does not match record name");
    std::set<std::string> roles;
    std::map<std::string, int> coindex_uses;
    for (const auto& s : templ.slots) {
      if (!vocabulary.role_declared(s.role.name))
        fail(name, "unknown role in slot: " + s.role.name);
      if (!roles.insert(s.role.name).second)
        fail(name, "slot roles must be distinct: " + s.role.name);
      if (!s.var.empty()) ++coindex_uses[s.var];
      if (!s.subj_var.empty()) ++coindex_uses[s.subj_var];
    }
    for (const auto& [var, uses] : coindex_uses)
      if (uses < 2)
        fail(name, "co-index variable " + var + " appears in fewer than 2 slots");
  }

  for (const auto& [key, entry] : lexicon) {
    const std::string record = entry.word + "/" + entry.pos;
    if (key.first != entry.word || key.second != entry.pos)
      fail(record, "lexicon key does not match record");
    if (entry.senses.empty()) fail(record, "entry has no senses");
    for (const auto& sense : entry.senses) {
      if (!has_type(sense.type))
        fail(record, "sense references unknown type: " + sense.type.value);
      for (const auto& tn : sense.templates)
        if (!templates.count(tn))
          fail(record, "sense references unknown template: " + tn);
    }
  }

  std::set<std::pair<std::string, std::string>> mapping_keys;
  for (const auto& m : mappings) {
    if (!has_type(m.type))
      fail(m.synset, "mapping references unknown type: " + m.type.value);
    if (!mapping_keys.insert({m.synset, m.type.value}).second)
      fail(m.synset, "duplicate (synset,type) mapping to " + m.type.value);
  }

  for (const auto& [id, ax] : axioms) {
    if (id != ax.id) fail(id.value, "axiom key does not match record id");
    if (!has_type(ax.antecedent_type))
      fail(id.value, "antecedent references unknown type: " + ax.antecedent_type.value);
    std::set<std::string> vars, roles;
    for (const auto& [role, var] : ax.antecedent_vars) {
      if (!vars.insert(var).second) fail(id.value, "antecedent variables must be distinct");
      if (!roles.insert(role.name).second)
        fail(id.value, "antecedent roles must be distinct");
    }
    if (!ax.consequent) fail(id.value, "axiom has no consequent");
    // Consequent closure: every variable is a universal from the antecedent;
    // existentials are introduced only during generation/instantiation and
    // are written as ?xN / ?evN.
    for (const auto& v : collect_variables(ax.consequent)) {
      if (vars.count(v)) continue;
      bool existential = (v.size() > 1 && (v[0] == 'x' || v.rfind("ev", 0) == 0));
      if (!existential)
        fail(id.value, "consequent variable ?" + v + " is neither universal nor existential");
    }
  }

  for (const auto& root : vocabulary.stative_roots)
    if (!has_type(root))
      fail("vocabulary", "stative root references unknown type: " + root.value);
  if (!has_type(vocabulary.situation_root))
    fail("vocabulary", "situation root missing from ontology");
  if (!has_type(vocabulary.referential_type))
    fail("vocabulary", "referential type missing from ontology");
  for (const auto& [variant, base] : vocabulary.role_variants) {
    if (!vocabulary.role_declared(variant) || !vocabulary.role_declared(base))
      fail("vocabulary", "role variant mapping uses undeclared role: " + variant);
  }
  for (const auto& p : vocabulary.prepositions)
    if (!has_type(p.type))
      fail("vocabulary", "preposition references unknown type: " + p.type.value);
}

}  // namespace semlex
