#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "semlex/logic.hpp"
#include "semlex/types.hpp"

namespace semlex {

// Role preference: a feature set or a type restriction. An empty feature set
// means "no preference".
struct RolePreference {
  std::variant<FeatureSet, TypeId> value = FeatureSet{};

  bool is_type() const { return std::holds_alternative<TypeId>(value); }
  const FeatureSet* features() const { return std::get_if<FeatureSet>(&value); }
  const TypeId* type() const { return std::get_if<TypeId>(&value); }

  bool operator==(const RolePreference&) const = default;
};

struct RoleSpec {
  SemRole role;
  RolePreference preference;
  bool optional = false;

  bool operator==(const RoleSpec&) const = default;
};

struct Provenance {
  bool seed = true;
  int iteration = 0;  // meaningful when !seed

  bool operator==(const Provenance&) const = default;
};

struct OntType {
  TypeId id;
  std::optional<TypeId> parent;  // absent only for the root
  FeatureSet features;           // local feature contributions
  std::vector<RoleSpec> roles;   // locally declared roles
  std::vector<AxiomId> axioms;
  std::vector<SenseKey> synsets;
  Provenance provenance;
};

// One linking-template slot: a grammatical relation with its phrase-type
// constraint mapped to a semantic role, optionally co-indexed with another
// slot's variable.
struct TemplateSlot {
  std::string grel;          // LSUBJ, LOBJ, LCOMP, LOBL
  std::string cat;           // NP, CP, ADJP
  std::string ctype;         // s-to, s-from-ing, pred-adj (CP/ADJP only)
  SemRole role;
  std::string var;           // co-index variable introduced by this slot
  std::string subj_var;      // co-index variable constraining this slot's subject

  bool operator==(const TemplateSlot&) const = default;
};

struct LinkingTemplate {
  std::string name;
  std::vector<TemplateSlot> slots;

  const TemplateSlot* slot(const std::string& grel) const;
  std::set<std::string> role_names() const;

  bool operator==(const LinkingTemplate&) const = default;
};

struct LexSense {
  TypeId type;
  std::vector<std::string> templates;

  bool operator==(const LexSense&) const = default;
};

struct LexEntry {
  std::string word;  // lemma; may contain spaces for multiword items
  std::string pos;   // v, n, adj, adv
  std::vector<std::string> flags;  // e.g. MASS on nouns
  std::vector<LexSense> senses;

  bool has_flag(const std::string& f) const;

  bool operator==(const LexEntry&) const = default;
};

enum class MappingKind { Direct, Remapped };
enum class MappingProvenance { Seed, Repair };

struct Mapping {
  std::string synset;  // synset identifier
  TypeId type;
  MappingKind kind = MappingKind::Direct;
  MappingProvenance provenance = MappingProvenance::Seed;

  auto operator<=>(const Mapping&) const = default;
};

// Preposition / closed-class adverbial behavior for the definition grammar.
struct PrepEntry {
  std::string word;
  TypeId type;
  std::string edge;      // role edge used to attach the phrase (RESULT, MOD)
  bool takes_object = true;
};

// Seed-declared vocabulary beyond the feature algebra: the role inventory,
// role-variant table, stative region roots and grammar constants.
struct Vocabulary {
  FeatureVocabulary features;
  std::vector<std::string> roles;                  // canonical order
  std::map<std::string, std::string> role_variants;  // variant -> base
  std::vector<std::string> core_roles;
  std::vector<TypeId> stative_roots;
  TypeId situation_root;
  TypeId referential_type;   // type used for gap nodes
  TypeId comparative_type;   // node type for "than" comparatives
  std::vector<PrepEntry> prepositions;

  bool role_declared(const std::string& name) const;
  // Variant-normalized base name (AGENT1 -> AGENT); identity when unmapped.
  std::string normalize_role(const std::string& name) const;
  bool is_core_role(const std::string& name) const;
  // Position in the canonical inventory; roles compare by this for stable
  // ordering of derived role lists.
  std::size_t role_rank(const std::string& name) const;
  const PrepEntry* preposition(const std::string& word) const;
};

class Resource {
public:
  std::map<TypeId, OntType> ontology;
  // Lexicon keyed by (word, pos).
  std::map<std::pair<std::string, std::string>, LexEntry> lexicon;
  std::map<std::string, LinkingTemplate> templates;
  std::map<AxiomId, Axiom> axioms;
  std::vector<Mapping> mappings;
  Vocabulary vocabulary;

  // --- hierarchy ------------------------------------------------------------

  const OntType& type(const TypeId& id) const;
  bool has_type(const TypeId& id) const { return ontology.count(id) != 0; }
  TypeId root() const;

  // True iff ancestor lies on the parent chain of descendant (inclusive).
  bool subsumes(const TypeId& ancestor, const TypeId& descendant) const;

  // Number of parent edges between descendant and ancestor; throws when not
  // related.
  int edge_distance(const TypeId& ancestor, const TypeId& descendant) const;

  // Roles declared on t merged with inherited roles: local first, then by
  // ascending ancestor distance; a local role overrides the same-named
  // inherited one.
  std::vector<RoleSpec> effective_roles(const TypeId& t) const;

  // Merged feature vector along the parent chain (local values win).
  FeatureSet type_features(const TypeId& t) const;

  std::optional<RoleSpec> find_role(const TypeId& t, const SemRole& role) const;

  bool is_stative(const TypeId& t) const;

  // --- lexicon --------------------------------------------------------------

  const LexEntry* lex_entry(const std::string& word, const std::string& pos) const;
  std::vector<const LexEntry*> entries_for_word(const std::string& word) const;

  // Words (of any pos) whose senses map into the subtree rooted at t.
  std::vector<std::pair<const LexEntry*, const LexSense*>> senses_under(
      const TypeId& t) const;

  // Type of the sense with this key, when some concept lists it.
  std::optional<TypeId> type_for_sense_key(const std::string& key) const;

  // Usage count of a template name across the lexicon.
  int template_usage(const std::string& name) const;

  // --- validation -----------------------------------------------------------

  // Full referential-closure and invariant scan; throws LoadError with the
  // violated invariant. `origin` names the fileset for error messages.
  void validate(const std::string& origin = "resource") const;
};

}  // namespace semlex
