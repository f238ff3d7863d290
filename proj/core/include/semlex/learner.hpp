#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "semlex/corpus.hpp"
#include "semlex/lfgraph.hpp"
#include "semlex/mapping.hpp"
#include "semlex/parser.hpp"
#include "semlex/resource.hpp"

namespace semlex {

// Stable rejection/flag identifiers used in reports and tests.
namespace reason {
inline constexpr const char* kNoMapping = "NO-MAPPING";
inline constexpr const char* kUnknownToken = "UNKNOWN-TOKEN";
inline constexpr const char* kNoParse = "NO-PARSE";
inline constexpr const char* kNoRuleForGap = "NO-RULE-FOR-GAP";
inline constexpr const char* kDuplicateRole = "DUPLICATE-ROLE";
inline constexpr const char* kStativeEventConflict = "STATIVE-EVENT-CONFLICT";
inline constexpr const char* kIncomparablePlacement = "INCOMPARABLE-PLACEMENT";
inline constexpr const char* kRolesOutsideConstraints = "ROLES-OUTSIDE-CONSTRAINTS";
inline constexpr const char* kPreferenceConflict = "PREFERENCE-CONFLICT";
inline constexpr const char* kNoTemplates = "NO-TEMPLATES";
inline constexpr const char* kAccepted = "accepted";
inline constexpr const char* kAcceptedUnselected = "accepted-unselected";
}  // namespace reason

// Constraints induced from the synset's (direct or hypernym) mapping.
struct InducedConstraints {
  TypeId induced_type;
  int mapping_hops = 0;
  std::vector<RoleSpec> candidate_roles;       // effective_roles(induced_type)
  std::vector<std::string> candidate_templates;  // from words of the subtree
};

// Path pattern over role-edge labels from the root to a gap/marked node.
// "CORE-ROLE" matches any main role (and declared variants).
struct SkeletonRule {
  std::string id;
  int priority = 0;
  std::vector<std::string> path;
  std::string emit;     // role name, or "LIFT"
  int lift_index = 0;   // pattern element whose matched label is emitted
  int pref_index = -1;  // element supplying the preference transfer (default: last)
};

struct PhraseRule {
  TypeId head;
  std::vector<TypeId> modifiers;
  TypeId target;
};

struct LearnerConfig {
  std::vector<SkeletonRule> skeleton_rules;
  std::vector<PhraseRule> phrase_rules;
};

struct RoleBinding {
  SemRole target_role;
  std::string lf_node;
  std::string rule_id;
  std::string evidence;  // IMPRO or a surface-mark name
};

struct RoleAssignment {
  std::vector<RoleBinding> bindings;
  std::vector<std::string> flags;  // identification failures, empty when clean
};

struct ClassifyResult {
  TypeId placement;
  TypeId main_predicate;
  bool comparable = true;
  std::string phrase_rule;  // target type of the matched rule, empty if none
};

struct Candidate {
  std::string synset_id;
  int definition_index = 0;
  int branch_index = 0;  // operand of a split top-level disjunction
  LFGraph graph;
  RoleAssignment assignment;
  InducedConstraints constraints;
  ClassifyResult classification;
  TypeId new_type;  // provisional; finalized at merge
  std::vector<RoleSpec> roles;
  std::vector<std::string> templates;
  bool templates_backoff = false;
  std::optional<Axiom> axiom;
  std::string status;  // reason::kAccepted or a rejection id
  std::string group_key;
};

// --- pipeline steps ---------------------------------------------------------

std::optional<InducedConstraints> induce_constraints(const Resource& r,
                                                     const HybridOntology& hybrid,
                                                     const std::string& synset_id);

// Template names used by lexicon words whose senses fall under t.
std::vector<std::string> candidate_templates_for(const Resource& r, const TypeId& t);

// Applies the single highest-priority matching skeleton rule to every gap
// and surface-marked node.
RoleAssignment identify_roles(const Resource& r, const LearnerConfig& cfg,
                              const LFGraph& graph);

// Preference transfer: each binding takes the preference of the role its gap
// fills on the defining predicate; parenthetical/indefinite-noun evidence
// takes the marked noun's ontology type instead.
std::vector<RoleSpec> derive_preferences(const Resource& r, const LearnerConfig& cfg,
                                         const LFGraph& graph,
                                         const RoleAssignment& assignment);

struct TemplateDerivation {
  std::vector<std::string> templates;
  bool backoff = false;
};

// Filters the sibling-word pool down to templates whose required roles were
// identified; falls back to the most frequent exact-role-set templates.
TemplateDerivation derive_templates(const Resource& r,
                                    const std::vector<SemRole>& roles,
                                    const InducedConstraints& constraints);

ClassifyResult classify(const Resource& r, const LearnerConfig& cfg,
                        const LFGraph& graph, const InducedConstraints& constraints);

Axiom generate_axiom(const Resource& r, const LFGraph& graph,
                     const RoleAssignment& assignment, const TypeId& new_type);

// First failing check wins; aspect is checked before placement comparability
// so a stative definition over an event mapping reports the aspect conflict.
std::string check_consistency(const Resource& r, const Candidate& candidate);

// ONT:: + uppercased first lemma + -WN + sense-key digits; collisions get an
// ordinal suffix against `taken`.
TypeId name_new_type(const Synset& synset, const std::set<std::string>& taken);

// --- bootstrap --------------------------------------------------------------

struct CandidateRecord {
  std::string synset_id;
  int definition_index = 0;
  int branch_index = 0;
  std::string status;
  std::string new_type;  // final name for selected candidates
};

struct IterationStats {
  int index = 0;
  int processed_synsets = 0;
  int candidates = 0;
  int accepted = 0;
  int accepted_unselected = 0;
  std::map<std::string, int> rejected;
  int new_types = 0;
  int new_lex_entries = 0;
  std::vector<CandidateRecord> details;
};

struct BuildReport {
  std::vector<IterationStats> iterations;
  int processed_candidates = 0;
  int accepted = 0;
  int rejected_total = 0;
  std::map<std::string, int> rejected;
  double rejection_rate = 0.0;
  int new_types = 0;
  int new_lex_entries = 0;
  std::map<std::string, int> incorporated_iteration;  // synset id -> iteration
  // Coverage of the final resource.
  int verbs = 0;
  int sense_types = 0;
  double avg_senses_per_verb = 0.0;
};

struct BootstrapOptions {
  int max_iterations = 3;
  int jobs = 1;
};

struct BootstrapResult {
  Resource resource;
  BuildReport report;
};

// Per-iteration snapshot processing with deterministic sequential merge; the
// outcome is independent of the worker count.
BootstrapResult bootstrap(const Corpus& corpus, const Resource& seed,
                          const LearnerConfig& cfg, const BootstrapOptions& options);

// Evaluates one synset against a snapshot; candidates appear in gloss order
// with the first consistent one marked accepted.
std::vector<Candidate> process_synset(const Resource& snapshot, const Corpus& corpus,
                                      const LearnerConfig& cfg, const Synset& synset);

struct CoverageSummary {
  int verbs = 0;
  int sense_types = 0;
  double avg_senses_per_verb = 0.0;
};

CoverageSummary summarize(const Resource& r);

}  // namespace semlex
