#pragma once

#include <set>
#include <string>
#include <vector>

#include "semlex/corpus.hpp"
#include "semlex/learner.hpp"
#include "semlex/resource.hpp"

namespace semlex {

struct SimJudgement {
  std::string word1;
  std::string word2;
  double human_score = 0.0;
};

struct AblationCase {
  std::string synset_id;
  std::set<std::string> gold_roles;
  std::set<std::string> gold_templates;
};

// Spearman rank correlation with average ranks for ties. Throws DomainError
// on length mismatch, fewer than two points, or constant input.
double spearman(const std::vector<double>& xs, const std::vector<double>& ys);

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

Prf prf(const std::set<std::string>& predicted, const std::set<std::string>& gold);

struct AblationMetrics {
  Prf micro;
  Prf macro;
  int cases = 0;
  int unprocessable = 0;
};

struct AblationReport {
  AblationMetrics system;
  AblationMetrics baseline;
  struct CaseRow {
    std::string synset_id;
    std::set<std::string> predicted;
    std::set<std::string> gold;
  };
  std::vector<CaseRow> rows;  // system predictions per case
};

// Deletes the lexical entries of the case synsets' lemmas, re-derives each
// entry from its definition, and scores the identified role sets against the
// gold. Baseline: {AGENT, AFFECTED} for every case.
AblationReport ablate_roles(const Resource& resource, const Corpus& corpus,
                            const LearnerConfig& cfg,
                            const std::vector<AblationCase>& cases);

// Same protocol over template-name sets. Baseline: the most common transitive
// AGENT/AFFECTED template. Cases must share a lexicon item with the mapped
// type; invalid cases are rejected up front.
AblationReport ablate_templates(const Resource& resource, const Corpus& corpus,
                                const LearnerConfig& cfg,
                                const std::vector<AblationCase>& cases);

// Validity precondition for template ablation cases.
bool template_case_valid(const Resource& resource, const Corpus& corpus,
                         const AblationCase& c);

struct SimEvalResult {
  double rho = 0.0;
  int used = 0;
  int skipped = 0;  // pairs with an unresolvable lemma
  std::vector<std::string> skipped_pairs;
};

SimEvalResult sim_eval(const Resource& resource, const Corpus& corpus,
                       const std::vector<SimJudgement>& judgements);

}  // namespace semlex
