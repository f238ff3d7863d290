#include "semlex/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "semlex/mapping.hpp"

namespace semlex {

namespace {

std::vector<double> average_ranks(const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
    double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = a.size();
  double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double cov = 0, va = 0, vb = 0;
  for (std::size_t i = 0; i < n; ++i) {
    cov += (a[i] - ma) * (b[i] - mb);
    va += (a[i] - ma) * (a[i] - ma);
    vb += (b[i] - mb) * (b[i] - mb);
  }
  if (va == 0.0 || vb == 0.0)
    throw DomainError("correlation undefined for constant input");
  return cov / std::sqrt(va * vb);
}

}  // namespace

double spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size())
    throw DomainError("spearman requires equal-length inputs");
  if (xs.size() < 2) throw DomainError("spearman requires at least two points");
  return pearson(average_ranks(xs), average_ranks(ys));
}

Prf prf(const std::set<std::string>& predicted, const std::set<std::string>& gold) {
  if (gold.empty()) throw DomainError("prf requires a non-empty gold set");
  std::size_t hit = 0;
  for (const auto& p : predicted)
    if (gold.count(p)) ++hit;
  Prf out;
  out.precision = predicted.empty() ? 0.0
                                    : static_cast<double>(hit) / predicted.size();
  out.recall = static_cast<double>(hit) / gold.size();
  out.f1 = (out.precision + out.recall) == 0.0
               ? 0.0
               : 2.0 * out.precision * out.recall / (out.precision + out.recall);
  return out;
}

namespace {

// Resource with every lexical entry of the case synsets' lemmas removed.
Resource ablated_resource(const Resource& resource, const Corpus& corpus,
                          const std::vector<AblationCase>& cases) {
  std::set<std::string> lemmas;
  for (const auto& c : cases)
    for (const auto& sk : corpus.synset(c.synset_id).senses) lemmas.insert(sk.lemma);
  Resource out = resource;
  for (auto it = out.lexicon.begin(); it != out.lexicon.end();) {
    if (it->second.pos == "v" && lemmas.count(it->first.first))
      it = out.lexicon.erase(it);
    else
      ++it;
  }
  return out;
}

struct CasePrediction {
  std::set<std::string> roles;
  std::set<std::string> templates;
  bool processed = false;
};

// Re-derives one deleted entry from its definition against the ablated
// snapshot. The prediction comes from the first candidate whose parse and
// role identification succeed.
CasePrediction rederive(const Resource& snapshot, const Corpus& corpus,
                        const LearnerConfig& cfg, const std::string& synset_id) {
  CasePrediction out;
  const Synset& synset = corpus.synset(synset_id);
  auto candidates = process_synset(snapshot, corpus, cfg, synset);
  for (const auto& c : candidates) {
    if (c.graph.nodes.empty()) continue;  // no parse
    if (!c.assignment.flags.empty()) continue;
    out.processed = true;
    for (const auto& spec : c.roles) out.roles.insert(spec.role.name);
    for (const auto& t : c.templates) out.templates.insert(t);
    break;
  }
  return out;
}

AblationMetrics aggregate(const std::vector<std::pair<std::set<std::string>,
                                                      std::set<std::string>>>& rows) {
  AblationMetrics m;
  std::size_t hits = 0, pred = 0, gold = 0;
  double psum = 0, rsum = 0, fsum = 0;
  for (const auto& [p, g] : rows) {
    ++m.cases;
    if (p.empty()) ++m.unprocessable;
    std::size_t hit = 0;
    for (const auto& x : p)
      if (g.count(x)) ++hit;
    hits += hit;
    pred += p.size();
    gold += g.size();
    Prf row = prf(p, g);
    psum += row.precision;
    rsum += row.recall;
    fsum += row.f1;
  }
  m.micro.precision = pred == 0 ? 0.0 : static_cast<double>(hits) / pred;
  m.micro.recall = gold == 0 ? 0.0 : static_cast<double>(hits) / gold;
  m.micro.f1 = (m.micro.precision + m.micro.recall) == 0.0
                   ? 0.0
                   : 2.0 * m.micro.precision * m.micro.recall /
                         (m.micro.precision + m.micro.recall);
  if (m.cases > 0) {
    m.macro.precision = psum / m.cases;
    m.macro.recall = rsum / m.cases;
    m.macro.f1 = fsum / m.cases;
  }
  return m;
}

// Most common transitive template with exactly the AGENT and AFFECTED roles.
std::string transitive_template(const Resource& r) {
  std::string best;
  int best_usage = -1;
  for (const auto& [name, templ] : r.templates) {
    auto roles = templ.role_names();
    if (roles != std::set<std::string>{"AGENT", "AFFECTED"}) continue;
    int usage = r.template_usage(name);
    if (usage > best_usage) {
      best_usage = usage;
      best = name;
    }
  }
  return best;
}

}  // namespace

bool template_case_valid(const Resource& resource, const Corpus& corpus,
                         const AblationCase& c) {
  const Synset& synset = corpus.synset(c.synset_id);
  HybridOntology hybrid(resource, corpus);
  auto resolved = hybrid.resolve_mapping(c.synset_id);
  if (!resolved || resolved->hops != 0) return false;
  // The synset and its mapped type must share a lexicon item.
  for (const auto& sk : synset.senses) {
    const auto* entry = resource.lex_entry(sk.lemma, "v");
    if (!entry) continue;
    for (const auto& sense : entry->senses)
      if (sense.type == resolved->type) return true;
  }
  return false;
}

AblationReport ablate_roles(const Resource& resource, const Corpus& corpus,
                            const LearnerConfig& cfg,
                            const std::vector<AblationCase>& cases) {
  Resource snapshot = ablated_resource(resource, corpus, cases);
  AblationReport out;
  std::vector<std::pair<std::set<std::string>, std::set<std::string>>> sys, base;
  for (const auto& c : cases) {
    auto pred = rederive(snapshot, corpus, cfg, c.synset_id);
    sys.push_back({pred.roles, c.gold_roles});
    base.push_back({{"AGENT", "AFFECTED"}, c.gold_roles});
    out.rows.push_back({c.synset_id, pred.roles, c.gold_roles});
  }
  out.system = aggregate(sys);
  out.baseline = aggregate(base);
  return out;
}

AblationReport ablate_templates(const Resource& resource, const Corpus& corpus,
                                const LearnerConfig& cfg,
                                const std::vector<AblationCase>& cases) {
  for (const auto& c : cases)
    if (!template_case_valid(resource, corpus, c))
      throw LoadError("cases", c.synset_id,
                      "synset and mapped type share no lexicon item");
  Resource snapshot = ablated_resource(resource, corpus, cases);
  std::string transitive = transitive_template(resource);
  AblationReport out;
  std::vector<std::pair<std::set<std::string>, std::set<std::string>>> sys, base;
  for (const auto& c : cases) {
    auto pred = rederive(snapshot, corpus, cfg, c.synset_id);
    sys.push_back({pred.templates, c.gold_templates});
    std::set<std::string> b;
    if (!transitive.empty()) b.insert(transitive);
    base.push_back({b, c.gold_templates});
    out.rows.push_back({c.synset_id, pred.templates, c.gold_templates});
  }
  out.system = aggregate(sys);
  out.baseline = aggregate(base);
  return out;
}

SimEvalResult sim_eval(const Resource& resource, const Corpus& corpus,
                       const std::vector<SimJudgement>& judgements) {
  HybridOntology hybrid(resource, corpus);
  SimEvalResult out;
  std::vector<double> scores, human;
  for (const auto& j : judgements) {
    try {
      double s = hybrid.word_similarity(j.word1, j.word2);
      scores.push_back(s);
      human.push_back(j.human_score);
      ++out.used;
    } catch (const DomainError&) {
      ++out.skipped;
      out.skipped_pairs.push_back(j.word1 + "\t" + j.word2);
    }
  }
  out.rho = spearman(scores, human);
  return out;
}

}  // namespace semlex
