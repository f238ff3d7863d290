#include "semlex/mapping.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace semlex {

std::string HybridNode::display() const {
  if (const auto* t = type()) return t->value;
  return *synset();
}

HybridOntology::HybridOntology(const Resource& resource, const Corpus& corpus)
    : resource_(resource), corpus_(corpus) {}

bool HybridOntology::directly_mapped(const std::string& synset) const {
  for (const auto& m : resource_.mappings)
    if (m.synset == synset) return true;
  return false;
}

std::optional<ResolvedMapping> HybridOntology::resolve_mapping(
    const std::string& synset) const {
  corpus_.synset(synset);  // unknown synset -> DomainError

  auto direct = [&](const std::string& id) -> std::optional<TypeId> {
    std::optional<TypeId> best;
    for (const auto& m : resource_.mappings) {
      if (m.synset != id) continue;
      if (!best || m.type < *best) best = m.type;  // deterministic on duplicates
    }
    return best;
  };

  // Breadth-first over hypernym links; at each depth candidates are visited
  // in lexicographic id order, so ties resolve deterministically.
  std::map<std::string, std::string> parent;
  std::set<std::string> seen{synset};
  std::vector<std::string> frontier{synset};
  int hops = 0;
  while (!frontier.empty()) {
    std::sort(frontier.begin(), frontier.end());
    for (const auto& id : frontier) {
      if (auto t = direct(id)) {
        ResolvedMapping out;
        out.type = *t;
        out.hops = hops;
        std::string cur = id;
        while (true) {
          out.path.push_back(cur);
          auto it = parent.find(cur);
          if (it == parent.end()) break;
          cur = it->second;
        }
        std::reverse(out.path.begin(), out.path.end());
        return out;
      }
    }
    std::vector<std::string> next;
    for (const auto& id : frontier) {
      for (const auto& h : corpus_.synset(id).hypernyms) {
        if (seen.insert(h).second) {
          parent[h] = id;
          next.push_back(h);
        }
      }
    }
    frontier = std::move(next);
    ++hops;
  }
  return std::nullopt;
}

std::vector<DuplicateMapping> HybridOntology::detect_duplicates() const {
  std::map<std::string, std::set<TypeId>> by_synset;
  for (const auto& m : resource_.mappings) by_synset[m.synset].insert(m.type);
  std::vector<DuplicateMapping> out;
  for (const auto& [synset, types] : by_synset) {
    if (types.size() < 2) continue;
    out.push_back({synset, {types.begin(), types.end()}});
  }
  return out;
}

int HybridOntology::hybrid_depth(const HybridNode& n) const {
  const DepthModel dm = depth_model();
  if (const auto* t = n.type()) {
    return dm.root_depth + resource_.edge_distance(resource_.root(), *t);
  }
  auto resolved = resolve_mapping(*n.synset());
  if (!resolved)
    throw DomainError("unresolvable hybrid node: " + n.display());
  return hybrid_depth(HybridNode::of_type(resolved->type)) +
         dm.mapping_hop_cost + resolved->hops;
}

std::vector<HybridNode> HybridOntology::ancestor_chain(const HybridNode& n) const {
  // Deepest first: synset, its hypernym path to the mapped attachment,
  // the mapped type, then the type chain up to the root.
  std::vector<HybridNode> chain;
  TypeId at;
  if (const auto* t = n.type()) {
    at = *t;
  } else {
    auto resolved = resolve_mapping(*n.synset());
    if (!resolved)
      throw DomainError("unresolvable hybrid node: " + n.display());
    for (const auto& id : resolved->path) chain.push_back(HybridNode::of_synset(id));
    at = resolved->type;
  }
  const OntType* cur = &resource_.type(at);
  while (true) {
    chain.push_back(HybridNode::of_type(cur->id));
    if (!cur->parent) break;
    cur = &resource_.type(*cur->parent);
  }
  return chain;
}

HybridNode HybridOntology::lcs(const HybridNode& a, const HybridNode& b) const {
  const auto ca = ancestor_chain(a);
  const auto cb = ancestor_chain(b);
  std::set<std::string> in_b;
  for (const auto& n : cb) in_b.insert(n.display());
  for (const auto& n : ca)
    if (in_b.count(n.display())) return n;  // chains are deepest-first
  throw DomainError("no common subsumer for " + a.display() + " and " + b.display());
}

double HybridOntology::wup(const HybridNode& a, const HybridNode& b) const {
  const int da = hybrid_depth(a);
  const int db = hybrid_depth(b);
  const int dl = hybrid_depth(lcs(a, b));
  return 2.0 * dl / (da + db);
}

std::vector<HybridNode> HybridOntology::sense_nodes(const std::string& lemma) const {
  std::vector<HybridNode> out;
  std::set<std::string> seen;
  for (const auto* entry : resource_.entries_for_word(lemma)) {
    for (const auto& sense : entry->senses)
      if (seen.insert(sense.type.value).second)
        out.push_back(HybridNode::of_type(sense.type));
  }
  for (const auto* s : corpus_.synsets_for_lemma(lemma)) {
    if (resolve_mapping(s->id) && seen.insert(s->id).second)
      out.push_back(HybridNode::of_synset(s->id));
  }
  return out;
}

double HybridOntology::word_similarity(const std::string& w1,
                                       const std::string& w2) const {
  return word_similarity(w1, w2, nullptr, nullptr);
}

double HybridOntology::word_similarity(const std::string& w1, const std::string& w2,
                                       HybridNode* witness1,
                                       HybridNode* witness2) const {
  const auto n1 = sense_nodes(w1);
  const auto n2 = sense_nodes(w2);
  if (n1.empty()) throw DomainError("lemma has no senses: " + w1);
  if (n2.empty()) throw DomainError("lemma has no senses: " + w2);
  double best = -1.0;
  for (const auto& a : n1) {
    for (const auto& b : n2) {
      double score = wup(a, b);
      if (score > best) {
        best = score;
        if (witness1) *witness1 = a;
        if (witness2) *witness2 = b;
      }
    }
  }
  return best;
}

}  // namespace semlex
