#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "semlex/corpus.hpp"
#include "semlex/resource.hpp"

namespace semlex {

// Node in the hybrid hierarchy: an ontology type or a corpus synset.
struct HybridNode {
  std::variant<TypeId, std::string> node;

  static HybridNode of_type(TypeId t) { return {std::move(t)}; }
  static HybridNode of_synset(std::string id) { return {std::move(id)}; }

  bool is_type() const { return std::holds_alternative<TypeId>(node); }
  const TypeId* type() const { return std::get_if<TypeId>(&node); }
  const std::string* synset() const { return std::get_if<std::string>(&node); }

  std::string display() const;

  bool operator==(const HybridNode&) const = default;
};

// Depth conventions: the root type has depth 1; crossing a synset-to-type
// mapping costs 1; each hypernym edge costs 1.
struct DepthModel {
  int root_depth = 1;
  int mapping_hop_cost = 1;
};

struct ResolvedMapping {
  TypeId type;
  int hops = 0;                    // hypernym edges walked
  std::vector<std::string> path;  // synset ids from the query to the mapped one
};

struct DuplicateMapping {
  std::string synset;
  std::vector<TypeId> types;
};

// Similarity and placement queries over the type tree joined with the corpus
// hypernym graph through the synset-type mappings.
class HybridOntology {
public:
  HybridOntology(const Resource& resource, const Corpus& corpus);

  static constexpr DepthModel depth_model() { return {}; }

  // Direct mapping if present (hops = 0), else the nearest mapped hypernym
  // ancestor by breadth-first walk; ties broken by lexicographic synset id.
  std::optional<ResolvedMapping> resolve_mapping(const std::string& synset) const;

  bool directly_mapped(const std::string& synset) const;

  // Every synset mapped to two or more distinct types. Reported, never fixed.
  std::vector<DuplicateMapping> detect_duplicates() const;

  int hybrid_depth(const HybridNode& n) const;

  HybridNode lcs(const HybridNode& a, const HybridNode& b) const;

  // 2 * depth(lcs) / (depth(a) + depth(b)); in (0, 1].
  double wup(const HybridNode& a, const HybridNode& b) const;

  // Highest wup over the cross product of the two lemmas' sense nodes.
  double word_similarity(const std::string& w1, const std::string& w2) const;
  // Same, also reporting the witnessing node pair.
  double word_similarity(const std::string& w1, const std::string& w2,
                         HybridNode* witness1, HybridNode* witness2) const;

  // All hybrid nodes a lemma can denote: lexicon sense types plus corpus
  // synsets containing the lemma.
  std::vector<HybridNode> sense_nodes(const std::string& lemma) const;

private:
  std::vector<HybridNode> ancestor_chain(const HybridNode& n) const;

  const Resource& resource_;
  const Corpus& corpus_;
};

}  // namespace semlex
