#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "semlex/types.hpp"

namespace semlex {

struct TaggedToken {
  std::string text;
  std::string sense;  // sense-key tag, empty when untagged

  bool operator==(const TaggedToken&) const = default;
};

struct Synset {
  std::string id;  // by convention the first sense key
  std::vector<SenseKey> senses;
  std::string gloss;
  std::vector<TaggedToken> tokens;
  std::vector<std::string> hypernyms;
  std::vector<std::string> examples;
};

class Corpus {
public:
  void add(Synset s);

  bool has(const std::string& id) const { return index_.count(id) != 0; }
  const Synset& synset(const std::string& id) const;
  const std::vector<Synset>& synsets() const { return synsets_; }

  // Synsets containing a sense of this lemma.
  std::vector<const Synset*> synsets_for_lemma(const std::string& lemma) const;
  const Synset* synset_for_sense_key(const std::string& key) const;

  // Rejects hypernym cycles and dangling hypernym references.
  void validate(const std::string& origin = "corpus") const;

private:
  std::vector<Synset> synsets_;
  std::map<std::string, std::size_t> index_;
};

// Splits a raw gloss into ';'-separated definitions, preserving token order.
std::vector<std::vector<TaggedToken>> split_definitions(
    const std::vector<TaggedToken>& tokens);

}  // namespace semlex
