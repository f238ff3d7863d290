#include "semlex/corpus.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace semlex {

void Corpus::add(Synset s) {
  if (index_.count(s.id))
    throw LoadError("corpus", s.id, "synset listed twice");
  index_[s.id] = synsets_.size();
  synsets_.push_back(std::move(s));
}

const Synset& Corpus::synset(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw DomainError("unknown synset: " + id);
  return synsets_[it->second];
}

std::vector<const Synset*> Corpus::synsets_for_lemma(const std::string& lemma) const {
  std::vector<const Synset*> out;
  for (const auto& s : synsets_) {
    for (const auto& sk : s.senses)
      if (sk.lemma == lemma) {
        out.push_back(&s);
        break;
      }
  }
  return out;
}

const Synset* Corpus::synset_for_sense_key(const std::string& key) const {
  for (const auto& s : synsets_)
    for (const auto& sk : s.senses)
      if (sk.key == key) return &s;
  return nullptr;
}

void Corpus::validate(const std::string& origin) const {
  for (const auto& s : synsets_) {
    if (s.senses.empty())
      throw LoadError(origin, s.id, "synset has no senses");
    for (const auto& sk : s.senses) parse_sense_key(sk.key);
    for (const auto& h : s.hypernyms)
      if (!has(h))
        throw LoadError(origin, s.id, "dangling hypernym reference: " + h);
    for (const auto& tok : s.tokens) {
      if (tok.sense.empty()) continue;
      SenseKey sk = parse_sense_key(tok.sense);
      // The tag's lemma must appear in the token it annotates (the token may
      // be an inflected form of the lemma).
      std::string lowered = tok.text;
      std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                     [](char c) { return static_cast<char>(std::tolower(
                         static_cast<unsigned char>(c))); });
      auto stem_matches = [&](const std::string& lemma) {
        if (lowered == lemma) return true;
        if (lowered.size() > lemma.size() &&
            lowered.compare(0, lemma.size() > 2 ? lemma.size() - 1 : lemma.size(),
                            lemma.substr(0, lemma.size() > 2 ? lemma.size() - 1
                                                             : lemma.size())) == 0)
          return true;
        return false;
      };
      if (!stem_matches(sk.lemma))
        throw LoadError(origin, s.id,
                        "tag lemma '" + sk.lemma + "' does not match token '" +
                            tok.text + "'");
    }
  }

  // Hypernym cycle detection (DFS with colors).
  std::map<std::string, int> color;  // 0 white, 1 grey, 2 black
  std::function<void(const std::string&)> visit = [&](const std::string& id) {
    color[id] = 1;
    for (const auto& h : synset(id).hypernyms) {
      int c = color[h];
      if (c == 1) throw LoadError(origin, id, "hypernym cycle through " + h);
      if (c == 0) visit(h);
    }
    color[id] = 2;
  };
  for (const auto& s : synsets_)
    if (color[s.id] == 0) visit(s.id);
}

std::vector<std::vector<TaggedToken>> split_definitions(
    const std::vector<TaggedToken>& tokens) {
  std::vector<std::vector<TaggedToken>> out;
  std::vector<TaggedToken> cur;
  for (const auto& tok : tokens) {
    if (tok.text == ";") {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(tok);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace semlex
