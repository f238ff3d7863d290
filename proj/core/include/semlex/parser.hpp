#pragma once

#include <string>
#include <vector>

#include "semlex/corpus.hpp"
#include "semlex/lfgraph.hpp"
#include "semlex/resource.hpp"

namespace semlex {

// Context derived from the induced mapping; used only for ranking.
struct ParseContext {
  std::vector<std::string> candidate_role_names;
};

struct ParseOutcome {
  enum class Error { None, UnknownToken, NoParse };

  std::vector<LFGraph> graphs;  // ranked, best first
  Error error = Error::None;
  std::string message;

  bool ok() const { return error == Error::None; }
};

// Parses definition glosses over a controlled grammar. Verb frames come from
// the seed lexicon's linking templates; gaps become IMPRO nodes typed with
// the vocabulary's referential type. Coverage (documented in docs/grammar.md):
// bare VP, "to"-infinitive and from-ing complements, predicate adjectives and
// comparatives under "be", PP complements/adjuncts, adverbial modifiers,
// or/and coordination at VP and NP level, parentheticals.
class DefinitionParser {
public:
  explicit DefinitionParser(const Resource& resource);

  // All grammatical analyses, surface-marked and ranked by
  //   (tag matches desc, context-role matches desc, gap count asc,
  //    sense penalty asc, sense depth asc, serialized form asc).
  ParseOutcome parse(const std::vector<TaggedToken>& tokens,
                     const ParseContext& ctx) const;

private:
  const Resource& resource_;
};

// Whitespace tokenizer that splits parentheses, commas and semicolons into
// their own tokens. Tags can only come from corpus records.
std::vector<TaggedToken> tokenize_gloss(const std::string& text);

// Applies the surface-pattern marks to a parsed graph: indefinite pronouns,
// parenthesized argument spans, bare indefinite mass/plural nouns in direct
// argument position, and "a certain/particular N" heads. Best effort.
LFGraph mark_surface_patterns(LFGraph graph,
                              const std::vector<TaggedToken>& tokens,
                              const Resource& resource);

}  // namespace semlex
