#include "semlex/parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

namespace semlex {

namespace {

const std::set<std::string> kIndefPronouns = {"something", "somebody", "someone"};

bool is_det(const std::string& t) { return t == "a" || t == "an" || t == "the"; }
bool is_coord(const std::string& t) { return t == "or" || t == "and"; }
bool is_certain_word(const std::string& t) {
  return t == "certain" || t == "particular";
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](char c) {
    return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  });
  return s;
}

// One morphological reading of a surface token against the lexicon.
struct Analysis {
  const LexEntry* entry = nullptr;
  std::string lemma;
  bool plural = false;
  bool gerund = false;
  bool comparative = false;
  int extra_tokens = 0;  // additional tokens consumed by a multiword lemma
};

// Parse-tree node; converted to LFGraph once an analysis is complete.
struct PNode;
using PNodePtr = std::shared_ptr<PNode>;

struct PChild {
  std::string label;
  PNodePtr node;
};

struct PNode {
  Indicator ind = Indicator::Term;
  TypeId type;
  std::string word;
  std::string op;
  double pos = 0.0;
  int token_index = -1;
  int seq = 0;
  bool tag_matched = false;
  int sense_penalty = 0;
  int sense_depth = 0;
  std::vector<PChild> children;
};

enum class SubjMode { Gap, Override, None };

struct Alt {
  PNodePtr node;
  std::size_t next = 0;
};

class ParseRun {
public:
  ParseRun(const Resource& r, const std::vector<TaggedToken>& tokens)
      : r_(r), tokens_(tokens), root_type_(r.root()) {}

  std::vector<LFGraph> run();
  std::optional<std::string> unknown_token() const;

private:
  PNodePtr make_node(Indicator ind, TypeId type, std::string word, double pos,
                     int token_index) {
    auto n = std::make_shared<PNode>();
    n->ind = ind;
    n->type = std::move(type);
    n->word = std::move(word);
    n->pos = pos;
    n->token_index = token_index;
    n->seq = seq_++;
    return n;
  }

  PNodePtr make_gap(double pos) {
    return make_node(Indicator::Impro, r_.vocabulary.referential_type, "", pos, -1);
  }

  const std::string& text(std::size_t i) const { return tokens_[i].text; }
  std::size_t size() const { return tokens_.size(); }

  std::vector<Analysis> analyses(std::size_t i, const std::string& pos) const;
  bool known_token(std::size_t i) const;

  int type_depth(const TypeId& t) const {
    return r_.edge_distance(root_type_, t);
  }

  // Chosen-sense bookkeeping on a freshly built content node.
  void note_sense(const PNodePtr& n, std::size_t tok, const TypeId& chosen);
  std::optional<TypeId> tag_type(const std::string& key) const;

  void note_attach_penalty(const PNodePtr& np, const TypeId& governor,
                           const SemRole& role);

  std::optional<SemRole> subject_role_of(const TypeId& t) const;
  std::optional<SemRole> first_core_role(const TypeId& t) const;

  std::vector<Alt> parse_vp_coord(std::size_t lo, std::size_t hi, SubjMode mode,
                                  PNodePtr overridden);
  std::vector<Alt> parse_vp_unit(std::size_t lo, std::size_t hi, SubjMode mode,
                                 PNodePtr overridden);
  std::vector<Alt> parse_frame(const Analysis& an, const LexSense& sense,
                               const LinkingTemplate& templ, std::size_t verb_tok,
                               std::size_t after_verb, std::size_t hi,
                               SubjMode mode, PNodePtr overridden);
  std::vector<Alt> parse_adj_pred(std::size_t lo, std::size_t hi, SubjMode mode,
                                  PNodePtr overridden);
  void attach_subject(const PNodePtr& head, const SemRole& role, SubjMode mode,
                      const PNodePtr& overridden);
  std::vector<Alt> parse_adjuncts(PNodePtr head, std::size_t lo, std::size_t hi);
  std::vector<Alt> parse_np(std::size_t lo, std::size_t hi);
  std::vector<Alt> parse_np_core(std::size_t lo, std::size_t hi);

  const Resource& r_;
  const std::vector<TaggedToken>& tokens_;
  TypeId root_type_;
  int seq_ = 0;
};

std::vector<Analysis> ParseRun::analyses(std::size_t i, const std::string& pos) const {
  std::vector<Analysis> out;
  if (i >= size()) return out;
  const std::string word = lower(text(i));

  auto add = [&](const std::string& lemma, bool plural, bool gerund,
                 bool comparative, int extra) {
    if (const auto* e = r_.lex_entry(lemma, pos))
      out.push_back({e, lemma, plural, gerund, comparative, extra});
  };

  // Multiword lemmas join with the following token ("take in").
  if (pos == "v" && i + 1 < size()) {
    add(word + " " + lower(text(i + 1)), false, false, false, 1);
  }
  add(word, false, false, false, 0);

  if (pos == "n" && word.size() > 2) {
    if (word.back() == 's') add(word.substr(0, word.size() - 1), true, false, false, 0);
    if (word.size() > 3 && word.compare(word.size() - 2, 2, "es") == 0)
      add(word.substr(0, word.size() - 2), true, false, false, 0);
  }
  if (pos == "v" && word.size() > 4 && word.compare(word.size() - 3, 3, "ing") == 0) {
    std::string stem = word.substr(0, word.size() - 3);
    add(stem, false, true, false, 0);
    if (stem.size() > 1 && stem[stem.size() - 1] == stem[stem.size() - 2])
      add(stem.substr(0, stem.size() - 1), false, true, false, 0);
    add(stem + "e", false, true, false, 0);
  }
  if (pos == "adj" && word.size() > 3 && word.compare(word.size() - 2, 2, "er") == 0) {
    std::string stem = word.substr(0, word.size() - 2);
    add(stem, false, false, true, 0);
    if (!stem.empty() && stem.back() == 'i')
      add(stem.substr(0, stem.size() - 1) + "y", false, false, true, 0);
    if (stem.size() > 1 && stem[stem.size() - 1] == stem[stem.size() - 2])
      add(stem.substr(0, stem.size() - 1), false, false, true, 0);
    add(stem + "e", false, false, true, 0);
  }
  return out;
}

bool ParseRun::known_token(std::size_t i) const {
  const std::string word = lower(text(i));
  if (word == "(" || word == ")" || word == "," || word == ";") return true;
  static const std::set<std::string> closed = {
      "to", "of", "than", "or",  "and",        "a",       "an",
      "the", "be", "from", "certain", "particular", "oneself"};
  if (closed.count(word) || kIndefPronouns.count(word)) return true;
  if (r_.vocabulary.preposition(word)) return true;
  for (const char* pos : {"v", "n", "adj", "adv"})
    if (!analyses(i, pos).empty()) return true;
  // A joined multiword reading can make the previous token cover this one.
  if (i > 0 && r_.lex_entry(lower(text(i - 1)) + " " + word, "v")) return true;
  return false;
}

std::optional<std::string> ParseRun::unknown_token() const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (known_token(i)) continue;
    if (!tokens_[i].sense.empty()) continue;  // tagged tokens are resolvable
    return text(i);
  }
  return std::nullopt;
}

std::optional<TypeId> ParseRun::tag_type(const std::string& key) const {
  return r_.type_for_sense_key(key);
}

void ParseRun::note_sense(const PNodePtr& n, std::size_t tok, const TypeId& chosen) {
  const std::string& tag = tokens_[tok].sense;
  if (!tag.empty()) {
    auto tt = tag_type(tag);
    if (tt && *tt == chosen) n->tag_matched = true;
  } else {
    n->sense_depth = type_depth(chosen);
  }
}

void ParseRun::note_attach_penalty(const PNodePtr& np, const TypeId& governor,
                                   const SemRole& role) {
  if (np->ind != Indicator::Term || np->token_index < 0) return;
  if (!tokens_[static_cast<std::size_t>(np->token_index)].sense.empty()) return;
  auto spec = r_.find_role(governor, role);
  if (!spec) return;
  if (const auto* fs = spec->preference.features()) {
    if (fs->empty()) return;
    if (!feature_compatible(*fs, r_.type_features(np->type), r_.vocabulary.features))
      np->sense_penalty += 1;
  } else if (const auto* ty = spec->preference.type()) {
    if (!r_.subsumes(*ty, np->type)) np->sense_penalty += 1;
  }
}

std::optional<SemRole> ParseRun::first_core_role(const TypeId& t) const {
  for (const auto& spec : r_.effective_roles(t))
    if (r_.vocabulary.is_core_role(spec.role.name)) return spec.role;
  return std::nullopt;
}

std::optional<SemRole> ParseRun::subject_role_of(const TypeId& t) const {
  return first_core_role(t);
}

std::vector<LFGraph> ParseRun::run() {
  std::size_t lo = 0;
  std::size_t hi = size();
  if (hi > lo && lower(text(lo)) == "to") ++lo;  // optional infinitive marker
  if (lo >= hi) return {};

  std::vector<Alt> alts = parse_vp_coord(lo, hi, SubjMode::Gap, nullptr);

  std::vector<LFGraph> graphs;
  for (const auto& alt : alts) {
    if (alt.next != hi) continue;
    // Flatten the tree into a graph; ids follow surface order.
    std::vector<PNodePtr> all;
    std::vector<std::pair<PNodePtr, PChild>> rel;
    std::vector<PNodePtr> stack{alt.node};
    while (!stack.empty()) {
      PNodePtr n = stack.back();
      stack.pop_back();
      all.push_back(n);
      for (const auto& c : n->children) {
        rel.push_back({n, c});
        stack.push_back(c.node);
      }
    }
    std::sort(all.begin(), all.end(), [](const PNodePtr& a, const PNodePtr& b) {
      if (a->pos != b->pos) return a->pos < b->pos;
      return a->seq < b->seq;
    });
    std::map<PNode*, std::string> ids;
    LFGraph g;
    int counter = 1;
    for (const auto& n : all) {
      std::string id = "X" + std::to_string(counter++);
      ids[n.get()] = id;
      LFNode ln;
      ln.id = id;
      ln.indicator = n->ind;
      ln.type = n->type;
      ln.word = n->word;
      ln.op = n->op;
      ln.token_index = n->token_index;
      g.nodes.push_back(ln);
      g.tag_matches += n->tag_matched ? 1 : 0;
      g.sense_penalty += n->sense_penalty;
      g.sense_depth += n->sense_depth;
      if (n->ind == Indicator::Impro) ++g.impro_count;
    }
    for (const auto& [parent, child] : rel)
      g.edges.push_back({ids[parent.get()], ids[child.node.get()], child.label});
    g.root = ids[alt.node.get()];
    graphs.push_back(std::move(g));
  }
  return graphs;
}

std::vector<Alt> ParseRun::parse_vp_coord(std::size_t lo, std::size_t hi,
                                          SubjMode mode, PNodePtr overridden) {
  std::vector<Alt> out = parse_vp_unit(lo, hi, mode, overridden);
  // Coordination attaches at every split that parses; ranking sorts scopings.
  // An overridden (lowered) subject may only bind once, in the left operand.
  SubjMode rhs_mode = mode == SubjMode::Override ? SubjMode::None : mode;
  for (std::size_t j = lo + 1; j + 1 < hi; ++j) {
    if (!is_coord(lower(text(j)))) continue;
    auto lefts = parse_vp_unit(lo, j, mode, overridden);
    if (lefts.empty()) continue;
    auto rights = parse_vp_coord(j + 1, hi, rhs_mode, nullptr);
    for (const auto& l : lefts) {
      if (l.next != j) continue;
      for (const auto& rt : rights) {
        if (rt.next != hi) continue;
        auto opnode = make_node(Indicator::Operator, TypeId{}, "",
                                static_cast<double>(j), static_cast<int>(j));
        opnode->op = lower(text(j)) == "or" ? "OR" : "AND";
        opnode->children.push_back({"OPERAND", l.node});
        opnode->children.push_back({"OPERAND", rt.node});
        out.push_back({opnode, hi});
      }
    }
  }
  return out;
}

std::vector<Alt> ParseRun::parse_vp_unit(std::size_t lo, std::size_t hi,
                                         SubjMode mode, PNodePtr overridden) {
  std::vector<Alt> out;
  if (lo >= hi) return out;

  if (lower(text(lo)) == "be") {
    auto preds = parse_adj_pred(lo + 1, hi, mode, overridden);
    for (auto& a : preds) out.push_back(a);
    return out;
  }

  for (const auto& an : analyses(lo, "v")) {
    std::size_t after = lo + 1 + static_cast<std::size_t>(an.extra_tokens);
    for (const auto& sense : an.entry->senses) {
      for (const auto& tname : sense.templates) {
        auto it = r_.templates.find(tname);
        if (it == r_.templates.end()) continue;
        auto frames = parse_frame(an, sense, it->second, lo, after, hi, mode, overridden);
        for (auto& f : frames) out.push_back(std::move(f));
      }
    }
  }
  return out;
}

void ParseRun::attach_subject(const PNodePtr& head, const SemRole& role,
                              SubjMode mode, const PNodePtr& overridden) {
  if (mode == SubjMode::Gap) {
    head->children.push_back({role.name, make_gap(-1.0)});
  } else if (mode == SubjMode::Override && overridden) {
    head->children.push_back({role.name, overridden});
  }
  // SubjMode::None: controlled subject, not instantiated.
}

std::vector<Alt> ParseRun::parse_adj_pred(std::size_t lo, std::size_t hi,
                                          SubjMode mode, PNodePtr overridden) {
  std::vector<Alt> out;
  if (lo >= hi) return out;
  for (const auto& an : analyses(lo, "adj")) {
    for (const auto& sense : an.entry->senses) {
      auto subj_role = subject_role_of(sense.type);
      if (!subj_role) continue;
      auto state = make_node(Indicator::F, sense.type, an.lemma,
                             static_cast<double>(lo), static_cast<int>(lo));
      note_sense(state, lo, sense.type);
      attach_subject(state, *subj_role, mode, overridden);
      std::size_t next = lo + 1;
      if (an.comparative && next < hi && lower(text(next)) == "than") {
        auto compar = make_node(Indicator::F, r_.vocabulary.comparative_type, "",
                                static_cast<double>(next), static_cast<int>(next));
        std::size_t obj = next + 1;
        if (obj >= hi) {
          compar->children.push_back({"COMPAR", make_gap(next + 0.25)});
          state->children.push_back({"FORMAL", compar});
          out.push_back({state, next + 1});
        } else {
          for (auto& np : parse_np(obj, hi)) {
            auto c2 = std::make_shared<PNode>(*compar);
            c2->seq = seq_++;
            c2->children.push_back({"COMPAR", np.node});
            auto s2 = std::make_shared<PNode>(*state);
            s2->seq = seq_++;
            s2->children.push_back({"FORMAL", c2});
            out.push_back({s2, np.next});
          }
        }
      } else {
        out.push_back({state, next});
      }
    }
  }
  // Trailing adjuncts after the predicate.
  std::vector<Alt> with_adjuncts;
  for (const auto& a : out) {
    for (auto& fin : parse_adjuncts(a.node, a.next, hi))
      with_adjuncts.push_back(std::move(fin));
  }
  return with_adjuncts;
}

std::vector<Alt> ParseRun::parse_frame(const Analysis& an, const LexSense& sense,
                                       const LinkingTemplate& templ,
                                       std::size_t verb_tok, std::size_t after_verb,
                                       std::size_t hi, SubjMode mode,
                                       PNodePtr overridden) {
  const auto* lsubj = templ.slot("LSUBJ");
  if (!lsubj) return {};

  auto verb = make_node(Indicator::F, sense.type, an.lemma,
                        static_cast<double>(verb_tok), static_cast<int>(verb_tok));
  note_sense(verb, verb_tok, sense.type);
  attach_subject(verb, lsubj->role, mode, overridden);

  const auto* lobj = templ.slot("LOBJ");
  const auto* lcomp = templ.slot("LCOMP");
  const bool obj_controls = lobj && !lobj->var.empty() && lcomp &&
                            lcomp->subj_var == lobj->var;
  const bool subj_controls = lcomp && !lsubj->var.empty() &&
                             lcomp->subj_var == lsubj->var;

  struct ObjAlt {
    PNodePtr verb;
    std::size_t next;
    PNodePtr lowered;  // gap handed to the complement's subject
  };
  std::vector<ObjAlt> stages{{verb, after_verb, nullptr}};

  if (lobj) {
    std::vector<ObjAlt> next_stages;
    for (const auto& st : stages) {
      std::size_t cur = st.next;
      // Realized object: plain NP or parenthesized NP.
      bool paren = cur + 2 < hi && text(cur) == "(";
      std::size_t np_lo = paren ? cur + 1 : cur;
      for (auto& np : parse_np(np_lo, hi)) {
        std::size_t after_np = np.next;
        if (paren) {
          if (after_np >= hi || text(after_np) != ")") continue;
          ++after_np;
        }
        auto v2 = std::make_shared<PNode>(*st.verb);
        v2->seq = seq_++;
        note_attach_penalty(np.node, sense.type, lobj->role);
        v2->children.push_back({lobj->role.name, np.node});
        // A realized object controls the complement subject silently.
        next_stages.push_back({v2, after_np, nullptr});
      }
      // Gapped object.
      auto v3 = std::make_shared<PNode>(*st.verb);
      v3->seq = seq_++;
      auto gap = make_gap(static_cast<double>(verb_tok) + 0.25);
      if (obj_controls) {
        // The gap surfaces at the complement's subject role.
        next_stages.push_back({v3, cur, gap});
      } else {
        v3->children.push_back({lobj->role.name, gap});
        next_stages.push_back({v3, cur, nullptr});
      }
    }
    stages = std::move(next_stages);
  }

  std::vector<Alt> out;
  for (const auto& st : stages) {
    if (!lcomp) {
      for (auto& fin : parse_adjuncts(st.verb, st.next, hi)) out.push_back(fin);
      continue;
    }
    std::size_t cur = st.next;
    SubjMode emb_mode = SubjMode::None;
    PNodePtr emb_node;
    if (st.lowered) {
      emb_mode = SubjMode::Override;
      emb_node = st.lowered;
    } else if (!subj_controls && !obj_controls) {
      emb_mode = SubjMode::None;
    }
    std::vector<Alt> comps;
    if (lcomp->ctype == "s-to") {
      if (cur < hi && lower(text(cur)) == "to")
        comps = parse_vp_coord(cur + 1, hi, emb_mode, emb_node);
    } else if (lcomp->ctype == "s-from-ing") {
      if (cur < hi && lower(text(cur)) == "from")
        comps = parse_vp_coord(cur + 1, hi, emb_mode, emb_node);
    } else if (lcomp->ctype == "pred-adj") {
      comps = parse_adj_pred(cur, hi, emb_mode, emb_node);
    }
    for (const auto& c : comps) {
      auto v2 = std::make_shared<PNode>(*st.verb);
      v2->seq = seq_++;
      v2->children.push_back({lcomp->role.name, c.node});
      for (auto& fin : parse_adjuncts(v2, c.next, hi)) out.push_back(fin);
    }
  }
  return out;
}

std::vector<Alt> ParseRun::parse_adjuncts(PNodePtr head, std::size_t lo,
                                          std::size_t hi) {
  std::vector<Alt> out;
  if (lo >= hi) {
    out.push_back({head, lo});
    return out;
  }
  const std::string word = lower(text(lo));

  // "and" chains a further adverb onto the same head.
  std::size_t adv_at = lo;
  bool chained = false;
  if (word == "and" && lo + 1 < hi && !analyses(lo + 1, "adv").empty()) {
    adv_at = lo + 1;
    chained = true;
  }
  for (const auto& an : analyses(adv_at, "adv")) {
    if (adv_at != lo && !chained) break;
    for (const auto& sense : an.entry->senses) {
      auto mod = make_node(Indicator::F, sense.type, an.lemma,
                           static_cast<double>(adv_at), static_cast<int>(adv_at));
      note_sense(mod, adv_at, sense.type);
      auto h2 = std::make_shared<PNode>(*head);
      h2->seq = seq_++;
      h2->children.push_back({"MOD", mod});
      for (auto& fin : parse_adjuncts(h2, adv_at + 1, hi)) out.push_back(fin);
    }
  }

  if (const auto* prep = r_.vocabulary.preposition(word)) {
    auto pnode = make_node(Indicator::F, prep->type, word,
                           static_cast<double>(lo), static_cast<int>(lo));
    if (!prep->takes_object) {
      auto h2 = std::make_shared<PNode>(*head);
      h2->seq = seq_++;
      h2->children.push_back({prep->edge, pnode});
      for (auto& fin : parse_adjuncts(h2, lo + 1, hi)) out.push_back(fin);
    } else if (lo + 1 >= hi) {
      // Object gap: "move towards <>".
      auto p2 = std::make_shared<PNode>(*pnode);
      p2->seq = seq_++;
      p2->children.push_back({"GROUND", make_gap(lo + 0.25)});
      auto h2 = std::make_shared<PNode>(*head);
      h2->seq = seq_++;
      h2->children.push_back({prep->edge, p2});
      out.push_back({h2, lo + 1});
    } else {
      for (auto& np : parse_np(lo + 1, hi)) {
        auto p2 = std::make_shared<PNode>(*pnode);
        p2->seq = seq_++;
        p2->children.push_back({"GROUND", np.node});
        auto h2 = std::make_shared<PNode>(*head);
        h2->seq = seq_++;
        h2->children.push_back({prep->edge, p2});
        for (auto& fin : parse_adjuncts(h2, np.next, hi)) out.push_back(fin);
      }
    }
  }
  return out;
}

std::vector<Alt> ParseRun::parse_np(std::size_t lo, std::size_t hi) {
  std::vector<Alt> cores = parse_np_core(lo, hi);
  std::vector<Alt> out;
  for (const auto& c : cores) {
    out.push_back(c);
    if (c.next < hi && is_coord(lower(text(c.next)))) {
      std::size_t j = c.next;
      for (auto& rhs : parse_np(j + 1, hi)) {
        auto opnode = make_node(Indicator::Operator, TypeId{}, "",
                                static_cast<double>(j), static_cast<int>(j));
        opnode->op = lower(text(j)) == "or" ? "OR" : "AND";
        opnode->children.push_back({"OPERAND", c.node});
        opnode->children.push_back({"OPERAND", rhs.node});
        out.push_back({opnode, rhs.next});
      }
    }
  }
  return out;
}

std::vector<Alt> ParseRun::parse_np_core(std::size_t lo, std::size_t hi) {
  std::vector<Alt> out;
  if (lo >= hi) return out;
  const std::string word = lower(text(lo));

  if (kIndefPronouns.count(word) || word == "oneself") {
    TypeId t = r_.vocabulary.referential_type;
    if (const auto* e = r_.lex_entry(word, "pron"))
      t = e->senses.front().type;
    auto n = make_node(Indicator::Term, t, word, static_cast<double>(lo),
                       static_cast<int>(lo));
    out.push_back({n, lo + 1});
    return out;
  }

  std::size_t cur = lo;
  if (is_det(word)) ++cur;
  if (cur < hi && is_certain_word(lower(text(cur)))) ++cur;

  // Premodifiers: adjectives, and nouns immediately followed by another noun.
  struct Premod {
    PNodePtr node;
  };
  std::vector<Premod> mods;
  while (cur < hi) {
    const auto adjs = analyses(cur, "adj");
    const auto nouns = analyses(cur, "n");
    bool next_is_noun = cur + 1 < hi && !analyses(cur + 1, "n").empty();
    if (!adjs.empty() && next_is_noun) {
      const auto& an = adjs.front();
      const auto& sense = an.entry->senses.front();
      auto m = make_node(Indicator::F, sense.type, an.lemma,
                         static_cast<double>(cur), static_cast<int>(cur));
      note_sense(m, cur, sense.type);
      mods.push_back({m});
      ++cur;
      continue;
    }
    if (!nouns.empty() && next_is_noun) {
      const auto& an = nouns.front();
      const auto& sense = an.entry->senses.front();
      auto m = make_node(Indicator::Term, sense.type, an.lemma,
                         static_cast<double>(cur), static_cast<int>(cur));
      note_sense(m, cur, sense.type);
      mods.push_back({m});
      ++cur;
      continue;
    }
    break;
  }

  if (cur >= hi) return out;
  for (const auto& an : analyses(cur, "n")) {
    for (const auto& sense : an.entry->senses) {
      auto head = make_node(Indicator::Term, sense.type, an.lemma,
                            static_cast<double>(cur), static_cast<int>(cur));
      note_sense(head, cur, sense.type);
      for (const auto& m : mods) head->children.push_back({"MOD", m.node});
      std::size_t next = cur + 1;
      // Relational "of" complement, possibly gapped.
      if (next < hi && lower(text(next)) == "of") {
        std::size_t obj = next + 1;
        if (obj >= hi) {
          auto h2 = std::make_shared<PNode>(*head);
          h2->seq = seq_++;
          h2->children.push_back({"FIGURE", make_gap(next + 0.25)});
          out.push_back({h2, next + 1});
        } else {
          for (auto& np : parse_np(obj, hi)) {
            auto h2 = std::make_shared<PNode>(*head);
            h2->seq = seq_++;
            h2->children.push_back({"FIGURE", np.node});
            out.push_back({h2, np.next});
          }
        }
        continue;
      }
      out.push_back({head, next});
    }
  }
  return out;
}

}  // namespace

DefinitionParser::DefinitionParser(const Resource& resource)
    : resource_(resource) {}

ParseOutcome DefinitionParser::parse(const std::vector<TaggedToken>& tokens,
                                     const ParseContext& ctx) const {
  ParseOutcome out;
  if (tokens.empty()) {
    out.error = ParseOutcome::Error::NoParse;
    out.message = "empty definition";
    return out;
  }

  ParseRun run(resource_, tokens);
  if (auto unk = run.unknown_token()) {
    out.error = ParseOutcome::Error::UnknownToken;
    out.message = "unknown token '" + *unk + "'";
    return out;
  }

  std::vector<LFGraph> graphs = run.run();
  if (graphs.empty()) {
    out.error = ParseOutcome::Error::NoParse;
    out.message = "no analysis under the definition grammar";
    return out;
  }

  std::set<std::string> role_names(ctx.candidate_role_names.begin(),
                                   ctx.candidate_role_names.end());
  std::vector<std::pair<std::string, LFGraph>> keyed;
  std::set<std::string> seen;
  for (auto& g : graphs) {
    g = mark_surface_patterns(std::move(g), tokens, resource_);
    // Context compatibility: gaps and marked nodes whose incoming role is
    // among the induced candidate roles.
    g.context_matches = 0;
    for (const auto& n : g.nodes) {
      bool markable = n.indicator == Indicator::Impro || !n.marks.empty();
      if (!markable) continue;
      for (const auto* e : g.edges_to(n.id)) {
        const std::string base = resource_.vocabulary.normalize_role(e->label);
        if (role_names.count(base) || role_names.count(e->label)) {
          ++g.context_matches;
          break;
        }
      }
    }
    std::string dump = g.dump();
    if (!seen.insert(dump).second) continue;
    keyed.push_back({std::move(dump), std::move(g)});
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    const LFGraph& x = a.second;
    const LFGraph& y = b.second;
    if (x.tag_matches != y.tag_matches) return x.tag_matches > y.tag_matches;
    if (x.context_matches != y.context_matches)
      return x.context_matches > y.context_matches;
    if (x.impro_count != y.impro_count) return x.impro_count < y.impro_count;
    if (x.sense_penalty != y.sense_penalty) return x.sense_penalty < y.sense_penalty;
    if (x.sense_depth != y.sense_depth) return x.sense_depth < y.sense_depth;
    return a.first < b.first;
  });
  for (auto& [key, g] : keyed) {
    g.check(resource_.vocabulary.referential_type);
    out.graphs.push_back(std::move(g));
  }
  return out;
}

std::vector<TaggedToken> tokenize_gloss(const std::string& text) {
  std::vector<TaggedToken> out;
  std::string cur;
  auto flush = [&]() {
    if (!cur.empty()) {
      out.push_back({lower(cur), ""});
      cur.clear();
    }
  };
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (c == '(' || c == ')' || c == ';' || c == ',') {
      flush();
      out.push_back({std::string(1, c), ""});
    } else {
      cur += c;
    }
  }
  flush();
  return out;
}

LFGraph mark_surface_patterns(LFGraph graph, const std::vector<TaggedToken>& tokens,
                              const Resource& resource) {
  // Parenthesized spans.
  std::vector<std::pair<int, int>> paren_spans;
  int open = -1;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].text == "(") open = static_cast<int>(i);
    if (tokens[i].text == ")" && open >= 0) {
      paren_spans.push_back({open, static_cast<int>(i)});
      open = -1;
    }
  }
  auto in_parens = [&](int idx) {
    for (const auto& [a, b] : paren_spans)
      if (idx > a && idx < b) return true;
    return false;
  };

  auto premod_start = [&](int idx) {
    // Walk left over adjective/noun premodifiers to find the determiner slot.
    int i = idx - 1;
    while (i >= 0) {
      const std::string& t = tokens[static_cast<std::size_t>(i)].text;
      bool premod = false;
      for (const char* pos : {"adj", "n"}) {
        if (resource.lex_entry(t, pos)) premod = true;
      }
      if (!premod) break;
      --i;
    }
    return i;
  };

  const std::set<std::string> structural = {"MOD", "OPERAND", "GROUND", "COMPAR",
                                            "FIGURE"};
  for (auto& n : graph.nodes) {
    if (n.token_index < 0) continue;
    const std::string& surface = tokens[static_cast<std::size_t>(n.token_index)].text;

    if (kIndefPronouns.count(surface)) n.marks.insert(SurfaceMark::IndefPronoun);

    if (in_parens(n.token_index) && n.indicator == Indicator::Term)
      n.marks.insert(SurfaceMark::Parenthetical);

    if (n.indicator == Indicator::Term && !kIndefPronouns.count(surface)) {
      int before = premod_start(n.token_index);
      bool has_det = before >= 0 && is_det(tokens[static_cast<std::size_t>(before)].text);
      bool certain = before >= 0 &&
                     is_certain_word(tokens[static_cast<std::size_t>(before)].text);
      if (certain) n.marks.insert(SurfaceMark::CertainMarked);
      if (!has_det && !certain && !in_parens(n.token_index)) {
        bool plural = surface.size() > 2 && surface.back() == 's' &&
                      !resource.lex_entry(surface, "n");
        const auto* entry = resource.lex_entry(
            plural ? surface.substr(0, surface.size() - 1) : surface, "n");
        bool mass = entry && entry->has_flag("MASS");
        if (entry && (plural || mass)) {
          // Argument position: a role edge from an event node, not a
          // structural attachment.
          for (const auto* e : graph.edges_to(n.id)) {
            if (structural.count(e->label)) continue;
            const auto& parent = graph.node(e->from);
            if (parent.indicator == Indicator::F && !parent.word.empty()) {
              n.marks.insert(SurfaceMark::IndefNoun);
              break;
            }
          }
        }
      }
    }
  }
  return graph;
}

}  // namespace semlex
