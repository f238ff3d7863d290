#include <doctest.h>

#include "fixtures.hpp"
#include "semlex/parser.hpp"

using namespace semlex;

namespace {

ParseOutcome parse_synset(const std::string& id) {
  const Synset& s = fixtures::corpus().synset(id);
  HybridOntology hybrid(fixtures::seed().resource, fixtures::corpus());
  ParseContext ctx;
  if (auto c = induce_constraints(fixtures::seed().resource, hybrid, id))
    for (const auto& spec : c->candidate_roles)
      ctx.candidate_role_names.push_back(spec.role.name);
  DefinitionParser parser(fixtures::seed().resource);
  return parser.parse(s.tokens, ctx);
}

const LFNode* find_word(const LFGraph& g, const std::string& word) {
  for (const auto& n : g.nodes)
    if (n.word == word) return &n;
  return nullptr;
}

}  // namespace

TEST_CASE("cause to die parses to the gap-marked causal form") {
  auto po = parse_synset("kill%2:35:00::");
  REQUIRE(po.ok());
  const LFGraph& g = po.graphs.front();

  const LFNode& root = g.node(g.root);
  CHECK(root.indicator == Indicator::F);
  CHECK(root.type.value == "ONT::CAUSE-EFFECT");

  REQUIRE(g.impro_nodes().size() == 2);
  CHECK(g.node("X1").indicator == Indicator::Impro);
  CHECK(g.node("X3").indicator == Indicator::Impro);
  CHECK(g.node("X1").type.value == "ONT::REFERENTIAL-SEM");

  // AGENT -> X1 on the root; FORMAL -> DIE with AFFECTED -> X3.
  bool agent_edge = false, formal_edge = false;
  for (const auto* e : g.edges_from(g.root)) {
    if (e->label == "AGENT" && e->to == "X1") agent_edge = true;
    if (e->label == "FORMAL") {
      formal_edge = true;
      const LFNode& die = g.node(e->to);
      CHECK(die.type.value == "ONT::DIE");
      REQUIRE(g.edges_from(die.id).size() == 1);
      CHECK(g.edges_from(die.id)[0]->label == "AFFECTED");
      CHECK(g.edges_from(die.id)[0]->to == "X3");
    }
  }
  CHECK(agent_edge);
  CHECK(formal_edge);
  CHECK(g.tag_matches == 1);  // the tagged die token
}

TEST_CASE("comparative copula parses with a comparison node") {
  auto po = parse_synset("outweigh%2:42:00::");
  REQUIRE(po.ok());
  const LFGraph& g = po.graphs.front();
  const LFNode& root = g.node(g.root);
  CHECK(root.type.value == "ONT::HEAVY");
  bool found = false;
  for (const auto* e : g.edges_from(g.root)) {
    if (e->label != "FORMAL") continue;
    const LFNode& cmp = g.node(e->to);
    CHECK(cmp.type.value == "ONT::MORE-THAN");
    for (const auto* e2 : g.edges_from(cmp.id)) {
      if (e2->label == "COMPAR") {
        CHECK(g.node(e2->to).indicator == Indicator::Impro);
        found = true;
      }
    }
  }
  CHECK(found);
}

TEST_CASE("surface patterns are marked on parsed graphs") {
  SUBCASE("parenthesized argument") {
    auto po = parse_synset("preserve%2:41:00::");
    REQUIRE(po.ok());
    const LFNode* food = find_word(po.graphs.front(), "food");
    REQUIRE(food);
    CHECK(food->marks.count(SurfaceMark::Parenthetical));
  }

  SUBCASE("indefinite pronouns under a disjunction") {
    auto po = parse_synset("bring%2:38:00::");
    REQUIRE(po.ok());
    const LFGraph& g = po.graphs.front();
    const LFNode* smth = find_word(g, "something");
    const LFNode* smbd = find_word(g, "somebody");
    REQUIRE(smth);
    REQUIRE(smbd);
    CHECK(smth->marks.count(SurfaceMark::IndefPronoun));
    CHECK(smbd->marks.count(SurfaceMark::IndefPronoun));
    // Both sit under one OR operator.
    auto in1 = g.edges_to(smth->id);
    auto in2 = g.edges_to(smbd->id);
    REQUIRE(in1.size() == 1);
    REQUIRE(in2.size() == 1);
    CHECK(in1[0]->label == "OPERAND");
    CHECK(in1[0]->from == in2[0]->from);
    CHECK(g.node(in1[0]->from).op == "OR");
  }

  SUBCASE("bare indefinite plural noun in object position") {
    auto po = parse_synset("drink%2:34:00::");
    REQUIRE(po.ok());
    const LFNode* liquids = find_word(po.graphs.front(), "liquid");
    REQUIRE(liquids);
    CHECK(liquids->marks.count(SurfaceMark::IndefNoun));
  }

  SUBCASE("a certain N head") {
    auto po = parse_synset("charge%2:40:00::");
    REQUIRE(po.ok());
    bool marked = false;
    for (const auto& g : po.graphs) {
      const LFNode* price = find_word(g, "price");
      if (price && price->marks.count(SurfaceMark::CertainMarked)) marked = true;
    }
    CHECK(marked);
  }

  SUBCASE("a determiner blocks the indefinite-noun mark") {
    auto po = parse_synset("breakfast%2:34:00::");
    REQUIRE(po.ok());
    const LFNode* meal = find_word(po.graphs.front(), "meal");
    REQUIRE(meal);
    CHECK(meal->marks.empty());
  }
}

TEST_CASE("every emitted graph satisfies the gap invariants") {
  const TypeId ref{"ONT::REFERENTIAL-SEM"};
  for (const auto& s : fixtures::corpus().synsets()) {
    auto po = parse_synset(s.id);
    if (!po.ok()) continue;
    for (const auto& g : po.graphs) {
      CHECK_NOTHROW(g.check(ref));
      for (const auto* gap : g.impro_nodes()) {
        CHECK(gap->type == ref);
        CHECK(g.edges_to(gap->id).size() == 1);
      }
    }
  }
}

TEST_CASE("both transitive and intransitive readings are emitted and ranked") {
  auto po = parse_synset("censure%2:32:00::");
  REQUIRE(po.ok());
  REQUIRE(po.graphs.size() >= 2);
  // Context roles {AGENT, AFFECTED, ...} rank the transitive reading first.
  CHECK(po.graphs[0].impro_count == 2);
  bool has_intransitive = false;
  for (const auto& g : po.graphs)
    if (g.impro_count == 1) has_intransitive = true;
  CHECK(has_intransitive);
}

TEST_CASE("parse ranking is a deterministic total order") {
  auto first = parse_synset("bring%2:38:00::");
  auto second = parse_synset("bring%2:38:00::");
  REQUIRE(first.ok());
  REQUIRE(first.graphs.size() == second.graphs.size());
  for (std::size_t i = 0; i < first.graphs.size(); ++i)
    CHECK(first.graphs[i].dump() == second.graphs[i].dump());
}

TEST_CASE("fully tagged glosses pin the top parse's senses") {
  std::vector<TaggedToken> tokens = {
      {"cause", "cause%2:36:00::"}, {"to", ""}, {"die", "die%2:30:00::"}};
  DefinitionParser parser(fixtures::seed().resource);
  auto po = parser.parse(tokens, {});
  REQUIRE(po.ok());
  CHECK(po.graphs.front().tag_matches == 2);
  const LFNode& root = po.graphs.front().node(po.graphs.front().root);
  CHECK(root.type.value == "ONT::CAUSE-EFFECT");
}

TEST_CASE("parse failures are reported, not fabricated") {
  DefinitionParser parser(fixtures::seed().resource);

  SUBCASE("unknown token without tag") {
    auto po = parser.parse(tokenize_gloss("frobnicate quickly"), {});
    CHECK(po.error == ParseOutcome::Error::UnknownToken);
    CHECK(po.message.find("frobnicate") != std::string::npos);
  }

  SUBCASE("known tokens outside the grammar") {
    auto po = parser.parse(tokenize_gloss("of the"), {});
    CHECK(po.error == ParseOutcome::Error::NoParse);
  }

  SUBCASE("empty definition") {
    auto po = parser.parse({}, {});
    CHECK(po.error == ParseOutcome::Error::NoParse);
  }
}

TEST_CASE("tokenizer splits punctuation") {
  auto toks = tokenize_gloss("send (money) in payment");
  REQUIRE(toks.size() == 6);
  CHECK(toks[1].text == "(");
  CHECK(toks[2].text == "money");
  CHECK(toks[3].text == ")");
}

TEST_CASE("multiword verbs join greedily but keep the single-word reading") {
  DefinitionParser parser(fixtures::seed().resource);
  auto po = parser.parse(tokenize_gloss("take in liquids"), {});
  REQUIRE(po.ok());
  // The multiword reading has one gap and wins over take + PP (two gaps).
  CHECK(po.graphs.front().impro_count == 1);
  CHECK(po.graphs.front().node(po.graphs.front().root).type.value ==
        "ONT::CONSUME");
  CHECK(po.graphs.size() >= 2);
}
