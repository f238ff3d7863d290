#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "semlex/mapping.hpp"

using namespace semlex;

namespace {

HybridNode type_node(const std::string& name) {
  return HybridNode::of_type(TypeId{name});
}

}  // namespace

TEST_CASE("resolve_mapping walks hypernyms breadth-first") {
  HybridOntology hybrid(fixtures::seed().resource, fixtures::corpus());

  SUBCASE("direct mapping resolves with zero hops") {
    auto m = hybrid.resolve_mapping("have%2:34:00::");
    REQUIRE(m);
    CHECK(m->type.value == "ONT::CONSUME");
    CHECK(m->hops == 0);
  }

  SUBCASE("indirect mapping counts hypernym edges") {
    auto m = hybrid.resolve_mapping("breakfast%2:34:00::");
    REQUIRE(m);
    CHECK(m->type.value == "ONT::CONSUME");
    CHECK(m->hops == 2);
  }

  SUBCASE("no mapped ancestor yields nothing") {
    Corpus c;
    Synset s;
    s.id = "orphan%2:30:00::";
    s.senses = {parse_sense_key("orphan%2:30:00::")};
    c.add(s);
    HybridOntology h2(fixtures::seed().resource, c);
    CHECK_FALSE(h2.resolve_mapping("orphan%2:30:00::"));
  }

  SUBCASE("unknown synset is an error") {
    CHECK_THROWS_AS(hybrid.resolve_mapping("nope%2:30:00::"), DomainError);
  }
}

TEST_CASE("hypernym ties break lexicographically") {
  Resource r = fixtures::tiny_resource();
  r.mappings.push_back({"alpha%2:30:00::", TypeId{"ONT::LEAF-A"},
                        MappingKind::Direct, MappingProvenance::Seed});
  r.mappings.push_back({"beta%2:30:00::", TypeId{"ONT::LEAF-B"},
                        MappingKind::Direct, MappingProvenance::Seed});
  Corpus c;
  Synset a{"alpha%2:30:00::", {parse_sense_key("alpha%2:30:00::")}, "", {}, {}, {}};
  Synset b{"beta%2:30:00::", {parse_sense_key("beta%2:30:00::")}, "", {}, {}, {}};
  Synset child{"child%2:30:00::", {parse_sense_key("child%2:30:00::")}, "", {},
               {"beta%2:30:00::", "alpha%2:30:00::"}, {}};
  c.add(a);
  c.add(b);
  c.add(child);
  HybridOntology h(r, c);
  auto m = h.resolve_mapping("child%2:30:00::");
  REQUIRE(m);
  CHECK(m->hops == 1);
  CHECK(m->type.value == "ONT::LEAF-A");  // alpha < beta
}

TEST_CASE("duplicate mappings are reported, never fixed") {
  Resource r = fixtures::tiny_resource();
  r.mappings.push_back({"x%2:30:00::", TypeId{"ONT::LEAF-A"},
                        MappingKind::Direct, MappingProvenance::Seed});
  r.mappings.push_back({"x%2:30:00::", TypeId{"ONT::LEAF-B"},
                        MappingKind::Direct, MappingProvenance::Seed});
  Corpus c;
  c.add({"x%2:30:00::", {parse_sense_key("x%2:30:00::")}, "", {}, {}, {}});
  HybridOntology h(r, c);
  auto dups = h.detect_duplicates();
  REQUIRE(dups.size() == 1);
  CHECK(dups[0].synset == "x%2:30:00::");
  CHECK(dups[0].types.size() == 2);

  SUBCASE("same (synset,type) twice is a load error, not a duplicate") {
    r.mappings.push_back({"x%2:30:00::", TypeId{"ONT::LEAF-A"},
                          MappingKind::Direct, MappingProvenance::Seed});
    CHECK_THROWS_AS(r.validate(), LoadError);
  }

  SUBCASE("duplicate-free mapping set reports nothing") {
    HybridOntology clean(fixtures::seed().resource, fixtures::corpus());
    CHECK(clean.detect_duplicates().empty());
  }
}

TEST_CASE("hybrid depth charges one per edge plus one per mapping") {
  const Resource& r = fixtures::seed().resource;
  HybridOntology hybrid(r, fixtures::corpus());

  CHECK(hybrid.hybrid_depth(type_node("ONT::ROOT")) == 1);
  // ROOT > REFERENTIAL-SEM > SITUATION > EVENT: three edges below the root.
  CHECK(hybrid.hybrid_depth(type_node("ONT::EVENT")) == 4);

  int consume = hybrid.hybrid_depth(type_node("ONT::CONSUME"));
  CHECK(hybrid.hybrid_depth(HybridNode::of_synset("have%2:34:00::")) == consume + 1);
  CHECK(hybrid.hybrid_depth(HybridNode::of_synset("breakfast%2:34:00::")) ==
        consume + 3);
}

TEST_CASE("lcs picks the deepest shared ancestor") {
  HybridOntology hybrid(fixtures::seed().resource, fixtures::corpus());
  CHECK(hybrid.lcs(type_node("ONT::EAT"), type_node("ONT::EAT")).display() ==
        "ONT::EAT");
  CHECK(hybrid.lcs(type_node("ONT::EAT"), type_node("ONT::CONSUME")).display() ==
        "ONT::CONSUME");
  CHECK(hybrid.lcs(type_node("ONT::EAT"), type_node("ONT::DRINKING")).display() ==
        "ONT::CONSUME");
  // Chains from synsets pass through their mapped type.
  CHECK(hybrid.lcs(HybridNode::of_synset("breakfast%2:34:00::"),
                   type_node("ONT::DRINKING"))
            .display() == "ONT::CONSUME");
}

TEST_CASE("wup matches the hand-derived fixture values") {
  Resource r = fixtures::tiny_resource();
  Corpus c;
  HybridOntology h(r, c);
  auto A = type_node("ONT::MID");
  auto B = type_node("ONT::LEAF-A");
  auto C = type_node("ONT::LEAF-B");
  CHECK(h.wup(A, A) == doctest::Approx(1.0));
  CHECK(h.wup(B, C) == doctest::Approx(2.0 * 2 / (3 + 3)));  // 0.6667
  CHECK(h.wup(A, B) == doctest::Approx(2.0 * 2 / (2 + 3)));  // 0.8
}

TEST_CASE("wup properties over the loaded fixture") {
  HybridOntology hybrid(fixtures::seed().resource, fixtures::corpus());
  std::vector<HybridNode> nodes;
  for (const auto& [id, t] : fixtures::seed().resource.ontology)
    nodes.push_back(HybridNode::of_type(id));
  for (const auto& s : fixtures::corpus().synsets())
    if (hybrid.resolve_mapping(s.id)) nodes.push_back(HybridNode::of_synset(s.id));

  std::mt19937 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const auto& a = nodes[rng() % nodes.size()];
    const auto& b = nodes[rng() % nodes.size()];
    double ab = hybrid.wup(a, b);
    CHECK(ab == doctest::Approx(hybrid.wup(b, a)));
    CHECK(ab > 0.0);
    CHECK(ab <= 1.0);
  }
  for (const auto& n : nodes) CHECK(hybrid.wup(n, n) == doctest::Approx(1.0));
}

TEST_CASE("synsets sit strictly below their mapped type") {
  HybridOntology hybrid(fixtures::seed().resource, fixtures::corpus());
  for (const auto& s : fixtures::corpus().synsets()) {
    auto m = hybrid.resolve_mapping(s.id);
    if (!m) continue;
    CHECK(hybrid.hybrid_depth(HybridNode::of_synset(s.id)) >
          hybrid.hybrid_depth(HybridNode::of_type(m->type)));
  }
}

TEST_CASE("word similarity maximizes over sense pairs") {
  SUBCASE("identical words share a sense") {
    HybridOntology hybrid(fixtures::seed().resource, fixtures::corpus());
    CHECK(hybrid.word_similarity("eat", "eat") == doctest::Approx(1.0));
  }

  SUBCASE("single-sense lemmas reduce to one wup") {
    HybridOntology hybrid(fixtures::seed().resource, fixtures::corpus());
    double direct = hybrid.wup(type_node("ONT::DECAY"), type_node("ONT::DECREASE"));
    CHECK(hybrid.word_similarity("rot", "lessen") == doctest::Approx(direct));
  }

  SUBCASE("multi-sense pair takes the max over the cross product") {
    // w1 has senses at MID (depth 2) and LEAF-A (depth 3); w2 at LEAF-B (3).
    // Pairs: wup(MID, LEAF-B) = 0.8, wup(LEAF-A, LEAF-B) = 0.6667; max 0.8.
    Resource r = fixtures::tiny_resource();
    LexEntry w1{"w1", "v", {}, {{TypeId{"ONT::MID"}, {}}, {TypeId{"ONT::LEAF-A"}, {}}}};
    LexEntry w2{"w2", "v", {}, {{TypeId{"ONT::LEAF-B"}, {}}}};
    r.lexicon[{"w1", "v"}] = w1;
    r.lexicon[{"w2", "v"}] = w2;
    Corpus c;
    HybridOntology h(r, c);
    HybridNode wa, wb;
    CHECK(h.word_similarity("w1", "w2", &wa, &wb) == doctest::Approx(0.8));
    CHECK(wa.display() == "ONT::MID");
    CHECK_THROWS_AS(h.word_similarity("w1", "nolemma"), DomainError);
  }

  SUBCASE("word similarity dominates each specific sense pair") {
    HybridOntology hybrid(fixtures::seed().resource, fixtures::corpus());
    double best = hybrid.word_similarity("eat", "drink");
    for (const auto& a : hybrid.sense_nodes("eat"))
      for (const auto& b : hybrid.sense_nodes("drink"))
        CHECK(best >= hybrid.wup(a, b) - 1e-12);
  }
}
