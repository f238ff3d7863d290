#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "semlex/resource.hpp"
#include "semlex/types.hpp"

using namespace semlex;

TEST_CASE("type ids and sense keys round-trip") {
  CHECK(parse_type_id("ONT::KILL").value == "ONT::KILL");
  CHECK_THROWS_AS(parse_type_id("kill"), DomainError);
  CHECK_THROWS_AS(parse_type_id("ONT::"), DomainError);

  SenseKey k = parse_sense_key("kill%2:35:00::");
  CHECK(k.lemma == "kill");
  CHECK(sense_key_digits(k) == "23500");
  CHECK(sense_key_pos(k) == '2');
  CHECK_THROWS_AS(parse_sense_key("kill%2:35::"), DomainError);
  CHECK_THROWS_AS(parse_sense_key("Kill%2:35:00::"), DomainError);
}

TEST_CASE("subsumes follows the parent chain") {
  const Resource& r = fixtures::seed().resource;
  CHECK(r.subsumes(TypeId{"ONT::CONSUME"}, TypeId{"ONT::EAT"}));
  CHECK(r.subsumes(TypeId{"ONT::EAT"}, TypeId{"ONT::EAT"}));
  CHECK_FALSE(r.subsumes(TypeId{"ONT::EAT"}, TypeId{"ONT::CONSUME"}));
  CHECK_THROWS_AS(r.subsumes(TypeId{"ONT::NO-SUCH"}, TypeId{"ONT::EAT"}),
                  DomainError);
}

TEST_CASE("subsumes is a tree order: reflexive, transitive, antisymmetric") {
  const Resource& r = fixtures::seed().resource;
  std::vector<TypeId> ids;
  for (const auto& [id, t] : r.ontology) ids.push_back(id);
  for (const auto& a : ids) CHECK(r.subsumes(a, a));
  for (const auto& a : ids) {
    for (const auto& b : ids) {
      if (a == b) continue;
      if (r.subsumes(a, b)) CHECK_FALSE(r.subsumes(b, a));
      for (const auto& c : ids) {
        if (r.subsumes(a, b) && r.subsumes(b, c)) CHECK(r.subsumes(a, c));
      }
    }
  }
}

TEST_CASE("effective roles inherit with local override") {
  const Resource& r = fixtures::seed().resource;

  SUBCASE("type under CONSUME with no local roles") {
    auto roles = r.effective_roles(TypeId{"ONT::EAT"});
    REQUIRE(roles.size() == 3);
    CHECK(roles[0].role.name == "AGENT");
    CHECK(roles[1].role.name == "AFFECTED");
    CHECK(roles[2].role.name == "RESULT");
    CHECK(roles[1].preference.features()->get("COMESTIBLE") == "+");
  }

  SUBCASE("root has no roles") {
    CHECK(r.effective_roles(r.root()).empty());
  }

  SUBCASE("child redeclaring a role narrows it, order local-first") {
    // Hand-checked on a three-node chain: grandparent declares AGENT and
    // AFFECTED, the middle narrows AFFECTED, the child declares nothing.
    Resource t = fixtures::tiny_resource();
    FeatureSet living;
    living.set("LIVING", "+");
    t.ontology[TypeId{"ONT::ROOT"}].roles = {
        {SemRole{"AGENT"}, {living}, false},
        {SemRole{"AFFECTED"}, {FeatureSet{}}, false}};
    FeatureSet narrowed;
    narrowed.set("LIVING", "-");
    t.ontology[TypeId{"ONT::MID"}].roles = {{SemRole{"AFFECTED"}, {narrowed}, false}};
    auto roles = t.effective_roles(TypeId{"ONT::LEAF-A"});
    REQUIRE(roles.size() == 2);
    CHECK(roles[0].role.name == "AFFECTED");
    CHECK(roles[0].preference.features()->get("LIVING") == "-");
    CHECK(roles[1].role.name == "AGENT");
  }
}

TEST_CASE("inheritance never drops a role") {
  const Resource& r = fixtures::seed().resource;
  for (const auto& [id, t] : r.ontology) {
    if (!t.parent) continue;
    std::set<std::string> child_names, parent_names;
    for (const auto& spec : r.effective_roles(id)) child_names.insert(spec.role.name);
    for (const auto& spec : r.effective_roles(*t.parent))
      parent_names.insert(spec.role.name);
    for (const auto& name : parent_names) CHECK(child_names.count(name));
  }
}

TEST_CASE("feature compatibility is a soft preference check") {
  const auto& vocab = fixtures::seed().resource.vocabulary.features;
  FeatureSet living = parse_feature_set({"LIVING+"});
  FeatureSet living_phys = parse_feature_set({"LIVING+", "PHYS-OBJ"});
  FeatureSet nonliving = parse_feature_set({"LIVING-"});

  CHECK(feature_compatible(living, living_phys, vocab));
  CHECK_FALSE(feature_compatible(living, nonliving, vocab));
  CHECK(feature_compatible(FeatureSet{}, nonliving, vocab));

  FeatureSet undeclared = parse_feature_set({"TASTY+"});
  CHECK_THROWS_AS(feature_compatible(undeclared, living, vocab), DomainError);
}

TEST_CASE("feature compatibility is monotone under preference shrinking") {
  const auto& vocab = fixtures::seed().resource.vocabulary.features;
  std::mt19937 rng(7);
  auto random_set = [&]() {
    FeatureSet fs;
    for (const auto& attr : vocab.attributes()) {
      if (rng() % 2 == 0) continue;
      const auto& vals = attr.values;
      fs.set(attr.name, vals[rng() % vals.size()]);
    }
    return fs;
  };
  for (int i = 0; i < 500; ++i) {
    FeatureSet pref = random_set();
    FeatureSet cand = random_set();
    bool before = feature_compatible(pref, cand, vocab);
    if (!before) continue;
    // Removing any pair from a compatible preference keeps it compatible.
    for (const auto& [attr, value] : pref.pairs()) {
      FeatureSet smaller;
      for (const auto& [a, v] : pref.pairs())
        if (a != attr) smaller.set(a, v);
      CHECK(feature_compatible(smaller, cand, vocab));
    }
  }
}

TEST_CASE("feature text forms parse and print canonically") {
  CHECK(parse_feature("PHYS-OBJ") == std::pair<std::string, std::string>{"PHYS-OBJ", "+"});
  CHECK(parse_feature("LIVING+") == std::pair<std::string, std::string>{"LIVING", "+"});
  CHECK(parse_feature("ORIGIN=NATURAL") ==
        std::pair<std::string, std::string>{"ORIGIN", "NATURAL"});
  CHECK_THROWS_AS(parse_feature_set({"LIVING+", "LIVING-"}), DomainError);

  const auto& vocab = fixtures::seed().resource.vocabulary.features;
  FeatureSet fs = parse_feature_set({"ORIGIN=NATURAL", "PHYS-OBJ"});
  CHECK(feature_set_display(fs, vocab) == "{PHYS-OBJ ORIGIN=NATURAL}");
}

TEST_CASE("seed resource passes the referential closure scan") {
  CHECK_NOTHROW(fixtures::seed().resource.validate("seed"));
}

TEST_CASE("stative region is detected through the chain") {
  const Resource& r = fixtures::seed().resource;
  CHECK(r.is_stative(TypeId{"ONT::BELIEVE"}));
  CHECK(r.is_stative(TypeId{"ONT::HEAVY"}));
  CHECK_FALSE(r.is_stative(TypeId{"ONT::REQUEST"}));
  CHECK_FALSE(r.is_stative(TypeId{"ONT::CAUSE-EFFECT"}));
}
