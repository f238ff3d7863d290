#include <doctest.h>

#include <fstream>

#include "fixtures.hpp"
#include "semlex/io.hpp"

using namespace semlex;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spill(const fs::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << s;
}

// Copies the seed fileset and rewrites one component body.
fs::path corrupted_seed(const std::string& tag, const std::string& component,
                        const std::string& body) {
  fs::path dir = fixtures::fresh_tmp_dir("io-" + tag);
  for (const auto& entry : fs::directory_iterator(fixtures::data_dir() / "seed"))
    fs::copy_file(entry.path(), dir / entry.path().filename());
  spill(dir / component, body);
  // Hashes in the copied manifest are unverified placeholders.
  return dir;
}

}  // namespace

TEST_CASE("a valid fileset loads with exactly one root") {
  const Resource& r = fixtures::seed().resource;
  int roots = 0;
  for (const auto& [id, t] : r.ontology)
    if (!t.parent) ++roots;
  CHECK(roots == 1);
  CHECK(r.root().value == "ONT::ROOT");
}

TEST_CASE("load errors cite the file, record, and violated invariant") {
  SUBCASE("dangling parent reference") {
    auto dir = corrupted_seed("dangling", "ontology.json", R"({
      "types": [
        {"name": "ONT::ROOT", "provenance": "seed"},
        {"name": "ONT::EAT", "parent": "ONT::MISSING", "provenance": "seed"}
      ]})");
    CHECK_THROWS_WITH_AS(io::load_resource(dir),
                         doctest::Contains("dangling parent"), LoadError);
  }

  SUBCASE("cycle in the type tree") {
    auto dir = corrupted_seed("cycle", "ontology.json", R"({
      "types": [
        {"name": "ONT::ROOT", "provenance": "seed"},
        {"name": "ONT::A", "parent": "ONT::B", "provenance": "seed"},
        {"name": "ONT::B", "parent": "ONT::A", "provenance": "seed"}
      ]})");
    CHECK_THROWS_WITH_AS(io::load_resource(dir), doctest::Contains("cycle"),
                         LoadError);
  }

  SUBCASE("duplicate synset-type mapping") {
    auto dir = corrupted_seed("dupmap", "mappings.json", R"({
      "mappings": [
        {"synset": "have%2:34:00::", "type": "ONT::CONSUME"},
        {"synset": "have%2:34:00::", "type": "ONT::CONSUME"}
      ]})");
    CHECK_THROWS_WITH_AS(io::load_resource(dir), doctest::Contains("duplicate"),
                         LoadError);
  }

  SUBCASE("unknown role in a type declaration") {
    auto dir = corrupted_seed("badrole", "ontology.json", R"({
      "types": [
        {"name": "ONT::ROOT", "provenance": "seed",
         "arguments": [{"role": "PROTAGONIST", "features": []}]}
      ]})");
    CHECK_THROWS_WITH_AS(io::load_resource(dir), doctest::Contains("unknown role"),
                         LoadError);
  }

  SUBCASE("unrecognized format version") {
    auto dir = fixtures::fresh_tmp_dir("io-version");
    for (const auto& entry : fs::directory_iterator(fixtures::data_dir() / "seed"))
      fs::copy_file(entry.path(), dir / entry.path().filename());
    std::string manifest = slurp(dir / "manifest.json");
    auto pos = manifest.find("\"format_version\": 1");
    REQUIRE(pos != std::string::npos);
    manifest.replace(pos, 19, "\"format_version\": 9");
    spill(dir / "manifest.json", manifest);
    CHECK_THROWS_WITH_AS(io::load_resource(dir),
                         doctest::Contains("format_version"), LoadError);
  }
}

TEST_CASE("manifest hashes guard saved filesets") {
  auto dir = fixtures::fresh_tmp_dir("io-hash");
  io::save_resource(fixtures::seed().resource, fixtures::seed().learner, dir);
  CHECK_NOTHROW(io::load_resource(dir));
  // Tampering with a hashed file is caught.
  std::string lex = slurp(dir / "lexicon.json");
  spill(dir / "lexicon.json", lex + "\n");
  CHECK_THROWS_WITH_AS(io::load_resource(dir), doctest::Contains("hash"),
                       LoadError);
}

TEST_CASE("save/load round-trips preserve structure and bytes") {
  SUBCASE("seed fixture") {
    auto dir1 = fixtures::fresh_tmp_dir("rt-seed-1");
    auto dir2 = fixtures::fresh_tmp_dir("rt-seed-2");
    io::save_resource(fixtures::seed().resource, fixtures::seed().learner, dir1);
    auto loaded = io::load_resource(dir1);
    CHECK(io::resource_equal(loaded.resource, fixtures::seed().resource));
    io::save_resource(loaded.resource, loaded.learner, dir2);
    for (const auto& entry : fs::directory_iterator(dir1))
      CHECK(slurp(entry.path()) == slurp(dir2 / entry.path().filename()));
  }

  SUBCASE("bootstrap output") {
    const auto& result = fixtures::built();
    auto dir1 = fixtures::fresh_tmp_dir("rt-built-1");
    auto dir2 = fixtures::fresh_tmp_dir("rt-built-2");
    io::save_resource(result.resource, fixtures::seed().learner, dir1);
    auto loaded = io::load_resource(dir1);
    CHECK(io::resource_equal(loaded.resource, result.resource));
    io::save_resource(loaded.resource, loaded.learner, dir2);
    for (const auto& entry : fs::directory_iterator(dir1))
      CHECK(slurp(entry.path()) == slurp(dir2 / entry.path().filename()));
  }
}

TEST_CASE("corpus loading validates tags and hypernyms") {
  SUBCASE("fixture corpus is clean") {
    CHECK(fixtures::corpus().synsets().size() >= 30);
  }

  SUBCASE("dangling hypernym") {
    Corpus c;
    Synset s{"a%2:30:00::", {parse_sense_key("a%2:30:00::")}, "", {},
             {"missing%2:30:00::"}, {}};
    c.add(s);
    CHECK_THROWS_AS(c.validate(), LoadError);
  }

  SUBCASE("hypernym cycle") {
    Corpus c;
    Synset a{"a%2:30:00::", {parse_sense_key("a%2:30:00::")}, "", {},
             {"b%2:30:00::"}, {}};
    Synset b{"b%2:30:00::", {parse_sense_key("b%2:30:00::")}, "", {},
             {"a%2:30:00::"}, {}};
    c.add(a);
    c.add(b);
    CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("cycle"), LoadError);
  }

  SUBCASE("tag lemma must match its token") {
    Corpus c;
    Synset s{"a%2:30:00::", {parse_sense_key("a%2:30:00::")}, "die",
             {{"die", "kill%2:35:00::"}}, {}, {}};
    c.add(s);
    CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("lemma"), LoadError);
  }
}

TEST_CASE("coverage summary counts verbs and situation types") {
  SUBCASE("seed fixture tallies") {
    auto cov = summarize(fixtures::seed().resource);
    CHECK(cov.verbs == 25);
    CHECK(cov.sense_types == 36);
    CHECK(cov.avg_senses_per_verb == doctest::Approx(1.0));
  }

  SUBCASE("empty lexicon") {
    Resource r = fixtures::seed().resource;
    r.lexicon.clear();
    auto cov = summarize(r);
    CHECK(cov.verbs == 0);
    CHECK(cov.avg_senses_per_verb == doctest::Approx(0.0));
    CHECK(cov.sense_types == 36);
  }

  SUBCASE("one verb with two senses") {
    Resource r = fixtures::seed().resource;
    r.lexicon.clear();
    LexEntry e{"w", "v", {}, {{TypeId{"ONT::EAT"}, {}}, {TypeId{"ONT::DRINKING"}, {}}}};
    r.lexicon[{"w", "v"}] = e;
    auto cov = summarize(r);
    CHECK(cov.verbs == 1);
    CHECK(cov.avg_senses_per_verb == doctest::Approx(2.0));
  }
}

TEST_CASE("report serialization carries the iteration structure") {
  const auto& report = fixtures::built().report;
  auto dir = fixtures::fresh_tmp_dir("report");
  io::save_report(report, dir / "report.json", dir / "report.txt");
  std::string text = slurp(dir / "report.txt");
  CHECK(text.find("iteration 1") != std::string::npos);
  CHECK(text.find("STATIVE-EVENT-CONFLICT") != std::string::npos);
  std::string json = slurp(dir / "report.json");
  CHECK(json.find("incorporated_iteration") != std::string::npos);
  CHECK(json.find("rejection_rate") != std::string::npos);
}

TEST_CASE("content hashes are stable") {
  CHECK(io::content_hash("") == "cbf29ce484222325");
  CHECK(io::content_hash("a") == io::content_hash("a"));
  CHECK(io::content_hash("a") != io::content_hash("b"));
}
