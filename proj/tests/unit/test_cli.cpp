#include <doctest.h>

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "semlex/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int status;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = semlex::cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::string seed_dir() { return (fixtures::data_dir() / "seed").string(); }
std::string corpus_file() { return (fixtures::data_dir() / "corpus.json").string(); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("build writes a loadable fileset and a report") {
  auto out_dir = fixtures::fresh_tmp_dir("cli-build");
  auto r = run({"build", "--seed", seed_dir(), "--corpus", corpus_file(),
                "--out", out_dir.string()});
  REQUIRE(r.status == 0);
  CHECK(fs::exists(out_dir / "manifest.json"));
  CHECK(fs::exists(out_dir / "report.json"));
  CHECK(fs::exists(out_dir / "report.txt"));
  CHECK(r.out.find("iteration 1") != std::string::npos);
  CHECK(r.out.find("STATIVE-EVENT-CONFLICT") != std::string::npos);

  SUBCASE("query-type prints the derived entry") {
    auto q = run({"query-type", "--seed", out_dir.string(), "ONT::PINION-WN23500"});
    REQUIRE(q.status == 0);
    CHECK(q.out.find("Parent: ONT::CONFINE") != std::string::npos);
    CHECK(q.out.find("{PHYS-OBJ ORIGIN=NATURAL}") != std::string::npos);
  }

  SUBCASE("entail chains over the built axioms") {
    auto facts = (fixtures::data_dir() / "facts" / "kill.facts").string();
    auto e = run({"entail", "--seed", out_dir.string(), "--facts", facts,
                  "--query", "[ONT::DEAD b] @ AFTER(t1)"});
    REQUIRE(e.status == 0);
    CHECK(e.out.rfind("yes", 0) == 0);
    CHECK(e.out.find("AX::DIE-1") != std::string::npos);

    auto u = run({"entail", "--seed", out_dir.string(), "--facts", facts,
                  "--query", "[ONT::DEAD a] @ AFTER(t1)"});
    REQUIRE(u.status == 0);
    CHECK(u.out.rfind("unknown", 0) == 0);
  }

  SUBCASE("rebuilding yields byte-identical outputs") {
    auto out2 = fixtures::fresh_tmp_dir("cli-build-2");
    auto r2 = run({"build", "--seed", seed_dir(), "--corpus", corpus_file(),
                   "--out", out2.string()});
    REQUIRE(r2.status == 0);
    for (const auto& entry : fs::directory_iterator(out_dir))
      CHECK(slurp(entry.path()) == slurp(out2 / entry.path().filename()));
  }
}

TEST_CASE("parse-gloss prints ranked analyses") {
  auto r = run({"parse-gloss", "--seed", seed_dir(), "--gloss", "cause to die"});
  REQUIRE(r.status == 0);
  CHECK(r.out.find("ONT::CAUSE-EFFECT") != std::string::npos);
  CHECK(r.out.find("IMPRO") != std::string::npos);

  SUBCASE("synset mode uses the corpus tags") {
    auto s = run({"parse-gloss", "--seed", seed_dir(), "--corpus", corpus_file(),
                  "--synset", "kill%2:35:00::"});
    REQUIRE(s.status == 0);
    CHECK(s.out.find("tags 1") != std::string::npos);
  }

  SUBCASE("an unparsable gloss is a domain rejection") {
    auto bad = run({"parse-gloss", "--seed", seed_dir(), "--gloss", "frobnicate"});
    CHECK(bad.status == 1);
  }
}

TEST_CASE("similarity prints the score and witnessing senses") {
  auto r = run({"similarity", "--seed", seed_dir(), "--corpus", corpus_file(),
                "eat", "drink"});
  REQUIRE(r.status == 0);
  CHECK(r.out.find("0.8750") != std::string::npos);

  auto bad = run({"similarity", "--seed", seed_dir(), "--corpus", corpus_file(),
                  "eat", "frobnicate"});
  CHECK(bad.status == 1);
}

TEST_CASE("eval commands emit metric tables") {
  std::string ab_seed = (fixtures::data_dir() / "ablation" / "seed").string();
  std::string cases = (fixtures::data_dir() / "ablation" / "cases.json").string();
  auto roles = run({"eval-roles", "--seed", ab_seed, "--corpus", corpus_file(),
                    "--cases", cases});
  REQUIRE(roles.status == 0);
  CHECK(roles.out.find("system") != std::string::npos);
  CHECK(roles.out.find("baseline") != std::string::npos);

  auto sim = run({"eval-sim", "--seed", seed_dir(), "--corpus", corpus_file(),
                  "--judgements", (fixtures::data_dir() / "judgements.tsv").string()});
  REQUIRE(sim.status == 0);
  CHECK(sim.out.find("spearman") != std::string::npos);
}

TEST_CASE("validate distinguishes schema errors from success") {
  auto ok = run({"validate", "--seed", seed_dir(), "--corpus", corpus_file()});
  CHECK(ok.status == 0);

  auto missing = run({"validate", "--seed", "/nonexistent-seed-dir"});
  CHECK(missing.status == 2);
  CHECK(missing.err.find("error") != std::string::npos);

  auto unknown = run({"query-type", "--seed", seed_dir(), "ONT::NO-SUCH-TYPE"});
  CHECK(unknown.status == 2);
}

TEST_CASE("summarize reports coverage") {
  auto r = run({"summarize", "--seed", seed_dir()});
  REQUIRE(r.status == 0);
  CHECK(r.out.find("verbs 25") != std::string::npos);
  CHECK(r.out.find("sense types 36") != std::string::npos);
  CHECK(r.out.find("1.00") != std::string::npos);
}
