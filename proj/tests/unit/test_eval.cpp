#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "semlex/eval.hpp"
#include "semlex/io.hpp"
#include "semlex/mapping.hpp"

using namespace semlex;

namespace {

// Independent oracle: O(n^2) fractional ranks, then a direct Pearson.
std::vector<double> oracle_ranks(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double less = 0, equal = 0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[j] < v[i]) ++less;
      if (v[j] == v[i]) ++equal;
    }
    out[i] = less + (equal + 1.0) / 2.0;
  }
  return out;
}

double oracle_spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
  auto rx = oracle_ranks(xs);
  auto ry = oracle_ranks(ys);
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= rx.size();
  my /= ry.size();
  double cov = 0, vx = 0, vy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    cov += (rx[i] - mx) * (ry[i] - my);
    vx += (rx[i] - mx) * (rx[i] - mx);
    vy += (ry[i] - my) * (ry[i] - my);
  }
  return cov / std::sqrt(vx * vy);
}

}  // namespace

TEST_CASE("spearman handles ties with average ranks") {
  CHECK(spearman({1, 2, 3, 4}, {10, 20, 30, 40}) == doctest::Approx(1.0));
  CHECK(spearman({1, 2, 3, 4}, {40, 30, 20, 10}) == doctest::Approx(-1.0));
  // Hand-computed: ranks x = (1, 2.5, 2.5, 4), y = (1, 3, 2, 4);
  // Pearson on ranks = 4.5 / sqrt(4.5 * 5).
  CHECK(spearman({1, 2, 2, 4}, {1, 3, 2, 4}) ==
        doctest::Approx(0.9486832980505138).epsilon(1e-12));

  CHECK_THROWS_AS(spearman({1, 1, 1}, {1, 2, 3}), DomainError);
  CHECK_THROWS_AS(spearman({1, 2}, {1, 2, 3}), DomainError);
  CHECK_THROWS_AS(spearman({1}, {2}), DomainError);
}

TEST_CASE("spearman agrees with the brute-force oracle") {
  std::mt19937 rng(29);
  std::uniform_int_distribution<int> value(0, 6);  // forces ties
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> xs(10), ys(10);
    for (auto& x : xs) x = value(rng);
    for (auto& y : ys) y = value(rng);
    bool cx = std::all_of(xs.begin(), xs.end(), [&](double v) { return v == xs[0]; });
    bool cy = std::all_of(ys.begin(), ys.end(), [&](double v) { return v == ys[0]; });
    if (cx || cy) continue;
    CHECK(spearman(xs, ys) == doctest::Approx(oracle_spearman(xs, ys)).epsilon(1e-9));
  }
}

TEST_CASE("spearman is invariant under monotone transforms and exchange") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> value(0, 1);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> xs(8), ys(8);
    for (auto& x : xs) x = value(rng);
    for (auto& y : ys) y = value(rng);
    double base = spearman(xs, ys);
    CHECK(spearman(ys, xs) == doctest::Approx(base));
    std::vector<double> tx = xs;
    for (auto& v : tx) v = std::exp(3 * v) + 7;
    CHECK(spearman(tx, ys) == doctest::Approx(base));
  }
}

TEST_CASE("prf follows the set conventions") {
  CHECK(prf({"A", "B"}, {"A", "B"}).f1 == doctest::Approx(1.0));

  Prf half = prf({"AGENT"}, {"AGENT", "AFFECTED"});
  CHECK(half.precision == doctest::Approx(1.0));
  CHECK(half.recall == doctest::Approx(0.5));
  CHECK(half.f1 == doctest::Approx(2.0 / 3.0));

  Prf empty = prf({}, {"AGENT"});
  CHECK(empty.precision == 0.0);
  CHECK(empty.recall == 0.0);
  CHECK(empty.f1 == 0.0);

  CHECK_THROWS_AS(prf({"A"}, {}), DomainError);
}

TEST_CASE("prf agrees with direct set arithmetic") {
  std::mt19937 rng(37);
  const std::vector<std::string> universe = {"A", "B", "C", "D", "E", "F"};
  for (int trial = 0; trial < 100; ++trial) {
    std::set<std::string> p, g;
    for (const auto& item : universe) {
      if (rng() % 2) p.insert(item);
      if (rng() % 2) g.insert(item);
    }
    if (g.empty()) g.insert("A");
    std::size_t hit = 0;
    for (const auto& x : p)
      if (g.count(x)) ++hit;
    Prf m = prf(p, g);
    double expected_p = p.empty() ? 0.0 : double(hit) / p.size();
    double expected_r = double(hit) / g.size();
    CHECK(m.precision == doctest::Approx(expected_p));
    CHECK(m.recall == doctest::Approx(expected_r));
    if (m.precision + m.recall > 0)
      CHECK(m.f1 == doctest::Approx(2 * expected_p * expected_r /
                                    (expected_p + expected_r)));
    else
      CHECK(m.f1 == 0.0);
    CHECK(m.f1 <= std::max(m.precision, m.recall) + 1e-12);
    CHECK(((m.f1 == 0.0) == (m.precision * m.recall == 0.0)));
  }
}

TEST_CASE("similarity evaluation correlates wup with judgements") {
  const Resource& r = fixtures::seed().resource;
  const Corpus& corpus = fixtures::corpus();
  HybridOntology hybrid(r, corpus);

  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"eat", "drink"}, {"eat", "move"}, {"die", "rot"},
      {"rebuke", "move"}, {"proceed", "move"}};
  std::vector<SimJudgement> judgements;
  for (const auto& [a, b] : pairs)
    judgements.push_back({a, b, hybrid.word_similarity(a, b)});

  SUBCASE("self-generated judgements give perfect correlation") {
    CHECK(sim_eval(r, corpus, judgements).rho == doctest::Approx(1.0));
  }

  SUBCASE("reversed judgements give perfect anticorrelation") {
    auto reversed = judgements;
    for (auto& j : reversed) j.human_score = -j.human_score;
    CHECK(sim_eval(r, corpus, reversed).rho == doctest::Approx(-1.0));
  }

  SUBCASE("one swapped pair gives the hand-computed rho") {
    // Four pairs with distinct scores ranked 1,2,4,3 against themselves:
    // rho = 1 - 6*(0+0+1+1)/(4*15) = 0.8.
    std::vector<SimJudgement> four(judgements.begin(), judgements.begin() + 4);
    std::sort(four.begin(), four.end(),
              [](const SimJudgement& a, const SimJudgement& b) {
                return a.human_score < b.human_score;
              });
    REQUIRE(four[0].human_score < four[1].human_score);
    REQUIRE(four[1].human_score < four[2].human_score);
    REQUIRE(four[2].human_score < four[3].human_score);
    std::swap(four[2].human_score, four[3].human_score);
    CHECK(sim_eval(r, corpus, four).rho == doctest::Approx(0.8));
  }

  SUBCASE("unresolvable lemmas are skipped and counted") {
    auto with_bad = judgements;
    with_bad.push_back({"frobnicate", "eat", 1.0});
    auto result = sim_eval(r, corpus, with_bad);
    CHECK(result.skipped == 1);
    CHECK(result.used == static_cast<int>(judgements.size()));
    CHECK(result.rho == doctest::Approx(1.0));
  }
}

TEST_CASE("ablation recreates deleted entries and beats the baselines") {
  const auto& loaded = fixtures::ablation_seed();
  Corpus corpus = io::load_corpus(fixtures::data_dir() / "corpus.json");
  auto cases = io::load_cases(fixtures::data_dir() / "ablation" / "cases.json");

  SUBCASE("role identification dominates the AGENT+AFFECTED baseline") {
    auto report = ablate_roles(loaded.resource, corpus, loaded.learner, cases);
    CHECK(report.system.micro.f1 > report.baseline.micro.f1);
    CHECK(report.system.micro.f1 == doctest::Approx(1.0));
    CHECK(report.system.unprocessable == 0);
    // The outweigh case is where the baseline pays.
    for (const auto& row : report.rows) {
      if (row.synset_id == "outweigh%2:42:00::") {
        CHECK(row.gold.count("NEUTRAL1"));
        CHECK(row.predicted == row.gold);
      }
    }
  }

  SUBCASE("template recall exceeds the transitive-only baseline") {
    auto report = ablate_templates(loaded.resource, corpus, loaded.learner, cases);
    CHECK(report.system.micro.recall > report.baseline.micro.recall);
    // The subject-control gold is unreachable for the baseline.
    for (const auto& row : report.rows) {
      if (row.synset_id == "desire%2:37:00::")
        CHECK(row.gold.count("EXPERIENCER-FORMAL-SUBJCONTROL-TEMPL"));
    }
  }

  SUBCASE("empty case list produces an empty report") {
    auto report = ablate_roles(loaded.resource, corpus, loaded.learner, {});
    CHECK(report.system.cases == 0);
    CHECK(report.rows.empty());
  }

  SUBCASE("a template case without a shared lexicon item is rejected") {
    AblationCase bad;
    bad.synset_id = "breeze%2:38:00::";  // no direct mapping in the fixture
    bad.gold_roles = {"AGENT"};
    bad.gold_templates = {"AGENT-XP-TEMPL"};
    auto with_bad = cases;
    with_bad.push_back(bad);
    CHECK_THROWS_AS(
        ablate_templates(loaded.resource, corpus, loaded.learner, with_bad),
        LoadError);
  }
}
