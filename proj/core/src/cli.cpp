#include "semlex/cli.hpp"

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "semlex/eval.hpp"
#include "semlex/inference.hpp"
#include "semlex/io.hpp"
#include "semlex/learner.hpp"
#include "semlex/mapping.hpp"
#include "semlex/parser.hpp"

namespace semlex::cli {

namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kDomainRejection = 1;
constexpr int kInputError = 2;

struct CommonArgs {
  std::string seed;
  std::string corpus;
};

io::LoadedResource load_seed(const CommonArgs& a) {
  return io::load_resource(fs::path(a.seed));
}

Corpus load_corpus_or_empty(const CommonArgs& a) {
  if (a.corpus.empty()) return Corpus{};
  return io::load_corpus(fs::path(a.corpus));
}

void print_type(std::ostream& out, const Resource& r, const TypeId& id) {
  const OntType& t = r.type(id);
  out << id.value << "\n";
  if (t.parent) out << "  Parent: " << t.parent->value << "\n";
  auto roles = r.effective_roles(id);
  if (!roles.empty()) {
    out << "  Arguments:\n";
    for (const auto& spec : roles) {
      out << "    " << spec.role.name << " ";
      if (const auto* ty = spec.preference.type())
        out << ty->value;
      else if (const auto* fsp = spec.preference.features())
        out << feature_set_display(*fsp, r.vocabulary.features);
      if (spec.optional) out << " (optional)";
      out << "\n";
    }
  }
  if (!t.axioms.empty()) {
    out << "  Definition:\n";
    for (const auto& axid : t.axioms) {
      const Axiom& ax = r.axioms.at(axid);
      out << "    " << print_expr(ax.consequent) << "\n";
    }
  }
  if (!t.synsets.empty()) {
    out << "  WN:";
    for (const auto& sk : t.synsets) out << " " << sk.key;
    out << "\n";
  }
  out << "  Provenance: ";
  if (t.provenance.seed)
    out << "seed";
  else
    out << "derived(iteration " << t.provenance.iteration << ")";
  out << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"verb lexicon and event ontology toolkit"};
  app.require_subcommand(1);

  CommonArgs common;
  std::string out_dir, report_path, facts_path, query_text, gloss_text, synset_id;
  std::string type_name, word1, word2, cases_path, judgements_path;
  int max_iterations = 3;
  int max_depth = 8;
  int jobs = 1;

  auto add_seed = [&](CLI::App* cmd, bool need_corpus) {
    cmd->add_option("--seed", common.seed, "seed resource directory")->required();
    auto* opt = cmd->add_option("--corpus", common.corpus, "gloss corpus file");
    if (need_corpus) opt->required();
  };

  auto* build = app.add_subcommand("build", "bootstrap a derived resource");
  add_seed(build, true);
  build->add_option("--out", out_dir, "output directory")->required();
  build->add_option("--max-iterations", max_iterations, "iteration cap");
  build->add_option("--jobs", jobs, "worker threads");
  build->add_option("--report", report_path, "human-readable report path");

  auto* query_type = app.add_subcommand("query-type", "print one concept entry");
  add_seed(query_type, false);
  query_type->add_option("type", type_name, "concept name, e.g. ONT::KILL")->required();

  auto* similarity = app.add_subcommand("similarity", "word similarity with witness");
  add_seed(similarity, false);
  similarity->add_option("word1", word1)->required();
  similarity->add_option("word2", word2)->required();

  auto* entail = app.add_subcommand("entail", "entailment query over a facts file");
  add_seed(entail, false);
  entail->add_option("--facts", facts_path, "ground facts file")->required();
  entail->add_option("--query", query_text, "query fact")->required();
  entail->add_option("--max-depth", max_depth, "chaining depth cap");

  auto* parse_gloss = app.add_subcommand("parse-gloss", "print ranked LF analyses");
  add_seed(parse_gloss, false);
  parse_gloss->add_option("--gloss", gloss_text, "definition text");
  parse_gloss->add_option("--synset", synset_id, "corpus synset id (uses its tags)");

  auto* eval_roles = app.add_subcommand("eval-roles", "role-set ablation metrics");
  add_seed(eval_roles, true);
  eval_roles->add_option("--cases", cases_path, "ablation cases file")->required();

  auto* eval_templates =
      app.add_subcommand("eval-templates", "template-set ablation metrics");
  add_seed(eval_templates, true);
  eval_templates->add_option("--cases", cases_path, "ablation cases file")->required();

  auto* eval_sim = app.add_subcommand("eval-sim", "similarity correlation");
  add_seed(eval_sim, true);
  eval_sim->add_option("--judgements", judgements_path, "word1 word2 score lines")
      ->required();

  auto* summarize_cmd = app.add_subcommand("summarize", "coverage counts");
  add_seed(summarize_cmd, false);

  auto* validate = app.add_subcommand("validate", "schema and invariant check only");
  add_seed(validate, false);

  try {
    std::vector<std::string> argv = args;
    std::reverse(argv.begin(), argv.end());
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (build->parsed()) {
      auto loaded = load_seed(common);
      Corpus corpus = io::load_corpus(fs::path(common.corpus));
      BootstrapOptions options;
      options.max_iterations = max_iterations;
      options.jobs = jobs;
      auto result = bootstrap(corpus, loaded.resource, loaded.learner, options);
      fs::path outp(out_dir);
      io::save_resource(result.resource, loaded.learner, outp);
      fs::path text = report_path.empty() ? outp / "report.txt" : fs::path(report_path);
      io::save_report(result.report, outp / "report.json", text);
      out << io::report_text(result.report);
      return kOk;
    }

    if (query_type->parsed()) {
      auto loaded = load_seed(common);
      TypeId id = parse_type_id(type_name);
      if (!loaded.resource.has_type(id)) {
        err << "error: unknown type " << type_name << "\n";
        return kInputError;
      }
      print_type(out, loaded.resource, id);
      return kOk;
    }

    if (similarity->parsed()) {
      auto loaded = load_seed(common);
      Corpus corpus = load_corpus_or_empty(common);
      HybridOntology hybrid(loaded.resource, corpus);
      HybridNode wa, wb;
      double score = hybrid.word_similarity(word1, word2, &wa, &wb);
      out << std::fixed << std::setprecision(4) << score << "  (" << wa.display()
          << ", " << wb.display() << ")\n";
      return kOk;
    }

    if (entail->parsed()) {
      auto loaded = load_seed(common);
      auto facts = io::load_facts(loaded.resource, fs::path(facts_path));
      GroundFact query = parse_fact(loaded.resource, query_text);
      auto result = entails(loaded.resource, facts, query, max_depth);
      if (result.yes) {
        out << "yes\n";
        for (const auto& d : result.trace) {
          out << "  " << print_fact(d.fact);
          if (!d.axiom.empty()) out << "  [" << d.axiom << "]";
          out << "  (" << d.rule << ")\n";
        }
        return kOk;
      }
      out << "unknown\n";
      return kOk;
    }

    if (parse_gloss->parsed()) {
      auto loaded = load_seed(common);
      Corpus corpus = load_corpus_or_empty(common);
      std::vector<TaggedToken> tokens;
      ParseContext ctx;
      if (!synset_id.empty()) {
        if (common.corpus.empty()) {
          err << "error: --synset requires --corpus\n";
          return kInputError;
        }
        const Synset& s = corpus.synset(synset_id);
        tokens = s.tokens;
        HybridOntology hybrid(loaded.resource, corpus);
        if (auto constraints =
                induce_constraints(loaded.resource, hybrid, synset_id))
          for (const auto& spec : constraints->candidate_roles)
            ctx.candidate_role_names.push_back(spec.role.name);
      } else if (!gloss_text.empty()) {
        tokens = tokenize_gloss(gloss_text);
      } else {
        err << "error: provide --gloss or --synset\n";
        return kInputError;
      }
      DefinitionParser parser(loaded.resource);
      int printed = 0;
      bool any = false;
      for (const auto& def : split_definitions(tokens)) {
        ParseOutcome po = parser.parse(def, ctx);
        if (!po.ok()) {
          err << "no parse: " << po.message << "\n";
          continue;
        }
        any = true;
        for (const auto& g : po.graphs) {
          out << "; analysis " << ++printed << " (tags " << g.tag_matches
              << ", context " << g.context_matches << ", gaps " << g.impro_count
              << ")\n";
          out << g.dump();
        }
      }
      return any ? kOk : kDomainRejection;
    }

    if (eval_roles->parsed() || eval_templates->parsed()) {
      auto loaded = load_seed(common);
      Corpus corpus = io::load_corpus(fs::path(common.corpus));
      auto cases = io::load_cases(fs::path(cases_path));
      AblationReport report =
          eval_roles->parsed()
              ? ablate_roles(loaded.resource, corpus, loaded.learner, cases)
              : ablate_templates(loaded.resource, corpus, loaded.learner, cases);
      auto row = [&](const char* name, const AblationMetrics& m) {
        out << name << ": micro P " << std::fixed << std::setprecision(4)
            << m.micro.precision << " R " << m.micro.recall << " F1 " << m.micro.f1
            << " | macro P " << m.macro.precision << " R " << m.macro.recall
            << " F1 " << m.macro.f1 << " | cases " << m.cases << " unprocessable "
            << m.unprocessable << "\n";
      };
      row("system", report.system);
      row("baseline", report.baseline);
      for (const auto& r : report.rows) {
        out << "  " << r.synset_id << " predicted {";
        bool first = true;
        for (const auto& p : r.predicted) {
          out << (first ? "" : " ") << p;
          first = false;
        }
        out << "} gold {";
        first = true;
        for (const auto& g : r.gold) {
          out << (first ? "" : " ") << g;
          first = false;
        }
        out << "}\n";
      }
      return kOk;
    }

    if (eval_sim->parsed()) {
      auto loaded = load_seed(common);
      Corpus corpus = io::load_corpus(fs::path(common.corpus));
      auto judgements = io::load_judgements(fs::path(judgements_path));
      auto result = sim_eval(loaded.resource, corpus, judgements);
      out << "spearman " << std::fixed << std::setprecision(4) << result.rho
          << " over " << result.used << " pairs";
      if (result.skipped > 0) out << " (" << result.skipped << " skipped)";
      out << "\n";
      return kOk;
    }

    if (summarize_cmd->parsed()) {
      auto loaded = load_seed(common);
      auto coverage = summarize(loaded.resource);
      out << "verbs " << coverage.verbs << "; sense types " << coverage.sense_types
          << "; avg senses/verb " << std::fixed << std::setprecision(2)
          << coverage.avg_senses_per_verb << "\n";
      return kOk;
    }

    if (validate->parsed()) {
      auto loaded = load_seed(common);
      if (!common.corpus.empty()) {
        Corpus corpus = io::load_corpus(fs::path(common.corpus));
        (void)corpus;
      }
      out << "ok\n";
      return kOk;
    }
  } catch (const LoadError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kDomainRejection;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  err << "error: no command\n";
  return kInputError;
}

}  // namespace semlex::cli
