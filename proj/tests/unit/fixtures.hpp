#pragma once

#include <filesystem>
#include <string>

#include "semlex/corpus.hpp"
#include "semlex/io.hpp"
#include "semlex/learner.hpp"
#include "semlex/resource.hpp"

namespace fixtures {

inline std::filesystem::path data_dir() { return SEMLEX_DATA_DIR; }

inline const semlex::io::LoadedResource& seed() {
  static semlex::io::LoadedResource loaded =
      semlex::io::load_resource(data_dir() / "seed");
  return loaded;
}

inline const semlex::Corpus& corpus() {
  static semlex::Corpus c = semlex::io::load_corpus(data_dir() / "corpus.json");
  return c;
}

inline const semlex::BootstrapResult& built() {
  static semlex::BootstrapResult result =
      semlex::bootstrap(corpus(), seed().resource, seed().learner, {3, 1});
  return result;
}

inline const semlex::io::LoadedResource& ablation_seed() {
  static semlex::io::LoadedResource loaded =
      semlex::io::load_resource(data_dir() / "ablation" / "seed");
  return loaded;
}

inline std::filesystem::path fresh_tmp_dir(const std::string& tag) {
  auto p = std::filesystem::temp_directory_path() /
           ("semlex-test-" + tag + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

// Small hand-built hierarchy for depth/similarity arithmetic:
//   ROOT (depth 1) > MID (2) > LEAF-A, LEAF-B (3)
inline semlex::Resource tiny_resource() {
  using namespace semlex;
  Resource r;
  auto& v = r.vocabulary;
  v.features.declare({"LIVING", {"+", "-"}, false});
  v.roles = {"AGENT", "AFFECTED", "NEUTRAL", "NEUTRAL1", "EXPERIENCER",
             "FORMAL", "RESULT", "FIGURE", "GROUND", "COMPAR"};
  v.core_roles = {"AGENT", "AFFECTED", "NEUTRAL", "EXPERIENCER", "FORMAL"};
  v.role_variants = {{"NEUTRAL1", "NEUTRAL"}};
  v.situation_root = TypeId{"ONT::ROOT"};
  v.referential_type = TypeId{"ONT::ROOT"};
  v.comparative_type = TypeId{"ONT::ROOT"};

  auto add = [&](const std::string& name, const std::string& parent) {
    OntType t;
    t.id = TypeId{name};
    if (!parent.empty()) t.parent = TypeId{parent};
    r.ontology[t.id] = t;
  };
  add("ONT::ROOT", "");
  add("ONT::MID", "ONT::ROOT");
  add("ONT::LEAF-A", "ONT::MID");
  add("ONT::LEAF-B", "ONT::MID");
  return r;
}

}  // namespace fixtures
