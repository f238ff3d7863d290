#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "semlex/corpus.hpp"
#include "semlex/eval.hpp"
#include "semlex/learner.hpp"
#include "semlex/logic.hpp"
#include "semlex/resource.hpp"

namespace semlex::io {

inline constexpr int kFormatVersion = 1;

// A resource directory holds a manifest plus the component files:
// ontology, lexicon, templates, axioms, mappings, vocabulary,
// skeleton_rules, phrase_rules (see docs/formats.md).
struct LoadedResource {
  Resource resource;
  LearnerConfig learner;
};

LoadedResource load_resource(const std::filesystem::path& dir);

// Canonical serialization: sorted keys, stable array orders, two-space
// indent, newline-terminated files, content hashes in the manifest.
// load(save(r)) is structurally equal to r and save is byte-deterministic.
void save_resource(const Resource& resource, const LearnerConfig& learner,
                   const std::filesystem::path& dir);

Corpus load_corpus(const std::filesystem::path& file);

std::vector<GroundFact> load_facts(const Resource& resource,
                                   const std::filesystem::path& file);

// Tab-separated word1, word2, score lines; '#' comments allowed.
std::vector<SimJudgement> load_judgements(const std::filesystem::path& file);

std::vector<AblationCase> load_cases(const std::filesystem::path& file);

void save_report(const BuildReport& report, const std::filesystem::path& json_path,
                 const std::filesystem::path& text_path);

std::string report_text(const BuildReport& report);

// FNV-1a 64-bit content hash, hex encoded.
std::string content_hash(const std::string& bytes);

// Structural equality over every component of two resources.
bool resource_equal(const Resource& a, const Resource& b);

}  // namespace semlex::io
