#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace semlex {

// Raised when an input file violates the schema or an invariant.
// Carries enough context to cite the offending file and record.
class LoadError : public std::runtime_error {
public:
  LoadError(std::string file, std::string record, const std::string& what)
      : std::runtime_error(file + (record.empty() ? "" : " [" + record + "]") +
                           ": " + what),
        file_(std::move(file)), record_(std::move(record)) {}

  const std::string& file() const { return file_; }
  const std::string& record() const { return record_; }

private:
  std::string file_;
  std::string record_;
};

// Raised on contract violations at query time (unknown ids, bad arguments).
class DomainError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Ontology concept name, e.g. ONT::KILL. Uppercase, ONT:: prefixed.
struct TypeId {
  std::string value;

  TypeId() = default;
  explicit TypeId(std::string v) : value(std::move(v)) {}

  bool valid() const;
  auto operator<=>(const TypeId&) const = default;
};

// Parses and validates the textual form; throws DomainError if malformed.
TypeId parse_type_id(const std::string& text);

// Semantic role name (AGENT, AFFECTED, ...). The inventory is seed data;
// values are validated against it at load time.
struct SemRole {
  std::string name;

  SemRole() = default;
  explicit SemRole(std::string n) : name(std::move(n)) {}

  auto operator<=>(const SemRole&) const = default;
};

// Word sense identifier in the lemma%p:ff:nn:head:hh form, e.g. kill%2:35:00::.
struct SenseKey {
  std::string lemma;
  std::string key;

  auto operator<=>(const SenseKey&) const = default;
};

// Parses "kill%2:35:00::"; throws DomainError when the syntax or the
// lemma/key consistency is off.
SenseKey parse_sense_key(const std::string& text);

// True iff the string has the sense-key shape.
bool is_sense_key(const std::string& text);

// Digits of the p:ff:nn fields with separators removed ("2:35:00" -> "23500").
std::string sense_key_digits(const SenseKey& k);

// Part-of-speech letter of the key ('2' = verb in WordNet numbering).
char sense_key_pos(const SenseKey& k);

// Declared feature attribute with its value set. "bare" attributes print
// without a value when positive (PHYS-OBJ instead of PHYS-OBJ+).
struct FeatureAttribute {
  std::string name;
  std::vector<std::string> values;
  bool bare = false;
};

class FeatureVocabulary {
public:
  void declare(FeatureAttribute attr);
  bool declared(const std::string& attr) const;
  const FeatureAttribute* find(const std::string& attr) const;
  bool value_allowed(const std::string& attr, const std::string& value) const;
  const std::vector<FeatureAttribute>& attributes() const { return attrs_; }

private:
  std::vector<FeatureAttribute> attrs_;
  std::map<std::string, std::size_t> index_;
};

// Set of attribute=value pairs over the declared vocabulary; at most one
// value per attribute.
class FeatureSet {
public:
  FeatureSet() = default;

  void set(const std::string& attr, const std::string& value);
  std::optional<std::string> get(const std::string& attr) const;
  bool empty() const { return pairs_.empty(); }
  std::size_t size() const { return pairs_.size(); }
  const std::map<std::string, std::string>& pairs() const { return pairs_; }

  // Validates every attribute and value against the vocabulary.
  void validate(const FeatureVocabulary& vocab) const;

  bool operator==(const FeatureSet&) const = default;

private:
  std::map<std::string, std::string> pairs_;
};

// Parses one textual feature: ATTR=VALUE, ATTR+, ATTR-, or bare ATTR
// (bare means positive).
std::pair<std::string, std::string> parse_feature(const std::string& text);

// Parses a list of textual features into a set; rejects conflicting values.
FeatureSet parse_feature_set(const std::vector<std::string>& items);

// Canonical text form, one item per feature, sorted by attribute.
std::vector<std::string> format_feature_set(const FeatureSet& fs,
                                            const FeatureVocabulary& vocab);

// Brace display as used in concept listings: {PHYS-OBJ ORIGIN=NATURAL}.
std::string feature_set_display(const FeatureSet& fs,
                                const FeatureVocabulary& vocab);

// Soft preference check: true iff no attribute carries conflicting values.
// Missing attributes are compatible. Throws DomainError on undeclared
// attributes.
bool feature_compatible(const FeatureSet& pref, const FeatureSet& candidate,
                        const FeatureVocabulary& vocab);

}  // namespace semlex
