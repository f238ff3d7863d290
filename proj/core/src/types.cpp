#include "semlex/types.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace semlex {

namespace {

bool upper_ident(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalnum(static_cast<unsigned char>(s.front()))) return false;
  for (char c : s) {
    if (!(std::isupper(static_cast<unsigned char>(c)) ||
          std::isdigit(static_cast<unsigned char>(c)) || c == '-'))
      return false;
  }
  return true;
}

bool lemma_char(char c) {
  return std::islower(static_cast<unsigned char>(c)) ||
         std::isdigit(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
         c == '.' || c == '\'';
}

}  // namespace

bool TypeId::valid() const {
  static const std::string prefix = "ONT::";
  if (value.size() <= prefix.size() || value.compare(0, prefix.size(), prefix) != 0)
    return false;
  return upper_ident(value.substr(prefix.size()));
}

TypeId parse_type_id(const std::string& text) {
  TypeId id{text};
  if (!id.valid())
    throw DomainError("malformed type id: '" + text + "'");
  return id;
}

SenseKey parse_sense_key(const std::string& text) {
  auto pct = text.find('%');
  if (pct == std::string::npos || pct == 0)
    throw DomainError("malformed sense key: '" + text + "'");
  std::string lemma = text.substr(0, pct);
  for (char c : lemma)
    if (!lemma_char(c)) throw DomainError("malformed sense key lemma: '" + text + "'");

  std::string rest = text.substr(pct + 1);
  std::vector<std::string> fields;
  std::string cur;
  for (char c : rest) {
    if (c == ':') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  if (fields.size() != 5)
    throw DomainError("sense key must have 5 ':' fields: '" + text + "'");
  auto digits = [](const std::string& s, std::size_t lo, std::size_t hi) {
    if (s.size() < lo || s.size() > hi) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
      return std::isdigit(static_cast<unsigned char>(c));
    });
  };
  if (!digits(fields[0], 1, 1) || !digits(fields[1], 2, 2) ||
      !digits(fields[2], 2, 2))
    throw DomainError("malformed sense key fields: '" + text + "'");
  // head word and head id may be empty
  if (!fields[4].empty() && !digits(fields[4], 1, 2))
    throw DomainError("malformed sense key head id: '" + text + "'");
  return SenseKey{lemma, text};
}

bool is_sense_key(const std::string& text) {
  try {
    parse_sense_key(text);
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

std::string sense_key_digits(const SenseKey& k) {
  auto pct = k.key.find('%');
  std::string out;
  for (std::size_t i = pct + 1; i < k.key.size(); ++i) {
    char c = k.key[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      out += c;
    } else if (c == ':') {
      if (out.size() >= 5) break;  // stop after p:ff:nn
    }
  }
  return out.substr(0, 5);
}

char sense_key_pos(const SenseKey& k) {
  auto pct = k.key.find('%');
  return k.key[pct + 1];
}

void FeatureVocabulary::declare(FeatureAttribute attr) {
  if (index_.count(attr.name))
    throw DomainError("feature attribute redeclared: " + attr.name);
  index_[attr.name] = attrs_.size();
  attrs_.push_back(std::move(attr));
}

bool FeatureVocabulary::declared(const std::string& attr) const {
  return index_.count(attr) != 0;
}

const FeatureAttribute* FeatureVocabulary::find(const std::string& attr) const {
  auto it = index_.find(attr);
  return it == index_.end() ? nullptr : &attrs_[it->second];
}

bool FeatureVocabulary::value_allowed(const std::string& attr,
                                      const std::string& value) const {
  const auto* a = find(attr);
  if (!a) return false;
  return std::find(a->values.begin(), a->values.end(), value) != a->values.end();
}

void FeatureSet::set(const std::string& attr, const std::string& value) {
  auto it = pairs_.find(attr);
  if (it != pairs_.end() && it->second != value)
    throw DomainError("conflicting values for feature attribute " + attr +
                      ": " + it->second + " vs " + value);
  pairs_[attr] = value;
}

std::optional<std::string> FeatureSet::get(const std::string& attr) const {
  auto it = pairs_.find(attr);
  if (it == pairs_.end()) return std::nullopt;
  return it->second;
}

void FeatureSet::validate(const FeatureVocabulary& vocab) const {
  for (const auto& [attr, value] : pairs_) {
    if (!vocab.declared(attr))
      throw DomainError("undeclared feature attribute: " + attr);
    if (!vocab.value_allowed(attr, value))
      throw DomainError("value '" + value + "' not allowed for attribute " + attr);
  }
}

std::pair<std::string, std::string> parse_feature(const std::string& text) {
  if (text.empty()) throw DomainError("empty feature");
  auto eq = text.find('=');
  if (eq != std::string::npos) {
    if (eq == 0 || eq + 1 >= text.size())
      throw DomainError("malformed feature: '" + text + "'");
    return {text.substr(0, eq), text.substr(eq + 1)};
  }
  char last = text.back();
  if (last == '+' || last == '-') {
    if (text.size() == 1) throw DomainError("malformed feature: '" + text + "'");
    return {text.substr(0, text.size() - 1), std::string(1, last)};
  }
  return {text, "+"};
}

FeatureSet parse_feature_set(const std::vector<std::string>& items) {
  FeatureSet fs;
  for (const auto& item : items) {
    auto [attr, value] = parse_feature(item);
    fs.set(attr, value);
  }
  return fs;
}

std::vector<std::string> format_feature_set(const FeatureSet& fs,
                                            const FeatureVocabulary& vocab) {
  // Vocabulary declaration order, so displays read as declared.
  std::vector<std::pair<std::size_t, std::string>> keyed;
  for (const auto& [attr, value] : fs.pairs()) {
    const auto* a = vocab.find(attr);
    std::size_t rank = vocab.attributes().size();
    for (std::size_t i = 0; i < vocab.attributes().size(); ++i)
      if (vocab.attributes()[i].name == attr) rank = i;
    std::string text;
    if (value == "+" && a && a->bare)
      text = attr;
    else if (value == "+" || value == "-")
      text = attr + value;
    else
      text = attr + "=" + value;
    keyed.push_back({rank, std::move(text)});
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::string> out;
  for (auto& [rank, text] : keyed) out.push_back(std::move(text));
  return out;
}

std::string feature_set_display(const FeatureSet& fs,
                                const FeatureVocabulary& vocab) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& item : format_feature_set(fs, vocab)) {
    if (!first) os << ' ';
    os << item;
    first = false;
  }
  os << '}';
  return os.str();
}

bool feature_compatible(const FeatureSet& pref, const FeatureSet& candidate,
                        const FeatureVocabulary& vocab) {
  pref.validate(vocab);
  candidate.validate(vocab);
  for (const auto& [attr, value] : pref.pairs()) {
    auto got = candidate.get(attr);
    if (got && *got != value) return false;
  }
  return true;
}

}  // namespace semlex
