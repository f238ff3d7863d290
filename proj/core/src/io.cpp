#include "semlex/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "semlex/inference.hpp"

namespace semlex::io {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(path.string(), "", "cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spill(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw LoadError(path.string(), "", "cannot write file");
  out << bytes;
}

json parse_json(const fs::path& path) {
  try {
    return json::parse(slurp(path));
  } catch (const json::exception& e) {
    throw LoadError(path.string(), "", std::string("invalid JSON: ") + e.what());
  }
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

// --- feature / preference helpers -------------------------------------------

json features_to_json(const FeatureSet& fs, const FeatureVocabulary& vocab) {
  json arr = json::array();
  for (const auto& item : format_feature_set(fs, vocab)) arr.push_back(item);
  return arr;
}

FeatureSet features_from_json(const json& arr, const std::string& file,
                              const std::string& record) {
  std::vector<std::string> items;
  for (const auto& item : arr) items.push_back(item.get<std::string>());
  try {
    return parse_feature_set(items);
  } catch (const DomainError& e) {
    throw LoadError(file, record, e.what());
  }
}

json role_spec_to_json(const RoleSpec& spec, const FeatureVocabulary& vocab) {
  json j;
  j["role"] = spec.role.name;
  if (const auto* ty = spec.preference.type())
    j["type"] = ty->value;
  else if (const auto* fs = spec.preference.features())
    j["features"] = features_to_json(*fs, vocab);
  if (spec.optional) j["optional"] = true;
  return j;
}

RoleSpec role_spec_from_json(const json& j, const std::string& file,
                             const std::string& record) {
  RoleSpec spec;
  spec.role = SemRole{j.at("role").get<std::string>()};
  if (j.contains("type"))
    spec.preference.value = TypeId{j.at("type").get<std::string>()};
  else if (j.contains("features"))
    spec.preference.value = features_from_json(j.at("features"), file, record);
  spec.optional = j.value("optional", false);
  return spec;
}

}  // namespace

std::string content_hash(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

namespace {

const std::vector<std::string> kComponents = {
    "ontology", "lexicon", "templates", "axioms", "mappings",
    "vocabulary", "skeleton_rules", "phrase_rules"};

struct FileSet {
  std::map<std::string, fs::path> paths;
};

FileSet read_manifest(const fs::path& dir) {
  fs::path mpath = dir / "manifest.json";
  json m = parse_json(mpath);
  int version = m.value("format_version", -1);
  if (version != kFormatVersion)
    throw LoadError(mpath.string(), "",
                    "unrecognized format_version " + std::to_string(version));
  FileSet out;
  const auto& files = m.at("files");
  for (const auto& name : kComponents) {
    if (!files.contains(name))
      throw LoadError(mpath.string(), name, "missing component file entry");
    fs::path p = dir / files.at(name).get<std::string>();
    out.paths[name] = p;
    if (m.contains("hashes")) {
      const auto& hashes = m.at("hashes");
      std::string fname = files.at(name).get<std::string>();
      if (hashes.contains(fname)) {
        std::string expected = hashes.at(fname).get<std::string>();
        if (expected != "-" && expected != content_hash(slurp(p)))
          throw LoadError(mpath.string(), fname, "content hash mismatch");
      }
    }
  }
  return out;
}

Vocabulary load_vocabulary(const fs::path& path) {
  json j = parse_json(path);
  Vocabulary v;
  for (const auto& attr : j.at("attributes")) {
    FeatureAttribute fa;
    fa.name = attr.at("name").get<std::string>();
    for (const auto& val : attr.at("values")) fa.values.push_back(val.get<std::string>());
    fa.bare = attr.value("bare", false);
    v.features.declare(std::move(fa));
  }
  for (const auto& r : j.at("roles")) v.roles.push_back(r.get<std::string>());
  if (j.contains("role_variants"))
    for (const auto& [variant, base] : j.at("role_variants").items())
      v.role_variants[variant] = base.get<std::string>();
  for (const auto& r : j.at("core_roles")) v.core_roles.push_back(r.get<std::string>());
  for (const auto& t : j.at("stative_roots"))
    v.stative_roots.push_back(TypeId{t.get<std::string>()});
  v.situation_root = TypeId{j.at("situation_root").get<std::string>()};
  v.referential_type = TypeId{j.at("referential_type").get<std::string>()};
  v.comparative_type = TypeId{j.at("comparative_type").get<std::string>()};
  if (j.contains("prepositions")) {
    for (const auto& p : j.at("prepositions")) {
      PrepEntry pe;
      pe.word = p.at("word").get<std::string>();
      pe.type = TypeId{p.at("type").get<std::string>()};
      pe.edge = p.at("edge").get<std::string>();
      pe.takes_object = p.value("takes_object", true);
      v.prepositions.push_back(std::move(pe));
    }
  }
  return v;
}

json vocabulary_to_json(const Vocabulary& v) {
  json j;
  j["attributes"] = json::array();
  for (const auto& attr : v.features.attributes()) {
    json a;
    a["name"] = attr.name;
    a["values"] = attr.values;
    if (attr.bare) a["bare"] = true;
    j["attributes"].push_back(a);
  }
  j["roles"] = v.roles;
  json variants = json::object();
  for (const auto& [variant, base] : v.role_variants) variants[variant] = base;
  j["role_variants"] = variants;
  j["core_roles"] = v.core_roles;
  json roots = json::array();
  for (const auto& t : v.stative_roots) roots.push_back(t.value);
  j["stative_roots"] = roots;
  j["situation_root"] = v.situation_root.value;
  j["referential_type"] = v.referential_type.value;
  j["comparative_type"] = v.comparative_type.value;
  json preps = json::array();
  for (const auto& p : v.prepositions) {
    json pj;
    pj["word"] = p.word;
    pj["type"] = p.type.value;
    pj["edge"] = p.edge;
    if (!p.takes_object) pj["takes_object"] = false;
    preps.push_back(pj);
  }
  j["prepositions"] = preps;
  return j;
}

void load_ontology(const fs::path& path, Resource& r) {
  json j = parse_json(path);
  const std::string file = path.string();
  for (const auto& t : j.at("types")) {
    OntType ot;
    std::string name = t.at("name").get<std::string>();
    try {
      ot.id = parse_type_id(name);
      if (t.contains("parent"))
        ot.parent = parse_type_id(t.at("parent").get<std::string>());
      if (t.contains("features"))
        ot.features = features_from_json(t.at("features"), file, name);
      if (t.contains("arguments"))
        for (const auto& arg : t.at("arguments"))
          ot.roles.push_back(role_spec_from_json(arg, file, name));
      if (t.contains("axioms"))
        for (const auto& ax : t.at("axioms"))
          ot.axioms.push_back(AxiomId{ax.get<std::string>()});
      if (t.contains("wn"))
        for (const auto& sk : t.at("wn"))
          ot.synsets.push_back(parse_sense_key(sk.get<std::string>()));
      if (t.contains("provenance")) {
        const auto& p = t.at("provenance");
        if (p.is_string() && p.get<std::string>() == "seed") {
          ot.provenance = {true, 0};
        } else if (p.is_object() && p.contains("derived")) {
          ot.provenance = {false, p.at("derived").get<int>()};
        } else {
          throw LoadError(file, name, "malformed provenance");
        }
      }
    } catch (const DomainError& e) {
      throw LoadError(file, name, e.what());
    }
    if (r.ontology.count(ot.id))
      throw LoadError(file, name, "type declared twice");
    r.ontology[ot.id] = std::move(ot);
  }
}

json ontology_to_json(const Resource& r) {
  json types = json::array();
  for (const auto& [id, t] : r.ontology) {
    json tj;
    tj["name"] = id.value;
    if (t.parent) tj["parent"] = t.parent->value;
    if (!t.features.empty())
      tj["features"] = features_to_json(t.features, r.vocabulary.features);
    if (!t.roles.empty()) {
      json args = json::array();
      for (const auto& spec : t.roles)
        args.push_back(role_spec_to_json(spec, r.vocabulary.features));
      tj["arguments"] = args;
    }
    if (!t.axioms.empty()) {
      json axs = json::array();
      for (const auto& ax : t.axioms) axs.push_back(ax.value);
      tj["axioms"] = axs;
    }
    if (!t.synsets.empty()) {
      json wn = json::array();
      for (const auto& sk : t.synsets) wn.push_back(sk.key);
      tj["wn"] = wn;
    }
    if (t.provenance.seed)
      tj["provenance"] = "seed";
    else
      tj["provenance"] = json{{"derived", t.provenance.iteration}};
    types.push_back(tj);
  }
  return json{{"types", types}};
}

void load_lexicon(const fs::path& path, Resource& r) {
  json j = parse_json(path);
  const std::string file = path.string();
  for (const auto& e : j.at("entries")) {
    LexEntry entry;
    entry.word = e.at("word").get<std::string>();
    entry.pos = e.at("pos").get<std::string>();
    if (e.contains("flags"))
      for (const auto& f : e.at("flags")) entry.flags.push_back(f.get<std::string>());
    for (const auto& s : e.at("senses")) {
      LexSense sense;
      sense.type = TypeId{s.at("type").get<std::string>()};
      if (s.contains("templates"))
        for (const auto& t : s.at("templates"))
          sense.templates.push_back(t.get<std::string>());
      entry.senses.push_back(std::move(sense));
    }
    auto key = std::make_pair(entry.word, entry.pos);
    if (r.lexicon.count(key))
      throw LoadError(file, entry.word + "/" + entry.pos, "entry declared twice");
    r.lexicon.emplace(key, std::move(entry));
  }
}

json lexicon_to_json(const Resource& r) {
  json entries = json::array();
  for (const auto& [key, e] : r.lexicon) {
    json ej;
    ej["word"] = e.word;
    ej["pos"] = e.pos;
    if (!e.flags.empty()) ej["flags"] = e.flags;
    json senses = json::array();
    for (const auto& s : e.senses) {
      json sj;
      sj["type"] = s.type.value;
      sj["templates"] = s.templates;
      senses.push_back(sj);
    }
    ej["senses"] = senses;
    entries.push_back(ej);
  }
  return json{{"entries", entries}};
}

void load_templates(const fs::path& path, Resource& r) {
  json j = parse_json(path);
  const std::string file = path.string();
  for (const auto& t : j.at("templates")) {
    LinkingTemplate templ;
    templ.name = t.at("name").get<std::string>();
    for (const auto& s : t.at("slots")) {
      TemplateSlot slot;
      slot.grel = s.at("grel").get<std::string>();
      slot.cat = s.value("cat", std::string{});
      slot.ctype = s.value("ctype", std::string{});
      slot.role = SemRole{s.at("role").get<std::string>()};
      slot.var = s.value("var", std::string{});
      slot.subj_var = s.value("subj", std::string{});
      templ.slots.push_back(std::move(slot));
    }
    if (r.templates.count(templ.name))
      throw LoadError(file, templ.name, "template declared twice");
    r.templates[templ.name] = std::move(templ);
  }
}

json templates_to_json(const Resource& r) {
  json arr = json::array();
  for (const auto& [name, t] : r.templates) {
    json tj;
    tj["name"] = name;
    json slots = json::array();
    for (const auto& s : t.slots) {
      json sj;
      sj["grel"] = s.grel;
      if (!s.cat.empty()) sj["cat"] = s.cat;
      if (!s.ctype.empty()) sj["ctype"] = s.ctype;
      sj["role"] = s.role.name;
      if (!s.var.empty()) sj["var"] = s.var;
      if (!s.subj_var.empty()) sj["subj"] = s.subj_var;
      slots.push_back(sj);
    }
    tj["slots"] = slots;
    arr.push_back(tj);
  }
  return json{{"templates", arr}};
}

void load_axioms(const fs::path& path, Resource& r) {
  json j = parse_json(path);
  const std::string file = path.string();
  for (const auto& a : j.at("axioms")) {
    Axiom ax;
    ax.id = AxiomId{a.at("id").get<std::string>()};
    try {
      ExprPtr ante = parse_expr(a.at("antecedent").get<std::string>());
      if (ante->kind != LogicalExpr::Kind::Atom)
        throw DomainError("antecedent must be a single event pattern");
      ax.antecedent_type = ante->atom.type;
      for (const auto& arg : ante->atom.args) {
        if (arg.term.kind != Term::Kind::Variable)
          throw DomainError("antecedent arguments must be variables");
        ax.antecedent_vars.push_back({arg.role, arg.term.text});
      }
      ax.consequent = parse_expr(a.at("consequent").get<std::string>());
    } catch (const DomainError& e) {
      throw LoadError(file, ax.id.value, e.what());
    }
    if (r.axioms.count(ax.id))
      throw LoadError(file, ax.id.value, "axiom declared twice");
    r.axioms[ax.id] = std::move(ax);
  }
}

json axioms_to_json(const Resource& r) {
  json arr = json::array();
  for (const auto& [id, ax] : r.axioms) {
    json aj;
    aj["id"] = id.value;
    aj["antecedent"] = print_axiom_antecedent(ax);
    aj["consequent"] = print_expr(ax.consequent);
    arr.push_back(aj);
  }
  return json{{"axioms", arr}};
}

void load_mappings(const fs::path& path, Resource& r) {
  json j = parse_json(path);
  const std::string file = path.string();
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& m : j.at("mappings")) {
    Mapping mp;
    mp.synset = m.at("synset").get<std::string>();
    mp.type = TypeId{m.at("type").get<std::string>()};
    std::string kind = m.value("kind", "direct");
    if (kind == "direct")
      mp.kind = MappingKind::Direct;
    else if (kind == "remapped")
      mp.kind = MappingKind::Remapped;
    else
      throw LoadError(file, mp.synset, "unknown mapping kind: " + kind);
    std::string prov = m.value("provenance", "seed");
    if (prov == "seed")
      mp.provenance = MappingProvenance::Seed;
    else if (prov == "repair")
      mp.provenance = MappingProvenance::Repair;
    else
      throw LoadError(file, mp.synset, "unknown mapping provenance: " + prov);
    if (!seen.insert({mp.synset, mp.type.value}).second)
      throw LoadError(file, mp.synset,
                      "duplicate (synset,type) mapping to " + mp.type.value);
    r.mappings.push_back(std::move(mp));
  }
  std::sort(r.mappings.begin(), r.mappings.end());
}

json mappings_to_json(const Resource& r) {
  json arr = json::array();
  auto sorted = r.mappings;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& m : sorted) {
    json mj;
    mj["synset"] = m.synset;
    mj["type"] = m.type.value;
    mj["kind"] = m.kind == MappingKind::Direct ? "direct" : "remapped";
    mj["provenance"] = m.provenance == MappingProvenance::Seed ? "seed" : "repair";
    arr.push_back(mj);
  }
  return json{{"mappings", arr}};
}

LearnerConfig load_learner_config(const fs::path& skeleton_path,
                                  const fs::path& phrase_path) {
  LearnerConfig cfg;
  json sj = parse_json(skeleton_path);
  std::set<int> priorities;
  for (const auto& rj : sj.at("rules")) {
    SkeletonRule rule;
    rule.id = rj.at("id").get<std::string>();
    rule.priority = rj.at("priority").get<int>();
    for (const auto& p : rj.at("path")) rule.path.push_back(p.get<std::string>());
    rule.emit = rj.at("emit").get<std::string>();
    rule.lift_index = rj.value("lift_index", 0);
    rule.pref_index = rj.value("pref_index", -1);
    if (!priorities.insert(rule.priority).second)
      throw LoadError(skeleton_path.string(), rule.id, "priorities must be unique");
    cfg.skeleton_rules.push_back(std::move(rule));
  }
  json pj = parse_json(phrase_path);
  for (const auto& rj : pj.at("rules")) {
    PhraseRule rule;
    rule.head = TypeId{rj.at("head").get<std::string>()};
    for (const auto& m : rj.at("modifiers"))
      rule.modifiers.push_back(TypeId{m.get<std::string>()});
    rule.target = TypeId{rj.at("target").get<std::string>()};
    cfg.phrase_rules.push_back(std::move(rule));
  }
  return cfg;
}

json skeleton_rules_to_json(const LearnerConfig& cfg) {
  json arr = json::array();
  for (const auto& r : cfg.skeleton_rules) {
    json rj;
    rj["id"] = r.id;
    rj["priority"] = r.priority;
    rj["path"] = r.path;
    rj["emit"] = r.emit;
    if (r.lift_index != 0) rj["lift_index"] = r.lift_index;
    if (r.pref_index != -1) rj["pref_index"] = r.pref_index;
    arr.push_back(rj);
  }
  return json{{"rules", arr}};
}

json phrase_rules_to_json(const LearnerConfig& cfg) {
  json arr = json::array();
  for (const auto& r : cfg.phrase_rules) {
    json rj;
    rj["head"] = r.head.value;
    json mods = json::array();
    for (const auto& m : r.modifiers) mods.push_back(m.value);
    rj["modifiers"] = mods;
    rj["target"] = r.target.value;
    arr.push_back(rj);
  }
  return json{{"rules", arr}};
}

void check_learner_config(const Resource& r, const LearnerConfig& cfg) {
  for (const auto& rule : cfg.skeleton_rules) {
    for (const auto& element : rule.path) {
      if (element == "CORE-ROLE") continue;
      if (!r.vocabulary.role_declared(element))
        throw LoadError("skeleton_rules", rule.id,
                        "pattern references undeclared label: " + element);
    }
    if (rule.emit != "LIFT" && !r.vocabulary.role_declared(rule.emit))
      throw LoadError("skeleton_rules", rule.id,
                      "emitted role undeclared: " + rule.emit);
  }
  for (const auto& rule : cfg.phrase_rules) {
    for (const auto& t : {rule.head, rule.target})
      if (!r.has_type(t))
        throw LoadError("phrase_rules", rule.target.value,
                        "references unknown type: " + t.value);
    for (const auto& m : rule.modifiers)
      if (!r.has_type(m))
        throw LoadError("phrase_rules", rule.target.value,
                        "references unknown type: " + m.value);
  }
}

}  // namespace

LoadedResource load_resource(const fs::path& dir) {
  FileSet files = read_manifest(dir);
  LoadedResource out;
  out.resource.vocabulary = load_vocabulary(files.paths.at("vocabulary"));
  load_ontology(files.paths.at("ontology"), out.resource);
  load_lexicon(files.paths.at("lexicon"), out.resource);
  load_templates(files.paths.at("templates"), out.resource);
  load_axioms(files.paths.at("axioms"), out.resource);
  load_mappings(files.paths.at("mappings"), out.resource);
  out.learner = load_learner_config(files.paths.at("skeleton_rules"),
                                    files.paths.at("phrase_rules"));
  out.resource.validate(dir.string());
  check_learner_config(out.resource, out.learner);
  return out;
}

void save_resource(const Resource& resource, const LearnerConfig& learner,
                   const fs::path& dir) {
  fs::create_directories(dir);
  std::map<std::string, std::string> bodies;
  bodies["ontology.json"] = dump_json(ontology_to_json(resource));
  bodies["lexicon.json"] = dump_json(lexicon_to_json(resource));
  bodies["templates.json"] = dump_json(templates_to_json(resource));
  bodies["axioms.json"] = dump_json(axioms_to_json(resource));
  bodies["mappings.json"] = dump_json(mappings_to_json(resource));
  bodies["vocabulary.json"] = dump_json(vocabulary_to_json(resource.vocabulary));
  bodies["skeleton_rules.json"] = dump_json(skeleton_rules_to_json(learner));
  bodies["phrase_rules.json"] = dump_json(phrase_rules_to_json(learner));

  json manifest;
  manifest["format_version"] = kFormatVersion;
  json files = json::object();
  json hashes = json::object();
  for (const auto& [name, body] : bodies) {
    std::string stem = name.substr(0, name.find('.'));
    files[stem] = name;
    hashes[name] = content_hash(body);
    spill(dir / name, body);
  }
  manifest["files"] = files;
  manifest["hashes"] = hashes;
  manifest["metadata"] = {
      {"depth_model", {{"root_depth", 1}, {"mapping_hop_cost", 1}}}};
  spill(dir / "manifest.json", dump_json(manifest));
}

Corpus load_corpus(const fs::path& file) {
  json j = parse_json(file);
  Corpus corpus;
  for (const auto& sj : j.at("synsets")) {
    Synset s;
    s.id = sj.at("id").get<std::string>();
    try {
      for (const auto& k : sj.at("senses"))
        s.senses.push_back(parse_sense_key(k.get<std::string>()));
    } catch (const DomainError& e) {
      throw LoadError(file.string(), s.id, e.what());
    }
    s.gloss = sj.value("gloss", std::string{});
    if (sj.contains("tokens")) {
      for (const auto& tj : sj.at("tokens")) {
        TaggedToken tok;
        if (tj.is_string()) {
          tok.text = tj.get<std::string>();
        } else {
          tok.text = tj.at("text").get<std::string>();
          tok.sense = tj.value("sense", std::string{});
        }
        s.tokens.push_back(std::move(tok));
      }
    } else {
      s.tokens = tokenize_gloss(s.gloss);
    }
    if (sj.contains("hypernyms"))
      for (const auto& h : sj.at("hypernyms"))
        s.hypernyms.push_back(h.get<std::string>());
    if (sj.contains("examples"))
      for (const auto& e : sj.at("examples"))
        s.examples.push_back(e.get<std::string>());
    corpus.add(std::move(s));
  }
  corpus.validate(file.string());
  return corpus;
}

std::vector<GroundFact> load_facts(const Resource& resource, const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw LoadError(file.string(), "", "cannot open file");
  std::vector<GroundFact> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto b = line.find_first_not_of(" \t");
    if (b == std::string::npos || line[b] == '#') continue;
    try {
      out.push_back(parse_fact(resource, line));
    } catch (const DomainError& e) {
      throw LoadError(file.string(), "line " + std::to_string(lineno), e.what());
    }
  }
  return out;
}

std::vector<SimJudgement> load_judgements(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw LoadError(file.string(), "", "cannot open file");
  std::vector<SimJudgement> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream is(line);
    SimJudgement j;
    if (!(is >> j.word1 >> j.word2 >> j.human_score))
      throw LoadError(file.string(), "line " + std::to_string(lineno),
                      "expected: word1<TAB>word2<TAB>score");
    out.push_back(std::move(j));
  }
  return out;
}

std::vector<AblationCase> load_cases(const fs::path& file) {
  json j = parse_json(file);
  std::vector<AblationCase> out;
  for (const auto& cj : j.at("cases")) {
    AblationCase c;
    c.synset_id = cj.at("synset").get<std::string>();
    for (const auto& r : cj.at("gold_roles"))
      c.gold_roles.insert(r.get<std::string>());
    for (const auto& t : cj.at("gold_templates"))
      c.gold_templates.insert(t.get<std::string>());
    if (c.gold_roles.empty() || c.gold_templates.empty())
      throw LoadError(file.string(), c.synset_id, "gold sets must be non-empty");
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

json report_to_json(const BuildReport& report) {
  json j;
  json iterations = json::array();
  for (const auto& it : report.iterations) {
    json ij;
    ij["iteration"] = it.index;
    ij["processed_synsets"] = it.processed_synsets;
    ij["candidates"] = it.candidates;
    ij["accepted"] = it.accepted;
    ij["accepted_unselected"] = it.accepted_unselected;
    ij["rejected"] = it.rejected;
    ij["new_types"] = it.new_types;
    ij["new_lex_entries"] = it.new_lex_entries;
    json details = json::array();
    for (const auto& d : it.details) {
      json dj;
      dj["synset"] = d.synset_id;
      dj["definition"] = d.definition_index;
      dj["branch"] = d.branch_index;
      dj["status"] = d.status;
      if (!d.new_type.empty()) dj["new_type"] = d.new_type;
      details.push_back(dj);
    }
    ij["details"] = details;
    iterations.push_back(ij);
  }
  j["iterations"] = iterations;
  j["totals"] = {{"processed_candidates", report.processed_candidates},
                 {"accepted", report.accepted},
                 {"rejected", report.rejected},
                 {"rejected_total", report.rejected_total},
                 {"rejection_rate", report.rejection_rate},
                 {"new_types", report.new_types},
                 {"new_lex_entries", report.new_lex_entries},
                 {"verbs", report.verbs},
                 {"sense_types", report.sense_types},
                 {"avg_senses_per_verb", report.avg_senses_per_verb}};
  j["incorporated_iteration"] = report.incorporated_iteration;
  j["depth_model"] = {{"root_depth", 1}, {"mapping_hop_cost", 1}};
  return j;
}

}  // namespace

std::string report_text(const BuildReport& report) {
  std::ostringstream os;
  os << "build report\n";
  for (const auto& it : report.iterations) {
    os << "  iteration " << it.index << ": processed " << it.processed_synsets
       << " synsets, " << it.candidates << " candidates, accepted " << it.accepted
       << ", new types " << it.new_types << ", new entries " << it.new_lex_entries
       << "\n";
    for (const auto& [reason_id, count] : it.rejected)
      os << "    rejected " << reason_id << ": " << count << "\n";
  }
  os << "totals: accepted " << report.accepted << ", rejected "
     << report.rejected_total << " ("
     << std::fixed << std::setprecision(1) << report.rejection_rate * 100.0
     << "% of " << report.processed_candidates << " candidates)\n";
  os << "coverage: verbs " << report.verbs << ", sense types " << report.sense_types
     << ", avg senses/verb " << std::fixed << std::setprecision(2)
     << report.avg_senses_per_verb << "\n";
  return os.str();
}

void save_report(const BuildReport& report, const fs::path& json_path,
                 const fs::path& text_path) {
  spill(json_path, dump_json(report_to_json(report)));
  spill(text_path, report_text(report));
}

bool resource_equal(const Resource& a, const Resource& b) {
  auto roles_equal = [](const std::vector<RoleSpec>& x,
                        const std::vector<RoleSpec>& y) { return x == y; };
  if (a.ontology.size() != b.ontology.size()) return false;
  for (const auto& [id, t] : a.ontology) {
    auto it = b.ontology.find(id);
    if (it == b.ontology.end()) return false;
    const auto& u = it->second;
    if (t.parent != u.parent || !(t.features == u.features) ||
        !roles_equal(t.roles, u.roles) || t.axioms != u.axioms ||
        t.synsets != u.synsets || !(t.provenance == u.provenance))
      return false;
  }
  if (!(a.lexicon == b.lexicon)) return false;
  if (!(a.templates == b.templates)) return false;
  if (a.mappings != b.mappings) return false;
  if (a.axioms.size() != b.axioms.size()) return false;
  for (const auto& [id, ax] : a.axioms) {
    auto it = b.axioms.find(id);
    if (it == b.axioms.end()) return false;
    if (!ax.structurally_equal(it->second)) return false;
  }
  // Vocabulary fields.
  const auto& va = a.vocabulary;
  const auto& vb = b.vocabulary;
  if (va.roles != vb.roles || va.role_variants != vb.role_variants ||
      va.core_roles != vb.core_roles || va.stative_roots != vb.stative_roots ||
      !(va.situation_root == vb.situation_root) ||
      !(va.referential_type == vb.referential_type) ||
      !(va.comparative_type == vb.comparative_type))
    return false;
  if (va.features.attributes().size() != vb.features.attributes().size())
    return false;
  for (std::size_t i = 0; i < va.features.attributes().size(); ++i) {
    const auto& x = va.features.attributes()[i];
    const auto& y = vb.features.attributes()[i];
    if (x.name != y.name || x.values != y.values || x.bare != y.bare) return false;
  }
  if (va.prepositions.size() != vb.prepositions.size()) return false;
  for (std::size_t i = 0; i < va.prepositions.size(); ++i) {
    const auto& x = va.prepositions[i];
    const auto& y = vb.prepositions[i];
    if (x.word != y.word || !(x.type == y.type) || x.edge != y.edge ||
        x.takes_object != y.takes_object)
      return false;
  }
  return true;
}

}  // namespace semlex::io
