#include "cg2a/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "cg2a/error.hpp"

namespace cg2a {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// A position inside a parsed document, for diagnostics.
class Cursor {
 public:
  Cursor(const json& value, std::string source, std::string path)
      : value_(value), source_(std::move(source)), path_(std::move(path)) {}

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(source_ + ": " + path_ + ": " + message);
  }
  [[noreturn]] void invalid(const std::string& message) const {
    throw ValidationError(source_ + ": " + path_ + ": " + message);
  }

  const json& value() const { return value_; }
  bool isNull() const { return value_.is_null(); }
  bool has(std::string_view key) const { return value_.is_object() && value_.contains(key); }

  Cursor operator[](std::string_view key) const {
    if (!value_.is_object()) fail("expected an object");
    auto it = value_.find(key);
    if (it == value_.end()) fail("missing field '" + std::string(key) + "'");
    return {*it, source_, path_ + "." + std::string(key)};
  }

  std::size_t size() const {
    if (!value_.is_array()) fail("expected an array");
    return value_.size();
  }

  Cursor operator[](std::size_t i) const {
    if (!value_.is_array()) fail("expected an array");
    return {value_.at(i), source_, path_ + "[" + std::to_string(i) + "]"};
  }

  std::string str() const {
    if (!value_.is_string()) fail("expected a string");
    return value_.get<std::string>();
  }

  std::uint64_t u64() const {
    if (!value_.is_number_unsigned() && !(value_.is_number_integer() && value_.get<std::int64_t>() >= 0))
      fail("expected a non-negative integer");
    return value_.get<std::uint64_t>();
  }

  double num() const {
    if (!value_.is_number()) fail("expected a number");
    return value_.get<double>();
  }

  std::vector<std::string> strings() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back((*this)[i].str());
    return out;
  }

 private:
  const json& value_;
  std::string source_;
  std::string path_;
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json header(std::string_view kind) {
  json j = json::object();
  j["formatVersion"] = kFormatVersion;
  j["kind"] = kind;
  return j;
}

json parse(std::string_view text, std::string_view source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(source) + ": " + e.what());
  }
}

// Checks formatVersion and kind; returns the root cursor.
Cursor openDocument(const json& doc, std::string_view source, std::string_view kind) {
  Cursor root(doc, std::string(source), "$");
  const auto version = root["formatVersion"].str();
  unsigned major = 0, minor = 0, patch = 0;
  char tail = 0;
  if (std::sscanf(version.c_str(), "%u.%u.%u%c", &major, &minor, &patch, &tail) != 3)
    root["formatVersion"].fail("malformed version '" + version + "'");
  if (major != 1) root["formatVersion"].fail("unsupported major version in '" + version + "'");
  const auto actual = root["kind"].str();
  if (actual != kind) root["kind"].fail("expected a " + std::string(kind) + " document, found '" + actual + "'");
  return root;
}

std::string markerLabel(const Vocabulary& vocab, MarkerId m) { return vocab.marker(m).name; }

// Concept and relation arrays shared by cg and gamma-cg documents.
void writeGraph(json& j, const Vocabulary& vocab, const ConceptualGraph& g) {
  const auto& ct = vocab.concepts();
  json concepts = json::array();
  for (std::uint32_t i = 0; i < g.concepts().size(); ++i) {
    const auto& c = g.concepts()[i];
    concepts.push_back({{"id", nodeName(ConceptId{i})},
                        {"type", ct.label(c.type)},
                        {"marker", c.marker ? json(markerLabel(vocab, *c.marker)) : json(nullptr)}});
  }
  json relations = json::array();
  for (std::uint32_t i = 0; i < g.relations().size(); ++i) {
    const auto& r = g.relations()[i];
    json args = json::array();
    for (ConceptId c : r.arguments) args.push_back(nodeName(c));
    relations.push_back({{"id", nodeName(RelationId{i})}, {"type", vocab.label(r.type)}, {"arguments", args}});
  }
  j["concepts"] = std::move(concepts);
  j["relations"] = std::move(relations);
}

struct GraphIds {
  std::unordered_map<std::string, ConceptId> concepts;
  std::unordered_map<std::string, RelationId> relations;
};

ConceptualGraph readGraph(const Cursor& root, const Vocabulary& vocab, GraphIds& ids) {
  const auto& ct = vocab.concepts();
  ConceptualGraph g;
  const auto concepts = root["concepts"];
  for (std::size_t i = 0; i < concepts.size(); ++i) {
    const auto c = concepts[i];
    const auto id = c["id"].str();
    const auto typeLabel = c["type"].str();
    const auto type = ct.find(typeLabel);
    if (!type) c["type"].invalid("unknown concept type '" + typeLabel + "'");
    std::optional<MarkerId> marker;
    if (!c["marker"].isNull()) {
      const auto name = c["marker"].str();
      marker = vocab.findMarker(name);
      if (!marker) c["marker"].invalid("unknown marker '" + name + "'");
    }
    if (!ids.concepts.emplace(id, g.addConcept(*type, marker)).second) c["id"].invalid("duplicate node id '" + id + "'");
  }
  const auto relations = root["relations"];
  for (std::size_t i = 0; i < relations.size(); ++i) {
    const auto r = relations[i];
    const auto id = r["id"].str();
    if (ids.concepts.contains(id) || ids.relations.contains(id)) r["id"].invalid("duplicate node id '" + id + "'");
    const auto typeLabel = r["type"].str();
    const auto type = vocab.findRelation(typeLabel);
    if (!type) r["type"].invalid("unknown relation type '" + typeLabel + "'");
    const auto argsCursor = r["arguments"];
    std::vector<ConceptId> args;
    for (std::size_t k = 0; k < argsCursor.size(); ++k) {
      const auto ref = argsCursor[k].str();
      auto it = ids.concepts.find(ref);
      if (it == ids.concepts.end()) argsCursor[k].invalid("dangling reference to '" + ref + "'");
      args.push_back(it->second);
    }
    if (args.size() != type->arity)
      argsCursor.invalid(std::to_string(args.size()) + " arguments for '" + typeLabel + "' of arity " +
                         std::to_string(type->arity));
    ids.relations.emplace(id, g.addRelation(*type, std::move(args)));
  }
  return g;
}

const char* targetKind(const VariableBinding& b) {
  switch (b.index()) {
    case 0: return "relation-type";
    case 1: return "concept-type";
    default: return "marker";
  }
}

json statsToJson(const DatasetStats& s) {
  json arity = json::object();
  for (const auto& [k, v] : s.arityCounts) arity[std::to_string(k)] = v;
  return {{"cgCount", s.cgCount},
          {"nbNodes", {{"mean", s.nbNodesMean}, {"stddev", s.nbNodesStddev}}},
          {"nbLabels", {{"mean", s.nbLabelsMean}, {"stddev", s.nbLabelsStddev}}},
          {"arityCounts", arity}};
}

DatasetStats statsFromJson(const Cursor& c) {
  DatasetStats s;
  s.cgCount = c["cgCount"].u64();
  s.nbNodesMean = c["nbNodes"]["mean"].num();
  s.nbNodesStddev = c["nbNodes"]["stddev"].num();
  s.nbLabelsMean = c["nbLabels"]["mean"].num();
  s.nbLabelsStddev = c["nbLabels"]["stddev"].num();
  const auto arity = c["arityCounts"];
  if (!arity.value().is_object()) arity.fail("expected an object");
  for (const auto& [key, _] : arity.value().items()) {
    std::uint32_t k = 0;
    try {
      k = static_cast<std::uint32_t>(std::stoul(key));
    } catch (const std::exception&) {
      arity.fail("arity key '" + key + "' is not a number");
    }
    s.arityCounts[k] = arity[key].num();
  }
  return s;
}

}  // namespace

std::string vocabularyToText(const Vocabulary& vocab) {
  json doc = header(kVocabularyKind);
  const auto& ct = vocab.concepts();

  auto typeEntries = [](const TypeHierarchy& h, auto&& extra) {
    json types = json::array();
    for (TypeId t : h.all()) {
      json parents = json::array();
      for (TypeId p : h.parents(t)) parents.push_back(h.label(p));
      json entry = {{"label", h.label(t)}, {"parents", parents}};
      extra(entry, t);
      types.push_back(std::move(entry));
    }
    return types;
  };

  doc["conceptTypes"] = {{"root", ct.label(ct.root())}, {"types", typeEntries(ct, [](json&, TypeId) {})}};
  json relations = json::array();
  for (auto arity : vocab.arities()) {
    const auto& h = vocab.relations(arity);
    relations.push_back({{"arity", arity},
                         {"root", h.label(h.root())},
                         {"types", typeEntries(h, [&](json& entry, TypeId t) {
                            json sig = json::array();
                            for (TypeId c : vocab.signature({arity, t})) sig.push_back(ct.label(c));
                            entry["signature"] = std::move(sig);
                          })}});
  }
  doc["relationTypes"] = std::move(relations);
  json markers = json::array();
  for (const auto& m : vocab.markers()) markers.push_back({{"id", m.name}, {"type", ct.label(m.type)}});
  doc["markers"] = std::move(markers);
  return dump(doc);
}

Vocabulary vocabularyFromText(std::string_view text, std::string_view source) {
  const json doc = parse(text, source);
  const Cursor root = openDocument(doc, source, kVocabularyKind);

  auto readHierarchy = [&](const Cursor& section, HierarchyKind kind, std::uint32_t arity) {
    TypeHierarchy::Builder b(kind, arity);
    const auto types = section["types"];
    for (std::size_t i = 0; i < types.size(); ++i) {
      const auto label = types[i]["label"].str();
      if (b.has(label)) types[i]["label"].invalid("duplicate type label '" + label + "'");
      b.add(label, types[i]["parents"].strings());
    }
    TypeHierarchy h;
    try {
      h = std::move(b).build();
    } catch (const ValidationError& e) {
      section.invalid(e.what());
    }
    const auto rootLabel = section["root"].str();
    if (h.label(h.root()) != rootLabel)
      section["root"].invalid("declared root '" + rootLabel + "' but the hierarchy's root is '" +
                              h.label(h.root()) + "'");
    return h;
  };

  TypeHierarchy concepts = readHierarchy(root["conceptTypes"], HierarchyKind::concept_types, 0);

  std::vector<RelationHierarchy> relations;
  const auto rel = root["relationTypes"];
  for (std::size_t i = 0; i < rel.size(); ++i) {
    const auto section = rel[i];
    const auto arity = section["arity"].u64();
    if (arity == 0 || arity > UINT32_MAX) section["arity"].invalid("arity must be positive");
    RelationHierarchy rh{readHierarchy(section, HierarchyKind::relation_types, static_cast<std::uint32_t>(arity)), {}};
    rh.signatures.resize(rh.types.size());
    const auto types = section["types"];
    for (std::size_t k = 0; k < types.size(); ++k) {
      const auto label = types[k]["label"].str();
      const auto sigCursor = types[k]["signature"];
      std::vector<TypeId> sig;
      for (std::size_t p = 0; p < sigCursor.size(); ++p) {
        const auto c = sigCursor[p].str();
        const auto t = concepts.find(c);
        if (!t) sigCursor[p].invalid("unknown concept type '" + c + "'");
        sig.push_back(*t);
      }
      if (sig.size() != arity)
        sigCursor.invalid("signature of '" + label + "' has " + std::to_string(sig.size()) + " entries, arity is " +
                          std::to_string(arity));
      rh.signatures[rh.types.at(label).value] = std::move(sig);
    }
    relations.push_back(std::move(rh));
  }

  std::vector<Marker> markers;
  const auto mk = root["markers"];
  for (std::size_t i = 0; i < mk.size(); ++i) {
    const auto typeLabel = mk[i]["type"].str();
    const auto t = concepts.find(typeLabel);
    if (!t) mk[i]["type"].invalid("unknown concept type '" + typeLabel + "'");
    markers.push_back({mk[i]["id"].str(), *t});
  }

  try {
    return Vocabulary(std::move(concepts), std::move(relations), std::move(markers));
  } catch (const ValidationError& e) {
    throw ValidationError(std::string(source) + ": " + e.what());
  }
}

std::string graphToText(const Vocabulary& vocab, const ConceptualGraph& g) {
  json doc = header(kGraphKind);
  writeGraph(doc, vocab, g);
  return dump(doc);
}

ConceptualGraph graphFromText(const Vocabulary& vocab, std::string_view text, std::string_view source) {
  const json doc = parse(text, source);
  const Cursor root = openDocument(doc, source, kGraphKind);
  GraphIds ids;
  return readGraph(root, vocab, ids);
}

std::string gammaToText(const Vocabulary& vocab, const GammaCG& gcg) {
  json doc = header(kGammaKind);
  doc["name"] = gcg.name;
  writeGraph(doc, vocab, gcg.graph);
  json vars = json::array();
  for (const auto& v : gcg.variables) {
    json domain = json::array();
    std::string node;
    std::visit(
        [&](const auto& b) {
          using B = std::decay_t<decltype(b)>;
          node = nodeName(b.node);
          for (const auto& value : b.domain) {
            if constexpr (std::is_same_v<B, RelationTypeVariable>) domain.push_back(vocab.label(value));
            else if constexpr (std::is_same_v<B, ConceptTypeVariable>) domain.push_back(vocab.concepts().label(value));
            else domain.push_back(markerLabel(vocab, value));
          }
        },
        v.binding);
    vars.push_back({{"name", v.name}, {"target", {{"kind", targetKind(v.binding)}, {"node", node}}}, {"domain", domain}});
  }
  doc["variables"] = std::move(vars);
  return dump(doc);
}

GammaCG gammaFromText(const Vocabulary& vocab, std::string_view text, std::string_view source) {
  const json doc = parse(text, source);
  const Cursor root = openDocument(doc, source, kGammaKind);
  GraphIds ids;
  GammaCG gcg{root["name"].str(), readGraph(root, vocab, ids), {}};

  const auto vars = root["variables"];
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const auto v = vars[i];
    const auto kind = v["target"]["kind"].str();
    const auto nodeCursor = v["target"]["node"];
    const auto node = nodeCursor.str();
    const auto domain = v["domain"];
    Variable var{v["name"].str(), {}};

    auto conceptNode = [&] {
      auto it = ids.concepts.find(node);
      if (it == ids.concepts.end()) nodeCursor.invalid("no concept node '" + node + "'");
      return it->second;
    };

    if (kind == "relation-type") {
      auto it = ids.relations.find(node);
      if (it == ids.relations.end()) nodeCursor.invalid("no relation node '" + node + "'");
      RelationTypeVariable b{it->second, {}};
      for (std::size_t k = 0; k < domain.size(); ++k) {
        const auto label = domain[k].str();
        const auto t = vocab.findRelation(label);
        if (!t) domain[k].invalid("unknown relation type '" + label + "'");
        b.domain.push_back(*t);
      }
      var.binding = std::move(b);
    } else if (kind == "concept-type") {
      ConceptTypeVariable b{conceptNode(), {}};
      for (std::size_t k = 0; k < domain.size(); ++k) {
        const auto label = domain[k].str();
        const auto t = vocab.concepts().find(label);
        if (!t) domain[k].invalid("unknown concept type '" + label + "'");
        b.domain.push_back(*t);
      }
      var.binding = std::move(b);
    } else if (kind == "marker") {
      MarkerVariable b{conceptNode(), {}};
      for (std::size_t k = 0; k < domain.size(); ++k) {
        const auto name = domain[k].str();
        const auto m = vocab.findMarker(name);
        if (!m) domain[k].invalid("unknown marker '" + name + "'");
        b.domain.push_back(*m);
      }
      var.binding = std::move(b);
    } else {
      v["target"]["kind"].fail("unknown target kind '" + kind + "'");
    }
    normalizeDomain(var);
    gcg.variables.push_back(std::move(var));
  }
  return gcg;
}

std::string relationDomainPolicyName(RelationDomainPolicy policy) {
  return policy == RelationDomainPolicy::arity_only ? "arity-only" : "signature-compatible";
}

RelationDomainPolicy relationDomainPolicyFromName(std::string_view name) {
  if (name == "arity-only") return RelationDomainPolicy::arity_only;
  if (name == "signature-compatible") return RelationDomainPolicy::signature_compatible;
  throw ConfigError("unknown relation domain policy '" + std::string(name) + "'");
}

std::string manifestToText(const DatasetManifest& m) {
  json doc = header(kManifestKind);
  doc["formatVersion"] = m.formatVersion;
  doc["config"] = {{"maxCGs", m.config.maxCGs},
                   {"minSize", m.config.minSize},
                   {"maxSpe", m.config.maxSpe},
                   {"seed", m.config.seed},
                   {"relationDomainPolicy", relationDomainPolicyName(m.config.relationDomainPolicy)}};
  doc["stats"] = statsToJson(m.stats);
  doc["cgFileRefs"] = m.cgFileRefs;
  doc["provenanceRef"] = m.provenanceRef ? json(*m.provenanceRef) : json(nullptr);
  return dump(doc);
}

DatasetManifest manifestFromText(std::string_view text, std::string_view source) {
  const json doc = parse(text, source);
  const Cursor root = openDocument(doc, source, kManifestKind);
  DatasetManifest m;
  m.formatVersion = root["formatVersion"].str();
  const auto cfg = root["config"];
  m.config.maxCGs = cfg["maxCGs"].u64();
  m.config.minSize = cfg["minSize"].u64();
  m.config.maxSpe = static_cast<std::uint32_t>(cfg["maxSpe"].u64());
  m.config.seed = cfg["seed"].u64();
  try {
    m.config.relationDomainPolicy = relationDomainPolicyFromName(cfg["relationDomainPolicy"].str());
  } catch (const ConfigError& e) {
    cfg["relationDomainPolicy"].fail(e.what());
  }
  m.stats = statsFromJson(root["stats"]);
  m.cgFileRefs = root["cgFileRefs"].strings();
  if (!root["provenanceRef"].isNull()) m.provenanceRef = root["provenanceRef"].str();
  if (m.cgFileRefs.size() != m.stats.cgCount)
    root["cgFileRefs"].invalid(std::to_string(m.cgFileRefs.size()) + " files listed for " +
                               std::to_string(m.stats.cgCount) + " graphs");
  return m;
}

std::string provenanceToText(const Vocabulary& vocab, std::span<const GammaCG> gammas,
                             std::span<const GenerationProvenance> provenance) {
  auto labelOf = [&](const LabelValue& v) {
    return std::visit(
        [&](const auto& x) -> std::string {
          using X = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<X, RelationType>) return vocab.label(x);
          else if constexpr (std::is_same_v<X, TypeId>) return vocab.concepts().label(x);
          else return markerLabel(vocab, x);
        },
        v);
  };
  auto refName = [](const JoinNodeRef& r) {
    return std::string(r.side == JoinNodeRef::Side::accumulator ? "acc/" : "new/") + nodeName(r.node);
  };
  auto pairs = [&](const std::vector<MergedPair>& ps) {
    json out = json::array();
    for (const auto& p : ps) out.push_back({refName(p.kept), refName(p.merged)});
    return out;
  };

  json doc = header(kProvenanceKind);
  json graphs = json::array();
  for (std::size_t i = 0; i < provenance.size(); ++i) {
    json components = json::array();
    for (const auto& comp : provenance[i].components) {
      const auto& gcg = gammas[comp.gamma];
      json assignments = json::array();
      for (const auto& a : comp.assignments)
        assignments.push_back({{"variable", gcg.variables.at(a.variable).name},
                               {"drawn", labelOf(a.drawn)},
                               {"value", labelOf(a.assigned)},
                               {"specializationSteps", a.specializationSteps},
                               {"minted", a.minted}});
      components.push_back({{"gamma", gcg.name},
                            {"assignments", assignments},
                            {"merged", pairs(comp.join.merged)},
                            {"unmergedIncomparable", pairs(comp.join.incomparable)}});
    }
    json skipped = json::array();
    for (auto s : provenance[i].skippedGammas) skipped.push_back(gammas[s].name);
    graphs.push_back({{"cg", i}, {"components", components}, {"skippedGammas", skipped}});
  }
  doc["graphs"] = std::move(graphs);
  return dump(doc);
}

std::string readTextFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void writeTextFile(const fs::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(path.string() + ": cannot open for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(path.string() + ": write failed");
}

std::string documentKind(const fs::path& path) {
  const json doc = parse(readTextFile(path), path.string());
  return Cursor(doc, path.string(), "$")["kind"].str();
}

void saveVocabulary(const fs::path& path, const Vocabulary& vocab) { writeTextFile(path, vocabularyToText(vocab)); }

Vocabulary loadVocabulary(const fs::path& path) { return vocabularyFromText(readTextFile(path), path.string()); }

void saveCG(const fs::path& path, const Vocabulary& vocab, const ConceptualGraph& g) {
  writeTextFile(path, graphToText(vocab, g));
}

ConceptualGraph loadCG(const fs::path& path, const Vocabulary& vocab) {
  return graphFromText(vocab, readTextFile(path), path.string());
}

void saveGammaCG(const fs::path& path, const Vocabulary& vocab, const GammaCG& gcg) {
  writeTextFile(path, gammaToText(vocab, gcg));
}

GammaCG loadGammaCG(const fs::path& path, const Vocabulary& vocab) {
  return gammaFromText(vocab, readTextFile(path), path.string());
}

std::string graphFileName(std::size_t index, std::size_t count) {
  int width = 4;
  for (std::size_t n = count > 0 ? count - 1 : 0; n >= 10000; n /= 10) ++width;
  char buf[64];
  std::snprintf(buf, sizeof buf, "cg-%0*zu.json", width, index);
  return buf;
}

DatasetManifest saveDataset(const fs::path& dir, const Dataset& dataset, const GeneratorConfig& config,
                            std::optional<std::span<const GammaCG>> gammas) {
  fs::create_directories(dir);
  DatasetManifest m;
  m.config = config;
  m.stats = computeStats(dataset.graphs);
  for (std::size_t i = 0; i < dataset.graphs.size(); ++i) {
    m.cgFileRefs.push_back(graphFileName(i, dataset.graphs.size()));
    saveCG(dir / m.cgFileRefs.back(), dataset.vocabulary, dataset.graphs[i]);
  }
  if (gammas) {
    m.provenanceRef = "provenance.json";
    writeTextFile(dir / *m.provenanceRef, provenanceToText(dataset.vocabulary, *gammas, dataset.provenance));
  }
  writeTextFile(dir / "manifest.json", manifestToText(m));
  return m;
}

LoadedDataset loadDataset(const fs::path& dir, const Vocabulary& vocab) {
  const auto manifestPath = dir / "manifest.json";
  LoadedDataset out{manifestFromText(readTextFile(manifestPath), manifestPath.string()), {}};
  for (const auto& ref : out.manifest.cgFileRefs) out.graphs.push_back(loadCG(dir / ref, vocab));
  return out;
}

}  // namespace cg2a
