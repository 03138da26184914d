#include "run_config.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "cg2a/error.hpp"
#include "cg2a/io.hpp"

namespace cg2a::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

class Section {
 public:
  Section(const json& j, std::string path, std::string source)
      : j_(j), path_(std::move(path)), source_(std::move(source)) {
    if (!j_.is_object()) parseFail("expected an object");
  }

  [[noreturn]] void parseFail(const std::string& msg) const { throw ParseError(source_ + ": " + path_ + ": " + msg); }
  [[noreturn]] void configFail(const std::string& msg) const { throw ConfigError(source_ + ": " + path_ + ": " + msg); }

  /// ConfigError on any field outside `known`.
  void allow(std::initializer_list<std::string_view> known) const {
    for (const auto& [key, _] : j_.items())
      if (std::find(known.begin(), known.end(), key) == known.end()) configFail("unknown field '" + key + "'");
  }

  bool has(std::string_view key) const { return j_.contains(key); }
  const json& raw(std::string_view key) const { return j_.at(key); }
  std::string where(std::string_view key) const { return path_ + "." + std::string(key); }
  Section sub(std::string_view key) const { return {raw(key), where(key), source_}; }

  std::uint64_t u64(std::string_view key) const {
    const auto& v = raw(key);
    if (!v.is_number_unsigned()) fieldFail(key, "expected a non-negative integer");
    return v.get<std::uint64_t>();
  }

  std::string str(std::string_view key) const {
    const auto& v = raw(key);
    if (!v.is_string()) fieldFail(key, "expected a string");
    return v.get<std::string>();
  }

  /// A number gives a fixed value; {"mean": m, "stddev": s} a gaussian.
  ParamSpec param(std::string_view key) const {
    const auto& v = raw(key);
    if (v.is_number()) return ParamSpec::fixed(v.get<double>());
    if (!v.is_object()) fieldFail(key, "expected a number or {\"mean\", \"stddev\"}");
    Section s(v, where(key), source_);
    s.allow({"mean", "stddev"});
    if (!s.has("mean") || !s.raw("mean").is_number()) s.parseFail("'mean' must be a number");
    double sd = 0.0;
    if (s.has("stddev")) {
      if (!s.raw("stddev").is_number()) s.parseFail("'stddev' must be a number");
      sd = s.raw("stddev").get<double>();
    }
    if (sd < 0.0) s.configFail("negative stddev");
    return ParamSpec::gaussian(s.raw("mean").get<double>(), sd);
  }

  void param(std::string_view key, ParamSpec& out) const {
    if (has(key)) out = param(key);
  }

 private:
  [[noreturn]] void fieldFail(std::string_view key, const std::string& msg) const {
    throw ParseError(source_ + ": " + where(key) + ": " + msg);
  }

  const json& j_;
  std::string path_;
  std::string source_;
};

}  // namespace

RunConfig parseRunConfig(std::string_view text, const fs::path& baseDir, std::string_view source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(source) + ": " + e.what());
  }
  const Section root(doc, "$", std::string(source));
  root.allow({"generator", "autoVoc", "autoGcg", "autoVar", "inputs"});
  RunConfig cfg;

  if (root.has("generator")) {
    const auto s = root.sub("generator");
    s.allow({"maxCGs", "minSize", "maxSpe", "seed", "relationDomainPolicy"});
    if (s.has("maxCGs")) cfg.generator.maxCGs = s.u64("maxCGs");
    if (s.has("minSize")) cfg.generator.minSize = s.u64("minSize");
    if (s.has("maxSpe")) {
      const auto v = s.u64("maxSpe");
      if (v > UINT32_MAX) s.configFail("maxSpe out of range");
      cfg.generator.maxSpe = static_cast<std::uint32_t>(v);
    }
    if (s.has("seed")) cfg.seed = s.u64("seed");
    if (s.has("relationDomainPolicy")) {
      try {
        cfg.generator.relationDomainPolicy = relationDomainPolicyFromName(s.str("relationDomainPolicy"));
      } catch (const ConfigError& e) {
        s.configFail(e.what());
      }
    }
  }

  if (root.has("autoVoc")) {
    const auto s = root.sub("autoVoc");
    s.allow({"conceptDepth", "relationDepth", "maxChildren", "markersPerType", "arities"});
    AutoVocConfig c;
    s.param("conceptDepth", c.conceptDepth);
    s.param("relationDepth", c.relationDepth);
    s.param("maxChildren", c.maxChildren);
    s.param("markersPerType", c.markersPerType);
    if (s.has("arities")) {
      const auto& a = s.raw("arities");
      if (!a.is_array()) s.parseFail("'arities' must be an array");
      c.arities.clear();
      for (const auto& v : a) {
        if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0 || v.get<std::uint64_t>() > UINT32_MAX)
          s.configFail("arities must be positive integers");
        c.arities.insert(v.get<std::uint32_t>());
      }
    }
    cfg.autoVoc = c;
  }

  if (root.has("autoGcg")) {
    const auto s = root.sub("autoGcg");
    s.allow({"count", "minSize"});
    AutoGcgConfig c;
    s.param("count", c.count);
    s.param("minSize", c.minSize);
    cfg.autoGcg = c;
  }

  if (root.has("autoVar")) {
    const auto s = root.sub("autoVar");
    s.allow({"conceptVarsPerCG", "relationVarsPerCG", "markerVarsPerCG", "valuesPerVariable", "specialisations"});
    AutoVarConfig c;
    s.param("conceptVarsPerCG", c.conceptVarsPerCG);
    s.param("relationVarsPerCG", c.relationVarsPerCG);
    s.param("markerVarsPerCG", c.markerVarsPerCG);
    s.param("valuesPerVariable", c.valuesPerVariable);
    s.param("specialisations", c.specialisations);
    cfg.autoVar = c;
  }

  if (root.has("inputs")) {
    const auto s = root.sub("inputs");
    s.allow({"vocabulary", "templateVocabulary", "gammaCGs"});
    if (s.has("vocabulary")) cfg.vocabulary = baseDir / s.str("vocabulary");
    if (s.has("templateVocabulary")) cfg.templateVocabulary = baseDir / s.str("templateVocabulary");
    if (s.has("gammaCGs")) {
      const auto& g = s.raw("gammaCGs");
      if (g.is_string()) {
        cfg.gammaCGs.push_back(baseDir / g.get<std::string>());
      } else if (g.is_array()) {
        for (const auto& p : g) {
          if (!p.is_string()) s.parseFail("'gammaCGs' entries must be strings");
          cfg.gammaCGs.push_back(baseDir / p.get<std::string>());
        }
      } else {
        s.parseFail("'gammaCGs' must be a path or a list of paths");
      }
    }
  }
  return cfg;
}

RunConfig loadRunConfig(const fs::path& path) {
  return parseRunConfig(readTextFile(path), path.parent_path(), path.string());
}

void checkSources(const RunConfig& c) {
  if (c.vocabulary && c.autoVoc) throw ConfigError("both inputs.vocabulary and autoVoc are given; choose one");
  if (!c.vocabulary && !c.autoVoc) throw ConfigError("no vocabulary source: give inputs.vocabulary or autoVoc");
  if (!c.gammaCGs.empty() && c.autoGcg) throw ConfigError("both inputs.gammaCGs and autoGcg are given; choose one");
  if (c.gammaCGs.empty() && !c.autoGcg) throw ConfigError("no gamma-CG source: give inputs.gammaCGs or autoGcg");
  if (c.autoVoc && !c.gammaCGs.empty() && !c.templateVocabulary)
    throw ConfigError("gamma-CG files under autoVoc are templates and need inputs.templateVocabulary");
  if (!c.autoVoc && c.templateVocabulary) throw ConfigError("inputs.templateVocabulary is only used with autoVoc");
}

Rng stageStream(std::uint64_t seed, std::uint64_t stream) { return Rng(deriveSeed(seed, stream)); }

std::vector<fs::path> expandGammaPaths(const std::vector<fs::path>& paths) {
  std::vector<fs::path> out;
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(p))
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
      std::sort(files.begin(), files.end());
      out.insert(out.end(), files.begin(), files.end());
    } else {
      out.push_back(p);
    }
  }
  return out;
}

PipelineResult runPipeline(const RunConfig& config, unsigned jobs) {
  checkSources(config);
  if (!config.seed) throw PreconditionError("runPipeline needs a seed");
  const std::uint64_t seed = *config.seed;
  config.generator.validate();

  PipelineResult out;
  out.config = config.generator;
  out.config.seed = seed;
  const auto policy = config.generator.relationDomainPolicy;

  if (config.autoVoc) {
    auto rng = stageStream(seed, kAutoVocStream);
    out.vocabulary = autoVocabulary(*config.autoVoc, rng);
  } else {
    out.vocabulary = loadVocabulary(*config.vocabulary);
  }

  if (config.autoGcg) {
    auto rng = stageStream(seed, kAutoGcgStream);
    out.gammas = autoGammaCGs(out.vocabulary, *config.autoGcg, rng, policy);
  } else {
    const auto files = expandGammaPaths(config.gammaCGs);
    if (files.empty()) throw ConfigError("inputs.gammaCGs names no gamma-CG file");
    if (config.templateVocabulary) {
      const auto source = loadVocabulary(*config.templateVocabulary);
      std::vector<GammaCG> templates;
      for (const auto& f : files) templates.push_back(loadGammaCG(f, source));
      out.gammas = rebindGammaCGs(out.vocabulary, templates);
    } else {
      for (const auto& f : files) out.gammas.push_back(loadGammaCG(f, out.vocabulary));
    }
  }

  if (config.autoVar) {
    auto rng = stageStream(seed, kAutoVarStream);
    auto res = autoVariables(out.vocabulary, out.gammas, *config.autoVar, rng, policy);
    out.gammas = std::move(res.gammas);
    out.warnings = std::move(res.warnings);
  }

  out.dataset = generateDataset(out.vocabulary, out.gammas, out.config, jobs);
  return out;
}

}  // namespace cg2a::cli
