#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "cg2a/error.hpp"
#include "cg2a/io.hpp"
#include "run_config.hpp"

namespace cg2a::cli {
namespace {

namespace fs = std::filesystem;

struct Options {
  std::string config;
  std::string out;
  std::string vocab;
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
  std::vector<std::string> paths;
};

std::uint64_t entropySeed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

RunConfig readConfig(const Options& o) {
  return o.config.empty() ? RunConfig{} : loadRunConfig(o.config);
}

std::uint64_t resolveSeed(const Options& o, RunConfig& cfg, std::ostream& err) {
  if (o.seed) cfg.seed = o.seed;
  if (!cfg.seed) {
    cfg.seed = entropySeed();
    err << "seed: " << *cfg.seed << "\n";
  }
  return *cfg.seed;
}

/// Output directory that must be new or empty; removed again on failure.
class OutputDir {
 public:
  explicit OutputDir(fs::path dir) : dir_(std::move(dir)) {
    if (fs::exists(dir_)) {
      if (!fs::is_directory(dir_)) throw ConfigError(dir_.string() + ": exists and is not a directory");
      if (!fs::is_empty(dir_)) throw ConfigError(dir_.string() + ": output directory is not empty");
    } else {
      fs::create_directories(dir_);
      created_ = true;
    }
  }
  OutputDir(const OutputDir&) = delete;
  OutputDir& operator=(const OutputDir&) = delete;
  ~OutputDir() {
    if (committed_) return;
    std::error_code ec;
    if (created_) {
      fs::remove_all(dir_, ec);
    } else {
      for (const auto& e : fs::directory_iterator(dir_, ec)) fs::remove_all(e.path(), ec);
    }
  }

  const fs::path& path() const { return dir_; }
  void commit() { committed_ = true; }

 private:
  fs::path dir_;
  bool created_ = false;
  bool committed_ = false;
};

bool safeFileStem(const std::string& s) {
  if (s.empty() || s == "." || s == "..") return false;
  for (char ch : s)
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '-' && ch != '_' && ch != '.') return false;
  return true;
}

void writeGammas(const fs::path& dir, const Vocabulary& vocab, const std::vector<GammaCG>& gammas) {
  fs::create_directories(dir);
  std::set<std::string> used;
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    std::string stem = gammas[i].name;
    if (!safeFileStem(stem) || used.contains(stem)) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "gamma-%04zu", i);
      stem = buf;
    }
    used.insert(stem);
    saveGammaCG(dir / (stem + ".json"), vocab, gammas[i]);
  }
}

void printStats(std::ostream& out, const DatasetStats& s) {
  std::set<std::uint32_t> arities{1, 2, 3};
  for (const auto& [k, _] : s.arityCounts) arities.insert(k);
  char buf[128];
  std::snprintf(buf, sizeof buf, "%6s  %16s  %16s", "CGs", "NbN", "NbL");
  out << buf;
  for (auto k : arities) {
    std::snprintf(buf, sizeof buf, "  %8s", ("Ar" + std::to_string(k)).c_str());
    out << buf;
  }
  out << "\n";
  std::snprintf(buf, sizeof buf, "%6zu  %7.2f ± %6.2f  %7.2f ± %6.2f", s.cgCount, s.nbNodesMean,
                s.nbNodesStddev, s.nbLabelsMean, s.nbLabelsStddev);
  out << buf;
  for (auto k : arities) {
    std::snprintf(buf, sizeof buf, "  %8.2f", s.arity(k));
    out << buf;
  }
  out << "\n";
}

/// vocabulary.json in `start` or up to three parents.
std::optional<fs::path> findVocabulary(fs::path start) {
  start = fs::absolute(start.empty() ? fs::path(".") : start);
  for (int i = 0; i < 4 && !start.empty(); ++i) {
    if (fs::is_regular_file(start / "vocabulary.json")) return start / "vocabulary.json";
    if (start == start.parent_path()) break;
    start = start.parent_path();
  }
  return std::nullopt;
}

Vocabulary vocabularyFor(const Options& o, const fs::path& near) {
  if (!o.vocab.empty()) return loadVocabulary(o.vocab);
  const auto found = findVocabulary(fs::is_directory(near) ? near : near.parent_path());
  if (!found) throw ConfigError(near.string() + ": no vocabulary found; pass --vocab");
  return loadVocabulary(*found);
}

int cmdGenerate(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.config.empty()) throw ConfigError("generate needs --config");
  RunConfig cfg = readConfig(o);
  checkSources(cfg);
  resolveSeed(o, cfg, err);
  const unsigned jobs = o.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : o.jobs;

  OutputDir dir(o.out);
  const auto result = runPipeline(cfg, jobs);
  for (const auto& w : result.warnings) err << "warning: " << w << "\n";
  saveVocabulary(dir.path() / "vocabulary.json", result.dataset.vocabulary);
  writeGammas(dir.path() / "gamma", result.dataset.vocabulary, result.gammas);
  const auto manifest = saveDataset(dir.path() / "dataset", result.dataset, result.config,
                                    std::span<const GammaCG>(result.gammas));
  dir.commit();
  out << "seed " << result.config.seed << ", " << result.gammas.size() << " gamma-CGs, "
      << result.dataset.vocabulary.markerCount() << " markers\n";
  printStats(out, manifest.stats);
  return kExitOk;
}

int cmdAutoVoc(const Options& o, std::ostream& out, std::ostream& err) {
  RunConfig cfg = readConfig(o);
  const auto seed = resolveSeed(o, cfg, err);
  auto rng = stageStream(seed, kAutoVocStream);
  const auto vocab = autoVocabulary(cfg.autoVoc.value_or(AutoVocConfig{}), rng);
  const fs::path path = o.out;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  saveVocabulary(path, vocab);
  out << vocab.concepts().size() << " concept types, " << vocab.relationTypeCount() << " relation types, "
      << vocab.markerCount() << " markers\n";
  return kExitOk;
}

int cmdAutoGcg(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.vocab.empty()) throw ConfigError("auto-gcg needs --vocab");
  RunConfig cfg = readConfig(o);
  const auto seed = resolveSeed(o, cfg, err);
  const auto vocab = loadVocabulary(o.vocab);
  auto rng = stageStream(seed, kAutoGcgStream);
  const auto gammas =
      autoGammaCGs(vocab, cfg.autoGcg.value_or(AutoGcgConfig{}), rng, cfg.generator.relationDomainPolicy);
  OutputDir dir(o.out);
  writeGammas(dir.path(), vocab, gammas);
  dir.commit();
  out << gammas.size() << " gamma-CGs\n";
  return kExitOk;
}

int cmdAutoVar(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.vocab.empty()) throw ConfigError("auto-var needs --vocab");
  RunConfig cfg = readConfig(o);
  const auto seed = resolveSeed(o, cfg, err);
  const auto vocab = loadVocabulary(o.vocab);
  std::vector<fs::path> inputs(o.paths.begin(), o.paths.end());
  if (inputs.empty()) inputs = cfg.gammaCGs;
  const auto files = expandGammaPaths(inputs);
  if (files.empty()) throw ConfigError("auto-var needs gamma-CG files");
  std::vector<GammaCG> gammas;
  std::size_t before = 0;
  for (const auto& f : files) {
    gammas.push_back(loadGammaCG(f, vocab));
    before += gammas.back().variables.size();
  }
  auto rng = stageStream(seed, kAutoVarStream);
  auto res = autoVariables(vocab, gammas, cfg.autoVar.value_or(AutoVarConfig{}), rng,
                           cfg.generator.relationDomainPolicy);
  for (const auto& w : res.warnings) err << "warning: " << w << "\n";
  std::size_t after = 0;
  for (const auto& g : res.gammas) after += g.variables.size();
  OutputDir dir(o.out);
  writeGammas(dir.path(), vocab, res.gammas);
  dir.commit();
  out << res.gammas.size() << " gamma-CGs, variables " << before << " -> " << after << "\n";
  return kExitOk;
}

struct Checker {
  std::ostream& out;
  int violations = 0;
  bool configError = false;

  void report(const std::string& where, const ValidationReport& r) {
    for (const auto& v : r.violations) {
      out << where << ": " << toString(v.kind) << ": " << v.message << "\n";
      ++violations;
    }
  }

  template <class F>
  void guarded(const std::string& where, F&& f) {
    try {
      f();
    } catch (const ValidationError& e) {
      out << where << ": " << e.what() << "\n";
      ++violations;
    } catch (const std::exception& e) {
      out << where << ": " << e.what() << "\n";
      configError = true;
    }
  }

  void dataset(const fs::path& dir, const Vocabulary& vocab) {
    const auto loaded = loadDataset(dir, vocab);
    for (std::size_t i = 0; i < loaded.graphs.size(); ++i)
      report((dir / loaded.manifest.cgFileRefs[i]).string(), validateGraph(vocab, loaded.graphs[i]));
    if (!loaded.graphs.empty() && computeStats(loaded.graphs) != loaded.manifest.stats) {
      out << (dir / "manifest.json").string() << ": stats differ from the recomputed stats\n";
      ++violations;
    }
  }

  void runDirectory(const fs::path& dir) {
    const auto vocab = loadVocabulary(dir / "vocabulary.json");
    if (fs::is_directory(dir / "gamma"))
      for (const auto& f : expandGammaPaths({dir / "gamma"}))
        guarded(f.string(), [&] {
          report(f.string(), validateGammaCG(vocab, loadGammaCG(f, vocab), RelationDomainPolicy::arity_only));
        });
    if (fs::is_directory(dir / "dataset")) guarded((dir / "dataset").string(), [&] { dataset(dir / "dataset", vocab); });
  }
};

int cmdValidate(const Options& o, std::ostream& out) {
  Checker c{out};
  for (const auto& p : o.paths) {
    const fs::path path = p;
    c.guarded(p, [&] {
      if (fs::is_directory(path)) {
        if (fs::exists(path / "vocabulary.json") && o.vocab.empty())
          c.runDirectory(path);
        else if (fs::exists(path / "manifest.json"))
          c.dataset(path, vocabularyFor(o, path));
        else
          throw ConfigError("not a run or dataset directory");
        return;
      }
      const auto kind = documentKind(path);
      if (kind == kVocabularyKind) {
        loadVocabulary(path);
      } else if (kind == kGraphKind) {
        const auto vocab = vocabularyFor(o, path);
        c.report(p, validateGraph(vocab, loadCG(path, vocab)));
      } else if (kind == kGammaKind) {
        const auto vocab = vocabularyFor(o, path);
        c.report(p, validateGammaCG(vocab, loadGammaCG(path, vocab), RelationDomainPolicy::arity_only));
      } else if (kind == kManifestKind) {
        const auto dir = path.parent_path().empty() ? fs::path(".") : path.parent_path();
        c.dataset(dir, vocabularyFor(o, dir));
      } else {
        throw ConfigError("cannot validate a '" + kind + "' document");
      }
    });
  }
  if (c.configError) return kExitConfig;
  return c.violations > 0 ? kExitInvalid : kExitOk;
}

int cmdStats(const Options& o, std::ostream& out) {
  fs::path dir = o.paths.at(0);
  if (!fs::exists(dir / "manifest.json") && fs::exists(dir / "dataset" / "manifest.json")) dir /= "dataset";
  const auto vocab = vocabularyFor(o, dir);
  const auto loaded = loadDataset(dir, vocab);
  if (loaded.graphs.empty()) throw ConfigError(dir.string() + ": dataset has no graphs");
  printStats(out, computeStats(loaded.graphs));
  return kExitOk;
}

int cmdExportDot(const Options& o, std::ostream& out) {
  const fs::path path = o.paths.at(0);
  const auto vocab = vocabularyFor(o, path);
  const auto dot = exportDot(vocab, loadCG(path, vocab));
  if (o.out.empty() || o.out == "-")
    out << dot;
  else
    writeTextFile(o.out, dot);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Synthetic conceptual graph dataset generator", "cg2a"};
  app.require_subcommand(1);
  Options o;

  auto* generate = app.add_subcommand("generate", "Build a dataset from a run configuration");
  generate->add_option("--config", o.config, "Run configuration file")->required();
  generate->add_option("--out", o.out, "Output directory (new or empty)")->required();
  generate->add_option("--seed", o.seed, "Override the configured seed");
  generate->add_option("--jobs", o.jobs, "Worker threads; 0 uses every core")->capture_default_str();

  auto* autoVoc = app.add_subcommand("auto-voc", "Generate a random vocabulary");
  autoVoc->add_option("--config", o.config, "Run configuration (autoVoc section)");
  autoVoc->add_option("--out", o.out, "Vocabulary file to write")->required();
  autoVoc->add_option("--seed", o.seed, "Override the configured seed");

  auto* autoGcg = app.add_subcommand("auto-gcg", "Generate gamma-CGs over a vocabulary");
  autoGcg->add_option("--config", o.config, "Run configuration (autoGcg section)");
  autoGcg->add_option("--vocab", o.vocab, "Vocabulary file")->required();
  autoGcg->add_option("--out", o.out, "Output directory (new or empty)")->required();
  autoGcg->add_option("--seed", o.seed, "Override the configured seed");

  auto* autoVar = app.add_subcommand("auto-var", "Add variables to gamma-CGs");
  autoVar->add_option("--config", o.config, "Run configuration (autoVar section)");
  autoVar->add_option("--vocab", o.vocab, "Vocabulary file")->required();
  autoVar->add_option("--out", o.out, "Output directory (new or empty)")->required();
  autoVar->add_option("--seed", o.seed, "Override the configured seed");
  autoVar->add_option("gammas", o.paths, "Gamma-CG files or directories");

  auto* validate = app.add_subcommand("validate", "Check documents, datasets or run directories");
  validate->add_option("--vocab", o.vocab, "Vocabulary for graph documents");
  validate->add_option("paths", o.paths, "Files or directories")->required();

  auto* stats = app.add_subcommand("stats", "Print NbN, NbL and arity counts of a dataset");
  stats->add_option("--vocab", o.vocab, "Vocabulary file");
  stats->add_option("dataset", o.paths, "Dataset or run directory")->required()->expected(1);

  auto* dot = app.add_subcommand("export-dot", "Render a CG as Graphviz text");
  dot->add_option("--vocab", o.vocab, "Vocabulary file");
  dot->add_option("--out", o.out, "Output file; stdout when absent");
  dot->add_option("cg", o.paths, "CG file")->required()->expected(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (generate->parsed()) return cmdGenerate(o, out, err);
    if (autoVoc->parsed()) return cmdAutoVoc(o, out, err);
    if (autoGcg->parsed()) return cmdAutoGcg(o, out, err);
    if (autoVar->parsed()) return cmdAutoVar(o, out, err);
    if (validate->parsed()) return cmdValidate(o, out);
    if (stats->parsed()) return cmdStats(o, out);
    if (dot->parsed()) return cmdExportDot(o, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace cg2a::cli
