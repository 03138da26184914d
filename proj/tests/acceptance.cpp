// Acceptance checks: one PASS/FAIL line per criterion. Exit status 0 only
// when every criterion passes.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cg2a/autogen.hpp"
#include "cg2a/io.hpp"
#include "cg2a/metrics.hpp"
#include "cli.hpp"
#include "run_config.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace cg2a;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

fs::path reference(const char* name) { return test::dataDir() / "reference" / name; }

unsigned jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

cli::PipelineResult runMode(const char* config, std::uint64_t seed) {
  auto rc = cli::loadRunConfig(reference(config));
  rc.seed = seed;
  return cli::runPipeline(rc, jobs());
}

class Scratch {
 public:
  Scratch() : root_(fs::temp_directory_path() / format("cg2a-acceptance-%llu", static_cast<unsigned long long>(
                                                                                   std::random_device{}()))) {
    fs::create_directories(root_);
  }
  ~Scratch() { fs::remove_all(root_); }
  fs::path next() { return root_ / std::to_string(counter_++); }

 private:
  fs::path root_;
  int counter_ = 0;
};

int cg2aCommand(std::vector<std::string> args) {
  args.insert(args.begin(), "cg2a");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file()) files[fs::relative(e.path(), dir).string()] = readTextFile(e.path());
  return files;
}

// Criteria 1 and 2 share the Full-Auto runs.
struct FullAutoRuns {
  std::size_t invalidGraphs = 0;
  std::size_t countViolations = 0;
  std::size_t sizeViolations = 0;
  std::size_t graphs = 0;
  double seconds = 0;
};

FullAutoRuns fullAutoRuns() {
  FullAutoRuns r;
  const auto start = std::chrono::steady_clock::now();
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto run = runMode("full-auto.json", seed);
    std::size_t largest = 0;
    for (const auto& g : run.gammas) largest = std::max(largest, g.graph.size());
    if (run.dataset.graphs.size() != 100) ++r.countViolations;
    for (const auto& g : run.dataset.graphs) {
      ++r.graphs;
      if (!validateGraph(run.dataset.vocabulary, g).ok()) ++r.invalidGraphs;
      if (g.size() < 30 || g.size() >= 30 + largest) ++r.sizeViolations;
    }
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

Outcome criterion3(Scratch& scratch) {
  double worst = 0;
  std::string detail;
  for (const char* mode : {"cg2a.json", "full-auto.json"}) {
    const auto start = std::chrono::steady_clock::now();
    const int code = cg2aCommand({"generate", "--config", reference(mode).string(), "--out", scratch.next().string()});
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (code != cli::kExitOk) return {false, format("%s exited with %d", mode, code)};
    worst = std::max(worst, s);
    detail += format("%s %.3f s; ", mode, s);
  }
  return {worst < 5.0, detail + "limit 5 s"};
}

Outcome criterion4(Scratch& scratch) {
  std::size_t diffs = 0, runs = 0;
  for (const char* mode : {"cg2a.json", "auto-voc.json", "auto-gcg.json", "auto-var.json", "full-auto.json"}) {
    std::vector<std::map<std::string, std::string>> snaps;
    for (const char* j : {"1", "1", "4", "0"}) {
      const auto out = scratch.next();
      if (cg2aCommand({"generate", "--config", reference(mode).string(), "--out", out.string(), "--jobs", j}) != 0)
        return {false, format("%s failed to generate", mode)};
      snaps.push_back(snapshot(out));
      ++runs;
    }
    for (std::size_t i = 1; i < snaps.size(); ++i) diffs += snaps[i] != snaps[0];
  }
  return {diffs == 0, format("%zu runs over 5 modes, --jobs 1/1/4/0, %zu differing directories", runs, diffs)};
}

Outcome criterion5() {
  std::size_t mismatches = 0, checks = 0, largest = 0;
  const test::RandomVocabularyOptions options{.maxConceptTypes = 60, .maxRelationTypesPerArity = 13, .maxMarkers = 40};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(deriveSeed(seed, 5));
    const auto v = test::randomVocabulary(rng, options);
    largest = std::max(largest, v.concepts().size() + v.relationTypeCount());
    for (int k = 0; k < 5; ++k) {
      const auto g = test::randomGraph(v, rng, 10, 0.5);
      for (std::uint32_t c = 0; c < g.concepts().size(); ++c) {
        ++checks;
        mismatches += conceptTypeDomain(v, g, ConceptId{c}) != test::oracle::conceptTypeDomain(v, g, ConceptId{c});
        if (g.concepts()[c].marker) {
          ++checks;
          mismatches += markerDomain(v, g, ConceptId{c}) != test::oracle::markerDomain(v, g, ConceptId{c});
        }
      }
      for (std::uint32_t r = 0; r < g.relations().size(); ++r)
        for (auto p : {RelationDomainPolicy::arity_only, RelationDomainPolicy::signature_compatible}) {
          ++checks;
          mismatches +=
              relationTypeDomain(v, g, RelationId{r}, p) != test::oracle::relationTypeDomain(v, g, RelationId{r}, p);
        }
    }
  }
  return {mismatches == 0 && largest <= 100,
          format("%zu domain comparisons, %zu mismatches, largest vocabulary %zu types", checks, mismatches, largest)};
}

Outcome criterion6() {
  std::size_t violations = 0;
  const AutoVocConfig config{.conceptDepth = ParamSpec::fixed(4),
                             .relationDepth = ParamSpec::fixed(3),
                             .maxChildren = ParamSpec::fixed(3),
                             .markersPerType = ParamSpec::fixed(3)};
  std::size_t pairs = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(deriveSeed(seed, 6));
    const auto v = autoVocabulary(config, rng);
    const auto& ct = v.concepts();
    violations += ct.height() != 4;
    for (TypeId t : ct.all()) {
      violations += ct.children(t).size() > 3;
      violations += v.markersOfType(t).size() != 3;
    }
    for (auto arity : v.arities()) {
      const auto& h = v.relations(arity);
      violations += h.height() != 3;
      for (TypeId a : h.all()) {
        violations += h.children(a).size() > 3;
        for (TypeId b : h.all()) {
          if (!test::oracle::reaches(h, a, b)) continue;
          ++pairs;
          const auto sa = v.signature({arity, a});
          const auto sb = v.signature({arity, b});
          for (std::size_t k = 0; k < arity; ++k) violations += !test::oracle::reaches(ct, sa[k], sb[k]);
        }
      }
    }
  }
  return {violations == 0, format("100 vocabularies, %zu ordered relation pairs, %zu violations", pairs, violations)};
}

struct ModeSummary {
  double nbLabelsSd = 0, ar1 = 0, ar2 = 0, ar3 = 0;
};

ModeSummary summarize(const char* mode, std::uint64_t firstSeed) {
  ModeSummary s;
  for (std::uint64_t seed = firstSeed; seed < firstSeed + 100; ++seed) {
    const auto st = computeStats(runMode(mode, seed).dataset.graphs);
    s.nbLabelsSd += st.nbLabelsStddev / 100;
    s.ar1 += st.arity(1) / 100;
    s.ar2 += st.arity(2) / 100;
    s.ar3 += st.arity(3) / 100;
  }
  return s;
}

Outcome criterion7() {
  bool pass = true;
  std::string detail;
  for (int rep = 0; rep < 3; ++rep) {
    const std::uint64_t first = 1 + 100 * static_cast<std::uint64_t>(rep);
    const auto base = summarize("cg2a.json", first);
    const auto voc = summarize("auto-voc.json", first);
    const auto gcg = summarize("auto-gcg.json", first);
    const double factor = voc.nbLabelsSd / base.nbLabelsSd;
    const double baseMix = (base.ar1 + base.ar3) / (base.ar1 + base.ar2 + base.ar3);
    const double gcgMix = (gcg.ar1 + gcg.ar3) / (gcg.ar1 + gcg.ar2 + gcg.ar3);
    const bool ok = factor >= 1.5 && gcg.ar1 > 0 && gcg.ar3 > 0 && gcgMix > baseMix;
    pass = pass && ok;
    detail += format("[rep %d: NbL sd %.2f vs %.2f (x%.2f, need 1.5); Ar1/Ar3 %.2f/%.2f vs %.2f/%.2f, "
                     "non-binary share %.3f vs %.3f] ",
                     rep + 1, voc.nbLabelsSd, base.nbLabelsSd, factor, gcg.ar1, gcg.ar3, base.ar1, base.ar3, gcgMix,
                     baseMix);
  }
  return {pass, detail};
}

Outcome criterion8() {
  std::size_t mismatches = 0;
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); };
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(deriveSeed(seed, 8));
    const auto v = test::randomVocabulary(rng);
    std::vector<ConceptualGraph> ds;
    const auto n = uniformCount(rng, 1, 20);
    for (std::uint32_t i = 0; i < n; ++i) ds.push_back(test::randomGraph(v, rng, uniformCount(rng, 0, 15)));
    const auto got = computeStats(ds);
    const auto want = test::oracle::stats(v, ds);
    mismatches += got.cgCount != want.cgCount;
    mismatches += !close(got.nbNodesMean, want.nbNodesMean) + !close(got.nbNodesStddev, want.nbNodesStddev);
    mismatches += !close(got.nbLabelsMean, want.nbLabelsMean) + !close(got.nbLabelsStddev, want.nbLabelsStddev);
    mismatches += got.arityCounts.size() != want.arityCounts.size();
    for (const auto& [k, mean] : want.arityCounts) mismatches += !close(got.arity(k), mean);
    for (int p = 0; p < 5; ++p) {
      auto shuffled = ds;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      mismatches += !(computeStats(shuffled) == got);
    }
  }
  return {mismatches == 0, format("20 datasets, 5 permutations each, %zu mismatches", mismatches)};
}

Outcome criterion9() {
  std::size_t violations = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng(deriveSeed(seed, 9));
    Vocabulary v;
    do v = test::randomVocabulary(rng);
    while (v.markerCount() == 0);

    const auto g = test::withDistinctMarkers(test::randomGraph(v, rng, 8, 0.5));
    violations += !(join(v, g, ConceptualGraph{}) == g);
    violations += !(join(v, ConceptualGraph{}, g) == g);

    const auto [a, b] = test::markerDisjointPair(v, rng);
    violations += join(v, a, b).size() != a.size() + b.size();

    const auto p = test::coreferentPair(v, rng);
    JoinReport report;
    const auto j = join(v, p.a, p.b, &report);
    violations += report.merged.size() != 1;
    violations += j.size() != p.a.size() + p.b.size() - 1;
    violations += j.conceptNode(p.inA).type != p.expected;
    violations += j.incidences()[p.inA.value].size() !=
                  p.a.incidences()[p.inA.value].size() + p.b.incidences()[p.inB.value].size();
  }
  return {violations == 0, format("1000 fixtures (identity, marker-disjoint, coreferent), %zu violations", violations)};
}

Outcome criterion10(Scratch& scratch) {
  std::size_t diffs = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(deriveSeed(seed, 10));
    const auto v = test::randomVocabulary(rng);
    const auto vt = vocabularyToText(v);
    const auto v2 = vocabularyFromText(vt);
    diffs += !(v2 == v) + (vocabularyToText(v2) != vt);

    const auto gcg = test::randomGamma(v, rng, 6, 5);
    const auto yt = gammaToText(v, gcg);
    diffs += !(gammaFromText(v, yt) == gcg) + (gammaToText(v, gammaFromText(v, yt)) != yt);

    const auto g = test::randomGraph(v, rng, 10);
    const auto gt = graphToText(v, g);
    diffs += !(graphFromText(v, gt) == g) + (graphToText(v, graphFromText(v, gt)) != gt);

    const auto av = autoVocabulary({}, rng);
    const auto gammas = autoGammaCGs(av, {.count = ParamSpec::fixed(3)}, rng);
    const GeneratorConfig config{.maxCGs = 4, .minSize = 12, .maxSpe = 2, .seed = seed};
    const auto ds = generateDataset(av, gammas, config);
    const auto one = scratch.next(), two = scratch.next();
    const auto manifest = saveDataset(one, ds, config, gammas);
    saveDataset(two, ds, config, gammas);
    diffs += snapshot(one) != snapshot(two);
    const auto loaded = loadDataset(one, vocabularyFromText(vocabularyToText(ds.vocabulary)));
    diffs += !(loaded.graphs == ds.graphs) + !(loaded.manifest == manifest);
  }
  return {diffs == 0, format("100 instances of vocabulary, gamma-CG, CG and dataset documents, %zu diffs", diffs)};
}

}  // namespace

int main() {
  Scratch scratch;
  bool all = true;
  auto report = [&](int n, const char* name, const Outcome& o) {
    all = all && o.pass;
    std::printf("criterion %2d %-28s %s  %s\n", n, name, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  };
  auto guarded = [&](int n, const char* name, const std::function<Outcome()>& f) {
    try {
      report(n, name, f());
    } catch (const std::exception& e) {
      report(n, name, {false, std::string("exception: ") + e.what()});
    }
  };

  FullAutoRuns runs;
  std::string runError;
  try {
    runs = fullAutoRuns();
  } catch (const std::exception& e) {
    runError = e.what();
  }
  guarded(1, "soundness", [&]() -> Outcome {
    if (!runError.empty()) return {false, "exception: " + runError};
    return {runs.invalidGraphs == 0 && runs.seconds < 120,
            format("100 Full-Auto runs, %zu graphs, %zu invalid, %.1f s (expected under 120 s)", runs.graphs,
                   runs.invalidGraphs, runs.seconds)};
  });
  guarded(2, "size/count contract", [&]() -> Outcome {
    if (!runError.empty()) return {false, "exception: " + runError};
    return {runs.countViolations == 0 && runs.sizeViolations == 0,
            format("%zu datasets with wrong count, %zu graphs outside [30, 30 + largest gamma-CG)",
                   runs.countViolations, runs.sizeViolations)};
  });
  guarded(3, "runtime", [&] { return criterion3(scratch); });
  guarded(4, "determinism", [&] { return criterion4(scratch); });
  guarded(5, "domain oracles", criterion5);
  guarded(6, "auto-voc structure", criterion6);
  guarded(7, "variability trend", criterion7);
  guarded(8, "metrics oracle", criterion8);
  guarded(9, "join properties", criterion9);
  guarded(10, "format round trips", [&] { return criterion10(scratch); });
  return all ? 0 : 1;
}
