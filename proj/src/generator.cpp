#include "cg2a/generator.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <optional>
#include <thread>

#include "cg2a/error.hpp"

namespace cg2a {
namespace {

// Consecutive component draws that add no node before generation gives up.
constexpr int kStallLimit = 1000;

class LocalMint final : public MarkerMint {
 public:
  LocalMint(std::uint32_t base, std::vector<TypeId>& minted) : base_(base), minted_(minted) {}

  MarkerId mint(TypeId type) override {
    minted_.push_back(type);
    return MarkerId{base_ + static_cast<std::uint32_t>(minted_.size() - 1)};
  }

 private:
  std::uint32_t base_;
  std::vector<TypeId>& minted_;
};

}  // namespace

void GeneratorConfig::validate() const {
  if (maxCGs < 1) throw ConfigError("maxCGs must be at least 1");
  if (minSize < 1) throw ConfigError("minSize must be at least 1");
}

GeneratedGraph generateOne(const Vocabulary& vocab, std::span<const GammaCG> gammas, const GeneratorConfig& config,
                           Rng& rng) {
  config.validate();
  if (gammas.empty()) throw ConfigError("the gamma-CG set is empty");

  GeneratedGraph out;
  LocalMint mint(static_cast<std::uint32_t>(vocab.markerCount()), out.mintedMarkerTypes);
  const InstantiateOptions options{config.maxSpe, &mint};

  std::vector<std::size_t> available(gammas.size());
  for (std::size_t i = 0; i < gammas.size(); ++i) available[i] = i;

  int stalled = 0;
  while (out.graph.size() < config.minSize) {
    if (available.empty()) throw ConfigError("no gamma-CG could be instantiated");
    const std::size_t pick = uniformIndex(rng, available.size());
    const std::size_t gamma = available[pick];

    std::optional<Instantiation> inst;
    for (int attempt = 0; attempt < kInstantiationAttempts && !inst; ++attempt) {
      try {
        inst = instantiateDetailed(vocab, gammas[gamma], rng, options);
      } catch (const InstantiationError&) {
      }
    }
    if (!inst) {
      available.erase(available.begin() + static_cast<std::ptrdiff_t>(pick));
      out.provenance.skippedGammas.push_back(gamma);
      continue;
    }

    ComponentRecord record{gamma, std::move(inst->assignments), {}};
    const auto before = out.graph.size();
    out.graph = join(vocab, out.graph, inst->graph, &record.join);
    out.provenance.components.push_back(std::move(record));

    if (out.graph.size() > before) {
      stalled = 0;
    } else if (++stalled >= kStallLimit) {
      throw ConfigError("gamma-CGs stopped adding nodes after " + std::to_string(out.graph.size()) +
                        " nodes; minSize " + std::to_string(config.minSize) + " is unreachable");
    }
  }
  return out;
}

Rng graphStream(std::uint64_t seed, std::size_t index) { return Rng(deriveSeed(seed, 0x6367, index)); }

Dataset generateDataset(const Vocabulary& vocab, std::span<const GammaCG> gammas, const GeneratorConfig& config,
                        unsigned jobs) {
  config.validate();
  if (gammas.empty()) throw ConfigError("the gamma-CG set is empty");
  for (const auto& gcg : gammas) {
    const auto report = validateGammaCG(vocab, gcg, RelationDomainPolicy::arity_only);
    if (!report.ok())
      throw ValidationError("gamma-CG '" + gcg.name + "': " + report.violations.front().message +
                            (report.violations.size() > 1
                                 ? " (+" + std::to_string(report.violations.size() - 1) + " more)"
                                 : ""));
  }

  const std::size_t n = config.maxCGs;
  std::vector<std::optional<GeneratedGraph>> results(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        Rng rng = graphStream(config.seed, i);
        results[i] = generateOne(vocab, gammas, config, rng);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  // Minted markers get global ids in graph order, whatever the schedule.
  Dataset out{vocab, {}, {}};
  const auto base = static_cast<std::uint32_t>(vocab.markerCount());
  out.graphs.reserve(n);
  out.provenance.reserve(n);
  for (auto& r : results) {
    std::vector<MarkerId> remap;
    for (TypeId t : r->mintedMarkerTypes) remap.push_back(out.vocabulary.mintMarker(t));
    auto fix = [&](MarkerId m) { return m.value >= base ? remap.at(m.value - base) : m; };

    if (!remap.empty()) {
      for (std::uint32_t c = 0; c < r->graph.concepts().size(); ++c)
        if (auto m = r->graph.concepts()[c].marker) r->graph.setMarker(ConceptId{c}, fix(*m));
      for (auto& comp : r->provenance.components)
        for (auto& a : comp.assignments) {
          if (auto* m = std::get_if<MarkerId>(&a.drawn)) *m = fix(*m);
          if (auto* m = std::get_if<MarkerId>(&a.assigned)) *m = fix(*m);
        }
    }
    out.graphs.push_back(std::move(r->graph));
    out.provenance.push_back(std::move(r->provenance));
  }
  return out;
}

}  // namespace cg2a
