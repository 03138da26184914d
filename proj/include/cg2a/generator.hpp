#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cg2a/gamma.hpp"

namespace cg2a {

struct GeneratorConfig {
  std::size_t maxCGs = 1;
  /// Minimum size of a generated CG, in concept plus relation nodes.
  std::size_t minSize = 1;
  /// Upper bound on downward specialization steps per type variable.
  std::uint32_t maxSpe = 0;
  std::uint64_t seed = 0;
  RelationDomainPolicy relationDomainPolicy = RelationDomainPolicy::signature_compatible;

  /// ConfigError unless maxCGs >= 1 and minSize >= 1.
  void validate() const;

  friend bool operator==(const GeneratorConfig&, const GeneratorConfig&) = default;
};

/// Which side of a join a node came from, and its id there.
struct JoinNodeRef {
  enum class Side { accumulator, added } side;
  ConceptId node;
  friend bool operator==(const JoinNodeRef&, const JoinNodeRef&) = default;
};

struct MergedPair {
  JoinNodeRef kept;
  JoinNodeRef merged;
};

struct JoinReport {
  /// Nodes fused into `kept`; kept carries the most specific type.
  std::vector<MergedPair> merged;
  /// Same marker but incomparable types; both nodes stay.
  std::vector<MergedPair> incomparable;
};

/// Coreferent-node join. Disjoint union of `acc` and `added`, except that
/// concept nodes carrying the same marker collapse into one node holding
/// the most specific of their types, with every edge redirected to it.
/// Nodes with incomparable types are left apart and listed in the report.
/// Surviving nodes keep their relative order: accumulator nodes first.
ConceptualGraph join(const Vocabulary& vocab, const ConceptualGraph& acc, const ConceptualGraph& added,
                     JoinReport* report = nullptr);

/// One component draw of generateOne.
struct ComponentRecord {
  std::size_t gamma = 0;
  std::vector<Assignment> assignments;
  JoinReport join;
};

struct GenerationProvenance {
  std::vector<ComponentRecord> components;
  /// gamma-CG indices dropped for this CG after repeated instantiation failure.
  std::vector<std::size_t> skippedGammas;
};

struct GeneratedGraph {
  ConceptualGraph graph;
  GenerationProvenance provenance;
  /// Types of markers minted while building this graph. Their ids are
  /// base.markerCount() + k until remapped by generateDataset.
  std::vector<TypeId> mintedMarkerTypes;
};

/// Attempts per component draw before the gamma-CG is skipped.
inline constexpr int kInstantiationAttempts = 16;

/// Builds one CG: draw a gamma-CG uniformly, instantiate and specialize it,
/// join it into the accumulator; repeat until size >= config.minSize.
/// Throws ConfigError on an empty gamma set or when no gamma-CG can grow
/// the graph any more.
GeneratedGraph generateOne(const Vocabulary& vocab, std::span<const GammaCG> gammas, const GeneratorConfig& config,
                           Rng& rng);

struct Dataset {
  /// Input vocabulary plus every marker minted during generation.
  Vocabulary vocabulary;
  std::vector<ConceptualGraph> graphs;
  std::vector<GenerationProvenance> provenance;
};

/// Stream of graph `index`; independent of how many graphs are built.
Rng graphStream(std::uint64_t seed, std::size_t index);

/// Builds config.maxCGs graphs; graph i uses graphStream(seed, i). With
/// jobs > 1 graphs are built concurrently, with identical results.
Dataset generateDataset(const Vocabulary& vocab, std::span<const GammaCG> gammas, const GeneratorConfig& config,
                        unsigned jobs = 1);

}  // namespace cg2a
