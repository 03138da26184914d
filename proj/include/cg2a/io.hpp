#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cg2a/gamma.hpp"
#include "cg2a/generator.hpp"
#include "cg2a/metrics.hpp"

namespace cg2a {

/// Version written into every document. Loaders accept any 1.x.y.
inline constexpr std::string_view kFormatVersion = "1.0.0";

/// Document kinds, as stored in the "kind" field.
inline constexpr std::string_view kVocabularyKind = "vocabulary";
inline constexpr std::string_view kGammaKind = "gamma-cg";
inline constexpr std::string_view kGraphKind = "cg";
inline constexpr std::string_view kManifestKind = "manifest";
inline constexpr std::string_view kProvenanceKind = "provenance";

// Text forms. Writers are canonical: identical values give identical bytes.
// Readers throw ParseError on malformed documents (the message names the
// source and the field path) and ValidationError on content that breaks a
// model invariant. `source` only feeds diagnostics.

std::string vocabularyToText(const Vocabulary& vocab);
Vocabulary vocabularyFromText(std::string_view text, std::string_view source = "<vocabulary>");

std::string graphToText(const Vocabulary& vocab, const ConceptualGraph& g);
ConceptualGraph graphFromText(const Vocabulary& vocab, std::string_view text, std::string_view source = "<cg>");

std::string gammaToText(const Vocabulary& vocab, const GammaCG& gcg);
GammaCG gammaFromText(const Vocabulary& vocab, std::string_view text, std::string_view source = "<gamma-cg>");

std::string relationDomainPolicyName(RelationDomainPolicy policy);
/// ConfigError on an unknown name.
RelationDomainPolicy relationDomainPolicyFromName(std::string_view name);

struct DatasetManifest {
  std::string formatVersion{kFormatVersion};
  GeneratorConfig config;
  DatasetStats stats;
  std::vector<std::string> cgFileRefs;
  std::optional<std::string> provenanceRef;

  friend bool operator==(const DatasetManifest&, const DatasetManifest&) = default;
};

std::string manifestToText(const DatasetManifest& manifest);
DatasetManifest manifestFromText(std::string_view text, std::string_view source = "<manifest>");

/// Provenance of every graph; gamma-CG and variable names come from `gammas`.
std::string provenanceToText(const Vocabulary& vocab, std::span<const GammaCG> gammas,
                             std::span<const GenerationProvenance> provenance);

// Files.

std::string readTextFile(const std::filesystem::path& path);
void writeTextFile(const std::filesystem::path& path, std::string_view text);
/// Value of the "kind" field of a document.
std::string documentKind(const std::filesystem::path& path);

void saveVocabulary(const std::filesystem::path& path, const Vocabulary& vocab);
Vocabulary loadVocabulary(const std::filesystem::path& path);
void saveCG(const std::filesystem::path& path, const Vocabulary& vocab, const ConceptualGraph& g);
ConceptualGraph loadCG(const std::filesystem::path& path, const Vocabulary& vocab);
void saveGammaCG(const std::filesystem::path& path, const Vocabulary& vocab, const GammaCG& gcg);
GammaCG loadGammaCG(const std::filesystem::path& path, const Vocabulary& vocab);

/// "cg-0007.json"; at least four digits, more when count needs them.
std::string graphFileName(std::size_t index, std::size_t count);

/// Writes manifest.json, one cg-<index>.json per graph and, when `gammas`
/// is given, provenance.json into `dir` (created if missing). The
/// vocabulary is not written; it lives next to the dataset directory.
DatasetManifest saveDataset(const std::filesystem::path& dir, const Dataset& dataset, const GeneratorConfig& config,
                            std::optional<std::span<const GammaCG>> gammas = std::nullopt);

struct LoadedDataset {
  DatasetManifest manifest;
  std::vector<ConceptualGraph> graphs;
};

/// Reads the manifest and every referenced graph. ValidationError when the
/// file list does not match the recorded graph count.
LoadedDataset loadDataset(const std::filesystem::path& dir, const Vocabulary& vocab);

/// Graphviz text: concepts as boxes labelled "type : marker" ("type : *"
/// when generic), relations as ellipses, one edge per argument labelled
/// with its 0-based position.
std::string exportDot(const Vocabulary& vocab, const ConceptualGraph& g);

}  // namespace cg2a
