#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cg2a/autogen.hpp"
#include "cg2a/generator.hpp"

namespace cg2a::cli {

/// Parsed run configuration. Paths are already resolved against the
/// directory of the config file.
struct RunConfig {
  GeneratorConfig generator;
  /// Absent when neither the document nor the command line gives a seed.
  std::optional<std::uint64_t> seed;
  std::optional<AutoVocConfig> autoVoc;
  std::optional<AutoGcgConfig> autoGcg;
  std::optional<AutoVarConfig> autoVar;
  std::optional<std::filesystem::path> vocabulary;
  /// Vocabulary the gamma-CG files are written against, when it differs
  /// from the run vocabulary (template mode under autoVoc).
  std::optional<std::filesystem::path> templateVocabulary;
  std::vector<std::filesystem::path> gammaCGs;
};

/// ParseError on malformed JSON or wrongly typed fields, ConfigError on
/// unknown sections or fields.
RunConfig parseRunConfig(std::string_view text, const std::filesystem::path& baseDir,
                         std::string_view source = "<config>");
RunConfig loadRunConfig(const std::filesystem::path& path);

/// ConfigError unless exactly one vocabulary source and one gamma-CG source
/// are given. Gamma-CG files together with autoVoc are templates and need
/// templateVocabulary.
void checkSources(const RunConfig& config);

// Stage streams. Every stage derives its generator from the run seed, so a
// stage run alone reproduces the artifact of the full pipeline.
inline constexpr std::uint64_t kAutoVocStream = 0x766f63;
inline constexpr std::uint64_t kAutoGcgStream = 0x676367;
inline constexpr std::uint64_t kAutoVarStream = 0x766172;

Rng stageStream(std::uint64_t seed, std::uint64_t stream);

/// Gamma-CG files named by `paths`; directories contribute their *.json
/// files in name order.
std::vector<std::filesystem::path> expandGammaPaths(const std::vector<std::filesystem::path>& paths);

struct PipelineResult {
  Vocabulary vocabulary;
  std::vector<GammaCG> gammas;
  std::vector<std::string> warnings;
  GeneratorConfig config;
  Dataset dataset;
};

/// Vocabulary, gamma-CGs and variables from their configured sources, then
/// the dataset. config.seed must be set.
PipelineResult runPipeline(const RunConfig& config, unsigned jobs);

}  // namespace cg2a::cli
