#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "cg2a/gamma.hpp"

namespace cg2a {

/// A numeric input that is either fixed or drawn from N(mean, stddev).
struct ParamSpec {
  double mean = 0.0;
  double stddev = 0.0;
  bool normal = false;

  static ParamSpec fixed(double value) { return {value, 0.0, false}; }
  static ParamSpec gaussian(double mean, double stddev) { return {mean, stddev, true}; }

  friend bool operator==(const ParamSpec&, const ParamSpec&) = default;
};

struct ParamRange {
  std::int64_t min = 0;
  std::int64_t max = 0;
};

inline constexpr ParamRange kDepthRange{1, 16};
inline constexpr ParamRange kChildrenRange{1, 16};
inline constexpr ParamRange kMarkersPerTypeRange{0, 64};
inline constexpr ParamRange kGammaCountRange{1, 100000};
inline constexpr ParamRange kGammaSizeRange{1, 100000};
inline constexpr ParamRange kVariableCountRange{0, 1000};
inline constexpr ParamRange kValuesPerVariableRange{1, 1000};
inline constexpr ParamRange kSpecialisationRange{0, 64};

/// Rounds the fixed value or a gaussian draw to the nearest integer and
/// clamps it to `range`. A negative stddev raises ConfigError.
std::int64_t sampleParam(const ParamSpec& spec, ParamRange range, Rng& rng);

struct AutoVocConfig {
  ParamSpec conceptDepth = ParamSpec::fixed(4);
  ParamSpec relationDepth = ParamSpec::fixed(3);
  ParamSpec maxChildren = ParamSpec::fixed(3);
  ParamSpec markersPerType = ParamSpec::fixed(3);
  std::set<std::uint32_t> arities{1, 2, 3};

  friend bool operator==(const AutoVocConfig&, const AutoVocConfig&) = default;
};

/// Probability that a type off the full-depth chain gets children.
inline constexpr double kBranchProbability = 0.75;
/// Probability that a refined signature keeps the parent's restriction at
/// a position instead of stepping one level down.
inline constexpr double kKeepRestrictionProbability = 0.5;

/// Random vocabulary. The concept hierarchy is a tree rooted at "Top" with
/// exactly the sampled number of levels; each expanded type gets 1 to
/// maxChildren children. Each arity gets a relation tree rooted at
/// "T<arity>" with the all-Top signature; a child's signature keeps or
/// narrows each parent restriction, so monotonicity holds by construction.
/// markersPerType is sampled once per concept type.
Vocabulary autoVocabulary(const AutoVocConfig& config, Rng& rng);

struct AutoGcgConfig {
  ParamSpec count = ParamSpec::fixed(10);
  /// Sampled once per gamma-CG.
  ParamSpec minSize = ParamSpec::fixed(8);

  friend bool operator==(const AutoGcgConfig&, const AutoGcgConfig&) = default;
};

/// Probability that an auto-generated concept node receives a marker when
/// an admissible one exists.
inline constexpr double kMarkerProbability = 0.5;

/// Variable-free gamma-CGs built by running the generation loop over the
/// vocabulary's signature graphs with every label free: the relation type
/// is drawn per `policy`, concept types among signature-compatible types,
/// each then specialized; concept nodes may receive an admissible marker,
/// so components chain through shared markers.
/// ConfigError when the vocabulary has no relation type.
std::vector<GammaCG> autoGammaCGs(const Vocabulary& vocab, const AutoGcgConfig& config, Rng& rng,
                                  RelationDomainPolicy policy = RelationDomainPolicy::signature_compatible);

struct AutoVarConfig {
  ParamSpec conceptVarsPerCG = ParamSpec::fixed(1);
  ParamSpec relationVarsPerCG = ParamSpec::fixed(1);
  ParamSpec markerVarsPerCG = ParamSpec::fixed(1);
  ParamSpec valuesPerVariable = ParamSpec::fixed(3);
  ParamSpec specialisations = ParamSpec::fixed(1);

  friend bool operator==(const AutoVarConfig&, const AutoVarConfig&) = default;
};

struct AutoVarResult {
  std::vector<GammaCG> gammas;
  /// One line per gamma-CG whose free slots ran out.
  std::vector<std::string> warnings;
};

/// Adds variables on free label slots: relation types first, then concept
/// types, then markers. Each domain is a uniform sample of the admissible
/// values, deduplicated; type values are then specialized up to
/// `specialisations` steps while staying admissible.
AutoVarResult autoVariables(const Vocabulary& vocab, std::span<const GammaCG> gammas, const AutoVarConfig& config,
                            Rng& rng, RelationDomainPolicy policy = RelationDomainPolicy::signature_compatible);

/// Re-expresses gamma-CG templates written for another vocabulary over
/// `vocab`. Topology and marked/generic status are kept; every label slot
/// becomes a variable over its whole admissible set (relation slots over
/// every type of their arity), so labels are drawn per instantiation.
/// Placeholders are the hierarchy roots and one marker of the root type,
/// minted into `vocab` when none exists. ConfigError when `vocab` lacks an
/// arity used by a template.
std::vector<GammaCG> rebindGammaCGs(Vocabulary& vocab, std::span<const GammaCG> templates);

/// Unique pronounceable labels: consonant-vowel syllables plus a running
/// numeric suffix.
class LabelMaker {
 public:
  std::string conceptLabel(Rng& rng);
  std::string relationLabel(Rng& rng);

 private:
  std::string syllables(Rng& rng);
  std::uint64_t next_ = 0;
};

}  // namespace cg2a
