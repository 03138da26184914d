#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "cg2a/gamma.hpp"
#include "cg2a/random.hpp"
#include "cg2a/vocabulary.hpp"

namespace cg2a::test {

/// data/ directory of the source tree.
std::filesystem::path dataDir();

/// The reference vocabulary and its gamma-CGs, in file-name order.
Vocabulary referenceVocabulary();
std::vector<GammaCG> referenceGammas(const Vocabulary& vocab);

/// Small hand-built vocabulary.
///
///   Top -> Agent -> Person -> {Student, Teacher}
///   Top -> Place -> {City, Country}
///   Top -> Thing
///   arity 2: link(Top, Top) -> {livesIn(Person, Place) -> bornIn(Person, City),
///                               knows(Agent, Agent) -> teaches(Teacher, Student)}
///   arity 1: prop(Top) -> famous(Person)
///   arity 3: meet(Agent, Agent, Place)
///   markers: alice:Student, bob:Teacher, carol:Person, paris:City, france:Country
Vocabulary smallVocabulary();

struct RandomVocabularyOptions {
  std::size_t maxConceptTypes = 40;
  std::size_t maxRelationTypesPerArity = 12;
  std::vector<std::uint32_t> arities{1, 2, 3};
  std::size_t maxMarkers = 30;
  /// Probability that a type gets a second parent.
  double secondParent = 0.3;
};

/// Random DAG hierarchies with monotone signatures; built without the
/// library's auto-generation code.
Vocabulary randomVocabulary(Rng& rng, const RandomVocabularyOptions& options = {});

/// Random graph valid over `vocab`: relation types drawn uniformly, each
/// argument either a fresh concept typed below the restriction or an
/// existing concept that already satisfies it. Marked nodes carry a marker
/// whose type is an ancestor-or-self of the node type.
ConceptualGraph randomGraph(const Vocabulary& vocab, Rng& rng, std::size_t relations,
                            double markerProbability = 0.3);

/// Random gamma-CG over randomGraph with up to `maxVariables` variables on
/// distinct slots; every domain is a random subset of the admissible set.
GammaCG randomGamma(const Vocabulary& vocab, Rng& rng, std::size_t relations, std::size_t maxVariables,
                    const std::string& name = "g");

/// Multiset view of a graph for comparisons that ignore node order:
/// "type:marker" per concept and "rel(type:marker,...)" per relation.
struct GraphShape {
  std::vector<std::string> concepts;
  std::vector<std::string> relations;
  friend bool operator==(const GraphShape&, const GraphShape&) = default;
};
GraphShape shapeOf(const Vocabulary& vocab, const ConceptualGraph& g);

/// Drops every repeated occurrence of a marker, keeping the first node.
ConceptualGraph withDistinctMarkers(ConceptualGraph g);

/// Two graphs that share exactly one marker, carried by `inA` and `inB`
/// with comparable types; `expected` is the more specific one. Every other
/// node is generic. Requires a vocabulary with at least one marker.
struct CoreferentPair {
  ConceptualGraph a, b;
  ConceptId inA, inB;
  TypeId expected;
};
CoreferentPair coreferentPair(const Vocabulary& vocab, Rng& rng);

/// Two graphs with distinct markers inside each and no marker in common.
std::pair<ConceptualGraph, ConceptualGraph> markerDisjointPair(const Vocabulary& vocab, Rng& rng);

}  // namespace cg2a::test
