#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "cg2a/graph.hpp"
#include "cg2a/random.hpp"

namespace cg2a {

/// Variable on the type label of a relation node.
struct RelationTypeVariable {
  RelationId node;
  std::vector<RelationType> domain;
  friend bool operator==(const RelationTypeVariable&, const RelationTypeVariable&) = default;
};

/// Variable on the type label of a concept node.
struct ConceptTypeVariable {
  ConceptId node;
  std::vector<TypeId> domain;
  friend bool operator==(const ConceptTypeVariable&, const ConceptTypeVariable&) = default;
};

/// Variable on the marker of a (marked) concept node.
struct MarkerVariable {
  ConceptId node;
  std::vector<MarkerId> domain;
  friend bool operator==(const MarkerVariable&, const MarkerVariable&) = default;
};

using VariableBinding = std::variant<RelationTypeVariable, ConceptTypeVariable, MarkerVariable>;

/// (v_i, D_i): a named label slot and its explicit value set. Domains are
/// kept sorted and duplicate free.
struct Variable {
  std::string name;
  VariableBinding binding;
  friend bool operator==(const Variable&, const Variable&) = default;
};

/// A conceptual graph with zero or more label variables.
struct GammaCG {
  std::string name;
  ConceptualGraph graph;
  std::vector<Variable> variables;
  friend bool operator==(const GammaCG&, const GammaCG&) = default;
};

enum class RelationDomainPolicy {
  /// Every relation type of the node's arity.
  arity_only,
  /// Additionally require the node's current argument types to satisfy the
  /// candidate's signature.
  signature_compatible,
};

/// Sorts and deduplicates a domain in place.
void normalizeDomain(Variable& v);

/// Relation types admissible for relation node r.
std::vector<RelationType> relationTypeDomain(const Vocabulary& vocab, const ConceptualGraph& g, RelationId r,
                                             RelationDomainPolicy policy = RelationDomainPolicy::signature_compatible);

/// { t in T_C : t <= sigma(type(r))(k) for every edge (r, k) at c }.
std::vector<TypeId> conceptTypeDomain(const Vocabulary& vocab, const ConceptualGraph& g, ConceptId c);

/// { m in I : tau(m) <= tau(marker(c)) }. PreconditionError when c is generic.
std::vector<MarkerId> markerDomain(const Vocabulary& vocab, const ConceptualGraph& g, ConceptId c);

/// Zero violations iff the domain is non-empty and a subset of the
/// corresponding computed domain.
ValidationReport validateDomain(const Vocabulary& vocab, const GammaCG& gcg, const Variable& v,
                                RelationDomainPolicy policy = RelationDomainPolicy::signature_compatible);

/// Graph validity, variable targets (existing node, at most one variable
/// per slot, markers only on marked nodes) and every domain.
ValidationReport validateGammaCG(const Vocabulary& vocab, const GammaCG& gcg,
                                 RelationDomainPolicy policy = RelationDomainPolicy::signature_compatible);

/// Source of fresh markers for marker variables left without a value.
class MarkerMint {
 public:
  virtual ~MarkerMint() = default;
  virtual MarkerId mint(TypeId type) = 0;
};

/// A drawn label value.
using LabelValue = std::variant<RelationType, TypeId, MarkerId>;

/// What happened to one variable during instantiation.
struct Assignment {
  std::size_t variable = 0;
  LabelValue drawn;
  /// drawn after specialization.
  LabelValue assigned;
  std::uint32_t specializationSteps = 0;
  bool minted = false;
};

struct InstantiateOptions {
  /// Type-label variables are specialized by a walk of 0..maxSpecialization
  /// downward steps after their draw.
  std::uint32_t maxSpecialization = 0;
  /// Used when a marker variable has no admissible value; without a mint
  /// that case raises InstantiationError.
  MarkerMint* mint = nullptr;
};

struct Instantiation {
  ConceptualGraph graph;
  std::vector<Assignment> assignments;
};

/// Replaces every variable's label with a value drawn uniformly from its
/// domain. Relation-type variables go first, then concept-type variables,
/// then markers; each draw only considers values that keep the graph
/// satisfiable given the labels fixed so far, so the result passes
/// validateGraph when the input graph does.
///
/// Throws InstantiationError when a type variable has no admissible value.
Instantiation instantiateDetailed(const Vocabulary& vocab, const GammaCG& gcg, Rng& rng,
                                  const InstantiateOptions& options = {});

inline ConceptualGraph instantiate(const Vocabulary& vocab, const GammaCG& gcg, Rng& rng) {
  return instantiateDetailed(vocab, gcg, rng).graph;
}

}  // namespace cg2a
