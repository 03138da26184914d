#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cg2a/vocabulary.hpp"

namespace cg2a {

struct ConceptId {
  std::uint32_t value = 0;
  friend auto operator<=>(ConceptId, ConceptId) = default;
};

struct RelationId {
  std::uint32_t value = 0;
  friend auto operator<=>(RelationId, RelationId) = default;
};

/// A concept node; no marker means a generic node.
struct ConceptNode {
  TypeId type{};
  std::optional<MarkerId> marker;
  friend bool operator==(const ConceptNode&, const ConceptNode&) = default;
};

/// A relation node. arguments[k] is the concept on the edge labelled k.
struct RelationNode {
  RelationType type{};
  std::vector<ConceptId> arguments;
  friend bool operator==(const RelationNode&, const RelationNode&) = default;
};

/// (relation, position) pair: one edge seen from its concept end.
struct Incidence {
  RelationId relation;
  std::uint32_t position = 0;
};

/// Bipartite labeled multigraph (C, R, E, label). Edges live in the
/// relation nodes' argument lists, so every edge has a position and the
/// same concept may fill several positions of one relation.
class ConceptualGraph {
 public:
  ConceptId addConcept(TypeId type, std::optional<MarkerId> marker = std::nullopt);
  /// Throws IdentifierError on a dangling argument and ArityError when the
  /// argument count differs from the type's arity.
  RelationId addRelation(RelationType type, std::vector<ConceptId> arguments);

  std::span<const ConceptNode> concepts() const noexcept { return concepts_; }
  std::span<const RelationNode> relations() const noexcept { return relations_; }
  const ConceptNode& conceptNode(ConceptId c) const;
  const RelationNode& relationNode(RelationId r) const;

  bool contains(ConceptId c) const noexcept { return c.value < concepts_.size(); }
  bool contains(RelationId r) const noexcept { return r.value < relations_.size(); }

  void setConceptType(ConceptId c, TypeId type);
  void setMarker(ConceptId c, std::optional<MarkerId> marker);
  /// The new type must have the same arity as the old one.
  void setRelationType(RelationId r, RelationType type);

  /// Concept nodes plus relation nodes.
  std::size_t size() const noexcept { return concepts_.size() + relations_.size(); }
  bool empty() const noexcept { return size() == 0; }
  std::size_t edgeCount() const noexcept;

  /// incidences()[c] lists every edge touching concept c.
  std::vector<std::vector<Incidence>> incidences() const;

  friend bool operator==(const ConceptualGraph&, const ConceptualGraph&) = default;

 private:
  std::vector<ConceptNode> concepts_;
  std::vector<RelationNode> relations_;
};

enum class ViolationKind {
  unknown_concept_type,
  unknown_relation_type,
  unknown_marker,
  dangling_argument,
  arity_mismatch,
  signature,
  marker_type,
  variable_target,
  domain,
};

const char* toString(ViolationKind kind) noexcept;

struct Violation {
  ViolationKind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  std::size_t count(ViolationKind kind) const noexcept;
  void add(ViolationKind kind, std::string message) { violations.push_back({kind, std::move(message)}); }
  void append(const ValidationReport& other);
};

/// Conformance of g to vocab. Reports, never throws:
///  - every type and marker exists in vocab;
///  - argument lists resolve and match arities;
///  - type(arg k of r) <= sigma(type(r))(k);
///  - type(c) <= tau(marker(c)) for marked concepts.
ValidationReport validateGraph(const Vocabulary& vocab, const ConceptualGraph& g);

/// "c<k>" / "r<k>"; the node names used in reports and documents.
std::string nodeName(ConceptId c);
std::string nodeName(RelationId r);

}  // namespace cg2a
