#include "cg2a/graph.hpp"

#include "cg2a/error.hpp"

namespace cg2a {

ConceptId ConceptualGraph::addConcept(TypeId type, std::optional<MarkerId> marker) {
  concepts_.push_back({type, marker});
  return ConceptId{static_cast<std::uint32_t>(concepts_.size() - 1)};
}

RelationId ConceptualGraph::addRelation(RelationType type, std::vector<ConceptId> arguments) {
  if (arguments.size() != type.arity)
    throw ArityError("relation of arity " + std::to_string(type.arity) + " given " +
                     std::to_string(arguments.size()) + " arguments");
  for (ConceptId c : arguments)
    if (!contains(c)) throw IdentifierError("argument " + nodeName(c) + " is not a concept of this graph");
  relations_.push_back({type, std::move(arguments)});
  return RelationId{static_cast<std::uint32_t>(relations_.size() - 1)};
}

const ConceptNode& ConceptualGraph::conceptNode(ConceptId c) const {
  if (!contains(c)) throw IdentifierError("no concept node " + nodeName(c));
  return concepts_[c.value];
}

const RelationNode& ConceptualGraph::relationNode(RelationId r) const {
  if (!contains(r)) throw IdentifierError("no relation node " + nodeName(r));
  return relations_[r.value];
}

void ConceptualGraph::setConceptType(ConceptId c, TypeId type) {
  (void)conceptNode(c);
  concepts_[c.value].type = type;
}

void ConceptualGraph::setMarker(ConceptId c, std::optional<MarkerId> marker) {
  (void)conceptNode(c);
  concepts_[c.value].marker = marker;
}

void ConceptualGraph::setRelationType(RelationId r, RelationType type) {
  if (relationNode(r).type.arity != type.arity)
    throw ArityError("cannot retype " + nodeName(r) + " from arity " + std::to_string(relationNode(r).type.arity) +
                     " to arity " + std::to_string(type.arity));
  relations_[r.value].type = type;
}

std::size_t ConceptualGraph::edgeCount() const noexcept {
  std::size_t n = 0;
  for (const auto& r : relations_) n += r.arguments.size();
  return n;
}

std::vector<std::vector<Incidence>> ConceptualGraph::incidences() const {
  std::vector<std::vector<Incidence>> out(concepts_.size());
  for (std::uint32_t r = 0; r < relations_.size(); ++r) {
    const auto& args = relations_[r].arguments;
    for (std::uint32_t k = 0; k < args.size(); ++k) out[args[k].value].push_back({RelationId{r}, k});
  }
  return out;
}

const char* toString(ViolationKind kind) noexcept {
  switch (kind) {
    case ViolationKind::unknown_concept_type: return "unknown-concept-type";
    case ViolationKind::unknown_relation_type: return "unknown-relation-type";
    case ViolationKind::unknown_marker: return "unknown-marker";
    case ViolationKind::dangling_argument: return "dangling-argument";
    case ViolationKind::arity_mismatch: return "arity-mismatch";
    case ViolationKind::signature: return "signature";
    case ViolationKind::marker_type: return "marker-type";
    case ViolationKind::variable_target: return "variable-target";
    case ViolationKind::domain: return "domain";
  }
  return "unknown";
}

std::size_t ValidationReport::count(ViolationKind kind) const noexcept {
  std::size_t n = 0;
  for (const auto& v : violations) n += v.kind == kind;
  return n;
}

void ValidationReport::append(const ValidationReport& other) {
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
}

std::string nodeName(ConceptId c) { return "c" + std::to_string(c.value); }
std::string nodeName(RelationId r) { return "r" + std::to_string(r.value); }

ValidationReport validateGraph(const Vocabulary& vocab, const ConceptualGraph& g) {
  ValidationReport report;
  const auto& ct = vocab.concepts();
  const auto concepts = g.concepts();

  std::vector<bool> typeKnown(concepts.size());
  for (std::uint32_t i = 0; i < concepts.size(); ++i) {
    const auto& c = concepts[i];
    const auto name = nodeName(ConceptId{i});
    typeKnown[i] = ct.contains(c.type);
    if (!typeKnown[i]) report.add(ViolationKind::unknown_concept_type, name + ": unknown concept type");
    if (!c.marker) continue;
    if (!vocab.contains(*c.marker)) {
      report.add(ViolationKind::unknown_marker, name + ": unknown marker");
      continue;
    }
    const auto& m = vocab.marker(*c.marker);
    if (typeKnown[i] && !ct.isSubtype(c.type, m.type))
      report.add(ViolationKind::marker_type, name + ": type '" + ct.label(c.type) + "' is not <= '" +
                                                 ct.label(m.type) + "', the type of marker '" + m.name + "'");
  }

  const auto relations = g.relations();
  for (std::uint32_t i = 0; i < relations.size(); ++i) {
    const auto& r = relations[i];
    const auto name = nodeName(RelationId{i});
    if (!vocab.contains(r.type)) {
      report.add(ViolationKind::unknown_relation_type, name + ": unknown relation type");
      continue;
    }
    if (r.arguments.size() != r.type.arity) {
      report.add(ViolationKind::arity_mismatch, name + ": " + std::to_string(r.arguments.size()) +
                                                    " arguments for arity " + std::to_string(r.type.arity));
      continue;
    }
    const auto sig = vocab.signature(r.type);
    for (std::uint32_t k = 0; k < r.arguments.size(); ++k) {
      const ConceptId c = r.arguments[k];
      if (!g.contains(c)) {
        report.add(ViolationKind::dangling_argument, name + ": argument " + std::to_string(k) + " refers to missing " +
                                                         nodeName(c));
        continue;
      }
      if (!typeKnown[c.value]) continue;
      const TypeId t = concepts[c.value].type;
      if (!ct.isSubtype(t, sig[k]))
        report.add(ViolationKind::signature, name + " ('" + vocab.label(r.type) + "') argument " + std::to_string(k) +
                                                 ": " + nodeName(c) + " type '" + ct.label(t) + "' is not <= '" +
                                                 ct.label(sig[k]) + "'");
    }
  }
  return report;
}

}  // namespace cg2a
