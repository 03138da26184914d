#include "cg2a/vocabulary.hpp"

#include "cg2a/error.hpp"

namespace cg2a {

Vocabulary::Vocabulary(TypeHierarchy concepts, std::vector<RelationHierarchy> relations,
                       std::vector<Marker> markers)
    : concepts_(std::move(concepts)) {
  if (concepts_.kind() != HierarchyKind::concept_types)
    throw ValidationError("concept hierarchy has relation kind");
  if (concepts_.size() == 0) throw ValidationError("concept hierarchy is empty");

  for (auto& rh : relations) {
    const auto arity = rh.types.arity();
    if (rh.types.kind() != HierarchyKind::relation_types || arity == 0)
      throw ValidationError("relation hierarchy without a positive arity");
    if (relations_.contains(arity))
      throw ValidationError("two relation hierarchies of arity " + std::to_string(arity));
    if (rh.signatures.size() != rh.types.size())
      throw ValidationError("arity-" + std::to_string(arity) + " hierarchy has " +
                            std::to_string(rh.types.size()) + " types but " +
                            std::to_string(rh.signatures.size()) + " signatures");
    for (TypeId t : rh.types.all()) {
      const auto& label = rh.types.label(t);
      const auto& sig = rh.signatures[t.value];
      if (sig.size() != arity)
        throw ValidationError("signature of '" + label + "' has length " + std::to_string(sig.size()) +
                              ", arity is " + std::to_string(arity));
      for (TypeId c : sig)
        if (!concepts_.contains(c))
          throw ValidationError("signature of '" + label + "' names an unknown concept type");
      if (concepts_.find(label))
        throw ValidationError("label '" + label + "' is both a concept and a relation type");
      if (!relationByLabel_.emplace(label, RelationType{arity, t}).second)
        throw ValidationError("relation label '" + label + "' is used at two arities");
    }
    // Monotonicity over every comparable pair, not only direct edges.
    for (TypeId lower : rh.types.all())
      for (TypeId upper : rh.types.ancestors(lower))
        for (std::uint32_t k = 0; k < arity; ++k)
          if (!concepts_.isSubtype(rh.signatures[lower.value][k], rh.signatures[upper.value][k]))
            throw ValidationError("signature of '" + rh.types.label(lower) + "' is not more restrictive than '" +
                                  rh.types.label(upper) + "' at position " + std::to_string(k));
    relations_.emplace(arity, std::move(rh));
  }

  markersByType_.resize(concepts_.size());
  for (auto& m : markers) addMarker(std::move(m.name), m.type);
}

std::vector<std::uint32_t> Vocabulary::arities() const {
  std::vector<std::uint32_t> out;
  for (const auto& [a, _] : relations_) out.push_back(a);
  return out;
}

const TypeHierarchy& Vocabulary::relations(std::uint32_t arity) const {
  auto it = relations_.find(arity);
  if (it == relations_.end())
    throw IdentifierError("no relation types of arity " + std::to_string(arity));
  return it->second.types;
}

std::vector<RelationType> Vocabulary::relationTypes() const {
  std::vector<RelationType> out;
  for (const auto& [arity, rh] : relations_)
    for (TypeId t : rh.types.all()) out.push_back({arity, t});
  return out;
}

std::vector<RelationType> Vocabulary::relationTypes(std::uint32_t arity) const {
  std::vector<RelationType> out;
  auto it = relations_.find(arity);
  if (it == relations_.end()) return out;
  for (TypeId t : it->second.types.all()) out.push_back({arity, t});
  return out;
}

std::size_t Vocabulary::relationTypeCount() const {
  std::size_t n = 0;
  for (const auto& [_, rh] : relations_) n += rh.types.size();
  return n;
}

bool Vocabulary::contains(RelationType r) const {
  auto it = relations_.find(r.arity);
  return it != relations_.end() && it->second.types.contains(r.id);
}

const RelationHierarchy& Vocabulary::hierarchyOf(RelationType r) const {
  auto it = relations_.find(r.arity);
  if (it == relations_.end() || !it->second.types.contains(r.id))
    throw IdentifierError("unknown relation type (arity " + std::to_string(r.arity) + ", id " +
                          std::to_string(r.id.value) + ")");
  return it->second;
}

const std::string& Vocabulary::label(RelationType r) const { return hierarchyOf(r).types.label(r.id); }

std::optional<RelationType> Vocabulary::findRelation(std::string_view label) const {
  auto it = relationByLabel_.find(std::string(label));
  if (it == relationByLabel_.end()) return std::nullopt;
  return it->second;
}

bool Vocabulary::isSubtype(RelationType a, RelationType b) const {
  const auto& h = hierarchyOf(a);
  (void)hierarchyOf(b);
  return a.arity == b.arity && h.types.isSubtype(a.id, b.id);
}

std::span<const TypeId> Vocabulary::signature(RelationType r) const {
  return hierarchyOf(r).signatures[r.id.value];
}

TypeId Vocabulary::restrictionFor(RelationType r, std::size_t position) const {
  const auto sig = signature(r);
  if (position >= sig.size())
    throw ArityError("position " + std::to_string(position) + " on '" + label(r) + "' of arity " +
                     std::to_string(sig.size()));
  return sig[position];
}

const Marker& Vocabulary::marker(MarkerId m) const {
  if (!contains(m)) throw IdentifierError("unknown marker id " + std::to_string(m.value));
  return markers_[m.value];
}

std::optional<MarkerId> Vocabulary::findMarker(std::string_view name) const {
  auto it = markerByName_.find(std::string(name));
  if (it == markerByName_.end()) return std::nullopt;
  return it->second;
}

std::span<const MarkerId> Vocabulary::markersOfType(TypeId t) const {
  if (!concepts_.contains(t)) throw IdentifierError("unknown concept type id " + std::to_string(t.value));
  return markersByType_[t.value];
}

MarkerId Vocabulary::addMarker(std::string name, TypeId type) {
  if (name.empty()) throw ValidationError("empty marker name");
  if (!concepts_.contains(type))
    throw ValidationError("marker '" + name + "' has an unknown concept type");
  if (markerByName_.contains(name)) throw ValidationError("duplicate marker '" + name + "'");
  const MarkerId id{static_cast<std::uint32_t>(markers_.size())};
  markerByName_.emplace(name, id);
  markers_.push_back({std::move(name), type});
  markersByType_[type.value].push_back(id);
  return id;
}

MarkerId Vocabulary::mintMarker(TypeId type) {
  std::string name;
  do {
    name = "m" + std::to_string(++mintCounter_);
  } while (markerByName_.contains(name));
  return addMarker(std::move(name), type);
}

}  // namespace cg2a
