#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cg2a/hierarchy.hpp"

namespace cg2a {

/// A relation type: its arity selects the hierarchy, `id` the type in it.
struct RelationType {
  std::uint32_t arity = 0;
  TypeId id{};
  friend auto operator<=>(RelationType, RelationType) = default;
};

struct MarkerId {
  std::uint32_t value = 0;
  friend auto operator<=>(MarkerId, MarkerId) = default;
};

/// Individual marker together with its declared type (tau).
struct Marker {
  std::string name;
  TypeId type{};
  friend bool operator==(const Marker&, const Marker&) = default;
};

/// A relation hierarchy of one arity plus one signature per member type,
/// indexed by TypeId.
struct RelationHierarchy {
  TypeHierarchy types;
  std::vector<std::vector<TypeId>> signatures;
  friend bool operator==(const RelationHierarchy&, const RelationHierarchy&) = default;
};

/// The 5-tuple (T_C, T_R, sigma, I, tau).
///
/// Type hierarchies and signatures are fixed at construction. The marker
/// set I grows through addMarker/mintMarker; existing MarkerIds never move.
class Vocabulary {
 public:
  Vocabulary() = default;

  /// Throws ValidationError when a signature has the wrong length, names an
  /// unknown concept type, or breaks monotonicity; when concept and
  /// relation labels overlap; or when a marker is invalid.
  Vocabulary(TypeHierarchy concepts, std::vector<RelationHierarchy> relations,
             std::vector<Marker> markers = {});

  const TypeHierarchy& concepts() const noexcept { return concepts_; }

  /// Arities present, ascending.
  std::vector<std::uint32_t> arities() const;
  bool hasArity(std::uint32_t arity) const { return relations_.contains(arity); }
  const TypeHierarchy& relations(std::uint32_t arity) const;

  /// Every relation type, ordered by arity then id.
  std::vector<RelationType> relationTypes() const;
  std::vector<RelationType> relationTypes(std::uint32_t arity) const;
  std::size_t relationTypeCount() const;

  bool contains(RelationType r) const;
  const std::string& label(RelationType r) const;
  std::optional<RelationType> findRelation(std::string_view label) const;
  bool isSubtype(RelationType a, RelationType b) const;

  std::span<const TypeId> signature(RelationType r) const;
  TypeId restrictionFor(RelationType r, std::size_t position) const;

  std::size_t markerCount() const noexcept { return markers_.size(); }
  std::span<const Marker> markers() const noexcept { return markers_; }
  const Marker& marker(MarkerId m) const;
  bool contains(MarkerId m) const noexcept { return m.value < markers_.size(); }
  std::optional<MarkerId> findMarker(std::string_view name) const;
  /// Markers declared with exactly type t.
  std::span<const MarkerId> markersOfType(TypeId t) const;

  MarkerId addMarker(std::string name, TypeId type);
  /// Registers a marker with a fresh name and tau = type.
  MarkerId mintMarker(TypeId type);

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.concepts_ == b.concepts_ && a.relations_ == b.relations_ && a.markers_ == b.markers_;
  }

 private:
  const RelationHierarchy& hierarchyOf(RelationType r) const;

  TypeHierarchy concepts_;
  std::map<std::uint32_t, RelationHierarchy> relations_;
  std::unordered_map<std::string, RelationType> relationByLabel_;
  std::vector<Marker> markers_;
  std::unordered_map<std::string, MarkerId> markerByName_;
  std::vector<std::vector<MarkerId>> markersByType_;
  std::uint64_t mintCounter_ = 0;
};

}  // namespace cg2a

template <>
struct std::hash<cg2a::RelationType> {
  std::size_t operator()(cg2a::RelationType r) const noexcept {
    return (static_cast<std::size_t>(r.arity) << 32) ^ r.id.value;
  }
};

template <>
struct std::hash<cg2a::MarkerId> {
  std::size_t operator()(cg2a::MarkerId m) const noexcept { return m.value; }
};
