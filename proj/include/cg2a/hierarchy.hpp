#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cg2a/random.hpp"

namespace cg2a {

/// Index of a type inside one TypeHierarchy. Indices follow label order.
struct TypeId {
  std::uint32_t value = 0;
  friend auto operator<=>(TypeId, TypeId) = default;
};

enum class HierarchyKind { concept_types, relation_types };

/// Finite partial order of types stored as a direct-parent DAG with a
/// single greatest element. Immutable once built; the reflexive-transitive
/// closure is precomputed so that isSubtype is a bit lookup.
class TypeHierarchy {
 public:
  class Builder;

  TypeHierarchy() = default;

  HierarchyKind kind() const noexcept { return kind_; }
  /// Arity shared by every member of a relation hierarchy; 0 for concepts.
  std::uint32_t arity() const noexcept { return arity_; }

  std::size_t size() const noexcept { return labels_.size(); }
  TypeId root() const noexcept { return root_; }
  bool contains(TypeId t) const noexcept { return t.value < labels_.size(); }

  const std::string& label(TypeId t) const;
  std::optional<TypeId> find(std::string_view label) const;
  /// Like find, but unknown labels raise IdentifierError.
  TypeId at(std::string_view label) const;

  std::span<const TypeId> parents(TypeId t) const;
  std::span<const TypeId> children(TypeId t) const;

  /// a <= b: a equals b or a is a descendant of b.
  bool isSubtype(TypeId a, TypeId b) const;

  /// Shortest number of parent edges from t up to the root.
  std::uint32_t depth(TypeId t) const;
  /// Number of levels: 1 + the largest depth.
  std::uint32_t height() const noexcept { return height_; }

  /// All s with s <= t, in id order (t included).
  std::vector<TypeId> descendants(TypeId t) const;
  /// All s with t <= s, in id order (t included).
  std::vector<TypeId> ancestors(TypeId t) const;

  std::vector<TypeId> all() const;

  friend bool operator==(const TypeHierarchy&, const TypeHierarchy&) = default;

 private:
  void checkId(TypeId t) const;

  HierarchyKind kind_ = HierarchyKind::concept_types;
  std::uint32_t arity_ = 0;
  std::vector<std::string> labels_;
  std::vector<std::vector<TypeId>> parents_;
  std::vector<std::vector<TypeId>> children_;
  std::vector<std::uint32_t> depth_;
  // Row t holds the bits of every ancestor-or-self of t.
  std::vector<std::vector<bool>> up_;
  std::unordered_map<std::string, TypeId> byLabel_;
  TypeId root_{};
  std::uint32_t height_ = 0;
};

/// Collects labels and parent links, then checks the order invariants.
class TypeHierarchy::Builder {
 public:
  explicit Builder(HierarchyKind kind, std::uint32_t arity = 0);

  /// Declares a type. Re-declaring a label is an error.
  Builder& add(std::string label, std::vector<std::string> parents = {});

  bool has(std::string_view label) const;

  /// Throws ValidationError unless there is exactly one root, every label
  /// referenced as parent exists, and the parent graph is acyclic.
  TypeHierarchy build() const;

 private:
  HierarchyKind kind_;
  std::uint32_t arity_;
  std::map<std::string, std::vector<std::string>, std::less<>> parents_;
};

/// Returns a when a <= b, b when b <= a, nothing when incomparable.
std::optional<TypeId> mostSpecific(const TypeHierarchy& h, TypeId a, TypeId b);

/// Draws a move count uniformly in [0, maxSteps] and walks that many edges
/// downward from t, each child chosen uniformly. Stops early at a leaf.
TypeId randomDescendant(const TypeHierarchy& h, TypeId t, std::uint32_t maxSteps, Rng& rng);

struct Walk {
  TypeId reached;
  std::uint32_t steps = 0;
};

/// randomDescendant restricted to children accepted by `admissible`. The
/// walk stops when no admissible child is left.
Walk constrainedDescent(const TypeHierarchy& h, TypeId t, std::uint32_t maxSteps, Rng& rng,
                        const std::function<bool(TypeId)>& admissible);

}  // namespace cg2a

template <>
struct std::hash<cg2a::TypeId> {
  std::size_t operator()(cg2a::TypeId t) const noexcept { return t.value; }
};
