#include "cg2a/hierarchy.hpp"

#include <algorithm>
#include <deque>

#include "cg2a/error.hpp"

namespace cg2a {

const std::string& TypeHierarchy::label(TypeId t) const {
  checkId(t);
  return labels_[t.value];
}

std::optional<TypeId> TypeHierarchy::find(std::string_view label) const {
  auto it = byLabel_.find(std::string(label));
  if (it == byLabel_.end()) return std::nullopt;
  return it->second;
}

TypeId TypeHierarchy::at(std::string_view label) const {
  if (auto t = find(label)) return *t;
  throw IdentifierError("unknown type label '" + std::string(label) + "'");
}

std::span<const TypeId> TypeHierarchy::parents(TypeId t) const {
  checkId(t);
  return parents_[t.value];
}

std::span<const TypeId> TypeHierarchy::children(TypeId t) const {
  checkId(t);
  return children_[t.value];
}

bool TypeHierarchy::isSubtype(TypeId a, TypeId b) const {
  checkId(a);
  checkId(b);
  return up_[a.value][b.value];
}

std::uint32_t TypeHierarchy::depth(TypeId t) const {
  checkId(t);
  return depth_[t.value];
}

std::vector<TypeId> TypeHierarchy::descendants(TypeId t) const {
  checkId(t);
  std::vector<TypeId> out;
  for (std::uint32_t s = 0; s < size(); ++s)
    if (up_[s][t.value]) out.push_back(TypeId{s});
  return out;
}

std::vector<TypeId> TypeHierarchy::ancestors(TypeId t) const {
  checkId(t);
  std::vector<TypeId> out;
  for (std::uint32_t s = 0; s < size(); ++s)
    if (up_[t.value][s]) out.push_back(TypeId{s});
  return out;
}

std::vector<TypeId> TypeHierarchy::all() const {
  std::vector<TypeId> out(size());
  for (std::uint32_t i = 0; i < size(); ++i) out[i] = TypeId{i};
  return out;
}

void TypeHierarchy::checkId(TypeId t) const {
  if (!contains(t))
    throw IdentifierError("type id " + std::to_string(t.value) + " is outside a hierarchy of " +
                          std::to_string(size()) + " types");
}

TypeHierarchy::Builder::Builder(HierarchyKind kind, std::uint32_t arity) : kind_(kind), arity_(arity) {
  if (kind == HierarchyKind::relation_types && arity == 0)
    throw ArityError("relation hierarchies need a positive arity");
}

TypeHierarchy::Builder& TypeHierarchy::Builder::add(std::string label, std::vector<std::string> parents) {
  if (label.empty()) throw ValidationError("empty type label");
  if (parents_.contains(label)) throw ValidationError("duplicate type label '" + label + "'");
  std::sort(parents.begin(), parents.end());
  parents.erase(std::unique(parents.begin(), parents.end()), parents.end());
  parents_.emplace(std::move(label), std::move(parents));
  return *this;
}

bool TypeHierarchy::Builder::has(std::string_view label) const { return parents_.contains(label); }

TypeHierarchy TypeHierarchy::Builder::build() const {
  if (parents_.empty()) throw ValidationError("hierarchy has no types");

  TypeHierarchy h;
  h.kind_ = kind_;
  h.arity_ = arity_;
  const auto n = static_cast<std::uint32_t>(parents_.size());
  h.labels_.reserve(n);
  for (const auto& [label, _] : parents_) {
    h.byLabel_.emplace(label, TypeId{static_cast<std::uint32_t>(h.labels_.size())});
    h.labels_.push_back(label);
  }

  h.parents_.resize(n);
  h.children_.resize(n);
  std::vector<TypeId> roots;
  for (const auto& [label, parents] : parents_) {
    const TypeId child = h.byLabel_.at(label);
    for (const auto& p : parents) {
      auto it = h.byLabel_.find(p);
      if (it == h.byLabel_.end())
        throw ValidationError("type '" + label + "' names unknown parent '" + p + "'");
      if (it->second == child) throw ValidationError("type '" + label + "' is its own parent");
      h.parents_[child.value].push_back(it->second);
      h.children_[it->second.value].push_back(child);
    }
    if (parents.empty()) roots.push_back(child);
  }
  if (roots.size() != 1) {
    std::string names;
    for (auto r : roots) names += (names.empty() ? "" : ", ") + h.labels_[r.value];
    throw ValidationError("hierarchy must have exactly one root, found " + std::to_string(roots.size()) +
                          (names.empty() ? "" : " (" + names + ")"));
  }
  h.root_ = roots.front();

  // Kahn order from the root; anything left over sits on a cycle.
  std::vector<std::uint32_t> pending(n);
  for (std::uint32_t i = 0; i < n; ++i) pending[i] = static_cast<std::uint32_t>(h.parents_[i].size());
  std::vector<TypeId> order;
  order.reserve(n);
  std::deque<TypeId> ready{h.root_};
  while (!ready.empty()) {
    TypeId t = ready.front();
    ready.pop_front();
    order.push_back(t);
    for (TypeId c : h.children_[t.value])
      if (--pending[c.value] == 0) ready.push_back(c);
  }
  if (order.size() != n) throw ValidationError("hierarchy contains a cycle");

  h.up_.assign(n, std::vector<bool>(n, false));
  h.depth_.assign(n, 0);
  for (TypeId t : order) {
    auto& row = h.up_[t.value];
    row[t.value] = true;
    std::uint32_t best = h.parents_[t.value].empty() ? 0 : UINT32_MAX;
    for (TypeId p : h.parents_[t.value]) {
      const auto& prow = h.up_[p.value];
      for (std::uint32_t s = 0; s < n; ++s)
        if (prow[s]) row[s] = true;
      best = std::min(best, h.depth_[p.value] + 1);
    }
    h.depth_[t.value] = best;
    h.height_ = std::max(h.height_, best + 1);
  }
  return h;
}

std::optional<TypeId> mostSpecific(const TypeHierarchy& h, TypeId a, TypeId b) {
  if (h.isSubtype(a, b)) return a;
  if (h.isSubtype(b, a)) return b;
  return std::nullopt;
}

TypeId randomDescendant(const TypeHierarchy& h, TypeId t, std::uint32_t maxSteps, Rng& rng) {
  return constrainedDescent(h, t, maxSteps, rng, [](TypeId) { return true; }).reached;
}

Walk constrainedDescent(const TypeHierarchy& h, TypeId t, std::uint32_t maxSteps, Rng& rng,
                        const std::function<bool(TypeId)>& admissible) {
  Walk walk{t, 0};
  if (maxSteps == 0) {
    (void)h.label(t);
    return walk;
  }
  const std::uint32_t moves = uniformCount(rng, 0, maxSteps);
  std::vector<TypeId> options;
  while (walk.steps < moves) {
    options.clear();
    for (TypeId c : h.children(walk.reached))
      if (admissible(c)) options.push_back(c);
    if (options.empty()) break;
    walk.reached = pickUniform(rng, options);
    ++walk.steps;
  }
  return walk;
}

}  // namespace cg2a
