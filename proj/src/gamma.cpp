#include "cg2a/gamma.hpp"

#include <algorithm>
#include <set>

#include "cg2a/error.hpp"

namespace cg2a {
namespace {

template <class T>
void sortUnique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

const char* slotKind(const VariableBinding& b) {
  switch (b.index()) {
    case 0: return "relation-type";
    case 1: return "concept-type";
    default: return "marker";
  }
}

}  // namespace

void normalizeDomain(Variable& v) {
  std::visit([](auto& b) { sortUnique(b.domain); }, v.binding);
}

std::vector<RelationType> relationTypeDomain(const Vocabulary& vocab, const ConceptualGraph& g, RelationId r,
                                             RelationDomainPolicy policy) {
  const auto& node = g.relationNode(r);
  auto candidates = vocab.relationTypes(node.type.arity);
  if (policy == RelationDomainPolicy::arity_only) return candidates;

  const auto& ct = vocab.concepts();
  std::erase_if(candidates, [&](RelationType cand) {
    const auto sig = vocab.signature(cand);
    for (std::size_t k = 0; k < node.arguments.size(); ++k)
      if (!ct.isSubtype(g.conceptNode(node.arguments[k]).type, sig[k])) return true;
    return false;
  });
  return candidates;
}

std::vector<TypeId> conceptTypeDomain(const Vocabulary& vocab, const ConceptualGraph& g, ConceptId c) {
  (void)g.conceptNode(c);
  const auto& ct = vocab.concepts();
  std::vector<TypeId> restrictions;
  const auto incidences = g.incidences();
  for (const auto& [r, k] : incidences[c.value])
    restrictions.push_back(vocab.restrictionFor(g.relationNode(r).type, k));
  sortUnique(restrictions);
  if (restrictions.empty()) return ct.all();

  auto out = ct.descendants(restrictions.front());
  for (std::size_t i = 1; i < restrictions.size(); ++i)
    std::erase_if(out, [&](TypeId t) { return !ct.isSubtype(t, restrictions[i]); });
  return out;
}

std::vector<MarkerId> markerDomain(const Vocabulary& vocab, const ConceptualGraph& g, ConceptId c) {
  const auto& node = g.conceptNode(c);
  if (!node.marker) throw PreconditionError(nodeName(c) + " is generic; marker domains need a marked node");
  const TypeId top = vocab.marker(*node.marker).type;
  std::vector<MarkerId> out;
  for (TypeId t : vocab.concepts().descendants(top))
    for (MarkerId m : vocab.markersOfType(t)) out.push_back(m);
  std::sort(out.begin(), out.end());
  return out;
}

ValidationReport validateDomain(const Vocabulary& vocab, const GammaCG& gcg, const Variable& v,
                                RelationDomainPolicy policy) {
  ValidationReport report;
  const auto& g = gcg.graph;
  const std::string who = "variable '" + v.name + "'";

  auto checkSubset = [&](const auto& domain, auto computed, auto describe) {
    if (domain.empty()) report.add(ViolationKind::domain, who + ": empty domain");
    std::sort(computed.begin(), computed.end());
    for (const auto& value : domain)
      if (!std::binary_search(computed.begin(), computed.end(), value))
        report.add(ViolationKind::domain, who + ": value " + describe(value) + " is not admissible");
  };

  std::visit(
      [&](const auto& b) {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, RelationTypeVariable>) {
          if (!g.contains(b.node)) {
            report.add(ViolationKind::variable_target, who + ": no relation node " + nodeName(b.node));
            return;
          }
          checkSubset(b.domain, relationTypeDomain(vocab, g, b.node, policy), [&](RelationType t) {
            return vocab.contains(t) ? "'" + vocab.label(t) + "'" : std::string("<unknown relation type>");
          });
        } else {
          if (!g.contains(b.node)) {
            report.add(ViolationKind::variable_target, who + ": no concept node " + nodeName(b.node));
            return;
          }
          if constexpr (std::is_same_v<B, ConceptTypeVariable>) {
            checkSubset(b.domain, conceptTypeDomain(vocab, g, b.node), [&](TypeId t) {
              return vocab.concepts().contains(t) ? "'" + vocab.concepts().label(t) + "'"
                                                  : std::string("<unknown concept type>");
            });
          } else {
            if (!g.conceptNode(b.node).marker) {
              report.add(ViolationKind::variable_target, who + ": marker variable on generic " + nodeName(b.node));
              return;
            }
            checkSubset(b.domain, markerDomain(vocab, g, b.node), [&](MarkerId m) {
              return vocab.contains(m) ? "'" + vocab.marker(m).name + "'" : std::string("<unknown marker>");
            });
          }
        }
      },
      v.binding);
  return report;
}

ValidationReport validateGammaCG(const Vocabulary& vocab, const GammaCG& gcg, RelationDomainPolicy policy) {
  ValidationReport report = validateGraph(vocab, gcg.graph);
  if (!report.ok()) return report;

  std::set<std::pair<std::size_t, std::uint32_t>> slots;
  std::set<std::string> names;
  for (const auto& v : gcg.variables) {
    if (!names.insert(v.name).second)
      report.add(ViolationKind::variable_target, "variable name '" + v.name + "' is used twice");
    const std::uint32_t node = std::visit([](const auto& b) { return b.node.value; }, v.binding);
    if (!slots.emplace(v.binding.index(), node).second)
      report.add(ViolationKind::variable_target, "variable '" + v.name + "': the " + slotKind(v.binding) +
                                                     " slot of node " + std::to_string(node) +
                                                     " already has a variable");
    report.append(validateDomain(vocab, gcg, v, policy));
  }
  return report;
}

Instantiation instantiateDetailed(const Vocabulary& vocab, const GammaCG& gcg, Rng& rng,
                                  const InstantiateOptions& options) {
  Instantiation out{gcg.graph, {}};
  if (gcg.variables.empty()) return out;

  auto& g = out.graph;
  const auto& ct = vocab.concepts();
  const auto incidences = g.incidences();
  const auto nConcepts = g.concepts().size();

  std::vector<const ConceptTypeVariable*> pendingConcept(nConcepts, nullptr);
  std::vector<bool> markerIsVariable(nConcepts, false);
  std::vector<std::size_t> relationVars, conceptVars, markerVars;
  for (std::size_t i = 0; i < gcg.variables.size(); ++i) {
    const auto& b = gcg.variables[i].binding;
    if (const auto* rv = std::get_if<RelationTypeVariable>(&b)) {
      (void)g.relationNode(rv->node);
      relationVars.push_back(i);
    } else if (const auto* cv = std::get_if<ConceptTypeVariable>(&b)) {
      (void)g.conceptNode(cv->node);
      pendingConcept[cv->node.value] = cv;
      conceptVars.push_back(i);
    } else {
      const auto& mv = std::get<MarkerVariable>(b);
      (void)g.conceptNode(mv.node);
      markerIsVariable[mv.node.value] = true;
      markerVars.push_back(i);
    }
  }

  auto conceptAdmits = [&](ConceptId c, TypeId t) {
    if (!ct.contains(t)) return false;
    for (const auto& [r, k] : incidences[c.value])
      if (!ct.isSubtype(t, vocab.signature(g.relationNode(r).type)[k])) return false;
    const auto& node = g.conceptNode(c);
    if (node.marker && !markerIsVariable[c.value] && !ct.isSubtype(t, vocab.marker(*node.marker).type))
      return false;
    return true;
  };

  // Whether retyping relation r to `cand` leaves every argument satisfiable.
  auto relationFeasible = [&](RelationId r, RelationType cand) {
    if (!vocab.contains(cand) || cand.arity != g.relationNode(r).type.arity) return false;
    const RelationType old = g.relationNode(r).type;
    g.setRelationType(r, cand);
    bool ok = true;
    const auto& args = g.relationNode(r).arguments;
    const auto sig = vocab.signature(cand);
    for (std::size_t k = 0; ok && k < args.size(); ++k) {
      const ConceptId c = args[k];
      if (const auto* cv = pendingConcept[c.value])
        ok = std::any_of(cv->domain.begin(), cv->domain.end(), [&](TypeId t) { return conceptAdmits(c, t); });
      else
        ok = ct.isSubtype(g.conceptNode(c).type, sig[k]);
    }
    g.setRelationType(r, old);
    return ok;
  };

  auto fail = [&](std::size_t i, const char* what) {
    throw InstantiationError("gamma-CG '" + gcg.name + "', variable '" + gcg.variables[i].name + "': no admissible " +
                             what);
  };

  for (std::size_t i : relationVars) {
    const auto& rv = std::get<RelationTypeVariable>(gcg.variables[i].binding);
    std::vector<RelationType> candidates;
    for (RelationType t : rv.domain)
      if (relationFeasible(rv.node, t)) candidates.push_back(t);
    if (candidates.empty()) fail(i, "relation type");
    const RelationType drawn = pickUniform(rng, candidates);
    g.setRelationType(rv.node, drawn);
    const auto walk = constrainedDescent(vocab.relations(drawn.arity), drawn.id, options.maxSpecialization, rng,
                                         [&](TypeId child) { return relationFeasible(rv.node, {drawn.arity, child}); });
    const RelationType assigned{drawn.arity, walk.reached};
    g.setRelationType(rv.node, assigned);
    out.assignments.push_back({i, drawn, assigned, walk.steps, false});
  }

  for (std::size_t i : conceptVars) {
    const auto& cv = std::get<ConceptTypeVariable>(gcg.variables[i].binding);
    std::vector<TypeId> candidates;
    for (TypeId t : cv.domain)
      if (conceptAdmits(cv.node, t)) candidates.push_back(t);
    if (candidates.empty()) fail(i, "concept type");
    const TypeId drawn = pickUniform(rng, candidates);
    const auto walk = constrainedDescent(ct, drawn, options.maxSpecialization, rng,
                                         [&](TypeId child) { return conceptAdmits(cv.node, child); });
    g.setConceptType(cv.node, walk.reached);
    pendingConcept[cv.node.value] = nullptr;
    out.assignments.push_back({i, drawn, walk.reached, walk.steps, false});
  }

  for (std::size_t i : markerVars) {
    const auto& mv = std::get<MarkerVariable>(gcg.variables[i].binding);
    const TypeId type = g.conceptNode(mv.node).type;
    std::vector<MarkerId> candidates;
    for (MarkerId m : mv.domain)
      if (vocab.contains(m) && ct.isSubtype(type, vocab.marker(m).type)) candidates.push_back(m);
    if (candidates.empty()) {
      if (!options.mint) fail(i, "marker");
      const MarkerId fresh = options.mint->mint(type);
      g.setMarker(mv.node, fresh);
      out.assignments.push_back({i, fresh, fresh, 0, true});
      continue;
    }
    const MarkerId drawn = pickUniform(rng, candidates);
    g.setMarker(mv.node, drawn);
    out.assignments.push_back({i, drawn, drawn, 0, false});
  }
  return out;
}

}  // namespace cg2a
