#include "cg2a/autogen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "cg2a/error.hpp"
#include "cg2a/generator.hpp"

namespace cg2a {
namespace {

struct TreeNode {
  std::string label;
  std::size_t parent = SIZE_MAX;
};

// Level-by-level random tree with exactly `levels` levels. The first child
// of every chain node continues the chain, so one path reaches the bottom.
std::vector<TreeNode> randomTree(std::string rootLabel, std::uint32_t levels, std::uint32_t maxChildren, Rng& rng,
                                 LabelMaker& labels, bool conceptLabels) {
  std::vector<TreeNode> nodes{{std::move(rootLabel), SIZE_MAX}};
  std::vector<std::size_t> frontier{0};
  std::size_t chain = 0;
  for (std::uint32_t level = 1; level < levels; ++level) {
    std::vector<std::size_t> next;
    for (std::size_t parent : frontier) {
      const bool onChain = parent == chain;
      if (!onChain && !coinFlip(rng, kBranchProbability)) continue;
      const auto count = uniformCount(rng, 1, maxChildren);
      for (std::uint32_t i = 0; i < count; ++i) {
        nodes.push_back({conceptLabels ? labels.conceptLabel(rng) : labels.relationLabel(rng), parent});
        next.push_back(nodes.size() - 1);
        if (onChain && i == 0) chain = nodes.size() - 1;
      }
    }
    frontier = std::move(next);
  }
  return nodes;
}

template <class T>
std::vector<T> sampleWithoutReplacement(std::vector<T> pool, std::size_t k, Rng& rng) {
  k = std::min(k, pool.size());
  std::vector<T> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + uniformIndex(rng, pool.size() - i);
    std::swap(pool[i], pool[j]);
    out.push_back(pool[i]);
  }
  return out;
}

std::uint32_t sampleCount(const ParamSpec& spec, ParamRange range, Rng& rng) {
  return static_cast<std::uint32_t>(sampleParam(spec, range, rng));
}

std::string freshVariableName(const GammaCG& gcg, std::size_t& counter) {
  for (;;) {
    std::string name = "v" + std::to_string(++counter);
    if (std::none_of(gcg.variables.begin(), gcg.variables.end(), [&](const Variable& v) { return v.name == name; }))
      return name;
  }
}

bool argumentsSatisfy(const Vocabulary& vocab, const ConceptualGraph& g, RelationId r, RelationType cand) {
  const auto& args = g.relationNode(r).arguments;
  const auto sig = vocab.signature(cand);
  for (std::size_t k = 0; k < args.size(); ++k)
    if (!vocab.concepts().isSubtype(g.conceptNode(args[k]).type, sig[k])) return false;
  return true;
}

// Markers m with type(c) <= tau(m), in id order.
std::vector<MarkerId> admissibleMarkers(const Vocabulary& vocab, TypeId type) {
  std::vector<MarkerId> out;
  for (TypeId t : vocab.concepts().ancestors(type))
    for (MarkerId m : vocab.markersOfType(t)) out.push_back(m);
  std::sort(out.begin(), out.end());
  return out;
}

std::string gammaName(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "g%03zu", i);
  return buf;
}

}  // namespace

std::int64_t sampleParam(const ParamSpec& spec, ParamRange range, Rng& rng) {
  if (range.min > range.max) throw PreconditionError("parameter range with min > max");
  double v = spec.mean;
  if (spec.normal) {
    if (!(spec.stddev >= 0.0)) throw ConfigError("negative standard deviation");
    if (spec.stddev > 0.0) v = std::normal_distribution<double>(spec.mean, spec.stddev)(rng);
  }
  if (!std::isfinite(v)) throw ConfigError("parameter value is not finite");
  const double clamped =
      std::clamp(std::round(v), static_cast<double>(range.min), static_cast<double>(range.max));
  return static_cast<std::int64_t>(clamped);
}

Vocabulary autoVocabulary(const AutoVocConfig& config, Rng& rng) {
  LabelMaker labels;
  const auto depth = sampleCount(config.conceptDepth, kDepthRange, rng);
  const auto maxChildren = sampleCount(config.maxChildren, kChildrenRange, rng);

  TypeHierarchy::Builder cb(HierarchyKind::concept_types);
  const auto conceptTree = randomTree("Top", depth, maxChildren, rng, labels, true);
  for (const auto& n : conceptTree)
    cb.add(n.label, n.parent == SIZE_MAX ? std::vector<std::string>{} : std::vector{conceptTree[n.parent].label});
  TypeHierarchy concepts = std::move(cb).build();

  std::vector<RelationHierarchy> relations;
  for (std::uint32_t arity : config.arities) {
    if (arity == 0) throw ConfigError("relation arities must be positive");
    const auto rdepth = sampleCount(config.relationDepth, kDepthRange, rng);
    const auto tree = randomTree("T" + std::to_string(arity), rdepth, maxChildren, rng, labels, false);

    // Signatures follow creation order, so parents are settled first.
    std::vector<std::vector<TypeId>> sigs(tree.size());
    for (std::size_t i = 0; i < tree.size(); ++i) {
      if (tree[i].parent == SIZE_MAX) {
        sigs[i].assign(arity, concepts.root());
        continue;
      }
      sigs[i] = sigs[tree[i].parent];
      for (auto& t : sigs[i]) {
        if (coinFlip(rng, kKeepRestrictionProbability)) continue;
        const auto kids = concepts.children(t);
        if (!kids.empty()) t = pickUniform(rng, kids);
      }
    }

    TypeHierarchy::Builder rb(HierarchyKind::relation_types, arity);
    for (const auto& n : tree)
      rb.add(n.label, n.parent == SIZE_MAX ? std::vector<std::string>{} : std::vector{tree[n.parent].label});
    RelationHierarchy rh{std::move(rb).build(), {}};
    rh.signatures.resize(tree.size());
    for (std::size_t i = 0; i < tree.size(); ++i) rh.signatures[rh.types.at(tree[i].label).value] = sigs[i];
    relations.push_back(std::move(rh));
  }

  Vocabulary vocab(std::move(concepts), std::move(relations));
  for (TypeId t : vocab.concepts().all()) {
    const auto n = sampleCount(config.markersPerType, kMarkersPerTypeRange, rng);
    for (std::uint32_t i = 0; i < n; ++i) vocab.mintMarker(t);
  }
  return vocab;
}

std::vector<GammaCG> autoGammaCGs(const Vocabulary& vocab, const AutoGcgConfig& config, Rng& rng,
                                  RelationDomainPolicy policy) {
  const auto relationTypes = vocab.relationTypes();
  if (relationTypes.empty()) throw ConfigError("the vocabulary has no relation types to build gamma-CGs from");

  const auto& ct = vocab.concepts();
  std::uint32_t spe = ct.height() - 1;
  for (auto a : vocab.arities()) spe = std::max(spe, vocab.relations(a).height() - 1);

  // One signature graph per relation type, every label a variable.
  std::vector<GammaCG> components;
  for (RelationType r : relationTypes) {
    GammaCG comp;
    std::vector<ConceptId> args;
    for (TypeId t : vocab.signature(r)) args.push_back(comp.graph.addConcept(t));
    const RelationId node = comp.graph.addRelation(r, args);
    comp.variables.push_back({"rel", RelationTypeVariable{node, relationTypeDomain(vocab, comp.graph, node, policy)}});
    for (std::size_t k = 0; k < args.size(); ++k)
      comp.variables.push_back({"arg" + std::to_string(k),
                                ConceptTypeVariable{args[k], ct.descendants(vocab.signature(r)[k])}});
    components.push_back(std::move(comp));
  }

  const auto count = sampleCount(config.count, kGammaCountRange, rng);
  std::vector<GammaCG> out;
  out.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto minSize = sampleCount(config.minSize, kGammaSizeRange, rng);
    ConceptualGraph acc;
    while (acc.size() < minSize) {
      const auto& comp = pickUniform(rng, components);
      auto part = instantiateDetailed(vocab, comp, rng, {spe, nullptr}).graph;
      for (std::uint32_t c = 0; c < part.concepts().size(); ++c) {
        const auto markers = admissibleMarkers(vocab, part.concepts()[c].type);
        if (!markers.empty() && coinFlip(rng, kMarkerProbability))
          part.setMarker(ConceptId{c}, pickUniform(rng, markers));
      }
      acc = join(vocab, acc, part);
    }
    out.push_back({gammaName(i), std::move(acc), {}});
  }
  return out;
}

AutoVarResult autoVariables(const Vocabulary& vocab, std::span<const GammaCG> gammas, const AutoVarConfig& config,
                            Rng& rng, RelationDomainPolicy policy) {
  AutoVarResult result;
  const auto& ct = vocab.concepts();
  for (const auto& input : gammas) {
    GammaCG gcg = input;
    const auto& g = gcg.graph;
    std::size_t counter = 0;

    std::vector<bool> relationTaken(g.relations().size()), conceptTaken(g.concepts().size()),
        markerTaken(g.concepts().size());
    for (const auto& v : gcg.variables)
      std::visit(
          [&](const auto& b) {
            using B = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<B, RelationTypeVariable>) relationTaken.at(b.node.value) = true;
            else if constexpr (std::is_same_v<B, ConceptTypeVariable>) conceptTaken.at(b.node.value) = true;
            else markerTaken.at(b.node.value) = true;
          },
          v.binding);

    const auto wantRelations = sampleCount(config.relationVarsPerCG, kVariableCountRange, rng);
    const auto wantConcepts = sampleCount(config.conceptVarsPerCG, kVariableCountRange, rng);
    const auto wantMarkers = sampleCount(config.markerVarsPerCG, kVariableCountRange, rng);

    auto warnShort = [&](const char* what, std::size_t want, std::size_t got) {
      if (got < want)
        result.warnings.push_back("gamma-CG '" + gcg.name + "': " + std::to_string(want) + " " + what +
                                  " variables requested, " + std::to_string(got) + " free slots");
    };

    std::vector<RelationId> freeRelations;
    for (std::uint32_t r = 0; r < relationTaken.size(); ++r)
      if (!relationTaken[r]) freeRelations.push_back(RelationId{r});
    const auto pickedRelations = sampleWithoutReplacement(freeRelations, wantRelations, rng);
    warnShort("relation-type", wantRelations, pickedRelations.size());
    for (RelationId r : pickedRelations) {
      const auto arity = g.relationNode(r).type.arity;
      const auto values = sampleWithoutReplacement(relationTypeDomain(vocab, g, r, policy),
                                                   sampleCount(config.valuesPerVariable, kValuesPerVariableRange, rng),
                                                   rng);
      const auto steps = sampleCount(config.specialisations, kSpecialisationRange, rng);
      RelationTypeVariable var{r, {}};
      for (RelationType t : values) {
        const auto walk = constrainedDescent(vocab.relations(arity), t.id, steps, rng, [&](TypeId child) {
          return policy == RelationDomainPolicy::arity_only || argumentsSatisfy(vocab, g, r, {arity, child});
        });
        var.domain.push_back({arity, walk.reached});
      }
      Variable v{freshVariableName(gcg, counter), std::move(var)};
      normalizeDomain(v);
      gcg.variables.push_back(std::move(v));
    }

    std::vector<ConceptId> freeConcepts;
    for (std::uint32_t c = 0; c < conceptTaken.size(); ++c)
      if (!conceptTaken[c]) freeConcepts.push_back(ConceptId{c});
    const auto pickedConcepts = sampleWithoutReplacement(freeConcepts, wantConcepts, rng);
    warnShort("concept-type", wantConcepts, pickedConcepts.size());
    for (ConceptId c : pickedConcepts) {
      const auto values = sampleWithoutReplacement(conceptTypeDomain(vocab, g, c),
                                                   sampleCount(config.valuesPerVariable, kValuesPerVariableRange, rng),
                                                   rng);
      const auto steps = sampleCount(config.specialisations, kSpecialisationRange, rng);
      ConceptTypeVariable var{c, {}};
      for (TypeId t : values) var.domain.push_back(randomDescendant(ct, t, steps, rng));
      Variable v{freshVariableName(gcg, counter), std::move(var)};
      normalizeDomain(v);
      gcg.variables.push_back(std::move(v));
    }

    std::vector<ConceptId> freeMarkers;
    for (std::uint32_t c = 0; c < markerTaken.size(); ++c)
      if (!markerTaken[c] && g.concepts()[c].marker) freeMarkers.push_back(ConceptId{c});
    const auto pickedMarkers = sampleWithoutReplacement(freeMarkers, wantMarkers, rng);
    warnShort("marker", wantMarkers, pickedMarkers.size());
    for (ConceptId c : pickedMarkers) {
      auto values = sampleWithoutReplacement(markerDomain(vocab, g, c),
                                             sampleCount(config.valuesPerVariable, kValuesPerVariableRange, rng), rng);
      Variable v{freshVariableName(gcg, counter), MarkerVariable{c, std::move(values)}};
      normalizeDomain(v);
      gcg.variables.push_back(std::move(v));
    }
    result.gammas.push_back(std::move(gcg));
  }
  return result;
}

std::vector<GammaCG> rebindGammaCGs(Vocabulary& vocab, std::span<const GammaCG> templates) {
  const auto& ct = vocab.concepts();
  std::optional<MarkerId> placeholder;
  std::vector<GammaCG> out;
  for (const auto& tpl : templates) {
    const auto& src = tpl.graph;
    GammaCG gcg{tpl.name, {}, {}};
    auto& g = gcg.graph;
    for (const auto& c : src.concepts()) {
      std::optional<MarkerId> marker;
      if (c.marker) {
        if (!placeholder) {
          const auto& atRoot = vocab.markersOfType(ct.root());
          placeholder = atRoot.empty() ? vocab.mintMarker(ct.root()) : atRoot.front();
        }
        marker = placeholder;
      }
      g.addConcept(ct.root(), marker);
    }
    for (const auto& r : src.relations()) {
      if (!vocab.hasArity(r.type.arity))
        throw ConfigError("gamma-CG '" + tpl.name + "' uses arity " + std::to_string(r.type.arity) +
                          ", which the vocabulary lacks");
      g.addRelation({r.type.arity, vocab.relations(r.type.arity).root()}, r.arguments);
    }

    for (std::uint32_t r = 0; r < g.relations().size(); ++r) {
      const RelationId id{r};
      gcg.variables.push_back({nodeName(id) + ".type",
                               RelationTypeVariable{id, relationTypeDomain(vocab, g, id, RelationDomainPolicy::arity_only)}});
    }
    for (std::uint32_t c = 0; c < g.concepts().size(); ++c) {
      const ConceptId id{c};
      gcg.variables.push_back({nodeName(id) + ".type", ConceptTypeVariable{id, conceptTypeDomain(vocab, g, id)}});
      if (g.conceptNode(id).marker)
        gcg.variables.push_back({nodeName(id) + ".marker", MarkerVariable{id, markerDomain(vocab, g, id)}});
    }
    out.push_back(std::move(gcg));
  }
  return out;
}

}  // namespace cg2a
