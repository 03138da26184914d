#include "fixtures.hpp"

#include <algorithm>

#include "cg2a/io.hpp"

namespace cg2a::test {

std::filesystem::path dataDir() { return CG2A_DATA_DIR; }

Vocabulary referenceVocabulary() { return loadVocabulary(dataDir() / "reference" / "vocabulary.json"); }

std::vector<GammaCG> referenceGammas(const Vocabulary& vocab) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dataDir() / "reference" / "gamma")) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<GammaCG> out;
  for (const auto& f : files) out.push_back(loadGammaCG(f, vocab));
  return out;
}

Vocabulary smallVocabulary() {
  auto concepts = TypeHierarchy::Builder(HierarchyKind::concept_types)
                      .add("Top")
                      .add("Agent", {"Top"})
                      .add("Person", {"Agent"})
                      .add("Student", {"Person"})
                      .add("Teacher", {"Person"})
                      .add("Place", {"Top"})
                      .add("City", {"Place"})
                      .add("Country", {"Place"})
                      .add("Thing", {"Top"})
                      .build();
  auto c = [&](std::string_view l) { return concepts.at(l); };

  auto r2 = TypeHierarchy::Builder(HierarchyKind::relation_types, 2)
                .add("link")
                .add("livesIn", {"link"})
                .add("bornIn", {"livesIn"})
                .add("knows", {"link"})
                .add("teaches", {"knows"})
                .build();
  RelationHierarchy rel2{r2, std::vector<std::vector<TypeId>>(r2.size())};
  rel2.signatures[r2.at("link").value] = {c("Top"), c("Top")};
  rel2.signatures[r2.at("livesIn").value] = {c("Person"), c("Place")};
  rel2.signatures[r2.at("bornIn").value] = {c("Person"), c("City")};
  rel2.signatures[r2.at("knows").value] = {c("Agent"), c("Agent")};
  rel2.signatures[r2.at("teaches").value] = {c("Teacher"), c("Student")};

  auto r1 = TypeHierarchy::Builder(HierarchyKind::relation_types, 1).add("prop").add("famous", {"prop"}).build();
  RelationHierarchy rel1{r1, std::vector<std::vector<TypeId>>(r1.size())};
  rel1.signatures[r1.at("prop").value] = {c("Top")};
  rel1.signatures[r1.at("famous").value] = {c("Person")};

  auto r3 = TypeHierarchy::Builder(HierarchyKind::relation_types, 3).add("meet").build();
  RelationHierarchy rel3{r3, {{c("Agent"), c("Agent"), c("Place")}}};

  std::vector<Marker> markers{{"alice", c("Student")},
                              {"bob", c("Teacher")},
                              {"carol", c("Person")},
                              {"paris", c("City")},
                              {"france", c("Country")}};
  return Vocabulary(std::move(concepts), {std::move(rel1), std::move(rel2), std::move(rel3)}, std::move(markers));
}

Vocabulary randomVocabulary(Rng& rng, const RandomVocabularyOptions& o) {
  const std::size_t n = uniformCount(rng, 2, static_cast<std::uint32_t>(std::max<std::size_t>(2, o.maxConceptTypes)));
  TypeHierarchy::Builder cb(HierarchyKind::concept_types);
  cb.add("C0");
  for (std::size_t i = 1; i < n; ++i) {
    std::vector<std::string> parents{"C" + std::to_string(uniformIndex(rng, i))};
    if (i > 1 && coinFlip(rng, o.secondParent)) {
      auto other = "C" + std::to_string(uniformIndex(rng, i));
      if (other != parents.front()) parents.push_back(other);
    }
    cb.add("C" + std::to_string(i), parents);
  }
  TypeHierarchy concepts = std::move(cb).build();

  auto common = [&](const std::vector<TypeId>& uppers) {
    std::vector<TypeId> out;
    for (TypeId t : concepts.all())
      if (std::all_of(uppers.begin(), uppers.end(), [&](TypeId u) { return concepts.isSubtype(t, u); }))
        out.push_back(t);
    return out;
  };

  std::vector<RelationHierarchy> relations;
  for (auto arity : o.arities) {
    const std::size_t m =
        uniformCount(rng, 1, static_cast<std::uint32_t>(std::max<std::size_t>(1, o.maxRelationTypesPerArity)));
    const std::string prefix = "R" + std::to_string(arity) + "_";
    std::vector<std::vector<std::size_t>> parentIdx(m);
    std::vector<std::vector<TypeId>> sigs(m);
    for (std::size_t k = 0; k < arity; ++k) sigs[0].push_back(pickUniform(rng, concepts.all()));
    for (std::size_t j = 1; j < m; ++j) {
      parentIdx[j].push_back(uniformIndex(rng, j));
      if (j > 1 && coinFlip(rng, o.secondParent)) {
        auto other = uniformIndex(rng, j);
        if (other != parentIdx[j].front()) parentIdx[j].push_back(other);
      }
      for (;;) {
        std::vector<TypeId> sig;
        bool ok = true;
        for (std::size_t k = 0; ok && k < arity; ++k) {
          std::vector<TypeId> uppers;
          for (auto p : parentIdx[j]) uppers.push_back(sigs[p][k]);
          const auto cands = common(uppers);
          if (cands.empty()) ok = false;
          else sig.push_back(pickUniform(rng, cands));
        }
        if (ok) {
          sigs[j] = std::move(sig);
          break;
        }
        parentIdx[j].resize(1);
      }
    }
    TypeHierarchy::Builder rb(HierarchyKind::relation_types, arity);
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<std::string> ps;
      for (auto p : parentIdx[j]) ps.push_back(prefix + std::to_string(p));
      rb.add(prefix + std::to_string(j), ps);
    }
    TypeHierarchy h = std::move(rb).build();
    RelationHierarchy rh{h, std::vector<std::vector<TypeId>>(h.size())};
    for (std::size_t j = 0; j < m; ++j) rh.signatures[h.at(prefix + std::to_string(j)).value] = sigs[j];
    relations.push_back(std::move(rh));
  }

  std::vector<Marker> markers;
  const std::size_t markerCount = uniformCount(rng, 0, static_cast<std::uint32_t>(o.maxMarkers));
  for (std::size_t i = 0; i < markerCount; ++i) markers.push_back({"i" + std::to_string(i), pickUniform(rng, concepts.all())});
  return Vocabulary(std::move(concepts), std::move(relations), std::move(markers));
}

ConceptualGraph randomGraph(const Vocabulary& vocab, Rng& rng, std::size_t relations, double markerProbability) {
  const auto& ct = vocab.concepts();
  ConceptualGraph g;
  auto freshConcept = [&](TypeId upper) {
    const TypeId t = pickUniform(rng, ct.descendants(upper));
    std::optional<MarkerId> marker;
    if (coinFlip(rng, markerProbability)) {
      std::vector<MarkerId> admissible;
      for (std::uint32_t m = 0; m < vocab.markerCount(); ++m)
        if (ct.isSubtype(t, vocab.marker(MarkerId{m}).type)) admissible.push_back(MarkerId{m});
      if (!admissible.empty()) marker = pickUniform(rng, admissible);
    }
    return g.addConcept(t, marker);
  };

  const auto arities = vocab.arities();
  for (std::size_t i = 0; i < relations && !arities.empty(); ++i) {
    const auto arity = pickUniform(rng, arities);
    const RelationType r{arity, pickUniform(rng, vocab.relations(arity).all())};
    std::vector<ConceptId> args;
    for (std::size_t k = 0; k < arity; ++k) {
      const TypeId s = vocab.restrictionFor(r, k);
      std::vector<ConceptId> reusable;
      for (std::uint32_t c = 0; c < g.concepts().size(); ++c)
        if (ct.isSubtype(g.concepts()[c].type, s)) reusable.push_back(ConceptId{c});
      args.push_back(!reusable.empty() && coinFlip(rng, 0.5) ? pickUniform(rng, reusable) : freshConcept(s));
    }
    g.addRelation(r, std::move(args));
  }
  const auto isolated = uniformCount(rng, 0, 2);
  for (std::uint32_t i = 0; i < isolated; ++i) freshConcept(ct.root());
  return g;
}

GammaCG randomGamma(const Vocabulary& vocab, Rng& rng, std::size_t relations, std::size_t maxVariables,
                    const std::string& name) {
  GammaCG gcg{name, randomGraph(vocab, rng, relations), {}};
  const auto& g = gcg.graph;

  enum class Slot { relation, conceptType, marker };
  std::vector<std::pair<Slot, std::uint32_t>> slots;
  for (std::uint32_t r = 0; r < g.relations().size(); ++r) slots.push_back({Slot::relation, r});
  for (std::uint32_t c = 0; c < g.concepts().size(); ++c) {
    slots.push_back({Slot::conceptType, c});
    if (g.concepts()[c].marker) slots.push_back({Slot::marker, c});
  }
  std::shuffle(slots.begin(), slots.end(), rng);
  slots.resize(std::min(slots.size(), maxVariables));

  auto subset = [&](auto all) {
    decltype(all) out;
    for (const auto& v : all)
      if (coinFlip(rng, 0.5)) out.push_back(v);
    if (out.empty()) out.push_back(pickUniform(rng, all));
    return out;
  };

  std::size_t counter = 0;
  for (const auto& [slot, idx] : slots) {
    Variable v{"v" + std::to_string(++counter), {}};
    switch (slot) {
      case Slot::relation:
        v.binding = RelationTypeVariable{RelationId{idx}, subset(relationTypeDomain(vocab, g, RelationId{idx}))};
        break;
      case Slot::conceptType:
        v.binding = ConceptTypeVariable{ConceptId{idx}, subset(conceptTypeDomain(vocab, g, ConceptId{idx}))};
        break;
      case Slot::marker:
        v.binding = MarkerVariable{ConceptId{idx}, subset(markerDomain(vocab, g, ConceptId{idx}))};
        break;
    }
    normalizeDomain(v);
    gcg.variables.push_back(std::move(v));
  }
  return gcg;
}

GraphShape shapeOf(const Vocabulary& vocab, const ConceptualGraph& g) {
  auto conceptText = [&](ConceptId c) {
    const auto& n = g.conceptNode(c);
    return vocab.concepts().label(n.type) + ":" + (n.marker ? vocab.marker(*n.marker).name : "*");
  };
  GraphShape s;
  for (std::uint32_t c = 0; c < g.concepts().size(); ++c) s.concepts.push_back(conceptText(ConceptId{c}));
  for (const auto& r : g.relations()) {
    std::string text = vocab.label(r.type) + "(";
    for (std::size_t k = 0; k < r.arguments.size(); ++k) text += (k ? "," : "") + conceptText(r.arguments[k]);
    s.relations.push_back(text + ")");
  }
  std::sort(s.concepts.begin(), s.concepts.end());
  std::sort(s.relations.begin(), s.relations.end());
  return s;
}

ConceptualGraph withDistinctMarkers(ConceptualGraph g) {
  std::vector<bool> seen;
  for (std::uint32_t c = 0; c < g.concepts().size(); ++c) {
    const auto m = g.concepts()[c].marker;
    if (!m) continue;
    if (seen.size() <= m->value) seen.resize(m->value + 1, false);
    if (seen[m->value]) g.setMarker(ConceptId{c}, std::nullopt);
    seen[m->value] = true;
  }
  return g;
}

namespace {

// Adds one relation of a random type with `c` as first argument and the
// remaining arguments drawn from the existing concepts.
void attach(const Vocabulary& vocab, Rng& rng, ConceptualGraph& g, ConceptId c) {
  const auto arity = pickUniform(rng, vocab.arities());
  const RelationType r{arity, pickUniform(rng, vocab.relations(arity).all())};
  std::vector<ConceptId> args{c};
  for (std::size_t k = 1; k < arity; ++k)
    args.push_back(ConceptId{static_cast<std::uint32_t>(uniformIndex(rng, g.concepts().size()))});
  g.addRelation(r, std::move(args));
}

}  // namespace

CoreferentPair coreferentPair(const Vocabulary& vocab, Rng& rng) {
  const auto& ct = vocab.concepts();
  const MarkerId m{static_cast<std::uint32_t>(uniformIndex(rng, vocab.markerCount()))};
  const auto below = ct.descendants(vocab.marker(m).type);
  const TypeId t1 = pickUniform(rng, below);
  std::vector<TypeId> comparable;
  for (TypeId t : below)
    if (ct.isSubtype(t, t1) || ct.isSubtype(t1, t)) comparable.push_back(t);
  const TypeId t2 = pickUniform(rng, comparable);

  CoreferentPair p{randomGraph(vocab, rng, uniformCount(rng, 0, 6), 0.0),
                   randomGraph(vocab, rng, uniformCount(rng, 0, 6), 0.0),
                   {}, {}, ct.isSubtype(t1, t2) ? t1 : t2};
  p.inA = p.a.addConcept(t1, m);
  p.inB = p.b.addConcept(t2, m);
  attach(vocab, rng, p.a, p.inA);
  attach(vocab, rng, p.b, p.inB);
  return p;
}

std::pair<ConceptualGraph, ConceptualGraph> markerDisjointPair(const Vocabulary& vocab, Rng& rng) {
  auto a = withDistinctMarkers(randomGraph(vocab, rng, uniformCount(rng, 0, 8), 0.5));
  auto b = withDistinctMarkers(randomGraph(vocab, rng, uniformCount(rng, 0, 8), 0.5));
  for (std::uint32_t c = 0; c < b.concepts().size(); ++c) {
    const auto m = b.concepts()[c].marker;
    if (!m) continue;
    for (const auto& n : a.concepts())
      if (n.marker == m) b.setMarker(ConceptId{c}, std::nullopt);
  }
  return {std::move(a), std::move(b)};
}

}  // namespace cg2a::test
