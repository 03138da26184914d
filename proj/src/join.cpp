#include "cg2a/generator.hpp"

#include <map>
#include <numeric>

namespace cg2a {

ConceptualGraph join(const Vocabulary& vocab, const ConceptualGraph& acc, const ConceptualGraph& added,
                     JoinReport* report) {
  const auto& ct = vocab.concepts();
  const auto nAcc = static_cast<std::uint32_t>(acc.concepts().size());

  // Combined numbering: accumulator concepts, then added concepts.
  std::vector<ConceptNode> nodes(acc.concepts().begin(), acc.concepts().end());
  nodes.insert(nodes.end(), added.concepts().begin(), added.concepts().end());
  const auto refOf = [&](std::uint32_t i) {
    return i < nAcc ? JoinNodeRef{JoinNodeRef::Side::accumulator, ConceptId{i}}
                    : JoinNodeRef{JoinNodeRef::Side::added, ConceptId{i - nAcc}};
  };

  std::vector<std::uint32_t> target(nodes.size());
  std::iota(target.begin(), target.end(), 0u);

  // Representatives per marker; a node that is comparable with none of
  // them starts a new representative.
  std::map<MarkerId, std::vector<std::uint32_t>> reps;
  for (std::uint32_t i = 0; i < nodes.size(); ++i) {
    if (!nodes[i].marker) continue;
    auto& list = reps[*nodes[i].marker];
    bool fused = false;
    for (std::uint32_t rep : list) {
      if (auto t = mostSpecific(ct, nodes[rep].type, nodes[i].type)) {
        nodes[rep].type = *t;
        target[i] = rep;
        if (report) report->merged.push_back({refOf(rep), refOf(i)});
        fused = true;
        break;
      }
    }
    if (fused) continue;
    if (report)
      for (std::uint32_t rep : list) report->incomparable.push_back({refOf(rep), refOf(i)});
    list.push_back(i);
  }

  ConceptualGraph out;
  std::vector<ConceptId> renumber(nodes.size());
  for (std::uint32_t i = 0; i < nodes.size(); ++i)
    if (target[i] == i) renumber[i] = out.addConcept(nodes[i].type, nodes[i].marker);
  for (std::uint32_t i = 0; i < nodes.size(); ++i) renumber[i] = renumber[target[i]];

  auto copyRelations = [&](const ConceptualGraph& g, std::uint32_t offset) {
    for (const auto& r : g.relations()) {
      std::vector<ConceptId> args;
      args.reserve(r.arguments.size());
      for (ConceptId c : r.arguments) args.push_back(renumber[c.value + offset]);
      out.addRelation(r.type, std::move(args));
    }
  };
  copyRelations(acc, 0);
  copyRelations(added, nAcc);
  return out;
}

}  // namespace cg2a
