#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>

#include "cg2a/graph.hpp"

namespace cg2a {

/// Variability statistics of a dataset.
struct DatasetStats {
  std::size_t cgCount = 0;
  /// NbN: concept plus relation nodes per CG.
  double nbNodesMean = 0.0;
  double nbNodesStddev = 0.0;
  /// NbL: distinct labels per CG; concept types, relation types and
  /// markers all count.
  double nbLabelsMean = 0.0;
  double nbLabelsStddev = 0.0;
  /// Ar-k: mean number of relation nodes of arity k per CG.
  std::map<std::uint32_t, double> arityCounts;

  double arity(std::uint32_t k) const {
    auto it = arityCounts.find(k);
    return it == arityCounts.end() ? 0.0 : it->second;
  }

  friend bool operator==(const DatasetStats&, const DatasetStats&) = default;
};

/// Population standard deviations. PreconditionError on an empty dataset.
DatasetStats computeStats(std::span<const ConceptualGraph> dataset);

}  // namespace cg2a
