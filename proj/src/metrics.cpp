#include "cg2a/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <vector>

#include "cg2a/error.hpp"

namespace cg2a {
namespace {

struct Moments {
  double mean = 0.0;
  double stddev = 0.0;
};

// Integer sums keep the result independent of the order of xs.
Moments moments(const std::vector<std::uint64_t>& xs) {
  std::uint64_t sum = 0, squares = 0;
  for (auto x : xs) {
    sum += x;
    squares += x * x;
  }
  const auto n = static_cast<std::uint64_t>(xs.size());
  const double spread = static_cast<double>(n * squares - sum * sum);
  return {static_cast<double>(sum) / static_cast<double>(n), std::sqrt(spread) / static_cast<double>(n)};
}

std::size_t distinctLabels(const ConceptualGraph& g) {
  // (namespace, key, id): 0 concept type, 1 relation type, 2 marker.
  std::vector<std::tuple<int, std::uint32_t, std::uint32_t>> labels;
  for (const auto& c : g.concepts()) {
    labels.emplace_back(0, 0, c.type.value);
    if (c.marker) labels.emplace_back(2, 0, c.marker->value);
  }
  for (const auto& r : g.relations()) labels.emplace_back(1, r.type.arity, r.type.id.value);
  std::sort(labels.begin(), labels.end());
  return static_cast<std::size_t>(std::unique(labels.begin(), labels.end()) - labels.begin());
}

}  // namespace

DatasetStats computeStats(std::span<const ConceptualGraph> dataset) {
  if (dataset.empty()) throw PreconditionError("statistics of an empty dataset");

  std::vector<std::uint64_t> nodes, labels;
  std::map<std::uint32_t, std::uint64_t> arityTotals;
  for (const auto& g : dataset) {
    nodes.push_back(g.size());
    labels.push_back(distinctLabels(g));
    for (const auto& r : g.relations()) ++arityTotals[r.type.arity];
  }

  DatasetStats s;
  s.cgCount = dataset.size();
  const auto n = moments(nodes);
  const auto l = moments(labels);
  s.nbNodesMean = n.mean;
  s.nbNodesStddev = n.stddev;
  s.nbLabelsMean = l.mean;
  s.nbLabelsStddev = l.stddev;
  for (const auto& [k, total] : arityTotals) s.arityCounts[k] = static_cast<double>(total) / static_cast<double>(dataset.size());
  return s;
}

}  // namespace cg2a
