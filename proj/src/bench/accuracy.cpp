#include <algorithm>

#include "sgm/bench.hpp"
#include "sgm/errors.hpp"

namespace sgm::bench {

double accuracy(const VertexMapping& result, const VertexMapping& truth,
                const std::vector<Vertex>& eligible) {
  if (eligible.empty()) throw DomainError("accuracy over an empty vertex set");
  std::size_t correct = 0;
  for (Vertex u : eligible) {
    if (u >= truth.domain_size() || !truth.is_defined(u)) {
      throw DomainError("eligible vertex " + std::to_string(u) + " has no true partner");
    }
    if (u < result.domain_size() && result.image_or_none(u) == truth.image_or_none(u)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(eligible.size());
}

double accuracy(const VertexMapping& result, const VertexMapping& truth) {
  std::vector<Vertex> eligible;
  eligible.reserve(truth.defined_count());
  for (Vertex u = 0; u < truth.domain_size(); ++u) {
    if (truth.is_defined(u)) eligible.push_back(u);
  }
  return accuracy(result, truth, eligible);
}

double median(std::vector<double> values) {
  if (values.empty()) throw DomainError("median of no values");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return (values[mid - 1] + values[mid]) / 2.0;
}

}  // namespace sgm::bench
