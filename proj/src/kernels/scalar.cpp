#include <bit>

#include "sgm/kernels.hpp"

namespace sgm::kernels::scalar {

std::size_t intersect_count(const std::uint32_t* a, std::size_t na, const std::uint32_t* b,
                            std::size_t nb) {
  std::size_t i = 0, j = 0, count = 0;
  while (i < na && j < nb) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
  std::uint64_t total = 0;
  for (std::size_t w = 0; w < words; ++w) total += static_cast<std::uint64_t>(std::popcount(a[w] & b[w]));
  return total;
}

ArgMax masked_argmax(const std::uint32_t* values, const std::uint32_t* mask, std::size_t n) {
  ArgMax best;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t v = values[i] & mask[i];
    if (v > best.value) {
      best.value = v;
      best.index = static_cast<std::uint32_t>(i);
    }
  }
  return best;
}

}  // namespace sgm::kernels::scalar
