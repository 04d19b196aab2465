// Compiled with -mavx2 -mpopcnt; only reached after a CPUID check.

#include <immintrin.h>

#include <bit>

#include "sgm/kernels.hpp"

namespace sgm::kernels::avx2 {

std::size_t intersect_count(const std::uint32_t* a, std::size_t na, const std::uint32_t* b,
                            std::size_t nb) {
  std::size_t i = 0, j = 0, count = 0;
  const std::size_t na8 = na & ~std::size_t{7};
  const std::size_t nb8 = nb & ~std::size_t{7};
  const __m256i rotate = _mm256_setr_epi32(1, 2, 3, 4, 5, 6, 7, 0);
  while (i < na8 && j < nb8) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + j));
    // All 8x8 comparisons: compare against the 8 rotations of vb.
    __m256i hits = _mm256_cmpeq_epi32(va, vb);
    for (int r = 1; r < 8; ++r) {
      vb = _mm256_permutevar8x32_epi32(vb, rotate);
      hits = _mm256_or_si256(hits, _mm256_cmpeq_epi32(va, vb));
    }
    count += static_cast<std::size_t>(
        std::popcount(static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(hits)))));
    const std::uint32_t a_last = a[i + 7];
    const std::uint32_t b_last = b[j + 7];
    if (a_last <= b_last) i += 8;
    if (b_last <= a_last) j += 8;
  }
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
  // Nibble lookup popcount, bytes folded into 64-bit lanes with SAD.
  const __m256i lookup = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                          0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low = _mm256_set1_epi8(0x0f);
  __m256i acc = _mm256_setzero_si256();
  std::size_t w = 0;
  for (; w + 4 <= words; w += 4) {
    const __m256i v = _mm256_and_si256(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + w)),
                                       _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + w)));
    const __m256i lo = _mm256_and_si256(v, low);
    const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low);
    const __m256i bytes =
        _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(bytes, _mm256_setzero_si256()));
  }
  std::uint64_t total = static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 0)) +
                        static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 1)) +
                        static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 2)) +
                        static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 3));
  for (; w < words; ++w) total += static_cast<std::uint64_t>(std::popcount(a[w] & b[w]));
  return total;
}

ArgMax masked_argmax(const std::uint32_t* values, const std::uint32_t* mask, std::size_t n) {
  if (n < 8) {
    ArgMax best;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t v = values[i] & mask[i];
      if (v > best.value) best = {v, static_cast<std::uint32_t>(i)};
    }
    return best;
  }
  // Per-lane running max; strict comparison keeps each lane's first index.
  const std::size_t n8 = n & ~std::size_t{7};
  __m256i best = _mm256_and_si256(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(values)),
                                  _mm256_loadu_si256(reinterpret_cast<const __m256i*>(mask)));
  __m256i best_idx = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
  __m256i idx = best_idx;
  const __m256i step = _mm256_set1_epi32(8);
  for (std::size_t i = 8; i < n8; i += 8) {
    idx = _mm256_add_epi32(idx, step);
    const __m256i v =
        _mm256_and_si256(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(values + i)),
                         _mm256_loadu_si256(reinterpret_cast<const __m256i*>(mask + i)));
    const __m256i gt = _mm256_cmpgt_epi32(v, best);
    best = _mm256_blendv_epi8(best, v, gt);
    best_idx = _mm256_blendv_epi8(best_idx, idx, gt);
  }
  alignas(32) std::uint32_t lane_val[8];
  alignas(32) std::uint32_t lane_idx[8];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lane_val), best);
  _mm256_store_si256(reinterpret_cast<__m256i*>(lane_idx), best_idx);
  ArgMax out{lane_val[0], lane_idx[0]};
  for (int l = 1; l < 8; ++l) {
    if (lane_val[l] > out.value || (lane_val[l] == out.value && lane_idx[l] < out.index)) {
      out = {lane_val[l], lane_idx[l]};
    }
  }
  for (std::size_t i = n8; i < n; ++i) {
    const std::uint32_t v = values[i] & mask[i];
    if (v > out.value) out = {v, static_cast<std::uint32_t>(i)};
  }
  return out;
}

}  // namespace sgm::kernels::avx2
