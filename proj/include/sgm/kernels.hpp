#pragma once

// Data-parallel inner loops used by witness counting and matching. Each
// kernel has a portable scalar reference and an AVX2 variant; the variant is
// picked once at startup from CPUID and can be overridden (tests, CLI).

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace sgm::kernels {

enum class Isa { scalar, avx2 };

struct ArgMax {
  std::uint32_t value = 0;
  std::uint32_t index = 0;
};

// |a ∩ b| for strictly increasing a and b.
using IntersectCountFn = std::size_t (*)(const std::uint32_t* a, std::size_t na,
                                         const std::uint32_t* b, std::size_t nb);
// popcount(a & b) over `words` 64-bit words.
using AndPopcountFn = std::uint64_t (*)(const std::uint64_t* a, const std::uint64_t* b,
                                        std::size_t words);
// Largest values[i] & mask[i] and the smallest index attaining it. Values
// must be < 2^31. For n == 0 returns {0, 0}.
using MaskedArgmaxFn = ArgMax (*)(const std::uint32_t* values, const std::uint32_t* mask,
                                  std::size_t n);

struct KernelTable {
  Isa isa;
  IntersectCountFn intersect_count;
  AndPopcountFn and_popcount;
  MaskedArgmaxFn masked_argmax;
};

bool supported(Isa isa);
std::string_view name(Isa isa);
// Throws DomainError for an unsupported or unknown name.
Isa parse_isa(std::string_view text);

const KernelTable& table(Isa isa);
// The table used by the library. Defaults to the widest supported ISA, or
// scalar when SGM_FORCE_SCALAR is set in the environment.
const KernelTable& active();
// Throws DomainError if the ISA is not supported on this machine.
void select(Isa isa);
std::vector<Isa> available();

namespace scalar {
std::size_t intersect_count(const std::uint32_t* a, std::size_t na, const std::uint32_t* b,
                            std::size_t nb);
std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t words);
ArgMax masked_argmax(const std::uint32_t* values, const std::uint32_t* mask, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define SGM_HAVE_X86_KERNELS 1
namespace avx2 {
std::size_t intersect_count(const std::uint32_t* a, std::size_t na, const std::uint32_t* b,
                            std::size_t nb);
std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t words);
ArgMax masked_argmax(const std::uint32_t* values, const std::uint32_t* mask, std::size_t n);
}  // namespace avx2
#endif

}  // namespace sgm::kernels
