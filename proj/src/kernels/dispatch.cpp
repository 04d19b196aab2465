#include <atomic>
#include <cstdlib>
#include <string>

#include "sgm/errors.hpp"
#include "sgm/kernels.hpp"

namespace sgm::kernels {

namespace {

constexpr KernelTable kScalar{Isa::scalar, &scalar::intersect_count, &scalar::and_popcount,
                              &scalar::masked_argmax};
#ifdef SGM_HAVE_X86_KERNELS
constexpr KernelTable kAvx2{Isa::avx2, &avx2::intersect_count, &avx2::and_popcount,
                            &avx2::masked_argmax};
#endif

const KernelTable* initial_table() {
  const char* force = std::getenv("SGM_FORCE_SCALAR");
  if (force != nullptr && *force != '\0' && std::string(force) != "0") return &kScalar;
  return supported(Isa::avx2) ? &table(Isa::avx2) : &kScalar;
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> ptr{initial_table()};
  return ptr;
}

}  // namespace

bool supported(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#ifdef SGM_HAVE_X86_KERNELS
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
      return false;
#endif
  }
  return false;
}

std::string_view name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

Isa parse_isa(std::string_view text) {
  if (text == "scalar") return Isa::scalar;
  if (text == "avx2") return Isa::avx2;
  throw DomainError("unknown kernel ISA '" + std::string(text) + "'");
}

const KernelTable& table(Isa isa) {
  if (!supported(isa)) throw DomainError("kernel ISA " + std::string(name(isa)) + " not supported here");
#ifdef SGM_HAVE_X86_KERNELS
  if (isa == Isa::avx2) return kAvx2;
#endif
  return kScalar;
}

const KernelTable& active() { return *current().load(std::memory_order_relaxed); }

void select(Isa isa) { current().store(&table(isa), std::memory_order_relaxed); }

std::vector<Isa> available() {
  std::vector<Isa> out{Isa::scalar};
  if (supported(Isa::avx2)) out.push_back(Isa::avx2);
  return out;
}

}  // namespace sgm::kernels
