#include "fia/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace fia::kernels {

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool avx2_available() {
#if defined(FIA_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

namespace scalar {

void axpy_mod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t factor,
              std::uint32_t p) {
  const std::uint64_t f = factor;
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = static_cast<std::uint32_t>((dst[i] + f * src[i]) % p);
  }
}

void scale_mod(std::span<std::uint32_t> row, std::uint32_t factor, std::uint32_t p) {
  const std::uint64_t f = factor;
  for (auto& v : row) v = static_cast<std::uint32_t>(f * v % p);
}

}  // namespace scalar

ModRowOps select(std::uint32_t p, Isa wanted) {
#if defined(FIA_HAVE_AVX2)
  if (wanted == Isa::avx2 && p < kAvx2ModulusLimit && avx2_available()) {
    return {Isa::avx2, &avx2::axpy_mod, &avx2::scale_mod};
  }
#else
  (void)p;
  (void)wanted;
#endif
  return {Isa::scalar, &scalar::axpy_mod, &scalar::scale_mod};
}

ModRowOps select(std::uint32_t p) {
  const char* env = std::getenv("FIA_ISA");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return select(p, Isa::scalar);
  return select(p, Isa::avx2);
}

}  // namespace fia::kernels
