#pragma once

#include <cstdint>
#include <span>

// Row kernels for dense elimination over Z/pZ. Every entry is a canonical
// residue in [0, p). The scalar versions are the reference; the AVX2
// versions must agree with them bit for bit (see tests/test_kernels.cpp).

namespace fia::kernels {

enum class Isa : std::uint8_t { scalar, avx2 };

const char* isa_name(Isa isa);

/// The AVX2 path computes in doubles, so products must stay below 2^53.
inline constexpr std::uint32_t kAvx2ModulusLimit = 1u << 26;

/// True when the AVX2 kernels were compiled in and the CPU has AVX2 and FMA.
bool avx2_available();

namespace scalar {
/// dst[i] = (dst[i] + factor * src[i]) mod p
void axpy_mod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t factor,
              std::uint32_t p);
/// row[i] = factor * row[i] mod p
void scale_mod(std::span<std::uint32_t> row, std::uint32_t factor, std::uint32_t p);
}  // namespace scalar

#if defined(FIA_HAVE_AVX2)
namespace avx2 {
// Preconditions: avx2_available() and p < kAvx2ModulusLimit.
void axpy_mod(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t factor,
              std::uint32_t p);
void scale_mod(std::span<std::uint32_t> row, std::uint32_t factor, std::uint32_t p);
}  // namespace avx2
#endif

struct ModRowOps {
  Isa isa;
  void (*axpy_mod)(std::span<std::uint32_t>, std::span<const std::uint32_t>, std::uint32_t, std::uint32_t);
  void (*scale_mod)(std::span<std::uint32_t>, std::uint32_t, std::uint32_t);
};

/// Best kernels for modulus p on this machine. Setting the environment
/// variable FIA_ISA=scalar forces the reference path.
ModRowOps select(std::uint32_t p);

/// Kernels for an explicit ISA; falls back to scalar when unavailable.
ModRowOps select(std::uint32_t p, Isa wanted);

}  // namespace fia::kernels
