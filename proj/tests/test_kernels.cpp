#include <cstdlib>
#include <vector>

#include "doctest.h"
#include "fia/kernels.hpp"
#include "fia/random.hpp"

using namespace fia;
using namespace fia::kernels;

namespace {

std::vector<std::uint32_t> random_row(Rng& rng, std::size_t len, std::uint32_t p) {
  std::vector<std::uint32_t> v(len);
  for (auto& x : v) x = static_cast<std::uint32_t>(rng.below(p));
  return v;
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("scalar reference") {
    std::vector<std::uint32_t> dst{1, 2, 3, 4};
    const std::vector<std::uint32_t> src{4, 4, 4, 4};
    scalar::axpy_mod(dst, src, 3, 5);
    CHECK(dst == std::vector<std::uint32_t>{3, 4, 0, 1});
    scalar::scale_mod(dst, 2, 5);
    CHECK(dst == std::vector<std::uint32_t>{1, 3, 0, 2});
  }

  TEST_CASE("selected kernels match the scalar reference") {
    const std::uint32_t primes[] = {2, 3, 5, 65521, 1000003, (1u << 26) - 5, 2147483647};
    Rng rng(11);
    for (std::uint32_t p : primes) {
      const auto ops = select(p, Isa::avx2);
      if (p >= kAvx2ModulusLimit) CHECK(ops.isa == Isa::scalar);
      for (std::size_t len : {0, 1, 3, 4, 5, 8, 17, 64, 131}) {
        auto a = random_row(rng, len, p);
        const auto src = random_row(rng, len, p);
        auto b = a;
        const auto f = static_cast<std::uint32_t>(rng.below(p));
        ops.axpy_mod(a, src, f, p);
        scalar::axpy_mod(b, src, f, p);
        CHECK(a == b);
        const auto g = static_cast<std::uint32_t>(rng.below(p));
        ops.scale_mod(a, g, p);
        scalar::scale_mod(b, g, p);
        CHECK(a == b);
      }
    }
  }

#if defined(FIA_HAVE_AVX2)
  TEST_CASE("avx2 edge values") {
    if (!avx2_available()) return;
    const std::uint32_t p = (1u << 26) - 5;
    std::vector<std::uint32_t> a(37, p - 1), b(37, p - 1);
    const std::vector<std::uint32_t> src(37, p - 1);
    avx2::axpy_mod(a, src, p - 1, p);
    scalar::axpy_mod(b, src, p - 1, p);
    CHECK(a == b);
    avx2::scale_mod(a, p - 1, p);
    scalar::scale_mod(b, p - 1, p);
    CHECK(a == b);
  }
#endif

  TEST_CASE("FIA_ISA=scalar forces the reference path") {
    setenv("FIA_ISA", "scalar", 1);
    CHECK(select(5).isa == Isa::scalar);
    unsetenv("FIA_ISA");
    CHECK(select(5).isa == (avx2_available() ? Isa::avx2 : Isa::scalar));
    CHECK(std::string(isa_name(Isa::avx2)) == "avx2");
  }
}
