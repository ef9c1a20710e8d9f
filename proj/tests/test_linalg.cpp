#include "doctest.h"
#include "fia/linalg.hpp"
#include "fia/sampling.hpp"

using namespace fia;

namespace {

Matrix random_matrix(Rng& rng, CoeffRing ring, std::size_t rows, std::size_t cols) {
  Matrix m(ring, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (rng.chance(0.4)) m.at(i, j) = random_scalar(rng, ring);
  return m;
}

bool annihilates(const Matrix& a, const std::vector<Scalar>& x) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Scalar s = Scalar::zero(a.ring());
    for (std::size_t j = 0; j < a.cols(); ++j) s += a.at(i, j) * x[j];
    if (!s.is_zero()) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("nullspace vectors are annihilated and counted by rank") {
    Rng rng(3);
    for (CoeffRing ring : {CoeffRing::rationals(), CoeffRing::prime_field(2), CoeffRing::prime_field(7)}) {
      for (int t = 0; t < 30; ++t) {
        const auto rows = static_cast<std::size_t>(rng.between(0, 7));
        const auto cols = static_cast<std::size_t>(rng.between(1, 8));
        const auto a = random_matrix(rng, ring, rows, cols);
        const auto ns = nullspace(a);
        CHECK(ns.size() + rank(a) == cols);
        for (const auto& v : ns) CHECK(annihilates(a, v));

        SparseHomogeneousSystem sys(ring, cols);
        for (std::size_t i = 0; i < rows; ++i) {
          SparseRow r;
          for (std::size_t j = 0; j < cols; ++j)
            if (!a.at(i, j).is_zero()) r.emplace_back(j, a.at(i, j));
          sys.add_equation(r);
        }
        CHECK(sys.rank() == rank(a));
        // Same reduced echelon form, so the same basis.
        CHECK(sys.nullspace_basis() == ns);
      }
    }
  }

  TEST_CASE("solve") {
    const auto q = CoeffRing::rationals();
    Matrix a(q, 2, 2);
    a.at(0, 0) = Scalar::from_int(q, 1);
    a.at(0, 1) = Scalar::from_int(q, 2);
    a.at(1, 1) = Scalar::from_int(q, 3);
    const std::vector<Scalar> b{Scalar::from_int(q, 1), Scalar::from_int(q, 1)};
    auto x = solve(a, b);
    REQUIRE(x);
    CHECK((*x)[1] == Scalar::from_fraction(q, 1, 3));
    CHECK((*x)[0] == Scalar::from_fraction(q, 1, 3));
    Matrix s(q, 2, 1);
    s.at(0, 0) = Scalar::one(q);
    s.at(1, 0) = Scalar::one(q);
    CHECK_FALSE(solve(s, std::vector<Scalar>{Scalar::one(q), Scalar::zero(q)}));
  }

  TEST_CASE("repeated variables in a sparse equation are summed") {
    const auto z3 = CoeffRing::prime_field(3);
    SparseHomogeneousSystem sys(z3, 2);
    sys.add_equation({{0, Scalar::one(z3)}, {0, Scalar::one(z3)}, {0, Scalar::one(z3)}});
    CHECK(sys.rank() == 0);
  }

  TEST_CASE("integers are rejected") {
    CHECK_THROWS_AS(rank(Matrix(CoeffRing::integers(), 1, 1)), Error);
    CHECK_THROWS_AS(SparseHomogeneousSystem(CoeffRing::integers(), 1), Error);
  }

  TEST_CASE("span membership agrees with dense solve") {
    Rng rng(17);
    for (CoeffRing ring : {CoeffRing::rationals(), CoeffRing::prime_field(3)}) {
      for (int t = 0; t < 40; ++t) {
        const auto n = static_cast<std::size_t>(rng.between(1, 5));
        const auto k = static_cast<std::size_t>(rng.between(0, 4));
        auto random_map = [&] {
          std::vector<Scalar> m(n * n, Scalar::zero(ring));
          for (auto& v : m)
            if (rng.chance(0.3)) v = random_scalar(rng, ring);
          return m;
        };
        std::vector<std::vector<Scalar>> gens;
        for (std::size_t i = 0; i < k; ++i) gens.push_back(random_map());
        // Sometimes make the target a combination of the generators.
        auto target = random_map();
        if (k > 0 && rng.chance(0.5)) target = gens[0];
        std::vector<std::span<const Scalar>> views(gens.begin(), gens.end());
        SpanMembership sm(ring, n, views, target);
        for (int q = 0; q < 5; ++q) {
          SparseRow a;
          std::vector<Scalar> dense(n, Scalar::zero(ring));
          for (std::size_t j = 0; j < n; ++j) {
            if (rng.chance(0.5)) {
              dense[j] = random_scalar(rng, ring);
              a.emplace_back(j, dense[j]);
            }
          }
          auto apply = [&](const std::vector<Scalar>& m) {
            std::vector<Scalar> out(n, Scalar::zero(ring));
            for (std::size_t j = 0; j < n; ++j)
              for (std::size_t i = 0; i < n; ++i) out[i] += m[j * n + i] * dense[j];
            return out;
          };
          Matrix mat(ring, n, k);
          for (std::size_t c = 0; c < k; ++c) {
            const auto img = apply(gens[c]);
            for (std::size_t i = 0; i < n; ++i) mat.at(i, c) = img[i];
          }
          const auto expected = solve(mat, apply(target));
          const auto got = sm.solve(a);
          CHECK(got.has_value() == expected.has_value());
          CHECK(sm.contains(a) == expected.has_value());
          if (got) {
            const auto rhs = apply(target);
            for (std::size_t i = 0; i < n; ++i) {
              Scalar s = Scalar::zero(ring);
              for (std::size_t c = 0; c < k; ++c) s += mat.at(i, c) * (*got)[c];
              CHECK(s == rhs[i]);
            }
          }
        }
      }
    }
  }
}
