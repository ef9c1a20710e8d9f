#include "fia/scalar.hpp"

#include <charconv>

namespace fia {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

CoeffRing CoeffRing::prime_field(std::uint64_t p) {
  if (p < 2 || p >= (std::uint64_t{1} << 31)) {
    throw Error("modulus " + std::to_string(p) + " outside [2, 2^31)");
  }
  if (!is_prime(p)) throw Error("modulus " + std::to_string(p) + " is not prime");
  return CoeffRing(Kind::Zp, static_cast<std::uint32_t>(p));
}

CoeffRing CoeffRing::parse(std::string_view designator) {
  if (designator == "q") return rationals();
  if (designator == "z") return integers();
  if (designator.starts_with("zp:")) {
    auto digits = designator.substr(3);
    std::uint64_t p = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
      throw ParseError("bad modulus in ring designator '" + std::string(designator) + "'");
    }
    return prime_field(p);
  }
  throw ParseError("unknown ring designator '" + std::string(designator) + "'");
}

std::string CoeffRing::designator() const {
  switch (kind_) {
    case Kind::Q: return "q";
    case Kind::Z: return "z";
    case Kind::Zp: return "zp:" + std::to_string(modulus_);
  }
  return {};
}

namespace {

std::uint32_t mod_reduce(const mpz_class& v, std::uint32_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p);
  return static_cast<std::uint32_t>(r.get_ui());
}

std::uint32_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint32_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1) result = result * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

}  // namespace

Scalar Scalar::zero(CoeffRing ring) { return from_int(ring, 0); }
Scalar Scalar::one(CoeffRing ring) { return from_int(ring, 1); }

Scalar Scalar::from_int(CoeffRing ring, long value) { return from_integer(ring, mpz_class(value)); }

Scalar Scalar::from_integer(CoeffRing ring, const mpz_class& value) {
  switch (ring.kind()) {
    case CoeffRing::Kind::Q: return Scalar(ring, mpq_class(value));
    case CoeffRing::Kind::Z: return Scalar(ring, value);
    case CoeffRing::Kind::Zp: return Scalar(ring, mod_reduce(value, ring.modulus()));
  }
  throw Error("unreachable ring kind");
}

Scalar Scalar::from_fraction(CoeffRing ring, const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw Error("zero denominator");
  switch (ring.kind()) {
    case CoeffRing::Kind::Q: {
      mpq_class q(num, den);
      q.canonicalize();
      return Scalar(ring, std::move(q));
    }
    case CoeffRing::Kind::Z: {
      if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) {
        throw Error("fraction is not an integer");
      }
      return Scalar(ring, mpz_class(num / den));
    }
    case CoeffRing::Kind::Zp:
      return from_integer(ring, num) / from_integer(ring, den);
  }
  throw Error("unreachable ring kind");
}

Scalar Scalar::from_residue(CoeffRing ring, std::uint64_t residue) {
  if (ring.kind() != CoeffRing::Kind::Zp) throw Error("residue outside a prime field");
  return Scalar(ring, static_cast<std::uint32_t>(residue % ring.modulus()));
}

bool Scalar::is_zero() const {
  return std::visit(
      [](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::uint32_t>) {
          return v == 0;
        } else {
          return sgn(v) == 0;
        }
      },
      value_);
}

bool Scalar::is_one() const { return *this == one(ring_); }

mpz_class Scalar::numerator() const {
  switch (ring_.kind()) {
    case CoeffRing::Kind::Q: return std::get<mpq_class>(value_).get_num();
    case CoeffRing::Kind::Z: return std::get<mpz_class>(value_);
    case CoeffRing::Kind::Zp: return mpz_class(static_cast<unsigned long>(std::get<std::uint32_t>(value_)));
  }
  return {};
}

mpz_class Scalar::denominator() const {
  if (ring_.kind() == CoeffRing::Kind::Q) return std::get<mpq_class>(value_).get_den();
  return mpz_class(1);
}

std::uint32_t Scalar::residue() const {
  if (ring_.kind() != CoeffRing::Kind::Zp) throw Error("residue requested outside a prime field");
  return std::get<std::uint32_t>(value_);
}

void Scalar::require_same_ring(const Scalar& other) const {
  if (!(ring_ == other.ring_)) {
    throw Error("ring mismatch: " + ring_.designator() + " vs " + other.ring_.designator());
  }
}

Scalar Scalar::operator-() const {
  switch (ring_.kind()) {
    case CoeffRing::Kind::Q: return Scalar(ring_, mpq_class(-std::get<mpq_class>(value_)));
    case CoeffRing::Kind::Z: return Scalar(ring_, mpz_class(-std::get<mpz_class>(value_)));
    case CoeffRing::Kind::Zp: {
      auto r = std::get<std::uint32_t>(value_);
      return Scalar(ring_, r == 0 ? 0u : ring_.modulus() - r);
    }
  }
  throw Error("unreachable ring kind");
}

Scalar Scalar::inverse() const {
  if (!ring_.is_field()) throw Error("inversion is not available in Z");
  if (is_zero()) throw Error("division by zero");
  if (ring_.kind() == CoeffRing::Kind::Q) {
    mpq_class q = 1 / std::get<mpq_class>(value_);
    q.canonicalize();
    return Scalar(ring_, std::move(q));
  }
  auto p = ring_.modulus();
  return Scalar(ring_, mod_pow(std::get<std::uint32_t>(value_), p - 2, p));
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  a.require_same_ring(b);
  switch (a.ring_.kind()) {
    case CoeffRing::Kind::Q:
      return Scalar(a.ring_, mpq_class(std::get<mpq_class>(a.value_) + std::get<mpq_class>(b.value_)));
    case CoeffRing::Kind::Z:
      return Scalar(a.ring_, mpz_class(std::get<mpz_class>(a.value_) + std::get<mpz_class>(b.value_)));
    case CoeffRing::Kind::Zp: {
      std::uint64_t s = std::uint64_t{std::get<std::uint32_t>(a.value_)} + std::get<std::uint32_t>(b.value_);
      return Scalar(a.ring_, static_cast<std::uint32_t>(s % a.ring_.modulus()));
    }
  }
  throw Error("unreachable ring kind");
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  a.require_same_ring(b);
  switch (a.ring_.kind()) {
    case CoeffRing::Kind::Q:
      return Scalar(a.ring_, mpq_class(std::get<mpq_class>(a.value_) * std::get<mpq_class>(b.value_)));
    case CoeffRing::Kind::Z:
      return Scalar(a.ring_, mpz_class(std::get<mpz_class>(a.value_) * std::get<mpz_class>(b.value_)));
    case CoeffRing::Kind::Zp: {
      std::uint64_t s = std::uint64_t{std::get<std::uint32_t>(a.value_)} * std::get<std::uint32_t>(b.value_);
      return Scalar(a.ring_, static_cast<std::uint32_t>(s % a.ring_.modulus()));
    }
  }
  throw Error("unreachable ring kind");
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  a.require_same_ring(b);
  return a * b.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) { return a.ring_ == b.ring_ && a.value_ == b.value_; }

std::string Scalar::to_string() const {
  switch (ring_.kind()) {
    case CoeffRing::Kind::Q: return std::get<mpq_class>(value_).get_str();
    case CoeffRing::Kind::Z: return std::get<mpz_class>(value_).get_str();
    case CoeffRing::Kind::Zp: return std::to_string(std::get<std::uint32_t>(value_));
  }
  return {};
}

}  // namespace fia
