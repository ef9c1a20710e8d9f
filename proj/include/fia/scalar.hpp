#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

#include "fia/error.hpp"

namespace fia {

/// Coefficient ring: the rationals, the integers, or a prime field Z/pZ.
class CoeffRing {
 public:
  enum class Kind : std::uint8_t { Q, Z, Zp };

  static CoeffRing rationals() { return CoeffRing(Kind::Q, 0); }
  static CoeffRing integers() { return CoeffRing(Kind::Z, 0); }
  /// Throws fia::Error unless 2 <= p < 2^31 and p is prime.
  static CoeffRing prime_field(std::uint64_t p);
  /// Parses a designator: "q", "z" or "zp:<p>".
  static CoeffRing parse(std::string_view designator);

  Kind kind() const noexcept { return kind_; }
  std::uint32_t modulus() const noexcept { return modulus_; }
  bool is_field() const noexcept { return kind_ != Kind::Z; }
  std::string designator() const;

  friend bool operator==(const CoeffRing&, const CoeffRing&) = default;

 private:
  CoeffRing(Kind kind, std::uint32_t modulus) : kind_(kind), modulus_(modulus) {}

  Kind kind_;
  std::uint32_t modulus_;
};

bool is_prime(std::uint64_t n);

/// Exact ring element in canonical form, so equality is structural.
///
/// Q values are reduced fractions with positive denominator, Z values are
/// big integers and Zp values are residues in [0, p).
class Scalar {
 public:
  static Scalar zero(CoeffRing ring);
  static Scalar one(CoeffRing ring);
  /// Image of an integer under the canonical map Z -> ring.
  static Scalar from_int(CoeffRing ring, long value);
  static Scalar from_integer(CoeffRing ring, const mpz_class& value);
  /// num/den; throws if den is zero or (over Z) does not divide num.
  static Scalar from_fraction(CoeffRing ring, const mpz_class& num, const mpz_class& den);
  /// Zp only: residue taken mod p.
  static Scalar from_residue(CoeffRing ring, std::uint64_t residue);

  const CoeffRing& ring() const noexcept { return ring_; }
  bool is_zero() const;
  bool is_one() const;

  /// Numerator / denominator view. For Z the denominator is 1; for Zp the
  /// numerator is the residue and the denominator 1.
  mpz_class numerator() const;
  mpz_class denominator() const;
  std::uint32_t residue() const;  // Zp only

  Scalar operator-() const;
  Scalar inverse() const;  // throws in Z or on zero

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  friend bool operator==(const Scalar& a, const Scalar& b);

  /// "5/6", "-3", "2".
  std::string to_string() const;

 private:
  using Value = std::variant<mpq_class, mpz_class, std::uint32_t>;
  Scalar(CoeffRing ring, Value value) : ring_(ring), value_(std::move(value)) {}

  void require_same_ring(const Scalar& other) const;

  CoeffRing ring_;
  Value value_;
};

}  // namespace fia
