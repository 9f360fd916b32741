#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include <gmpxx.h>

namespace d3 {

/// An exact scalar: either a rational number or an element of a prime field.
///
/// Rationals keep an int64 numerator/denominator fast path and spill to GMP
/// only when a result no longer fits. Prime-field elements carry their modulus
/// so that mixed expressions with plain integer constants (0, 1, -1) work
/// without threading the field through every call site. A value is always held
/// in canonical form, so equality is structural.
class Scalar {
public:
  Scalar() = default;
  Scalar(long long v) : num_(v) {} // NOLINT: implicit integer literals are intended

  static Scalar rational(long long num, long long den);
  static Scalar rational(const mpq_class &q);
  static Scalar modular(long long v, std::uint32_t p);

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  std::uint32_t modulus() const { return mod_; }
  bool is_modular() const { return mod_ != 0; }

  /// Numerator/denominator as GMP values; for F_p elements the residue over 1.
  mpq_class to_mpq() const;
  /// Residue in [0, p) for F_p elements; throws for non-integral rationals.
  long long residue() const;

  /// "num/den" for rationals, the residue for F_p elements.
  std::string to_string() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar &a, const Scalar &b);
  friend Scalar operator-(const Scalar &a, const Scalar &b);
  friend Scalar operator*(const Scalar &a, const Scalar &b);
  friend Scalar operator/(const Scalar &a, const Scalar &b);
  Scalar &operator+=(const Scalar &o) { return *this = *this + o; }
  Scalar &operator-=(const Scalar &o) { return *this = *this - o; }
  Scalar &operator*=(const Scalar &o) { return *this = *this * o; }
  Scalar inverse() const;

  friend bool operator==(const Scalar &a, const Scalar &b);
  friend bool operator!=(const Scalar &a, const Scalar &b) { return !(a == b); }

private:
  static Scalar from_parts(__int128 num, __int128 den);
  static Scalar from_big(mpq_class q);
  Scalar to_field(std::uint32_t p) const;

  long long num_ = 0;
  long long den_ = 1;
  std::uint32_t mod_ = 0;
  std::shared_ptr<const mpq_class> big_;
};

/// The exact base field: the rationals or F_p for a prime p.
class Field {
public:
  enum class Kind { Rational, Prime };

  static Field rationals() { return Field(Kind::Rational, 0); }
  /// Throws d3::Error(InvalidInput) unless p is prime and below 2^31.
  static Field prime(std::uint32_t p);

  Kind kind() const { return kind_; }
  std::uint32_t characteristic() const { return p_; }
  bool is_rational() const { return kind_ == Kind::Rational; }

  Scalar zero() const { return from_int(0); }
  Scalar one() const { return from_int(1); }
  Scalar from_int(long long v) const;
  Scalar from_rational(long long num, long long den) const;
  /// Parses "n", "n/d" (rationals) or an integer residue (F_p).
  Scalar parse(const std::string &text) const;

  /// "Q" or "F7".
  std::string name() const;

  friend bool operator==(const Field &a, const Field &b) { return a.kind_ == b.kind_ && a.p_ == b.p_; }
  friend bool operator!=(const Field &a, const Field &b) { return !(a == b); }

private:
  Field(Kind k, std::uint32_t p) : kind_(k), p_(p) {}
  Kind kind_;
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

} // namespace d3
