#include "d3/scalar.hpp"

#include <limits>
#include <numeric>

#include "d3/error.hpp"

namespace d3 {

namespace {

constexpr __int128 kMin = std::numeric_limits<long long>::min() + 1;
constexpr __int128 kMax = std::numeric_limits<long long>::max();

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0)
    a = -a;
  if (b < 0)
    b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

mpz_class to_mpz(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

long long mod_reduce(long long v, std::uint32_t p) {
  long long r = v % static_cast<long long>(p);
  return r < 0 ? r + p : r;
}

long long mod_pow(long long b, long long e, std::uint32_t p) {
  long long r = 1;
  b = mod_reduce(b, p);
  while (e > 0) {
    if (e & 1)
      r = static_cast<long long>((static_cast<__int128>(r) * b) % p);
    b = static_cast<long long>((static_cast<__int128>(b) * b) % p);
    e >>= 1;
  }
  return r;
}

} // namespace

const char *to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::InvalidInput: return "InvalidInput";
  case ErrorKind::ParseError: return "ParseError";
  case ErrorKind::BadPermutation: return "BadPermutation";
  case ErrorKind::CapExceeded: return "CapExceeded";
  case ErrorKind::NotSubgroup: return "NotSubgroup";
  case ErrorKind::DimensionMismatch: return "DimensionMismatch";
  case ErrorKind::NotAlgebraMap: return "NotAlgebraMap";
  case ErrorKind::NotBimodule: return "NotBimodule";
  case ErrorKind::NotBimoduleMap: return "NotBimoduleMap";
  case ErrorKind::TowerNotDegenerate: return "TowerNotDegenerate";
  case ErrorKind::ConditionFails: return "ConditionFails";
  case ErrorKind::VerificationFailed: return "VerificationFailed";
  case ErrorKind::OracleInapplicable: return "OracleInapplicable";
  case ErrorKind::IdentificationFailure: return "IdentificationFailure";
  case ErrorKind::NotRD3: return "NotRD3";
  case ErrorKind::NotLeftD2: return "NotLeftD2";
  case ErrorKind::NotRightD2: return "NotRightD2";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) {
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

// ---------------------------------------------------------------- Scalar

Scalar Scalar::rational(long long num, long long den) {
  if (den == 0)
    throw Error(ErrorKind::InvalidInput, "zero denominator");
  return from_parts(num, den);
}

Scalar Scalar::rational(const mpq_class &q) { return from_big(q); }

Scalar Scalar::modular(long long v, std::uint32_t p) {
  Scalar s;
  s.num_ = mod_reduce(v, p);
  s.mod_ = p;
  return s;
}

Scalar Scalar::from_parts(__int128 num, __int128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num == 0)
    den = 1;
  if (num >= kMin && num <= kMax && den <= kMax) {
    Scalar s;
    s.num_ = static_cast<long long>(num);
    s.den_ = static_cast<long long>(den);
    return s;
  }
  mpq_class q(to_mpz(num), to_mpz(den));
  q.canonicalize();
  return from_big(std::move(q));
}

Scalar Scalar::from_big(mpq_class q) {
  q.canonicalize();
  const mpz_class &n = q.get_num();
  const mpz_class &d = q.get_den();
  if (n.fits_slong_p() && d.fits_slong_p() && n.get_si() != std::numeric_limits<long>::min()) {
    Scalar s;
    s.num_ = n.get_si();
    s.den_ = d.get_si();
    return s;
  }
  Scalar s;
  s.num_ = 0;
  s.den_ = 1;
  s.big_ = std::make_shared<const mpq_class>(std::move(q));
  return s;
}

mpq_class Scalar::to_mpq() const {
  if (big_)
    return *big_;
  mpq_class q(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
  q.canonicalize();
  return q;
}

long long Scalar::residue() const {
  if (mod_ != 0)
    return num_;
  if (big_ || den_ != 1)
    throw Error(ErrorKind::InvalidInput, "residue of a non-integral rational");
  return num_;
}

std::string Scalar::to_string() const {
  if (mod_ != 0)
    return std::to_string(num_);
  if (big_)
    return big_->get_num().get_str() + "/" + big_->get_den().get_str();
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Scalar Scalar::to_field(std::uint32_t p) const {
  if (mod_ == p)
    return *this;
  if (mod_ != 0)
    throw Error(ErrorKind::InvalidInput, "mixing scalars of different prime fields");
  long long n, d;
  if (big_) {
    mpz_class nn = big_->get_num() % p;
    mpz_class dd = big_->get_den() % p;
    n = nn.get_si();
    d = dd.get_si();
  } else {
    n = num_ % static_cast<long long>(p);
    d = den_ % static_cast<long long>(p);
  }
  if (mod_reduce(d, p) == 0)
    throw Error(ErrorKind::InvalidInput, "denominator divisible by the field characteristic");
  long long inv = mod_pow(d, p - 2, p);
  return modular(static_cast<long long>((static_cast<__int128>(mod_reduce(n, p)) * inv) % p), p);
}

Scalar Scalar::operator-() const {
  if (mod_ != 0)
    return modular(-num_, mod_);
  if (big_)
    return from_big(-*big_);
  return from_parts(-static_cast<__int128>(num_), den_);
}

Scalar operator+(const Scalar &a, const Scalar &b) {
  if (a.mod_ != 0 || b.mod_ != 0) {
    std::uint32_t p = a.mod_ != 0 ? a.mod_ : b.mod_;
    Scalar x = a.to_field(p), y = b.to_field(p);
    long long r = x.num_ + y.num_;
    return Scalar::modular(r >= p ? r - p : r, p);
  }
  if (!a.big_ && !b.big_) {
    if (a.den_ == 1 && b.den_ == 1) {
      long long r;
      if (!__builtin_add_overflow(a.num_, b.num_, &r) && r != std::numeric_limits<long long>::min()) {
        Scalar s;
        s.num_ = r;
        return s;
      }
    }
    __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
    __int128 d = static_cast<__int128>(a.den_) * b.den_;
    if (a.den_ == b.den_)
      d = a.den_, n = static_cast<__int128>(a.num_) + b.num_;
    return Scalar::from_parts(n, d);
  }
  return Scalar::from_big(a.to_mpq() + b.to_mpq());
}

Scalar operator-(const Scalar &a, const Scalar &b) { return a + (-b); }

Scalar operator*(const Scalar &a, const Scalar &b) {
  if (a.mod_ != 0 || b.mod_ != 0) {
    std::uint32_t p = a.mod_ != 0 ? a.mod_ : b.mod_;
    Scalar x = a.to_field(p), y = b.to_field(p);
    return Scalar::modular(static_cast<long long>((static_cast<__int128>(x.num_) * y.num_) % p), p);
  }
  if (!a.big_ && !b.big_) {
    if (a.den_ == 1 && b.den_ == 1) {
      long long r;
      if (!__builtin_mul_overflow(a.num_, b.num_, &r) && r != std::numeric_limits<long long>::min()) {
        Scalar s;
        s.num_ = r;
        return s;
      }
    }
    return Scalar::from_parts(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
  }
  return Scalar::from_big(a.to_mpq() * b.to_mpq());
}

Scalar Scalar::inverse() const {
  if (is_zero())
    throw Error(ErrorKind::InvalidInput, "division by zero");
  if (mod_ != 0)
    return modular(mod_pow(num_, mod_ - 2, mod_), mod_);
  if (big_)
    return from_big(1 / *big_);
  return from_parts(den_, num_);
}

Scalar operator/(const Scalar &a, const Scalar &b) {
  if (a.mod_ == 0 && b.mod_ != 0)
    return a.to_field(b.mod_) * b.inverse();
  return a * b.inverse();
}

bool operator==(const Scalar &a, const Scalar &b) {
  if (a.mod_ != b.mod_) {
    std::uint32_t p = a.mod_ != 0 ? a.mod_ : b.mod_;
    if (a.mod_ != 0 && b.mod_ != 0)
      return false;
    return a.to_field(p).num_ == b.to_field(p).num_;
  }
  if (a.big_ || b.big_) {
    if (a.big_ && b.big_)
      return *a.big_ == *b.big_;
    return false;
  }
  return a.num_ == b.num_ && a.den_ == b.den_;
}

// ---------------------------------------------------------------- Field

Field Field::prime(std::uint32_t p) {
  if (p >= (1u << 31) || !is_prime(p))
    throw Error(ErrorKind::InvalidInput, "field modulus " + std::to_string(p) + " is not a prime below 2^31");
  return Field(Kind::Prime, p);
}

Scalar Field::from_int(long long v) const {
  return kind_ == Kind::Prime ? Scalar::modular(v, p_) : Scalar(v);
}

Scalar Field::from_rational(long long num, long long den) const {
  Scalar q = Scalar::rational(num, den);
  return kind_ == Kind::Prime ? q * one() : q;
}

Scalar Field::parse(const std::string &text) const {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      mpz_class z(text, 10);
      if (kind_ == Kind::Prime) {
        mpz_class r = z % p_;
        return Scalar::modular(r.get_si(), p_);
      }
      return Scalar::rational(mpq_class(z));
    }
    mpq_class q(text, 10);
    if (q.get_den() == 0)
      throw Error(ErrorKind::ParseError, "zero denominator in '" + text + "'");
    Scalar s = Scalar::rational(q);
    return kind_ == Kind::Prime ? s * one() : s;
  } catch (const std::invalid_argument &) {
    throw Error(ErrorKind::ParseError, "not a scalar: '" + text + "'");
  }
}

std::string Field::name() const {
  return kind_ == Kind::Rational ? "Q" : "F" + std::to_string(p_);
}

} // namespace d3
