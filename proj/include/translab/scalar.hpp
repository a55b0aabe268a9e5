#pragma once

// Exact scalar types. Every type here is a value type with field operations
// (+ - * / and unary -), structural equality after normalization, and an
// Eigen::NumTraits specialization so it can be used as an Eigen scalar.

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Core>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace translab {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

inline bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline std::int64_t mod_normalize(std::int64_t v, std::int64_t p) {
  v %= p;
  return v < 0 ? v + p : v;
}

inline std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t p) {
  std::int64_t r = 1 % p;
  base = mod_normalize(base, p);
  while (exp > 0) {
    if (exp & 1) r = r * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return r;
}

inline std::int64_t mod_inverse(std::int64_t v, std::int64_t p) {
  v = mod_normalize(v, p);
  if (v == 0) throw std::domain_error("division by zero in prime field");
  return mod_pow(v, p - 2, p);
}

/// Smallest positive quadratic non-residue modulo an odd prime.
inline std::int64_t smallest_nonresidue(std::int64_t p) {
  if (p == 2 || !is_prime(p))
    throw std::invalid_argument("quadratic extension needs an odd prime");
  for (std::int64_t x = 2; x < p; ++x)
    if (mod_pow(x, (p - 1) / 2, p) == p - 1) return x;
  throw std::logic_error("no quadratic non-residue found");
}

/// Smallest square root of v modulo an odd prime, or -1 if v is a non-residue.
inline std::int64_t mod_sqrt(std::int64_t v, std::int64_t p) {
  v = mod_normalize(v, p);
  for (std::int64_t x = 0; x < p; ++x)
    if (x * x % p == v) return x;
  return -1;
}

// ---------------------------------------------------------------------------
// Gaussian rationals Q(i)

class GaussRational {
 public:
  GaussRational() = default;
  GaussRational(int v) : re_(v) {}  // NOLINT: Eigen needs implicit Scalar(0)
  GaussRational(Rational re) : re_(std::move(re)) {}  // NOLINT
  GaussRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  friend GaussRational operator+(const GaussRational& a, const GaussRational& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend GaussRational operator-(const GaussRational& a, const GaussRational& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend GaussRational operator/(const GaussRational& a, const GaussRational& b) {
    const Rational n = b.re_ * b.re_ + b.im_ * b.im_;
    if (n == 0) throw std::domain_error("division by zero in Q(i)");
    return {(a.re_ * b.re_ + a.im_ * b.im_) / n, (a.im_ * b.re_ - a.re_ * b.im_) / n};
  }
  GaussRational operator-() const { return {-re_, -im_}; }
  GaussRational& operator+=(const GaussRational& o) { return *this = *this + o; }
  GaussRational& operator-=(const GaussRational& o) { return *this = *this - o; }
  GaussRational& operator*=(const GaussRational& o) { return *this = *this * o; }
  GaussRational& operator/=(const GaussRational& o) { return *this = *this / o; }

  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }

  friend GaussRational conj(const GaussRational& a) { return {a.re_, -a.im_}; }

  friend std::ostream& operator<<(std::ostream& os, const GaussRational& a) {
    return os << a.re_ << (a.im_ < 0 ? "-" : "+") << abs(a.im_) << " i";
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

// ---------------------------------------------------------------------------
// Prime field GF(p)
//
// A value constructed from a plain integer carries modulus 0 ("unbound"); it
// behaves as that integer until combined with a bound value, which binds it.
// Eigen creates such values through Scalar(0) and Scalar(1).

class PrimeField {
 public:
  PrimeField() = default;
  PrimeField(int v) : v_(v) {}  // NOLINT
  PrimeField(std::int64_t v, std::int64_t p) : v_(mod_normalize(v, p)), p_(p) {}

  std::int64_t value() const { return v_; }
  std::int64_t modulus() const { return p_; }
  bool bound() const { return p_ != 0; }

  friend PrimeField operator+(const PrimeField& a, const PrimeField& b) {
    return make(a.v_ + b.v_, join(a, b));
  }
  friend PrimeField operator-(const PrimeField& a, const PrimeField& b) {
    return make(a.v_ - b.v_, join(a, b));
  }
  friend PrimeField operator*(const PrimeField& a, const PrimeField& b) {
    const std::int64_t p = join(a, b);
    if (p == 0) return PrimeField(static_cast<int>(a.v_ * b.v_));
    return {mod_normalize(a.v_, p) * mod_normalize(b.v_, p), p};
  }
  friend PrimeField operator/(const PrimeField& a, const PrimeField& b) {
    const std::int64_t p = join(a, b);
    if (p == 0) throw std::logic_error("division of unbound prime-field values");
    return a * PrimeField(mod_inverse(b.v_, p), p);
  }
  PrimeField operator-() const { return make(-v_, p_); }
  PrimeField& operator+=(const PrimeField& o) { return *this = *this + o; }
  PrimeField& operator-=(const PrimeField& o) { return *this = *this - o; }
  PrimeField& operator*=(const PrimeField& o) { return *this = *this * o; }
  PrimeField& operator/=(const PrimeField& o) { return *this = *this / o; }

  friend bool operator==(const PrimeField& a, const PrimeField& b) {
    const std::int64_t p = join(a, b);
    if (p == 0) return a.v_ == b.v_;
    return mod_normalize(a.v_, p) == mod_normalize(b.v_, p);
  }
  friend bool operator!=(const PrimeField& a, const PrimeField& b) { return !(a == b); }

  friend PrimeField conj(const PrimeField& a) { return a; }

  friend std::ostream& operator<<(std::ostream& os, const PrimeField& a) {
    return os << a.v_ << " mod " << a.p_;
  }

 private:
  static std::int64_t join(const PrimeField& a, const PrimeField& b) {
    if (a.p_ && b.p_ && a.p_ != b.p_) throw std::logic_error("mixed prime-field moduli");
    return a.p_ ? a.p_ : b.p_;
  }
  static PrimeField make(std::int64_t v, std::int64_t p) {
    if (p == 0) return PrimeField(static_cast<int>(v));
    return {v, p};
  }

  std::int64_t v_ = 0;
  std::int64_t p_ = 0;
};

// ---------------------------------------------------------------------------
// Quadratic extension GF(p^2) = GF(p)[w] / (w^2 - omega), omega the smallest
// positive non-residue mod p. Unbound values follow the PrimeField convention.

class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(int v) : a_(v) {}  // NOLINT
  QuadExt(std::int64_t a, std::int64_t b, std::int64_t p, std::int64_t omega)
      : a_(mod_normalize(a, p)), b_(mod_normalize(b, p)), p_(p), omega_(omega) {}

  std::int64_t a() const { return a_; }
  std::int64_t b() const { return b_; }
  std::int64_t modulus() const { return p_; }
  std::int64_t omega() const { return omega_; }
  bool bound() const { return p_ != 0; }

  friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
    const auto [p, w] = join(x, y);
    if (p == 0) return QuadExt(static_cast<int>(x.a_ + y.a_));
    return {x.a_ + y.a_, x.b_ + y.b_, p, w};
  }
  friend QuadExt operator-(const QuadExt& x, const QuadExt& y) {
    const auto [p, w] = join(x, y);
    if (p == 0) return QuadExt(static_cast<int>(x.a_ - y.a_));
    return {x.a_ - y.a_, x.b_ - y.b_, p, w};
  }
  friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
    const auto [p, w] = join(x, y);
    if (p == 0) return QuadExt(static_cast<int>(x.a_ * y.a_));
    const std::int64_t xa = mod_normalize(x.a_, p), ya = mod_normalize(y.a_, p);
    return {(xa * ya + x.b_ * y.b_ % p * w) % p, (xa * y.b_ + x.b_ * ya) % p, p, w};
  }
  friend QuadExt operator/(const QuadExt& x, const QuadExt& y) {
    const auto [p, w] = join(x, y);
    if (p == 0) throw std::logic_error("division of unbound GF(p^2) values");
    const std::int64_t ya = mod_normalize(y.a_, p);
    const std::int64_t norm = mod_normalize(ya * ya - y.b_ * y.b_ % p * w, p);
    const std::int64_t inv = mod_inverse(norm, p);
    return x * QuadExt(ya * inv % p, mod_normalize(-y.b_, p) * inv % p, p, w);
  }
  QuadExt operator-() const {
    if (p_ == 0) return QuadExt(static_cast<int>(-a_));
    return {-a_, -b_, p_, omega_};
  }
  QuadExt& operator+=(const QuadExt& o) { return *this = *this + o; }
  QuadExt& operator-=(const QuadExt& o) { return *this = *this - o; }
  QuadExt& operator*=(const QuadExt& o) { return *this = *this * o; }
  QuadExt& operator/=(const QuadExt& o) { return *this = *this / o; }

  friend bool operator==(const QuadExt& x, const QuadExt& y) {
    const auto [p, w] = join(x, y);
    if (p == 0) return x.a_ == y.a_;
    return mod_normalize(x.a_, p) == mod_normalize(y.a_, p) && x.b_ == y.b_;
  }
  friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }

  // Frobenius x -> x^p plays the role of conjugation.
  friend QuadExt conj(const QuadExt& x) {
    if (x.p_ == 0) return x;
    return {x.a_, -x.b_, x.p_, x.omega_};
  }

  friend std::ostream& operator<<(std::ostream& os, const QuadExt& x) {
    return os << x.a_ << "+" << x.b_ << "w mod " << x.p_;
  }

 private:
  struct Mod {
    std::int64_t p, w;
  };
  static Mod join(const QuadExt& x, const QuadExt& y) {
    if (x.p_ && y.p_ && x.p_ != y.p_) throw std::logic_error("mixed GF(p^2) moduli");
    return x.p_ ? Mod{x.p_, x.omega_} : Mod{y.p_, y.omega_};
  }

  std::int64_t a_ = 0;
  std::int64_t b_ = 0;
  std::int64_t p_ = 0;
  std::int64_t omega_ = 0;
};

inline Rational conj(const Rational& r) { return r; }

}  // namespace translab

namespace Eigen {

template <class S>
struct ExactNumTraits {
  using Real = S;
  using NonInteger = S;
  using Literal = S;
  using Nested = S;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
  static S epsilon() { return S(0); }
  static S dummy_precision() { return S(0); }
  static S highest() { return S(0); }
  static S lowest() { return S(0); }
  static int digits10() { return 0; }
};

template <>
struct NumTraits<translab::GaussRational> : ExactNumTraits<translab::GaussRational> {};
template <>
struct NumTraits<translab::PrimeField> : ExactNumTraits<translab::PrimeField> {};
template <>
struct NumTraits<translab::QuadExt> : ExactNumTraits<translab::QuadExt> {};

}  // namespace Eigen
