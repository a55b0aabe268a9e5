#pragma once

// Field descriptors. A Field<S> carries whatever runtime data the scalar type
// needs (the modulus for finite fields) and owns the textual entry grammar:
//
//   Q        "a/b"          (b omitted when 1, b > 0, reduced)
//   Q(i)     "a/b+c/d i"    (canonical output always has both parts: "3+0 i")
//   GF(p)    "k mod p"      (0 <= k < p)
//   GF(p^2)  "a+bw mod p"   (w^2 = omega, the smallest non-residue mod p)

#include "translab/errors.hpp"
#include "translab/scalar.hpp"

#include <cctype>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>

namespace translab {

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline bool is_signed_digits(std::string_view s, bool allow_sign) {
  if (!s.empty() && allow_sign && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

inline std::int64_t parse_int64(std::string_view s) {
  s = trim(s);
  if (!is_signed_digits(s, true) || s.size() > 18)
    throw ParseError("invalid integer '" + std::string(s) + "'");
  return std::stoll(std::string(s));
}

}  // namespace detail

inline Rational parse_rational(std::string_view text) {
  const std::string_view s = detail::trim(text);
  const auto slash = s.find('/');
  const std::string_view num = s.substr(0, slash);
  if (!detail::is_signed_digits(num, true))
    throw ParseError("invalid rational '" + std::string(text) + "'");
  Integer n(std::string(num[0] == '+' ? num.substr(1) : num));
  Integer d(1);
  if (slash != std::string_view::npos) {
    const std::string_view den = s.substr(slash + 1);
    if (!detail::is_signed_digits(den, false))
      throw ParseError("invalid rational '" + std::string(text) + "'");
    d = Integer(std::string(den));
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  }
  return Rational(n, d);
}

inline std::string format_rational(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

template <class S>
class Field;

template <>
class Field<Rational> {
 public:
  using Scalar = Rational;
  static constexpr bool finite = false;

  Rational zero() const { return 0; }
  Rational one() const { return 1; }
  Rational from_int(std::int64_t v) const { return Rational(v); }
  Rational bind(const Rational& x) const { return x; }
  std::string tag() const { return "Q"; }
  std::int64_t characteristic() const { return 0; }
  std::string format(const Rational& x) const { return format_rational(x); }
  Rational parse(std::string_view s) const { return parse_rational(s); }
  bool operator==(const Field&) const = default;
};

template <>
class Field<GaussRational> {
 public:
  using Scalar = GaussRational;
  static constexpr bool finite = false;

  GaussRational zero() const { return 0; }
  GaussRational one() const { return 1; }
  GaussRational i() const { return {0, 1}; }
  GaussRational from_int(std::int64_t v) const { return Rational(v); }
  GaussRational bind(const GaussRational& x) const { return x; }
  std::string tag() const { return "Qi"; }
  std::int64_t characteristic() const { return 0; }

  std::string format(const GaussRational& x) const {
    return format_rational(x.re()) + (x.im() < 0 ? "-" : "+") +
           format_rational(abs(x.im())) + " i";
  }

  GaussRational parse(std::string_view text) const {
    std::string_view s = detail::trim(text);
    if (s.empty() || s.back() != 'i') return parse_rational(s);
    s.remove_suffix(1);
    s = detail::trim(s);
    // The sign separating real and imaginary parts is the last '+'/'-' that is
    // not the leading sign.
    std::size_t split = std::string_view::npos;
    for (std::size_t k = s.size(); k-- > 1;)
      if (s[k] == '+' || s[k] == '-') {
        split = k;
        break;
      }
    if (split == std::string_view::npos)
      throw ParseError("invalid Gaussian rational '" + std::string(text) + "'");
    const Rational re = parse_rational(s.substr(0, split));
    Rational im = parse_rational(s.substr(split + 1));
    if (s[split] == '-') im = -im;
    return {re, im};
  }
  bool operator==(const Field&) const = default;
};

template <>
class Field<PrimeField> {
 public:
  using Scalar = PrimeField;
  static constexpr bool finite = true;

  explicit Field(std::int64_t p) : p_(p) {
    if (!is_prime(p) || p > (std::int64_t{1} << 31))
      throw std::invalid_argument("GF(p) needs a prime p < 2^31, got " + std::to_string(p));
  }

  std::int64_t modulus() const { return p_; }
  std::int64_t order() const { return p_; }
  std::int64_t characteristic() const { return p_; }

  PrimeField zero() const { return {0, p_}; }
  PrimeField one() const { return {1, p_}; }
  PrimeField from_int(std::int64_t v) const { return {v, p_}; }
  PrimeField bind(const PrimeField& x) const { return {x.value(), p_}; }

  /// Elements are indexed 0..q-1 by their canonical representative.
  PrimeField element(std::int64_t index) const { return {index, p_}; }
  std::int64_t index_of(const PrimeField& x) const { return mod_normalize(x.value(), p_); }

  std::string tag() const { return "GF(" + std::to_string(p_) + ")"; }
  std::string format(const PrimeField& x) const {
    return std::to_string(index_of(x)) + " mod " + std::to_string(p_);
  }
  PrimeField parse(std::string_view text) const {
    const std::string_view s = detail::trim(text);
    const auto at = s.find(" mod ");
    if (at == std::string_view::npos)
      throw ParseError("invalid GF(p) entry '" + std::string(text) + "'");
    const std::int64_t k = detail::parse_int64(s.substr(0, at));
    const std::int64_t p = detail::parse_int64(s.substr(at + 5));
    if (p != p_)
      throw ParseError("entry '" + std::string(text) + "' is not over " + tag());
    if (k < 0 || k >= p_) throw ParseError("entry '" + std::string(text) + "' not reduced");
    return {k, p_};
  }
  bool operator==(const Field&) const = default;

 private:
  std::int64_t p_;
};

template <>
class Field<QuadExt> {
 public:
  using Scalar = QuadExt;
  static constexpr bool finite = true;

  explicit Field(std::int64_t p) : p_(p), omega_(smallest_nonresidue(p)) {
    if (p > 46337) throw std::invalid_argument("GF(p^2) needs p^2 < 2^31");
  }

  std::int64_t modulus() const { return p_; }
  std::int64_t omega() const { return omega_; }
  std::int64_t order() const { return p_ * p_; }
  std::int64_t characteristic() const { return p_; }

  QuadExt zero() const { return {0, 0, p_, omega_}; }
  QuadExt one() const { return {1, 0, p_, omega_}; }
  QuadExt w() const { return {0, 1, p_, omega_}; }
  QuadExt from_int(std::int64_t v) const { return {v, 0, p_, omega_}; }
  QuadExt make(std::int64_t a, std::int64_t b) const { return {a, b, p_, omega_}; }
  QuadExt bind(const QuadExt& x) const { return {x.a(), x.b(), p_, omega_}; }

  /// index = a + b*p.
  QuadExt element(std::int64_t index) const { return {index % p_, index / p_, p_, omega_}; }
  std::int64_t index_of(const QuadExt& x) const {
    return mod_normalize(x.a(), p_) + mod_normalize(x.b(), p_) * p_;
  }

  std::string tag() const { return "GF(" + std::to_string(p_) + "^2)"; }
  std::string format(const QuadExt& x) const {
    return std::to_string(mod_normalize(x.a(), p_)) + "+" + std::to_string(mod_normalize(x.b(), p_)) +
           "w mod " + std::to_string(p_);
  }
  QuadExt parse(std::string_view text) const {
    const std::string_view s = detail::trim(text);
    const auto at = s.find(" mod ");
    if (at == std::string_view::npos)
      throw ParseError("invalid GF(p^2) entry '" + std::string(text) + "'");
    if (detail::parse_int64(s.substr(at + 5)) != p_)
      throw ParseError("entry '" + std::string(text) + "' is not over " + tag());
    std::string_view body = detail::trim(s.substr(0, at));
    std::int64_t a = 0, b = 0;
    if (!body.empty() && body.back() == 'w') {
      body.remove_suffix(1);
      const auto plus = body.find('+');
      if (plus == std::string_view::npos)
        throw ParseError("invalid GF(p^2) entry '" + std::string(text) + "'");
      a = detail::parse_int64(body.substr(0, plus));
      b = detail::parse_int64(body.substr(plus + 1));
    } else {
      a = detail::parse_int64(body);
    }
    if (a < 0 || a >= p_ || b < 0 || b >= p_)
      throw ParseError("entry '" + std::string(text) + "' not reduced");
    return make(a, b);
  }
  bool operator==(const Field&) const = default;

 private:
  std::int64_t p_;
  std::int64_t omega_;
};

template <class S>
inline bool is_zero(const S& x) {
  return x == S(0);
}

}  // namespace translab
