#pragma once

// Dense univariate polynomials over an exact field: just enough algebra for
// pencil gcds and characteristic polynomials.

#include "translab/field.hpp"
#include "translab/linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace translab {

template <class S>
class Poly {
 public:
  Poly() = default;
  /// Coefficients from low to high degree.
  explicit Poly(std::vector<S> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly constant(const S& c) { return Poly(std::vector<S>{c}); }
  static Poly monomial(const S& c, std::size_t degree) {
    std::vector<S> v(degree + 1, c - c);
    v[degree] = c;
    return Poly(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<S>& coeffs() const { return c_; }
  const S& operator[](std::size_t i) const { return c_[i]; }
  const S& leading() const { return c_.back(); }

  S operator()(const S& x) const {
    if (c_.empty()) return S(0);
    S acc = c_.back();
    for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<S> out(std::max(a.c_.size(), b.c_.size()), S(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] = out[i] + a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] = out[i] + b.c_[i];
    return Poly(std::move(out));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + b.scaled(S(-1)); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<S> out(a.c_.size() + b.c_.size() - 1, S(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] = out[i + j] + a.c_[i] * b.c_[j];
    return Poly(std::move(out));
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  Poly scaled(const S& s) const {
    std::vector<S> out = c_;
    for (auto& x : out) x = x * s;
    return Poly(std::move(out));
  }

  Poly monic() const { return is_zero() ? *this : scaled(S(1) / leading()); }

  Poly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<S> out(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * S(static_cast<int>(i));
    return Poly(std::move(out));
  }

  /// Euclidean division: returns (quotient, remainder).
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    Poly rem = *this;
    if (degree() < d.degree()) return {Poly{}, rem};
    std::vector<S> q(static_cast<std::size_t>(degree() - d.degree() + 1), S(0));
    const S inv = S(1) / d.leading();
    while (!rem.is_zero() && rem.degree() >= d.degree()) {
      const std::size_t shift = static_cast<std::size_t>(rem.degree() - d.degree());
      const S factor = rem.leading() * inv;
      q[shift] = factor;
      rem = rem - monomial(factor, shift) * d;
    }
    return {Poly(std::move(q)), rem};
  }

  friend Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
      Poly r = a.divmod(b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  /// Lagrange interpolation through (xs[i], ys[i]) with distinct xs.
  static Poly interpolate(const std::vector<S>& xs, const std::vector<S>& ys) {
    Poly result;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      Poly basis = constant(S(1));
      S denom(1);
      for (std::size_t j = 0; j < xs.size(); ++j) {
        if (j == i) continue;
        basis = basis * Poly(std::vector<S>{-xs[j], S(1)});
        denom = denom * (xs[i] - xs[j]);
      }
      result = result + basis.scaled(ys[i] / denom);
    }
    return result;
  }

  template <class F>
  std::string to_string(const F& field, const std::string& var = "t") const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (translab::is_zero(c_[i])) continue;
      if (!out.empty()) out += " + ";
      out += "(" + field.format(c_[i]) + ")";
      if (i >= 1) out += "*" + var;
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && translab::is_zero(c_.back())) c_.pop_back();
  }
  std::vector<S> c_;
};

/// det(t I - a), obtained by evaluating at n + 1 integer points and interpolating.
template <class S>
Poly<S> characteristic_polynomial(const Mat<S>& a) {
  if (a.rows() != a.cols()) throw ShapeMismatch("characteristic polynomial of non-square matrix");
  const Index n = a.rows();
  std::vector<S> xs, ys;
  for (Index t = 0; t <= n; ++t) {
    const S st(static_cast<int>(t));
    Mat<S> m = -a;
    for (Index i = 0; i < n; ++i) m(i, i) = m(i, i) + st;
    xs.push_back(st);
    ys.push_back(determinant(m));
  }
  return Poly<S>::interpolate(xs, ys);
}

namespace detail {

inline std::vector<Integer> positive_divisors(Integer v) {
  if (v < 0) v = -v;
  std::vector<Integer> small, large;
  for (Integer d = 1; d * d <= v; ++d) {
    if (v % d != 0) continue;
    small.push_back(d);
    if (d * d != v) large.push_back(v / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace detail

/// Distinct rational roots by the rational root theorem, ordered by
/// increasing numerator magnitude, then denominator, positive before negative.
inline std::vector<Rational> rational_roots(const Poly<Rational>& p) {
  std::vector<Rational> roots;
  if (p.degree() <= 0) return roots;
  Poly<Rational> q = p;
  if (is_zero(q[0])) roots.push_back(0);
  // Strip factors of t, then clear denominators.
  std::size_t low = 0;
  while (is_zero(q[low])) ++low;
  std::vector<Rational> cs(q.coeffs().begin() + static_cast<std::ptrdiff_t>(low), q.coeffs().end());
  Integer lcm_den = 1;
  for (const auto& c : cs) lcm_den = boost::multiprecision::lcm(lcm_den, denominator(c));
  std::vector<Integer> ints;
  for (const auto& c : cs) ints.push_back(numerator(c * Rational(lcm_den)));
  if (ints.size() <= 1) return roots;
  const auto nums = detail::positive_divisors(ints.front());
  const auto dens = detail::positive_divisors(ints.back());
  const Poly<Rational> reduced{std::vector<Rational>(cs)};
  std::vector<Rational> found;
  for (const auto& n : nums)
    for (const auto& d : dens)
      for (int sign : {1, -1}) {
        const Rational r = Rational(n * sign, d);
        if (std::find(found.begin(), found.end(), r) != found.end()) continue;
        if (is_zero(reduced(r))) found.push_back(r);
      }
  roots.insert(roots.end(), found.begin(), found.end());
  return roots;
}

}  // namespace translab
