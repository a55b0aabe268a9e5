#pragma once

// Dense exact linear algebra over any of the supported fields. All routines
// are plain Gaussian elimination with exact arithmetic; pivoting is canonical
// (leftmost pivot column, first nonzero row at or below the current row) so
// every result is a deterministic function of the input.

#include "translab/errors.hpp"
#include "translab/field.hpp"
#include "translab/scalar.hpp"

#include <Eigen/Core>

#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

namespace translab {

using Index = Eigen::Index;

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <class S>
Mat<S> zeros(const Field<S>& f, Index rows, Index cols) {
  return Mat<S>::Constant(rows, cols, f.zero());
}

template <class S>
Mat<S> identity(const Field<S>& f, Index n) {
  Mat<S> m = zeros(f, n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = f.one();
  return m;
}

/// E_ij: the matrix unit with a single one at (i, j).
template <class S>
Mat<S> matrix_unit(const Field<S>& f, Index rows, Index cols, Index i, Index j) {
  Mat<S> m = zeros(f, rows, cols);
  m(i, j) = f.one();
  return m;
}

/// Row-major integer literal embedded into the field.
template <class S>
Mat<S> from_ints(const Field<S>& f, Index rows, Index cols, std::initializer_list<long long> entries) {
  if (static_cast<Index>(entries.size()) != rows * cols)
    throw ShapeMismatch("from_ints: entry count does not match shape");
  Mat<S> m(rows, cols);
  auto it = entries.begin();
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = f.from_int(*it++);
  return m;
}

/// Replaces unbound entries (created by Eigen through Scalar(0)) by field values.
template <class S>
Mat<S> bind(const Field<S>& f, const Mat<S>& a) {
  return a.unaryExpr([&](const S& x) { return f.bind(x); });
}

/// Zero and one carrying the same runtime field data as the entries of `a`.
template <class S>
S zero_like(const Mat<S>& a) {
  return a.size() ? S(a(0, 0) - a(0, 0)) : S(0);
}

template <class S>
S one_like(const Mat<S>& a) {
  return zero_like(a) + S(1);
}

template <class S>
bool is_zero_matrix(const Mat<S>& a) {
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (!is_zero(a(i, j))) return false;
  return true;
}

/// Row-major vectorization: entry (i, j) goes to position i * cols + j.
template <class S>
Vec<S> vec(const Mat<S>& a) {
  Vec<S> v(a.size());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) v(i * a.cols() + j) = a(i, j);
  return v;
}

template <class S, class Derived>
Mat<S> unvec(const Eigen::MatrixBase<Derived>& v, Index rows, Index cols) {
  if (v.size() != rows * cols) throw ShapeMismatch("unvec: size does not match shape");
  Mat<S> a(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) a(i, j) = v(i * cols + j);
  return a;
}

/// Kronecker product with the block convention block(i, j) = a(i, j) * b.
template <class S>
Mat<S> kron(const Mat<S>& a, const Mat<S>& b) {
  Mat<S> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

template <class S>
Mat<S> conj_transpose(const Mat<S>& a) {
  Mat<S> out(a.cols(), a.rows());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out(j, i) = conj(a(i, j));
  return out;
}

template <class S>
struct Rref {
  Mat<S> matrix;
  std::vector<Index> pivots;  // strictly increasing pivot columns
};

/// Reduced row-echelon form. Only the first `ncols_to_reduce` columns are used
/// for pivots (all columns by default); later columns are carried along.
template <class S>
Rref<S> rref(Mat<S> a, Index ncols_to_reduce = -1) {
  if (ncols_to_reduce < 0) ncols_to_reduce = a.cols();
  std::vector<Index> pivots;
  Index row = 0;
  for (Index col = 0; col < ncols_to_reduce && row < a.rows(); ++col) {
    Index sel = row;
    while (sel < a.rows() && is_zero(a(sel, col))) ++sel;
    if (sel == a.rows()) continue;
    if (sel != row) a.row(sel).swap(a.row(row));
    const S inv = S(1) / a(row, col);
    for (Index j = col; j < a.cols(); ++j)
      if (!is_zero(a(row, j))) a(row, j) = a(row, j) * inv;
    for (Index r = 0; r < a.rows(); ++r) {
      if (r == row || is_zero(a(r, col))) continue;
      const S factor = a(r, col);
      for (Index j = col; j < a.cols(); ++j)
        if (!is_zero(a(row, j))) a(r, j) = a(r, j) - factor * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(a), std::move(pivots)};
}

/// Rank by forward elimination (no back substitution).
template <class S>
Index rank(Mat<S> a) {
  Index row = 0;
  for (Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Index sel = row;
    while (sel < a.rows() && is_zero(a(sel, col))) ++sel;
    if (sel == a.rows()) continue;
    if (sel != row) a.row(sel).swap(a.row(row));
    const S inv = S(1) / a(row, col);
    for (Index r = row + 1; r < a.rows(); ++r) {
      if (is_zero(a(r, col))) continue;
      const S factor = a(r, col) * inv;
      for (Index j = col; j < a.cols(); ++j)
        if (!is_zero(a(row, j))) a(r, j) = a(r, j) - factor * a(row, j);
    }
    ++row;
  }
  return row;
}

/// Basis of the right null space, one basis vector per column. Free variables
/// are visited in increasing order; each basis vector sets one free variable
/// to one and the others to zero.
template <class S>
Mat<S> kernel(const Mat<S>& a) {
  const Rref<S> r = rref(a);
  const Index n = a.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Index p : r.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  Mat<S> basis(n, n - static_cast<Index>(r.pivots.size()));
  const S zero = zero_like(a), one = one_like(a);
  Index out = 0;
  for (Index f = 0; f < n; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    for (Index i = 0; i < n; ++i) basis(i, out) = zero;
    basis(f, out) = one;
    for (std::size_t k = 0; k < r.pivots.size(); ++k)
      basis(r.pivots[k], out) = -r.matrix(static_cast<Index>(k), f);
    ++out;
  }
  return basis;
}

/// Some solution of a x = b (free variables zero), or nullopt when inconsistent.
template <class S>
std::optional<Vec<S>> solve(const Mat<S>& a, const Vec<S>& b) {
  if (b.size() != a.rows()) throw ShapeMismatch("solve: right-hand side has wrong length");
  Mat<S> aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  const Rref<S> r = rref(aug, a.cols());
  for (Index i = static_cast<Index>(r.pivots.size()); i < r.matrix.rows(); ++i)
    if (!is_zero(r.matrix(i, a.cols()))) return std::nullopt;
  Vec<S> x = Vec<S>::Constant(a.cols(), zero_like(a));
  for (std::size_t k = 0; k < r.pivots.size(); ++k)
    x(r.pivots[k]) = r.matrix(static_cast<Index>(k), a.cols());
  return x;
}

template <class S>
S determinant(Mat<S> a) {
  if (a.rows() != a.cols()) throw ShapeMismatch("determinant of a non-square matrix");
  S det = one_like(a);
  const Index n = a.rows();
  for (Index col = 0; col < n; ++col) {
    Index sel = col;
    while (sel < n && is_zero(a(sel, col))) ++sel;
    if (sel == n) return zero_like(a);
    if (sel != col) {
      a.row(sel).swap(a.row(col));
      det = -det;
    }
    det = det * a(col, col);
    const S inv = S(1) / a(col, col);
    for (Index r = col + 1; r < n; ++r) {
      if (is_zero(a(r, col))) continue;
      const S factor = a(r, col) * inv;
      for (Index j = col; j < n; ++j) a(r, j) = a(r, j) - factor * a(col, j);
    }
  }
  return det;
}

template <class S>
bool is_invertible(const Mat<S>& a) {
  return a.rows() == a.cols() && rank(a) == a.rows();
}

// ---------------------------------------------------------------------------
// Reduction of rational data modulo a prime.

inline std::int64_t reduce_scalar(const Rational& x, std::int64_t p) {
  const Integer pp(p);
  const Integer num = numerator(x) % pp;
  const Integer den = denominator(x) % pp;
  if (den == 0)
    throw BadPrime("denominator of " + format_rational(x) + " divisible by " + std::to_string(p));
  const std::int64_t n = mod_normalize(num.convert_to<std::int64_t>(), p);
  const std::int64_t d = mod_normalize(den.convert_to<std::int64_t>(), p);
  return n * mod_inverse(d, p) % p;
}

inline PrimeField reduce_scalar(const Rational& x, const Field<PrimeField>& f) {
  return f.from_int(reduce_scalar(x, f.modulus()));
}

inline QuadExt reduce_scalar(const Rational& x, const Field<QuadExt>& f) {
  return f.from_int(reduce_scalar(x, f.modulus()));
}

/// i maps to a square root of -1 in GF(p); only exists when -1 is a residue.
inline PrimeField reduce_scalar(const GaussRational& x, const Field<PrimeField>& f) {
  const std::int64_t p = f.modulus();
  const std::int64_t s = mod_sqrt(p - 1, p);
  if (s < 0) throw BadPrime("-1 is not a square mod " + std::to_string(p) + "; use GF(p^2)");
  return f.from_int(reduce_scalar(x.re(), p) + s * reduce_scalar(x.im(), p));
}

/// i maps to t*w with t^2 = -1/omega when -1 is a non-residue, else into GF(p).
inline QuadExt reduce_scalar(const GaussRational& x, const Field<QuadExt>& f) {
  const std::int64_t p = f.modulus();
  const std::int64_t re = reduce_scalar(x.re(), p);
  const std::int64_t im = reduce_scalar(x.im(), p);
  const std::int64_t s = mod_sqrt(p - 1, p);
  if (s >= 0) return f.make(re + s * im, 0);
  const std::int64_t t = mod_sqrt(mod_normalize(-mod_inverse(f.omega(), p), p), p);
  return f.make(re, t * im % p);
}

template <class Src, class Dst>
Mat<Dst> reduce_mod(const Mat<Src>& a, const Field<Dst>& f) {
  Mat<Dst> out(a.rows(), a.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out(i, j) = reduce_scalar(a(i, j), f);
  return out;
}

}  // namespace translab
