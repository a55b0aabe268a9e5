#pragma once

// Linear subspaces of Mat(m, n) with canonical coordinates.
//
// A subspace is stored as the RREF of the (dim x m*n) matrix whose rows are
// the row-major vectorizations of a basis. Two equal subspaces therefore have
// identical coordinate matrices, and equality is entrywise comparison.
//
// Duality uses the bilinear pairing <A, T> = Tr(A T) for A in Mat(m, n) and
// T in Mat(n, m), so the pre-annihilator of L in Mat(m, n) lives in Mat(n, m).
// Worked 2x2 example: for L = span{E_12} in Mat(2, 2), Tr(E_12 T) = T_21, so
// L_perp = {T : T_21 = 0} = span{E_11, E_12, E_22}.

#include "translab/errors.hpp"
#include "translab/field.hpp"
#include "translab/linalg.hpp"

#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace translab {

template <class S>
class MatrixSubspace {
 public:
  /// Canonicalizes the span of the rows of `coords` (each a vectorized matrix).
  MatrixSubspace(Index rows, Index cols, Field<S> field, const Mat<S>& coords)
      : rows_(rows), cols_(cols), field_(std::move(field)) {
    if (rows <= 0 || cols <= 0) throw ShapeMismatch("subspace ambient must be non-empty");
    if (coords.cols() != rows * cols)
      throw ShapeMismatch("coordinate matrix width does not match ambient shape");
    Rref<S> r = rref(bind(field_, coords));
    pivots_ = std::move(r.pivots);
    coords_ = r.matrix.topRows(static_cast<Index>(pivots_.size()));
  }

  static MatrixSubspace zero(Index rows, Index cols, const Field<S>& field) {
    return MatrixSubspace(rows, cols, field, Mat<S>(0, rows * cols));
  }

  static MatrixSubspace full(Index rows, Index cols, const Field<S>& field) {
    return MatrixSubspace(rows, cols, field, identity(field, rows * cols));
  }

  /// Span of generators sharing one shape. An empty list needs the shape.
  static MatrixSubspace from_generators(Index rows, Index cols, const Field<S>& field,
                                        std::span<const Mat<S>> gens) {
    Mat<S> coords(static_cast<Index>(gens.size()), rows * cols);
    for (std::size_t g = 0; g < gens.size(); ++g) {
      if (gens[g].rows() != rows || gens[g].cols() != cols)
        throw ShapeMismatch("generator " + std::to_string(g) + " has the wrong shape");
      coords.row(static_cast<Index>(g)) = vec(gens[g]).transpose();
    }
    return MatrixSubspace(rows, cols, field, coords);
  }

  static MatrixSubspace from_generators(const Field<S>& field, std::span<const Mat<S>> gens) {
    if (gens.empty()) throw ShapeMismatch("empty generator list with no ambient shape");
    return from_generators(gens[0].rows(), gens[0].cols(), field, gens);
  }

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  Index ambient_dim() const { return rows_ * cols_; }
  Index dim() const { return coords_.rows(); }
  const Field<S>& field() const { return field_; }
  const Mat<S>& coords() const { return coords_; }
  const std::vector<Index>& pivots() const { return pivots_; }
  bool is_full() const { return dim() == ambient_dim(); }
  bool is_zero() const { return dim() == 0; }

  Mat<S> basis(Index i) const { return unvec<S>(coords_.row(i).transpose(), rows_, cols_); }

  std::vector<Mat<S>> basis() const {
    std::vector<Mat<S>> out;
    for (Index i = 0; i < dim(); ++i) out.push_back(basis(i));
    return out;
  }

  /// Sum of coeffs[i] * basis(i).
  Mat<S> element(const Vec<S>& coeffs) const {
    if (coeffs.size() != dim()) throw ShapeMismatch("element: wrong number of coefficients");
    Vec<S> v = Vec<S>::Constant(ambient_dim(), field_.zero());
    for (Index i = 0; i < dim(); ++i)
      if (!translab::is_zero(coeffs(i))) v += coeffs(i) * coeffs_row(i);
    return unvec<S>(v, rows_, cols_);
  }

  /// Coordinates of `a` in the canonical basis, or nullopt if a is not in the space.
  std::optional<Vec<S>> coordinates_of(const Mat<S>& a) const {
    check_shape(a);
    Vec<S> v = bind(field_, Mat<S>(vec(a)));
    Vec<S> c(dim());
    for (Index i = 0; i < dim(); ++i) {
      c(i) = v(pivots_[static_cast<std::size_t>(i)]);
      if (!translab::is_zero(c(i))) v -= c(i) * coeffs_row(i);
    }
    for (Index j = 0; j < v.size(); ++j)
      if (!translab::is_zero(v(j))) return std::nullopt;
    return c;
  }

  bool contains(const Mat<S>& a) const { return coordinates_of(a).has_value(); }

  friend bool operator==(const MatrixSubspace& a, const MatrixSubspace& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ &&
           a.coords_.rows() == b.coords_.rows() && a.coords_ == b.coords_;
  }
  friend bool operator!=(const MatrixSubspace& a, const MatrixSubspace& b) { return !(a == b); }

  void check_shape(const Mat<S>& a) const {
    if (a.rows() != rows_ || a.cols() != cols_)
      throw ShapeMismatch("matrix shape does not match subspace ambient");
  }

 private:
  Vec<S> coeffs_row(Index i) const { return coords_.row(i).transpose(); }

  Index rows_;
  Index cols_;
  Field<S> field_;
  Mat<S> coords_;
  std::vector<Index> pivots_;
};

namespace detail {

template <class S>
void check_same(const MatrixSubspace<S>& a, const MatrixSubspace<S>& b, const char* op) {
  if (!(a.field() == b.field())) throw FieldMismatch(std::string(op) + ": fields differ");
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeMismatch(std::string(op) + ": ambient shapes differ");
}

template <class S>
MatrixSubspace<S> map_basis(const MatrixSubspace<S>& l, Index rows, Index cols, auto&& fn) {
  std::vector<Mat<S>> gens;
  for (Index i = 0; i < l.dim(); ++i) gens.push_back(fn(l.basis(i)));
  return MatrixSubspace<S>::from_generators(rows, cols, l.field(), gens);
}

}  // namespace detail

/// {T in Mat(n, m) : Tr(A T) = 0 for all A in L}. Tr(A T) = sum_ij A_ij T_ji,
/// so the pairing row of a basis element A is vec(A^T) in T's coordinates.
template <class S>
MatrixSubspace<S> preannihilator(const MatrixSubspace<S>& l) {
  Mat<S> pairing(l.dim(), l.ambient_dim());
  for (Index r = 0; r < l.dim(); ++r)
    pairing.row(r) = vec(Mat<S>(l.basis(r).transpose())).transpose();
  Mat<S> ker = pairing.rows() ? kernel(pairing) : identity(l.field(), l.ambient_dim());
  return MatrixSubspace<S>(l.cols(), l.rows(), l.field(), ker.transpose());
}

template <class S>
MatrixSubspace<S> sum(const MatrixSubspace<S>& a, const MatrixSubspace<S>& b) {
  detail::check_same(a, b, "sum");
  Mat<S> stacked(a.dim() + b.dim(), a.ambient_dim());
  stacked << a.coords(), b.coords();
  return MatrixSubspace<S>(a.rows(), a.cols(), a.field(), stacked);
}

/// Vectors x = sum a_i l_i = sum b_j m_j: kernel of [L^T | -M^T].
template <class S>
MatrixSubspace<S> intersect(const MatrixSubspace<S>& a, const MatrixSubspace<S>& b) {
  detail::check_same(a, b, "intersect");
  if (a.dim() == 0 || b.dim() == 0) return MatrixSubspace<S>::zero(a.rows(), a.cols(), a.field());
  Mat<S> sys(a.ambient_dim(), a.dim() + b.dim());
  sys << a.coords().transpose(), Mat<S>(-b.coords().transpose());
  const Mat<S> ker = kernel(sys);
  Mat<S> gens(ker.cols(), a.ambient_dim());
  for (Index c = 0; c < ker.cols(); ++c)
    gens.row(c) = (ker.col(c).head(a.dim()).transpose() * a.coords());
  return MatrixSubspace<S>(a.rows(), a.cols(), a.field(), gens);
}

/// Span of Kronecker products of basis pairs.
template <class S>
MatrixSubspace<S> tensor(const MatrixSubspace<S>& l, const MatrixSubspace<S>& m) {
  if (!(l.field() == m.field())) throw FieldMismatch("tensor: fields differ");
  const Index rows = l.rows() * m.rows(), cols = l.cols() * m.cols();
  Mat<S> coords(l.dim() * m.dim(), rows * cols);
  Index r = 0;
  for (Index i = 0; i < l.dim(); ++i) {
    const Mat<S> a = l.basis(i);
    for (Index j = 0; j < m.dim(); ++j) coords.row(r++) = vec(kron(a, m.basis(j))).transpose();
  }
  return MatrixSubspace<S>(rows, cols, l.field(), coords);
}

/// span{A B : A in L1, B in L2}. Bilinearity of the product means basis
/// products already span every product of elements.
template <class S>
MatrixSubspace<S> product_span(const MatrixSubspace<S>& l1, const MatrixSubspace<S>& l2) {
  if (!(l1.field() == l2.field())) throw FieldMismatch("product_span: fields differ");
  if (l1.cols() != l2.rows()) throw ShapeMismatch("product_span: inner dimensions differ");
  Mat<S> coords(l1.dim() * l2.dim(), l1.rows() * l2.cols());
  Index r = 0;
  for (Index i = 0; i < l1.dim(); ++i) {
    const Mat<S> a = l1.basis(i);
    for (Index j = 0; j < l2.dim(); ++j) coords.row(r++) = vec(Mat<S>(a * l2.basis(j))).transpose();
  }
  return MatrixSubspace<S>(l1.rows(), l2.cols(), l1.field(), coords);
}

/// Least r <= max_r with span(L + L^2 + ... + L^r) = Mat(n, n).
template <class S>
std::optional<int> power_span_index(const MatrixSubspace<S>& l, int max_r) {
  if (l.rows() != l.cols()) throw ShapeMismatch("power_span_index needs a square ambient");
  MatrixSubspace<S> power = l;
  MatrixSubspace<S> acc = l;
  for (int r = 1; r <= max_r; ++r) {
    if (r > 1) {
      power = product_span(power, l);
      acc = sum(acc, power);
    }
    if (acc.is_full()) return r;
  }
  return std::nullopt;
}

/// span{S A T : A in L} for invertible S, T.
template <class S>
MatrixSubspace<S> equivalence_transform(const Mat<S>& s, const MatrixSubspace<S>& l, const Mat<S>& t) {
  if (s.cols() != l.rows() || t.rows() != l.cols())
    throw ShapeMismatch("equivalence_transform: incompatible shapes");
  if (!is_invertible(s) || !is_invertible(t))
    throw SingularTransform("equivalence_transform needs invertible S and T");
  return detail::map_basis(l, s.rows(), t.cols(), [&](const Mat<S>& a) { return Mat<S>(s * a * t); });
}

/// Columns of `a` at its RREF pivot positions: a basis of the column space.
template <class S>
Mat<S> column_space_basis(const Mat<S>& a) {
  const auto piv = rref(a).pivots;
  Mat<S> out(a.rows(), static_cast<Index>(piv.size()));
  for (std::size_t k = 0; k < piv.size(); ++k) out.col(static_cast<Index>(k)) = a.col(piv[k]);
  return out;
}

/// The compression {Q A P}, written as operators range(P) -> range(Q) in the
/// column-space bases of P and Q. Ambient shape is rank(Q) x rank(P).
template <class S>
MatrixSubspace<S> compress(const Mat<S>& q, const MatrixSubspace<S>& l, const Mat<S>& p) {
  if (q.rows() != l.rows() || q.cols() != l.rows() || p.rows() != l.cols() || p.cols() != l.cols())
    throw ShapeMismatch("compress: idempotents do not match the ambient");
  if (Mat<S>(q * q) != q || Mat<S>(p * p) != p) throw NotIdempotent("compress needs Q^2 = Q and P^2 = P");
  const Mat<S> bq = column_space_basis(q), bp = column_space_basis(p);
  if (bq.cols() == 0 || bp.cols() == 0)
    throw ShapeMismatch("compress: zero idempotent gives an empty ambient");
  return detail::map_basis(l, bq.cols(), bp.cols(), [&](const Mat<S>& a) {
    const Mat<S> image = q * a * p * bp;
    Mat<S> c(bq.cols(), bp.cols());
    for (Index j = 0; j < bp.cols(); ++j) {
      const auto x = solve(bq, Vec<S>(image.col(j)));
      if (!x) throw std::logic_error("compress: image outside range(Q)");
      c.col(j) = *x;
    }
    return c;
  });
}

template <class S>
MatrixSubspace<S> transpose_space(const MatrixSubspace<S>& l) {
  return detail::map_basis(l, l.cols(), l.rows(), [](const Mat<S>& a) { return Mat<S>(a.transpose()); });
}

template <class S>
MatrixSubspace<S> adjoint_space(const MatrixSubspace<S>& l) {
  return detail::map_basis(l, l.cols(), l.rows(), [](const Mat<S>& a) { return conj_transpose(a); });
}

/// span{E_ij : (i, j) in support}.
template <class S>
MatrixSubspace<S> pattern_subspace(Index rows, Index cols, const Field<S>& field,
                                   const std::set<std::pair<Index, Index>>& support) {
  std::vector<Mat<S>> gens;
  for (const auto& [i, j] : support) {
    if (i < 0 || j < 0 || i >= rows || j >= cols) throw ShapeMismatch("pattern index out of range");
    gens.push_back(matrix_unit(field, rows, cols, i, j));
  }
  return MatrixSubspace<S>::from_generators(rows, cols, field, gens);
}

/// Positions where some element of L is nonzero.
template <class S>
std::set<std::pair<Index, Index>> support(const MatrixSubspace<S>& l) {
  std::set<std::pair<Index, Index>> out;
  for (Index r = 0; r < l.dim(); ++r)
    for (Index k = 0; k < l.ambient_dim(); ++k)
      if (!is_zero(l.coords()(r, k))) out.emplace(k / l.cols(), k % l.cols());
  return out;
}

/// Smallest pattern space containing L (the bimodule it generates over the
/// diagonal algebras on both sides).
template <class S>
MatrixSubspace<S> diagonal_bimodule_closure(const MatrixSubspace<S>& l) {
  if (l.rows() != l.cols()) throw ShapeMismatch("diagonal_bimodule_closure needs a square ambient");
  return pattern_subspace(l.rows(), l.cols(), l.field(), support(l));
}

/// Image of L under the expectation onto the diagonal (off-diagonal entries zeroed).
template <class S>
MatrixSubspace<S> diagonal_expectation(const MatrixSubspace<S>& l) {
  if (l.rows() != l.cols()) throw ShapeMismatch("diagonal_expectation needs a square ambient");
  return detail::map_basis(l, l.rows(), l.cols(), [&](const Mat<S>& a) {
    Mat<S> d = zeros(l.field(), a.rows(), a.cols());
    for (Index i = 0; i < a.rows(); ++i) d(i, i) = a(i, i);
    return d;
  });
}

/// Restriction A |-> A X of L to the column space of X, as a subspace of Mat(m, k).
template <class S>
MatrixSubspace<S> restrict_to(const MatrixSubspace<S>& l, const Mat<S>& x) {
  if (x.rows() != l.cols()) throw ShapeMismatch("restrict_to: X has the wrong number of rows");
  return detail::map_basis(l, l.rows(), x.cols(), [&](const Mat<S>& a) { return Mat<S>(a * x); });
}

}  // namespace translab
