#pragma once

// Named constructions. Every constructor is built from integer data, so it
// works verbatim over Q, Q(i) and the finite fields.

#include "translab/errors.hpp"
#include "translab/field.hpp"
#include "translab/linalg.hpp"
#include "translab/polynomial.hpp"
#include "translab/subspace.hpp"

#include <array>
#include <string>
#include <vector>

namespace translab {

template <class S>
MatrixSubspace<S> full_space(const Field<S>& f, Index rows, Index cols) {
  return MatrixSubspace<S>::full(rows, cols, f);
}

template <class S>
MatrixSubspace<S> zero_space(const Field<S>& f, Index rows, Index cols) {
  return MatrixSubspace<S>::zero(rows, cols, f);
}

/// Indicator of the diagonal {(i, j) : j - i = d} in Mat(rows, cols).
template <class S>
Mat<S> diagonal_indicator(const Field<S>& f, Index rows, Index cols, Index d) {
  Mat<S> m = zeros(f, rows, cols);
  for (Index i = 0; i < rows; ++i)
    if (i + d >= 0 && i + d < cols) m(i, i + d) = f.one();
  return m;
}

/// Toeplitz matrices [t_{i-j}] in M_n, basis the 2n-1 diagonal indicators.
template <class S>
MatrixSubspace<S> toeplitz_space(const Field<S>& f, Index n) {
  if (n < 1) throw ParameterOutOfRange("toeplitz_space needs n >= 1");
  std::vector<Mat<S>> gens;
  for (Index d = -(n - 1); d <= n - 1; ++d) gens.push_back(diagonal_indicator(f, n, n, d));
  return MatrixSubspace<S>::from_generators(n, n, f, gens);
}

/// Hankel matrices [h_{i+j}]: Toeplitz with the column order reversed.
template <class S>
MatrixSubspace<S> hankel_space(const Field<S>& f, Index n) {
  if (n < 1) throw ParameterOutOfRange("hankel_space needs n >= 1");
  std::vector<Mat<S>> gens;
  for (Index s = 0; s <= 2 * n - 2; ++s) {
    Mat<S> m = zeros(f, n, n);
    for (Index i = 0; i < n; ++i)
      if (s - i >= 0 && s - i < n) m(i, s - i) = f.one();
    gens.push_back(m);
  }
  return MatrixSubspace<S>::from_generators(n, n, f, gens);
}

template <class S>
MatrixSubspace<S> trace_zero(const Field<S>& f, Index n) {
  if (n < 2) throw ParameterOutOfRange("trace_zero needs n >= 2");
  const std::vector<Mat<S>> id{identity(f, n)};
  return preannihilator(MatrixSubspace<S>::from_generators(n, n, f, id));
}

/// R = E_11 + ... + E_{k+1,k+1} in Mat(n, m).
template <class S>
Mat<S> rank_annihilator_witness(const Field<S>& f, Index m, Index n, Index k) {
  if (k < 1 || k + 1 > std::min(m, n)) throw ParameterOutOfRange("rank_annihilator needs 1 <= k < min(m, n)");
  Mat<S> r = zeros(f, n, m);
  for (Index i = 0; i <= k; ++i) r(i, i) = f.one();
  return r;
}

/// {A in Mat(m, n) : Tr(A R) = 0}: k-transitive but not (k+1)-transitive.
template <class S>
MatrixSubspace<S> rank_annihilator_space(const Field<S>& f, Index m, Index n, Index k) {
  const std::vector<Mat<S>> r{rank_annihilator_witness(f, m, n, k)};
  return preannihilator(MatrixSubspace<S>::from_generators(n, m, f, r));
}

/// span{D_0, ..., D_{p-k-1}} with D_j = diag(1^j, 2^j, ..., p^j).
template <class S>
MatrixSubspace<S> vandermonde_diagonal_space(const Field<S>& f, Index p, Index k) {
  if (p < 1 || k < 0 || k > p) throw ParameterOutOfRange("vandermonde_diagonal_space needs 0 <= k <= p");
  std::vector<Mat<S>> gens;
  for (Index j = 0; j < p - k; ++j) {
    Mat<S> d = zeros(f, p, p);
    for (Index i = 0; i < p; ++i) {
      S v = f.one();
      for (Index e = 0; e < j; ++e) v = v * f.from_int(i + 1);
      d(i, i) = v;
    }
    gens.push_back(d);
  }
  return MatrixSubspace<S>::from_generators(p, p, f, gens);
}

/// Length of the diagonal j - i = d in Mat(rows, cols).
inline Index diagonal_length(Index rows, Index cols, Index d) {
  return d >= 0 ? std::min(rows, cols - d) : std::min(rows + d, cols);
}

/// The space N in Mat(n, m) built diagonal by diagonal (d = j - i from -(n-1)
/// to m-1): diagonals of length p <= k are zero, a diagonal of length p > k
/// carries the first p - k Vandermonde rows (1^e, 2^e, ..., p^e). No nonzero
/// element has rank <= k, and dim N = mn - k(m+n-k).
template <class S>
MatrixSubspace<S> min_rank_diagonal_annihilator(const Field<S>& f, Index m, Index n, Index k) {
  if (k < 1 || k >= std::min(m, n)) throw ParameterOutOfRange("needs 1 <= k < min(m, n)");
  std::vector<Mat<S>> gens;
  for (Index d = -(n - 1); d <= m - 1; ++d) {
    const Index p = diagonal_length(n, m, d);
    for (Index e = 0; e < p - k; ++e) {
      Mat<S> g = zeros(f, n, m);
      for (Index t = 0; t < p; ++t) {
        S v = f.one();
        for (Index r = 0; r < e; ++r) v = v * f.from_int(t + 1);
        const Index i = d >= 0 ? t : t - d;
        g(i, i + d) = v;
      }
      gens.push_back(g);
    }
  }
  return MatrixSubspace<S>::from_generators(n, m, f, gens);
}

/// All ones on the most negative diagonal of length k + 1: an element of N of
/// rank exactly k + 1, so the annihilator of N is not (k+1)-transitive.
template <class S>
Mat<S> min_rank_obstruction(const Field<S>& f, Index m, Index n, Index k) {
  if (k < 1 || k >= std::min(m, n)) throw ParameterOutOfRange("needs 1 <= k < min(m, n)");
  for (Index d = -(n - 1); d <= m - 1; ++d)
    if (diagonal_length(n, m, d) == k + 1) return diagonal_indicator(f, n, m, d);
  throw std::logic_error("no diagonal of length k + 1");
}

/// A k-transitive subspace of Mat(m, n) of the least possible dimension k(m+n-k).
template <class S>
MatrixSubspace<S> minimal_k_transitive(const Field<S>& f, Index m, Index n, Index k) {
  return preannihilator(min_rank_diagonal_annihilator(f, m, n, k));
}

// ---------------------------------------------------------------------------
// Phi(a, b; c, d) = (d, 2c; b, a) and the 8-dimensional block space.

template <class S>
Mat<S> phi(const Mat<S>& x) {
  if (x.rows() != 2 || x.cols() != 2) throw ShapeMismatch("phi acts on 2x2 matrices");
  Mat<S> y(2, 2);
  y << x(1, 1), x(1, 0) + x(1, 0), x(0, 1), x(0, 0);
  return y;
}

/// Matrix of phi on row-major coordinates (a, b, c, d).
template <class S>
Mat<S> phi_table(const Field<S>& f) {
  Mat<S> t = zeros(f, 4, 4);
  for (Index j = 0; j < 4; ++j) t.col(j) = vec(phi(matrix_unit(f, 2, 2, j / 2, j % 2)));
  return t;
}

template <class S>
Mat<S> block2(const Mat<S>& a, const Mat<S>& b, const Mat<S>& c, const Mat<S>& d) {
  Mat<S> m(a.rows() + c.rows(), a.cols() + b.cols());
  m << a, b, c, d;
  return m;
}

/// {[[A, Phi(B)], [B, A]]}: both L and L_perp are transitive.
template <class S>
MatrixSubspace<S> dual_transitive_8dim(const Field<S>& f) {
  const Mat<S> z = zeros(f, 2, 2);
  std::vector<Mat<S>> gens;
  for (Index j = 0; j < 4; ++j) {
    const Mat<S> e = matrix_unit(f, 2, 2, j / 2, j % 2);
    gens.push_back(block2(e, z, z, e));
  }
  for (Index j = 0; j < 4; ++j) {
    const Mat<S> e = matrix_unit(f, 2, 2, j / 2, j % 2);
    gens.push_back(block2(z, phi(e), e, z));
  }
  return MatrixSubspace<S>::from_generators(4, 4, f, gens);
}

/// The same Phi in the general block layout {[[A, B], [Phi(B), Phi(A)]]}.
template <class S>
MatrixSubspace<S> dual_transitive_8dim_theorem_form(const Field<S>& f) {
  const Mat<S> z = zeros(f, 2, 2);
  std::vector<Mat<S>> gens;
  for (Index j = 0; j < 4; ++j) {
    const Mat<S> e = matrix_unit(f, 2, 2, j / 2, j % 2);
    gens.push_back(block2(e, z, z, phi(e)));
    gens.push_back(block2(z, e, phi(e), z));
  }
  return MatrixSubspace<S>::from_generators(4, 4, f, gens);
}

/// Phi = J T Q for N = min_rank_diagonal_annihilator(n, n, k): Q takes A to its
/// coordinates on the coset basis (matrix units at the non-pivot positions of
/// N's canonical coordinates), T sends coset j to the j-th basis element of N.
template <class S>
class PhiMap {
 public:
  PhiMap(const Field<S>& f, Index n, Index k) : n_(n), ann_(min_rank_diagonal_annihilator(f, n, n, k)) {
    if (2 * (n - k) * (n - k) < n * n)
      throw ParameterOutOfRange("phi_block_space needs (n-k)^2 >= n^2/2");
    std::vector<bool> piv(static_cast<std::size_t>(n * n), false);
    for (Index p : ann_.pivots()) piv[static_cast<std::size_t>(p)] = true;
    for (Index q = 0; q < n * n; ++q)
      if (!piv[static_cast<std::size_t>(q)]) free_.push_back(q);
  }

  const MatrixSubspace<S>& annihilator() const { return ann_; }
  Index quotient_dim() const { return static_cast<Index>(free_.size()); }

  Mat<S> operator()(const Mat<S>& a) const {
    Vec<S> v = vec(a);
    for (Index r = 0; r < ann_.dim(); ++r) {
      const S c = v(ann_.pivots()[static_cast<std::size_t>(r)]);
      if (!is_zero(c)) v -= c * Vec<S>(ann_.coords().row(r).transpose());
    }
    Mat<S> out = zeros(ann_.field(), n_, n_);
    for (std::size_t j = 0; j < free_.size(); ++j) {
      const S c = v(free_[j]);
      if (!is_zero(c)) out += c * ann_.basis(static_cast<Index>(j));
    }
    return out;
  }

 private:
  Index n_;
  MatrixSubspace<S> ann_;
  std::vector<Index> free_;
};

/// {[[A, B], [Phi(B), Phi(A)]]} in M_2n; both it and its pre-annihilator are
/// k-transitive.
template <class S>
MatrixSubspace<S> phi_block_space(const Field<S>& f, Index n, Index k) {
  const PhiMap<S> map(f, n, k);
  const Mat<S> z = zeros(f, n, n);
  std::vector<Mat<S>> gens;
  for (Index q = 0; q < n * n; ++q) {
    const Mat<S> e = matrix_unit(f, n, n, q / n, q % n);
    const Mat<S> pe = map(e);
    gens.push_back(block2(e, z, z, pe));
    gens.push_back(block2(z, e, pe, z));
  }
  return MatrixSubspace<S>::from_generators(2 * n, 2 * n, f, gens);
}

/// sl_d tensor M_m, whose pre-annihilator is I_d tensor M_m.
template <class S>
MatrixSubspace<S> sl_tensor_full(const Field<S>& f, Index d, Index m) {
  if (d < 2 || m < 1) throw ParameterOutOfRange("sl_tensor_full needs d >= 2, m >= 1");
  return tensor(trace_zero(f, d), full_space(f, m, m));
}

/// [[x], [M]] with x an arbitrary first row.
template <class S>
MatrixSubspace<S> row_augmented_space(const MatrixSubspace<S>& inner) {
  const Index m = inner.rows(), n = inner.cols();
  const Field<S>& f = inner.field();
  std::vector<Mat<S>> gens;
  for (Index j = 0; j < n; ++j) gens.push_back(matrix_unit(f, m + 1, n, 0, j));
  for (Index i = 0; i < inner.dim(); ++i) {
    Mat<S> g = zeros(f, m + 1, n);
    g.bottomRows(m) = inner.basis(i);
    gens.push_back(g);
  }
  return MatrixSubspace<S>::from_generators(m + 1, n, f, gens);
}

/// Matrices of M_N (N = 2J+1, indices centered at J) whose central
/// (2j+1) x (2j+1) corner is Toeplitz; all other entries are free.
template <class S>
MatrixSubspace<S> corner_toeplitz(const Field<S>& f, Index big_n, Index j) {
  if (big_n < 1 || big_n % 2 == 0) throw ParameterOutOfRange("corner_toeplitz needs odd N");
  const Index centre = big_n / 2;
  if (j < 0 || j > centre) throw ParameterOutOfRange("corner_toeplitz needs 0 <= j <= N/2");
  const Index lo = centre - j, size = 2 * j + 1;
  auto in_corner = [&](Index i) { return i >= lo && i < lo + size; };
  std::vector<Mat<S>> gens;
  for (Index r = 0; r < big_n; ++r)
    for (Index c = 0; c < big_n; ++c)
      if (!(in_corner(r) && in_corner(c))) gens.push_back(matrix_unit(f, big_n, big_n, r, c));
  for (Index d = -(size - 1); d <= size - 1; ++d) {
    Mat<S> g = zeros(f, big_n, big_n);
    g.block(lo, lo, size, size) = diagonal_indicator(f, size, size, d);
    gens.push_back(g);
  }
  return MatrixSubspace<S>::from_generators(big_n, big_n, f, gens);
}

/// Intersection of corner_toeplitz(N, j) over j = 0..N/2.
template <class S>
MatrixSubspace<S> corner_toeplitz_intersection(const Field<S>& f, Index big_n) {
  MatrixSubspace<S> acc = full_space(f, big_n, big_n);
  for (Index j = 0; j <= big_n / 2; ++j) acc = intersect(acc, corner_toeplitz(f, big_n, j));
  return acc;
}

/// Diagonal projection onto e_lo, ..., e_{lo+len-1} in M_N.
template <class S>
Mat<S> coordinate_projection(const Field<S>& f, Index big_n, Index lo, Index len) {
  Mat<S> p = zeros(f, big_n, big_n);
  for (Index i = lo; i < lo + len; ++i) p(i, i) = f.one();
  return p;
}

// ---------------------------------------------------------------------------
// Rank-one element of L (x) M_4 + M_4 (x) L for L = dual_transitive_8dim.

struct BlockEquation {
  int i, j;     // u_i v_j^T
  int coeff;    // minus coeff * u_i2 v_j2^T
  int i2, j2;
  std::string label;
};

/// The eight block equations, 1-based indices: u_i v_j^T - c u_i2 v_j2^T in L.
inline const std::array<BlockEquation, 8>& counterexample_equations() {
  static const std::array<BlockEquation, 8> eqs{{
      {1, 1, 1, 3, 3, "X33-X11"},
      {1, 2, 1, 3, 4, "X34-X12"},
      {2, 1, 1, 4, 3, "X43-X21"},
      {2, 2, 1, 4, 4, "X44-X22"},
      {2, 4, 1, 3, 1, "X31-X24"},
      {2, 3, 1, 3, 2, "X32-X23"},
      {1, 3, 1, 4, 2, "X42-X13"},
      {1, 4, 2, 4, 1, "2X41-X14"},
  }};
  return eqs;
}

template <class S>
struct CounterexampleCertificate {
  std::vector<Vec<S>> u, v;  // u_1..u_4, v_1..v_4 in F^4
  Mat<S> rank_one;           // 16 x 16, block (i, j) = u_i v_j^T
  bool in_sum_space = false;
  std::array<bool, 8> equations{};
  bool in_tensor_preannihilator = false;
  Index rank = -1;

  bool all_ok() const {
    for (bool e : equations)
      if (!e) return false;
    return in_sum_space && in_tensor_preannihilator && rank == 1;
  }
};

template <class S>
CounterexampleCertificate<S> fully_transitive_counterexample_certificate(const Field<S>& f) {
  CounterexampleCertificate<S> cert;
  auto e = [&](Index i) {
    Vec<S> x = Vec<S>::Constant(4, f.zero());
    x(i) = f.one();
    return x;
  };
  cert.u = {e(3), e(2), e(1), e(0)};
  cert.v = {e(3), e(2), Vec<S>(-e(1)), Vec<S>(-e(0))};
  auto outer = [&](int i, int j) { return Mat<S>(cert.u[i - 1] * cert.v[j - 1].transpose()); };

  cert.rank_one = zeros(f, 16, 16);
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) cert.rank_one.block(4 * (i - 1), 4 * (j - 1), 4, 4) = outer(i, j);
  cert.rank = rank(cert.rank_one);

  const MatrixSubspace<S> l = dual_transitive_8dim(f);
  const MatrixSubspace<S> m4 = full_space(f, 4, 4);
  cert.in_sum_space = sum(tensor(l, m4), tensor(m4, l)).contains(cert.rank_one);

  const auto& eqs = counterexample_equations();
  for (std::size_t q = 0; q < eqs.size(); ++q) {
    const auto& eq = eqs[q];
    cert.equations[q] = l.contains(Mat<S>(outer(eq.i, eq.j) - f.from_int(eq.coeff) * outer(eq.i2, eq.j2)));
  }
  cert.in_tensor_preannihilator = preannihilator(tensor(l, l)).contains(cert.rank_one);
  return cert;
}

// ---------------------------------------------------------------------------
// Eigen-structure of a linear map on M_2 (4x4 table on row-major coordinates).

struct EigenStructure {
  Poly<Rational> charpoly;
  bool distinct = false;
  std::vector<Rational> rational_eigenvalues;
  std::vector<Poly<Rational>> quadratic_factors;
  int eigenvalue_count = 0;
  bool all_eigenvectors_rank_two = false;
};

/// Exact over Q: rational eigenvalues via kernels; for an irreducible quadratic
/// factor r = t^2 + r1 t + r0 and v in ker r(T), x(t) = T v + (r1 + t) v is an
/// eigenvector at each root, and det x(t) vanishes at a root iff gcd(r, det x) != 1.
inline EigenStructure rank_two_eigenstructure(const Mat<Rational>& table) {
  const Field<Rational> q;
  if (table.rows() != 4 || table.cols() != 4) throw ShapeMismatch("expected a 4x4 table on M_2");
  EigenStructure out;
  out.charpoly = characteristic_polynomial(table);
  out.distinct = gcd(out.charpoly, out.charpoly.derivative()).degree() == 0;
  bool ok = out.distinct;
  Poly<Rational> rest = out.charpoly;
  for (const Rational& lambda : rational_roots(out.charpoly)) {
    out.rational_eigenvalues.push_back(lambda);
    ++out.eigenvalue_count;
    const Mat<Rational> k = kernel(Mat<Rational>(table - lambda * identity(q, 4)));
    for (Index c = 0; c < k.cols(); ++c) ok = ok && rank(unvec<Rational>(k.col(c), 2, 2)) == 2;
    rest = rest.divmod(Poly<Rational>(std::vector<Rational>{-lambda, Rational(1)})).first;
  }
  if (rest.degree() == 2) {
    const Poly<Rational> r = rest.monic();
    out.quadratic_factors.push_back(r);
    out.eigenvalue_count += 2;
    Mat<Rational> rt = r[0] * identity(q, 4) + r[1] * table + table * table;
    const Mat<Rational> v = kernel(rt);
    const Vec<Rational> b = v.col(0), a = table * b + r[1] * b;
    std::vector<Rational> ts, ys;
    for (int t = 0; t < 3; ++t) {
      ts.emplace_back(t);
      ys.push_back(determinant(unvec<Rational>(Vec<Rational>(a + Rational(t) * b), 2, 2)));
    }
    ok = ok && gcd(r, Poly<Rational>::interpolate(ts, ys)).degree() == 0;
  } else if (rest.degree() > 0) {
    ok = false;  // cubic or quartic irreducible part: not handled
  }
  out.all_eigenvectors_rank_two = ok && out.eigenvalue_count == 4;
  return out;
}

}  // namespace translab
