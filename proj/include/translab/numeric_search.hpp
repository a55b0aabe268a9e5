#pragma once

// Floating-point search for low-rank elements of a subspace over Q or Q(i),
// followed by exact verification. Alternating projection between the
// subspace and the rank-k matrices; the residual is the share of Frobenius
// mass outside the top k singular values.

#include "translab/witness.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <type_traits>

namespace translab {

/// Best rational approximation with denominator <= max_den (continued fractions).
inline Rational rationalize(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) throw std::domain_error("rationalize: non-finite value");
  const bool neg = x < 0;
  double r = std::fabs(x);
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(r);
    if (a > 9e15) break;
    const Integer ai(static_cast<long long>(a));
    const Integer p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1, q0 = q1, p1 = p2, q1 = q2;
    const double frac = r - a;
    if (frac < 1e-13) break;
    r = 1.0 / frac;
  }
  if (q1 == 0) return Rational(0);
  Rational out(p1, q1);
  return neg ? Rational(-out) : out;
}

namespace numeric {

template <class S>
struct Embed;

template <>
struct Embed<Rational> {
  using type = double;
  static double to(const Rational& x) { return x.convert_to<double>(); }
  static Rational from(double x, std::int64_t d) { return rationalize(x, d); }
};

template <>
struct Embed<GaussRational> {
  using type = std::complex<double>;
  static type to(const GaussRational& x) { return {x.re().convert_to<double>(), x.im().convert_to<double>()}; }
  static GaussRational from(type x, std::int64_t d) { return {rationalize(x.real(), d), rationalize(x.imag(), d)}; }
};

template <class S>
using Num = typename Embed<S>::type;
template <class S>
using NumMat = Eigen::Matrix<Num<S>, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using NumVec = Eigen::Matrix<Num<S>, Eigen::Dynamic, 1>;

template <class S>
NumMat<S> embed(const Mat<S>& a) {
  NumMat<S> out(a.rows(), a.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out(i, j) = Embed<S>::to(a(i, j));
  return out;
}

/// Numeric reduced row-echelon form with a relative pivot threshold.
template <class T>
Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> numeric_rref(Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> a,
                                                              double eps) {
  Index row = 0;
  for (Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Index best = row;
    for (Index r = row + 1; r < a.rows(); ++r)
      if (std::abs(a(r, col)) > std::abs(a(best, col))) best = r;
    if (std::abs(a(best, col)) < eps) continue;
    a.row(best).swap(a.row(row));
    a.row(row) /= a(row, col);
    for (Index r = 0; r < a.rows(); ++r)
      if (r != row) a.row(r) -= a(r, col) * a.row(row);
    ++row;
  }
  return a;
}

}  // namespace numeric

/// Rationalizes candidate coefficients (scaled so that one of the largest
/// entries is 1) and keeps the result only if it verifies exactly.
template <class S>
std::optional<RankWitness<S>> exactify_candidate(const MatrixSubspace<S>& v, Index k,
                                                 const numeric::NumVec<S>& coeffs,
                                                 const NumericOptions& opt = {}) {
  if (coeffs.size() != v.dim() || coeffs.size() == 0) return std::nullopt;
  std::vector<Index> order(static_cast<std::size_t>(coeffs.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return std::abs(coeffs(a)) > std::abs(coeffs(b)); });
  const std::size_t tries = std::min<std::size_t>(3, order.size());
  for (std::size_t t = 0; t < tries; ++t) {
    const auto lead = coeffs(order[t]);
    if (std::abs(lead) < 1e-12) break;
    Vec<S> c(coeffs.size());
    for (Index i = 0; i < coeffs.size(); ++i)
      c(i) = numeric::Embed<S>::from(coeffs(i) / lead, opt.max_denominator);
    if (auto w = make_witness(v, c, k)) return w;
  }
  return std::nullopt;
}

namespace detail {

/// Rationalizes the numerical kernel of x (as an RREF basis) and solves
/// exactly for an element of V vanishing on it.
template <class S>
std::optional<RankWitness<S>> exactify_by_kernel(const MatrixSubspace<S>& v, Index k,
                                                 const numeric::NumMat<S>& x, bool transposed,
                                                 const NumericOptions& opt) {
  using NM = numeric::NumMat<S>;
  const NM a = transposed ? NM(x.transpose()) : x;
  if (a.cols() <= k) return std::nullopt;
  Eigen::JacobiSVD<NM> svd(a, Eigen::ComputeFullV);
  const NM z = svd.matrixV().rightCols(a.cols() - k);  // columns span the numeric kernel
  const NM zr = numeric::numeric_rref<numeric::Num<S>>(NM(z.transpose()), 1e-6);
  Mat<S> zq(zr.rows(), zr.cols());
  for (Index i = 0; i < zr.rows(); ++i)
    for (Index j = 0; j < zr.cols(); ++j) zq(i, j) = numeric::Embed<S>::from(zr(i, j), opt.max_denominator);
  zq = bind(v.field(), zq);
  // Columns of the system: vec(B_i Z^T), with B_i transposed in the transposed case.
  const Index len = a.rows() * zq.rows();
  Mat<S> sys(len, v.dim());
  for (Index i = 0; i < v.dim(); ++i) {
    const Mat<S> b = transposed ? Mat<S>(v.basis(i).transpose()) : v.basis(i);
    sys.col(i) = vec(Mat<S>(b * zq.transpose()));
  }
  const Mat<S> ker = kernel(sys);
  for (Index c = 0; c < ker.cols(); ++c)
    if (auto w = make_witness(v, Vec<S>(ker.col(c)), k)) return w;
  return std::nullopt;
}

}  // namespace detail

template <class S>
struct NumericSearchResult {
  std::optional<RankWitness<S>> witness;
  int restarts_used = 0;
  double best_residual = 1.0;
};

/// Alternating projection search for a nonzero element of V of rank <= k.
/// Only exactly verified witnesses are returned.
template <class S>
NumericSearchResult<S> rank_witness_search_numeric(const MatrixSubspace<S>& v, Index k, std::uint64_t seed,
                                                   const NumericOptions& opt = {}) {
  static_assert(!Field<S>::finite, "numeric search needs Q or Q(i)");
  using T = numeric::Num<S>;
  using NM = numeric::NumMat<S>;
  using NV = numeric::NumVec<S>;
  NumericSearchResult<S> result;
  if (v.dim() == 0 || k < 1) return result;
  const Index d = v.dim(), len = v.ambient_dim();
  const NM basis = numeric::embed(Mat<S>(v.coords().transpose()));  // len x d
  Eigen::HouseholderQR<NM> qr(basis);
  const NM q = qr.householderQ() * NM::Identity(len, d);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto draw = [&]() -> T {
    if constexpr (std::is_same_v<T, double>)
      return gauss(rng);
    else {
      const double re = gauss(rng);
      return T(re, gauss(rng));
    }
  };
  auto unvec_num = [&](const NV& x) {
    NM m(v.rows(), v.cols());
    for (Index i = 0; i < v.rows(); ++i)
      for (Index j = 0; j < v.cols(); ++j) m(i, j) = x(i * v.cols() + j);
    return m;
  };
  auto vec_num = [&](const NM& m) {
    NV x(len);
    for (Index i = 0; i < v.rows(); ++i)
      for (Index j = 0; j < v.cols(); ++j) x(i * v.cols() + j) = m(i, j);
    return x;
  };

  for (int restart = 0; restart < opt.restarts; ++restart) {
    result.restarts_used = restart + 1;
    NV y(d);
    for (Index i = 0; i < d; ++i) y(i) = draw();
    NV x = q * y;
    x.normalize();
    double residual = 1.0;
    for (int it = 0; it < opt.iterations; ++it) {
      const NM m = unvec_num(x);
      Eigen::JacobiSVD<NM> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
      const auto& sv = svd.singularValues();
      const double total = sv.squaredNorm();
      const double tail = total - sv.head(std::min<Index>(k, sv.size())).squaredNorm();
      residual = total > 0 ? std::sqrt(std::max(0.0, tail) / total) : 1.0;
      if (residual < opt.tolerance) break;
      const Index kk = std::min<Index>(k, sv.size());
      const NM low = svd.matrixU().leftCols(kk) * sv.head(kk).asDiagonal() * svd.matrixV().leftCols(kk).adjoint();
      NV nx = q * (q.adjoint() * vec_num(low));
      const double nrm = nx.norm();
      if (nrm < 1e-300) break;
      x = nx / nrm;
    }
    result.best_residual = std::min(result.best_residual, residual);
    if (residual >= opt.tolerance) continue;
    // Coefficients on the canonical basis sit at the pivot positions.
    NV c(d);
    for (Index i = 0; i < d; ++i) c(i) = x(v.pivots()[static_cast<std::size_t>(i)]);
    if (auto w = exactify_candidate(v, k, c, opt)) {
      result.witness = w;
      return result;
    }
    const NM m = unvec_num(x);
    for (bool transposed : {false, true})
      if (auto w = detail::exactify_by_kernel(v, k, m, transposed, opt)) {
        result.witness = w;
        return result;
      }
  }
  return result;
}

}  // namespace translab
