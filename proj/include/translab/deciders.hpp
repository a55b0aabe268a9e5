#pragma once

// Transitivity and separation deciders with explicit soundness labels.
//
// L in Mat(m, n) is k-transitive iff its pre-annihilator contains no nonzero
// element of rank <= k. A witness found over Q or Q(i) disproves transitivity
// over every extension field; a witness over GF(q) only speaks for GF(q).
// Exhaustive absence over GF(q) is reported as CertifiedFiniteField and is not
// a statement about the algebraic closure.

#include "translab/errors.hpp"
#include "translab/ff_engine.hpp"
#include "translab/field.hpp"
#include "translab/linalg.hpp"
#include "translab/numeric_search.hpp"
#include "translab/polynomial.hpp"
#include "translab/subspace.hpp"
#include "translab/witness.hpp"

#include <algorithm>
#include <climits>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace translab {

enum class Status { Disproved, CertifiedExact, CertifiedFiniteField, Unknown };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::Disproved: return "Disproved";
    case Status::CertifiedExact: return "CertifiedExact";
    case Status::CertifiedFiniteField: return "CertifiedFiniteField";
    case Status::Unknown: return "Unknown";
  }
  return "Unknown";
}

enum class Strategy { Certify, FiniteField, Numeric, Exact };

inline std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::Certify: return "certify";
    case Strategy::FiniteField: return "ff";
    case Strategy::Numeric: return "numeric";
    case Strategy::Exact: return "exact";
  }
  return "certify";
}

inline Strategy parse_strategy(std::string_view s) {
  if (s == "certify" || s == "auto") return Strategy::Certify;
  if (s == "ff") return Strategy::FiniteField;
  if (s == "numeric") return Strategy::Numeric;
  if (s == "exact") return Strategy::Exact;
  throw ParseError("unknown strategy '" + std::string(s) + "'");
}

inline constexpr std::uint64_t kDefaultSeed = 20240917;
inline constexpr std::uint64_t kDefaultBudget = 100000000;

struct DeciderConfig {
  std::vector<std::int64_t> primes{5, 7};
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t seed = kDefaultSeed;
  Strategy strategy = Strategy::Certify;
  unsigned threads = 1;
  int sampling_trials = 64;
  NumericOptions numeric;
};

struct Enumeration {
  std::string field;
  std::string kind;  // "projective-points" or "subspaces"
  std::uint64_t visited = 0;
  std::uint64_t total = 0;
};

struct Evidence {
  std::vector<std::string> strategies;
  std::vector<std::int64_t> primes;
  std::vector<Enumeration> enumerations;
  std::optional<std::uint64_t> seed;
  bool budget_exceeded = false;
  std::vector<std::string> notes;
};

template <class S>
std::string format_matrix(const Field<S>& f, const Mat<S>& a) {
  std::string out = "[";
  for (Index i = 0; i < a.rows(); ++i) {
    out += i ? ", [" : "[";
    for (Index j = 0; j < a.cols(); ++j) out += (j ? ", " : "") + f.format(a(i, j));
    out += "]";
  }
  return out + "]";
}

namespace detail {

inline std::string join_tags(const std::vector<std::string>& tags) {
  std::string out;
  for (std::size_t i = 0; i < tags.size(); ++i) out += (i ? ", " : "") + tags[i];
  return out;
}

inline std::string validity_label(Status status, bool finite, const std::string& field,
                                  const std::vector<std::string>& certified_over) {
  switch (status) {
    case Status::Disproved:
      return finite ? "disproved over " + field + " only (field-local witness)"
                    : "disproved over every extension of " + field + " (exact witness)";
    case Status::CertifiedExact:
      return "certified exactly over every extension of " + field;
    case Status::CertifiedFiniteField:
      return "certified over " + join_tags(certified_over) + " only; not a proof over the algebraic closure";
    case Status::Unknown:
      return "undecided";
  }
  return "undecided";
}

}  // namespace detail

template <class S>
struct TransitivityVerdict {
  Status status = Status::Unknown;
  Index k = 0;
  std::string field;
  bool finite_field = false;
  std::vector<std::string> certified_over;
  std::optional<RankWitness<S>> witness;  // element of L_perp
  std::optional<std::string> closure_certificate;
  Evidence evidence;

  std::string validity() const { return detail::validity_label(status, finite_field, field, certified_over); }
};

template <class S>
struct SeparationVerdict {
  Status status = Status::Unknown;
  Index k = 0;
  std::string field;
  bool finite_field = false;
  std::vector<std::string> certified_over;
  std::optional<Mat<S>> witness;  // n x k tuple (x_1 ... x_k)
  Evidence evidence;

  std::string validity() const { return detail::validity_label(status, finite_field, field, certified_over); }
};

namespace detail {

template <class S>
Vec<S> unit_vector(const Field<S>& f, Index n, Index i) {
  Vec<S> v = Vec<S>::Constant(n, f.zero());
  v(i) = f.one();
  return v;
}

template <class F>
std::vector<std::vector<ff::Code>> encode_basis(const MatrixSubspace<F>& v) {
  std::vector<std::vector<ff::Code>> out;
  for (Index i = 0; i < v.dim(); ++i) out.push_back(ff::encode(v.field(), v.basis(i)));
  return out;
}

template <class F>
Vec<F> decode_coeffs(const Field<F>& f, const std::vector<ff::Code>& c) {
  return ff::decode_vector(f, c);
}

/// Rows scaled to coprime integers (same row space).
inline Mat<Rational> primitive_rows(const Mat<Rational>& a) {
  Mat<Rational> out = a;
  for (Index i = 0; i < a.rows(); ++i) {
    Integer l = 1, g = 0;
    for (Index j = 0; j < a.cols(); ++j) l = boost::multiprecision::lcm(l, denominator(a(i, j)));
    for (Index j = 0; j < a.cols(); ++j) {
      out(i, j) = a(i, j) * Rational(l);
      g = boost::multiprecision::gcd(g, numerator(out(i, j)));
    }
    if (g != 0)
      for (Index j = 0; j < a.cols(); ++j) out(i, j) /= Rational(g);
  }
  return out;
}

inline Mat<GaussRational> primitive_rows(const Mat<GaussRational>& a) {
  Mat<GaussRational> out = a;
  for (Index i = 0; i < a.rows(); ++i) {
    Integer l = 1, g = 0;
    for (Index j = 0; j < a.cols(); ++j) {
      l = boost::multiprecision::lcm(l, denominator(a(i, j).re()));
      l = boost::multiprecision::lcm(l, denominator(a(i, j).im()));
    }
    for (Index j = 0; j < a.cols(); ++j) {
      out(i, j) = a(i, j) * GaussRational(Rational(l));
      g = boost::multiprecision::gcd(g, numerator(out(i, j).re()));
      g = boost::multiprecision::gcd(g, numerator(out(i, j).im()));
    }
    if (g != 0)
      for (Index j = 0; j < a.cols(); ++j) out(i, j) = out(i, j) / GaussRational(Rational(g));
  }
  return out;
}

/// L reduced modulo p; nullopt when the dimension drops.
template <class S, class F>
std::optional<MatrixSubspace<F>> reduce_subspace(const MatrixSubspace<S>& l, const Field<F>& f) {
  Mat<F> coords;
  try {
    coords = reduce_mod(l.coords(), f);
  } catch (const BadPrime&) {
    coords = reduce_mod(primitive_rows(l.coords()), f);
  }
  MatrixSubspace<F> r(l.rows(), l.cols(), f, coords);
  if (r.dim() != l.dim()) return std::nullopt;
  return r;
}

/// Calls fn(field, optional<reduced subspace>) over GF(p), or over GF(p^2)
/// for Q(i) input when -1 is not a square mod p.
template <class S, class Fn>
void with_reduction(const MatrixSubspace<S>& l, std::int64_t p, Fn&& fn) {
  if constexpr (std::is_same_v<S, GaussRational>) {
    if (p != 2 && mod_sqrt(p - 1, p) < 0) {
      const Field<QuadExt> f(p);
      fn(f, reduce_subspace(l, f));
      return;
    }
  }
  const Field<PrimeField> f(p);
  fn(f, reduce_subspace(l, f));
}

inline std::int64_t next_prime(std::int64_t p) {
  do ++p;
  while (!is_prime(p));
  return p;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Exhaustive finite-field routines.

template <class F>
struct MinRankResult {
  Index min_rank = -1;  // -1 for the zero space
  std::optional<RankWitness<F>> witness;
  std::uint64_t enumerated = 0;
  std::uint64_t total = 0;
};

/// Minimum rank over the nonzero elements of V over GF(q), stopping at the
/// first element of rank <= stop_at. Chunks may run on several threads; the
/// merge reproduces the sequential answer exactly.
template <class F>
MinRankResult<F> min_rank_ff_exhaustive(const MatrixSubspace<F>& v, std::uint64_t budget = kDefaultBudget,
                                        unsigned threads = 1, Index stop_at = 1) {
  static_assert(Field<F>::finite, "exhaustive enumeration needs a finite field");
  MinRankResult<F> res;
  if (v.dim() == 0) return res;
  const ff::Arith ar(v.field());
  res.total = ff::projective_count(ar.q(), static_cast<std::uint64_t>(v.dim()));
  if (res.total > budget)
    throw BudgetExceeded("min-rank enumeration needs " + std::to_string(res.total) + " points over " +
                         v.field().tag() + ", budget " + std::to_string(budget));
  const auto basis = detail::encode_basis(v);
  const int rows = static_cast<int>(v.rows()), cols = static_cast<int>(v.cols());

  struct Best {
    int rank = INT_MAX;
    std::uint64_t index = 0;
    std::vector<ff::Code> coeffs;
    bool hit = false;
  };
  const auto chunks = ff::run_chunks<Best>(res.total, threads, [&](std::uint64_t b, std::uint64_t e) {
    Best best;
    std::vector<ff::Code> scratch;
    ff::scan_projective(ar, basis, b, e, [&](const ff::Point& p) {
      scratch = p.matrix;
      const int r = ar.rank_inplace(scratch.data(), rows, cols);
      if (r < best.rank) {
        best.rank = r;
        best.index = p.index;
        best.coeffs = p.coeffs;
      }
      if (r <= stop_at) {
        best.hit = true;
        return true;
      }
      return false;
    });
    return best;
  });

  const Best* pick = nullptr;
  for (const auto& c : chunks)
    if (c.hit) {
      pick = &c;
      break;
    }
  if (!pick)
    for (const auto& c : chunks)
      if (!pick || c.rank < pick->rank) pick = &c;
  res.min_rank = pick->rank;
  res.enumerated = pick->hit ? pick->index + 1 : res.total;
  res.witness = make_witness(v, detail::decode_coeffs(v.field(), pick->coeffs), pick->rank);
  return res;
}

template <class F>
struct RankExtremes {
  Index min_nonzero_rank = -1;
  std::optional<Index> max_singular_rank;
  std::optional<RankWitness<F>> min_witness;
  std::optional<RankWitness<F>> max_singular_witness;
  std::uint64_t enumerated = 0;
};

/// Smallest nonzero rank r and largest rank s < n among singular nonzero elements.
template <class F>
RankExtremes<F> rank_extremes_ff(const MatrixSubspace<F>& l, std::uint64_t budget = kDefaultBudget) {
  static_assert(Field<F>::finite, "exhaustive enumeration needs a finite field");
  if (l.rows() != l.cols()) throw ShapeMismatch("rank_extremes_ff needs a square ambient");
  RankExtremes<F> res;
  if (l.dim() == 0) return res;
  const ff::Arith ar(l.field());
  const std::uint64_t total = ff::projective_count(ar.q(), static_cast<std::uint64_t>(l.dim()));
  if (total > budget) throw BudgetExceeded("rank extremes need " + std::to_string(total) + " points");
  const auto basis = detail::encode_basis(l);
  const int n = static_cast<int>(l.rows());
  int rmin = INT_MAX, smax = -1;
  std::vector<ff::Code> cmin, cmax, scratch;
  res.enumerated = ff::scan_projective(ar, basis, 0, total, [&](const ff::Point& p) {
    scratch = p.matrix;
    const int r = ar.rank_inplace(scratch.data(), n, n);
    if (r < rmin) rmin = r, cmin = p.coeffs;
    if (r < n && r > smax) smax = r, cmax = p.coeffs;
    return false;
  });
  res.min_nonzero_rank = rmin;
  res.min_witness = make_witness(l, detail::decode_coeffs(l.field(), cmin), rmin);
  if (smax >= 0) {
    res.max_singular_rank = smax;
    res.max_singular_witness = make_witness(l, detail::decode_coeffs(l.field(), cmax), smax);
  }
  return res;
}

/// Rank-one elements x y^T of L up to scalars, x and y projective.
template <class F>
std::vector<Mat<F>> rank_one_elements_ff(const MatrixSubspace<F>& l, std::uint64_t budget = kDefaultBudget) {
  static_assert(Field<F>::finite, "exhaustive enumeration needs a finite field");
  const ff::Arith ar(l.field());
  const int m = static_cast<int>(l.rows()), n = static_cast<int>(l.cols());
  const std::uint64_t px = ff::projective_count(ar.q(), static_cast<std::uint64_t>(m));
  const std::uint64_t py = ff::projective_count(ar.q(), static_cast<std::uint64_t>(n));
  if (px > budget / std::max<std::uint64_t>(py, 1)) throw BudgetExceeded("rank-one enumeration exceeds budget");
  const auto perp = detail::encode_basis(preannihilator(l));  // each n x m
  std::vector<Mat<F>> out;
  ff::for_each_projective_vector(ar, m, [&](const std::vector<ff::Code>& x) {
    // tx[j] = T_j x, so that <x y^T, T_j> = y . tx[j].
    std::vector<std::vector<ff::Code>> tx;
    for (const auto& t : perp) {
      std::vector<ff::Code> w(static_cast<std::size_t>(n), 0);
      for (int i = 0; i < n; ++i)
        for (int a = 0; a < m; ++a)
          w[static_cast<std::size_t>(i)] = ar.add(w[static_cast<std::size_t>(i)], ar.mul(t[static_cast<std::size_t>(i * m + a)], x[static_cast<std::size_t>(a)]));
      tx.push_back(std::move(w));
    }
    ff::for_each_projective_vector(ar, n, [&](const std::vector<ff::Code>& y) {
      for (const auto& w : tx) {
        ff::Code s = 0;
        for (int i = 0; i < n; ++i) s = ar.add(s, ar.mul(y[static_cast<std::size_t>(i)], w[static_cast<std::size_t>(i)]));
        if (s) return false;
      }
      std::vector<ff::Code> xy(static_cast<std::size_t>(m * n));
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < n; ++b) xy[static_cast<std::size_t>(a * n + b)] = ar.mul(x[static_cast<std::size_t>(a)], y[static_cast<std::size_t>(b)]);
      out.push_back(ff::decode(l.field(), xy, m, n));
      return false;
    });
    return false;
  });
  return out;
}

namespace detail {

/// Row i is vec(B_i X): the matrix of A |-> A X from L to Mat(m, k).
template <class S>
Mat<S> restriction_matrix(const MatrixSubspace<S>& l, const Mat<S>& x) {
  Mat<S> d(l.dim(), l.rows() * x.cols());
  for (Index i = 0; i < l.dim(); ++i) d.row(i) = vec(Mat<S>(l.basis(i) * x)).transpose();
  return d;
}

/// For X where A |-> A X is not onto: T = X Y in L_perp with rank <= k.
template <class S>
std::optional<RankWitness<S>> definitional_obstruction(const MatrixSubspace<S>& l, const Mat<S>& x) {
  const Index m = l.rows(), k = x.cols();
  const Mat<S> z = kernel(restriction_matrix(l, x));
  if (z.cols() == 0) return std::nullopt;
  Mat<S> y(k, m);
  for (Index a = 0; a < m; ++a)
    for (Index b = 0; b < k; ++b) y(b, a) = z(a * k + b, 0);
  return make_witness_from_matrix(preannihilator(l), Mat<S>(x * y), k);
}

}  // namespace detail

template <class F>
struct DefinitionalResult {
  bool transitive = true;
  std::optional<Mat<F>> failing_x;  // n x k, in the original (untransposed) problem when !transposed
  bool transposed = false;
  std::optional<RankWitness<F>> obstruction;  // element of L_perp
  std::uint64_t visited = 0;
  std::uint64_t total = 0;
};

/// Checks directly that A |-> A X is onto Mat(m, k) for every k-dimensional
/// column space X. Works on whichever of L, L^T has the smaller column count.
template <class F>
DefinitionalResult<F> definitional_check_ff(const MatrixSubspace<F>& l, Index k,
                                            std::uint64_t budget = kDefaultBudget) {
  static_assert(Field<F>::finite, "exhaustive enumeration needs a finite field");
  DefinitionalResult<F> res;
  res.transposed = l.rows() < l.cols();
  const MatrixSubspace<F> work = res.transposed ? transpose_space(l) : l;
  const ff::Arith ar(l.field());
  const int m = static_cast<int>(work.rows()), n = static_cast<int>(work.cols()), kk = static_cast<int>(k);
  res.total = ff::gaussian_binomial(ar.q(), static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k));
  if (res.total > budget) throw BudgetExceeded("definitional check needs " + std::to_string(res.total) + " subspaces");
  const auto basis = detail::encode_basis(work);
  const int d = static_cast<int>(work.dim());
  std::vector<ff::Code> dm(static_cast<std::size_t>(d * m * kk)), found;
  res.visited = ff::for_each_subspace(ar, n, kk, [&](const std::vector<ff::Code>& x) {
    for (int i = 0; i < d; ++i)
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < kk; ++b) {
          ff::Code s = 0;
          for (int c = 0; c < n; ++c)
            s = ar.add(s, ar.mul(basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(a * n + c)], x[static_cast<std::size_t>(c * kk + b)]));
          dm[static_cast<std::size_t>(i * m * kk + a * kk + b)] = s;
        }
    if (ar.rank_inplace(dm.data(), d, m * kk) == m * kk) return false;
    found = x;
    return true;
  });
  if (found.empty()) return res;
  res.transitive = false;
  const Mat<F> x = ff::decode(l.field(), found, n, k);
  res.failing_x = x;
  if (auto w = detail::definitional_obstruction(work, x)) {
    if (res.transposed) {
      res.obstruction = make_witness_from_matrix(preannihilator(l), Mat<F>(w->matrix.transpose()), k);
    } else {
      res.obstruction = w;
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Separation.

namespace detail {

/// For U (n x (k-1)): W = {A in L : A U = 0} and its joint kernel K. Returns
/// (dim W, tuple X = (U, x_k)) where x_k is in K but not in span U, if any.
template <class S>
std::pair<Index, std::optional<Mat<S>>> separation_failure_at(const MatrixSubspace<S>& l, const Mat<S>& u) {
  const Index n = l.cols(), k1 = u.cols();
  Mat<S> w;  // columns: coefficient vectors of W
  if (k1 == 0) {
    w = identity(l.field(), l.dim());
  } else {
    w = kernel(Mat<S>(restriction_matrix(l, u).transpose()));
  }
  Mat<S> stack(w.cols() * l.rows(), n);
  for (Index c = 0; c < w.cols(); ++c) stack.middleRows(c * l.rows(), l.rows()) = l.element(Vec<S>(w.col(c)));
  const Mat<S> kk = w.cols() ? kernel(stack) : identity(l.field(), n);
  if (kk.cols() <= k1) return {w.cols(), std::nullopt};
  for (Index c = 0; c < kk.cols(); ++c) {
    Mat<S> x(n, k1 + 1);
    x << u, kk.col(c);
    if (rank(x) == k1 + 1) return {w.cols(), bind(l.field(), x)};
  }
  throw std::logic_error("separation: joint kernel larger than U but contained in it");
}

}  // namespace detail

/// Re-checks a separation counterexample: X has full column rank and every
/// A in L killing x_1..x_{k-1} also kills x_k.
template <class S>
bool verify_separation_witness(const MatrixSubspace<S>& l, const Mat<S>& x) {
  if (x.rows() != l.cols() || x.cols() < 1 || rank(x) != x.cols()) return false;
  const Index k1 = x.cols() - 1;
  const Mat<S> u = x.leftCols(k1);
  const Mat<S> w = k1 ? kernel(Mat<S>(detail::restriction_matrix(l, u).transpose())) : identity(l.field(), l.dim());
  for (Index c = 0; c < w.cols(); ++c)
    if (!is_zero_matrix(Mat<S>(l.element(Vec<S>(w.col(c))) * x.col(k1)))) return false;
  return true;
}

template <class F>
struct FFSeparation {
  std::optional<Mat<F>> witness;
  std::uint64_t visited = 0;
  std::uint64_t total = 0;
};

/// Exhaustive over all (k-1)-dimensional U in GF(q)^n.
template <class F>
FFSeparation<F> separation_check_ff(const MatrixSubspace<F>& l, Index k, std::uint64_t budget = kDefaultBudget) {
  static_assert(Field<F>::finite, "exhaustive enumeration needs a finite field");
  FFSeparation<F> res;
  const ff::Arith ar(l.field());
  const int m = static_cast<int>(l.rows()), n = static_cast<int>(l.cols()), k1 = static_cast<int>(k - 1);
  res.total = ff::gaussian_binomial(ar.q(), static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k1));
  if (res.total > budget) throw BudgetExceeded("separation check needs " + std::to_string(res.total) + " subspaces");
  const auto basis = detail::encode_basis(l);
  const int d = static_cast<int>(l.dim());
  std::vector<ff::Code> failing;
  res.visited = ff::for_each_subspace(ar, n, k1, [&](const std::vector<ff::Code>& u) {
    // W = left kernel of the d x m(k-1) matrix with rows vec(B_i U).
    std::vector<std::vector<ff::Code>> w;
    if (k1 == 0) {
      for (int i = 0; i < d; ++i) {
        std::vector<ff::Code> e(static_cast<std::size_t>(d), 0);
        e[static_cast<std::size_t>(i)] = 1;
        w.push_back(std::move(e));
      }
    } else {
      std::vector<ff::Code> mt(static_cast<std::size_t>(m * k1 * d));  // transpose: (m k1) x d
      for (int i = 0; i < d; ++i)
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < k1; ++b) {
            ff::Code s = 0;
            for (int c = 0; c < n; ++c)
              s = ar.add(s, ar.mul(basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(a * n + c)], u[static_cast<std::size_t>(c * k1 + b)]));
            mt[static_cast<std::size_t>((a * k1 + b) * d + i)] = s;
          }
      w = ff::right_kernel(ar, mt, m * k1, d);
    }
    const int rows = static_cast<int>(w.size()) * m;
    std::vector<ff::Code> stack(static_cast<std::size_t>(rows * n), 0);
    for (std::size_t c = 0; c < w.size(); ++c)
      for (int i = 0; i < d; ++i) {
        const ff::Code coef = w[c][static_cast<std::size_t>(i)];
        if (!coef) continue;
        for (int t = 0; t < m * n; ++t)
          stack[c * static_cast<std::size_t>(m * n) + static_cast<std::size_t>(t)] =
              ar.add(stack[c * static_cast<std::size_t>(m * n) + static_cast<std::size_t>(t)],
                     ar.mul(coef, basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)]));
      }
    std::vector<ff::Code> probe = stack;
    if (n - ar.rank_inplace(probe.data(), rows, n) == k1) return false;
    for (const auto& z : ff::right_kernel(ar, stack, rows, n)) {
      std::vector<ff::Code> x(static_cast<std::size_t>(n * (k1 + 1)));
      for (int r = 0; r < n; ++r) {
        for (int b = 0; b < k1; ++b) x[static_cast<std::size_t>(r * (k1 + 1) + b)] = u[static_cast<std::size_t>(r * k1 + b)];
        x[static_cast<std::size_t>(r * (k1 + 1) + k1)] = z[static_cast<std::size_t>(r)];
      }
      if (ar.rank(x, n, k1 + 1) == k1 + 1) {
        failing = x;
        return true;
      }
    }
    throw std::logic_error("separation: joint kernel larger than U but contained in it");
  });
  if (!failing.empty()) res.witness = ff::decode(l.field(), failing, n, k);
  return res;
}

// ---------------------------------------------------------------------------
// Exact routes over Q and Q(i).

template <class S>
struct PencilResult {
  enum class Kind { NoLowRank, Witness, ClosureOnly };
  Kind kind = Kind::NoLowRank;
  Vec<S> coefficients;  // on the given basis
  Mat<S> matrix;
  std::optional<Poly<S>> gcd;
};

namespace detail {

inline std::optional<Rational> rational_sqrt(const Rational& x) {
  if (x < 0) return std::nullopt;
  const Integer n = numerator(x), d = denominator(x);
  const Integer sn = boost::multiprecision::sqrt(n), sd = boost::multiprecision::sqrt(d);
  if (sn * sn != n || sd * sd != d) return std::nullopt;
  return Rational(sn, sd);
}

inline std::optional<GaussRational> gauss_sqrt(const GaussRational& z) {
  const auto s = rational_sqrt(z.re() * z.re() + z.im() * z.im());
  if (!s) return std::nullopt;
  if (const auto x = rational_sqrt((z.re() + *s) / 2); x && *x != 0) return GaussRational(*x, z.im() / (2 * *x));
  if (const auto y = rational_sqrt((*s - z.re()) / 2)) return GaussRational(0, *y);
  return std::nullopt;
}

inline std::vector<Rational> field_roots(const Poly<Rational>& g) { return rational_roots(g); }

inline std::vector<GaussRational> field_roots(const Poly<GaussRational>& g) {
  std::vector<GaussRational> out;
  if (g.degree() == 1) {
    out.push_back(-g[0] / g[1]);
  } else if (g.degree() == 2) {
    const GaussRational a = g[2], b = g[1], c = g[0];
    if (const auto r = gauss_sqrt(b * b - GaussRational(4) * a * c)) {
      out.push_back((-b + *r) / (GaussRational(2) * a));
      if (!is_zero(*r)) out.push_back((-b - *r) / (GaussRational(2) * a));
    }
  } else {
    bool real = true;
    std::vector<Rational> re;
    for (const auto& c : g.coeffs()) {
      real = real && c.im() == 0;
      re.push_back(c.re());
    }
    if (real)
      for (const auto& r : rational_roots(Poly<Rational>(re))) out.emplace_back(r);
  }
  return out;
}

inline void combinations(int n, int r, std::vector<std::vector<int>>& out) {
  std::vector<int> c(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) c[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(c);
    int i = r - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - r + i) --i;
    if (i < 0) return;
    ++c[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < r; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace detail

/// Exact decision for a pencil (or a single matrix) over the algebraic closure.
/// All (k+1)-minors of B0 + t B1 are interpolated as polynomials in t; a common
/// root, or t = infinity when rank B1 <= k, gives a rank <= k element.
template <class S>
PencilResult<S> pencil_min_rank_exact(const std::vector<Mat<S>>& basis, Index k) {
  static_assert(!Field<S>::finite, "the pencil route works over Q and Q(i)");
  using R = PencilResult<S>;
  R res;
  if (basis.size() > 2) throw DimensionTooLarge("pencil route needs at most two basis matrices");
  if (basis.empty()) return res;
  const Mat<S>& b0 = basis[0];
  auto witness = [&](const Vec<S>& c) {
    res.kind = R::Kind::Witness;
    res.coefficients = c;
    res.matrix = c(0) * b0;
    if (c.size() == 2) res.matrix += c(1) * basis[1];
    return res;
  };
  auto coeffs = [](const S& a, const S& b) {
    Vec<S> c(2);
    c << a, b;
    return c;
  };
  if (basis.size() == 1) {
    if (rank(b0) <= k) return witness(Vec<S>::Constant(1, S(1)));
    return res;
  }
  const Mat<S>& b1 = basis[1];
  const int rows = static_cast<int>(b0.rows()), cols = static_cast<int>(b0.cols()), r = static_cast<int>(k) + 1;
  if (r > std::min(rows, cols)) return witness(coeffs(S(1), S(0)));

  std::vector<std::vector<int>> rsets, csets;
  detail::combinations(rows, r, rsets);
  detail::combinations(cols, r, csets);
  std::vector<S> ts;
  std::vector<Mat<S>> pencil;
  for (int t = 0; t <= r; ++t) {
    ts.emplace_back(t);
    pencil.push_back(Mat<S>(b0 + S(t) * b1));
  }
  std::optional<Poly<S>> g;
  bool all_zero = true;
  for (const auto& rs : rsets)
    for (const auto& cs : csets) {
      std::vector<S> ys;
      for (const auto& m : pencil) {
        Mat<S> sub(r, r);
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < r; ++j) sub(i, j) = m(rs[static_cast<std::size_t>(i)], cs[static_cast<std::size_t>(j)]);
        ys.push_back(determinant(sub));
      }
      const Poly<S> minor = Poly<S>::interpolate(ts, ys);
      if (minor.is_zero()) continue;
      all_zero = false;
      g = g ? gcd(*g, minor) : minor.monic();
      if (g->degree() == 0) break;
    }
  if (all_zero) return witness(coeffs(S(1), S(0)));
  res.gcd = g;
  if (g->degree() >= 1) {
    const auto roots = detail::field_roots(*g);
    if (!roots.empty()) return witness(coeffs(S(1), roots.front()));
  }
  if (rank(b1) <= k) return witness(coeffs(S(0), S(1)));
  if (g->degree() >= 1) res.kind = R::Kind::ClosureOnly;
  return res;
}

template <class S>
PencilResult<S> pencil_min_rank_exact(const MatrixSubspace<S>& v, Index k) {
  if (v.dim() > 2) throw DimensionTooLarge("pencil route needs dim <= 2, got " + std::to_string(v.dim()));
  return pencil_min_rank_exact(v.basis(), k);
}

template <class S>
struct DefinitionalSample {
  bool disproved = false;
  std::optional<Mat<S>> x;
  std::optional<RankWitness<S>> obstruction;
  int trials_run = 0;
};

/// Random integer X (n x k, full column rank): any X with A |-> A X not onto
/// Mat(m, k) is an exact counterexample.
template <class S>
DefinitionalSample<S> definitional_transitivity_sample(const MatrixSubspace<S>& l, Index k, int trials,
                                                       std::uint64_t seed) {
  DefinitionalSample<S> res;
  if (k < 1 || k > l.cols()) throw ParameterOutOfRange("definitional sample needs 1 <= k <= n");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int t = 0; t < trials; ++t) {
    Mat<S> x(l.cols(), k);
    do {
      for (Index i = 0; i < x.rows(); ++i)
        for (Index j = 0; j < k; ++j) x(i, j) = l.field().from_int(d(rng));
    } while (rank(x) != k);
    res.trials_run = t + 1;
    if (rank(detail::restriction_matrix(l, x)) == l.rows() * k) continue;
    res.disproved = true;
    res.x = x;
    res.obstruction = detail::definitional_obstruction(l, x);
    return res;
  }
  return res;
}

template <class S>
bool verify_rank_spanning(const MatrixSubspace<S>& l, Index r, const std::vector<Mat<S>>& gens) {
  for (const auto& g : gens) {
    if (g.rows() != l.rows() || g.cols() != l.cols()) return false;
    if (!l.contains(g) || rank(g) > r) return false;
  }
  return MatrixSubspace<S>::from_generators(l.rows(), l.cols(), l.field(), gens) == l;
}

template <class S>
struct InvertibleElement {
  Vec<S> coefficients;
  Mat<S> matrix;
  int attempt = 0;
};

/// Random small-integer combinations of the canonical basis; the first with
/// nonzero determinant.
template <class S>
std::optional<InvertibleElement<S>> find_invertible(const MatrixSubspace<S>& l, int attempts, std::uint64_t seed) {
  if (l.rows() != l.cols()) throw ShapeMismatch("find_invertible needs a square ambient");
  if (l.dim() == 0) return std::nullopt;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int a = 0; a < attempts; ++a) {
    Vec<S> c(l.dim());
    for (Index i = 0; i < l.dim(); ++i) c(i) = l.field().from_int(d(rng));
    const Mat<S> m = l.element(c);
    if (!is_zero(determinant(m))) return InvertibleElement<S>{c, m, a + 1};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Transitivity.

namespace detail {

struct FFOutcome {
  bool low_rank = false;
  std::string route;
  std::string witness_text;
  Enumeration enumeration;
};

/// Exhaustive test over a finite field by the cheaper of the two equivalent
/// routes: enumerate L_perp (Azoff) or enumerate k-dimensional column spaces.
template <class F>
FFOutcome ff_transitivity(const MatrixSubspace<F>& l, const MatrixSubspace<F>& perp, Index k,
                          const DeciderConfig& cfg, std::optional<RankWitness<F>>* witness_out = nullptr) {
  const ff::Arith ar(l.field());
  const std::uint64_t q = ar.q();
  const std::uint64_t mn = static_cast<std::uint64_t>(l.rows() * l.cols());
  const std::uint64_t small = static_cast<std::uint64_t>(std::min(l.rows(), l.cols()));
  const std::uint64_t points = ff::projective_count(q, static_cast<std::uint64_t>(perp.dim()));
  const std::uint64_t spaces = ff::gaussian_binomial(q, small, static_cast<std::uint64_t>(k));
  const long double azoff_cost = static_cast<long double>(points) * mn * small;
  const std::uint64_t dk = static_cast<std::uint64_t>(std::max(l.rows(), l.cols())) * static_cast<std::uint64_t>(k);
  const long double def_cost =
      static_cast<long double>(spaces) * l.dim() * dk * (std::min<std::uint64_t>(l.dim(), dk) + small);
  const bool azoff_ok = points <= cfg.budget, def_ok = spaces <= cfg.budget;
  if (!azoff_ok && !def_ok)
    throw BudgetExceeded("finite-field check over " + l.field().tag() + " needs " + std::to_string(points) +
                         " points or " + std::to_string(spaces) + " subspaces");
  FFOutcome out;
  if (azoff_ok && (!def_ok || azoff_cost <= def_cost)) {
    out.route = "ff-preannihilator";
    const auto r = min_rank_ff_exhaustive(perp, cfg.budget, cfg.threads, k);
    out.enumeration = {l.field().tag(), "projective-points", r.enumerated, r.total};
    out.low_rank = r.min_rank >= 0 && r.min_rank <= k;
    if (out.low_rank) {
      out.witness_text = format_matrix(l.field(), r.witness->matrix);
      if (witness_out) *witness_out = r.witness;
    }
  } else {
    out.route = "ff-definitional";
    const auto r = definitional_check_ff(l, k, cfg.budget);
    out.enumeration = {l.field().tag(), "subspaces", r.visited, r.total};
    out.low_rank = !r.transitive;
    if (out.low_rank && r.obstruction) {
      out.witness_text = format_matrix(l.field(), r.obstruction->matrix);
      if (witness_out) *witness_out = r.obstruction;
    }
  }
  return out;
}

template <class V>
void add_strategy(V& v, const std::string& tag) {
  if (std::find(v.evidence.strategies.begin(), v.evidence.strategies.end(), tag) == v.evidence.strategies.end())
    v.evidence.strategies.push_back(tag);
}

/// Runs fn(field, reduced) over the configured primes, substituting further
/// primes for unusable ones until as many primes as configured have been used.
template <class S, class V, class Fn>
bool over_primes(const MatrixSubspace<S>& l, V& verdict, const DeciderConfig& cfg, Fn&& fn) {
  const std::size_t target = cfg.primes.size();
  std::size_t used = 0;
  bool all_ok = target > 0;
  std::vector<std::int64_t> queue = cfg.primes;
  std::int64_t next = 0;
  for (auto p : cfg.primes) next = std::max(next, p);
  int extra = 0;
  for (std::size_t i = 0; i < queue.size() && used < target; ++i) {
    const std::int64_t p = queue[i];
    bool usable = true;
    try {
      with_reduction(l, p, [&](const auto& field, const auto& reduced) {
        if (!reduced) {
          verdict.evidence.notes.push_back("dimension drops modulo " + std::to_string(p) + "; prime skipped");
          usable = false;
          return;
        }
        verdict.evidence.primes.push_back(p);
        if (!fn(field, *reduced)) all_ok = false;
      });
    } catch (const BadPrime& e) {
      verdict.evidence.notes.push_back(std::string("prime ") + std::to_string(p) + " skipped: " + e.what());
      usable = false;
    } catch (const BudgetExceeded& e) {
      verdict.evidence.budget_exceeded = true;
      verdict.evidence.notes.push_back(e.what());
      return false;
    }
    if (usable) {
      ++used;
    } else if (extra < 5) {
      next = next_prime(next);
      queue.push_back(next);
      ++extra;
    }
  }
  return all_ok && used == target;
}

}  // namespace detail

template <class S>
TransitivityVerdict<S> check_k_transitive(const MatrixSubspace<S>& l, Index k, const DeciderConfig& cfg = {}) {
  if (k < 1) throw ParameterOutOfRange("k must be at least 1");
  TransitivityVerdict<S> v;
  v.k = k;
  v.field = l.field().tag();
  v.finite_field = Field<S>::finite;
  const MatrixSubspace<S> perp = preannihilator(l);
  auto disprove = [&](std::optional<RankWitness<S>> w) {
    v.status = Status::Disproved;
    v.witness = std::move(w);
    return v;
  };

  if (k >= std::min(l.rows(), l.cols())) {
    detail::add_strategy(v, "full-space");
    if (perp.dim() == 0) {
      v.status = Status::CertifiedExact;
      return v;
    }
    return disprove(make_witness(perp, detail::unit_vector(l.field(), perp.dim(), 0), k));
  }
  if (perp.dim() == 0) {
    detail::add_strategy(v, "trivial-preannihilator");
    v.status = Status::CertifiedExact;
    return v;
  }

  detail::add_strategy(v, "basis-probe");
  for (Index i = 0; i < perp.dim(); ++i)
    if (auto w = make_witness(perp, detail::unit_vector(l.field(), perp.dim(), i), k)) return disprove(w);

  if constexpr (Field<S>::finite) {
    if (cfg.strategy == Strategy::Numeric || cfg.strategy == Strategy::Exact)
      v.evidence.notes.push_back("strategy " + to_string(cfg.strategy) + " needs Q or Q(i); using exhaustive enumeration");
    std::optional<RankWitness<S>> w;
    try {
      const auto out = detail::ff_transitivity(l, perp, k, cfg, &w);
      detail::add_strategy(v, out.route);
      v.evidence.enumerations.push_back(out.enumeration);
      v.evidence.primes.push_back(l.field().characteristic());
    } catch (const BudgetExceeded& e) {
      v.evidence.budget_exceeded = true;
      v.evidence.notes.push_back(e.what());
      return v;
    }
    if (w) return disprove(w);
    v.status = Status::CertifiedFiniteField;
    v.certified_over.push_back(l.field().tag());
    return v;
  } else {
    if (perp.dim() <= 2 && (cfg.strategy == Strategy::Certify || cfg.strategy == Strategy::Exact)) {
      detail::add_strategy(v, perp.dim() == 1 ? "singleton" : "pencil");
      const auto pr = pencil_min_rank_exact(perp, k);
      using Kind = typename PencilResult<S>::Kind;
      if (pr.kind == Kind::Witness) return disprove(make_witness(perp, pr.coefficients, k));
      if (pr.kind == Kind::NoLowRank) {
        v.status = Status::CertifiedExact;
        return v;
      }
      v.closure_certificate = pr.gcd->to_string(l.field());
      v.evidence.notes.push_back("rank <= k elements exist over the algebraic closure (gcd of minors has no root in " +
                                 v.field + "); no exact witness over the input field");
      return v;
    }
    if (cfg.strategy == Strategy::Exact) {
      v.evidence.notes.push_back("exact route needs dim L_perp <= 2");
      return v;
    }
    if (cfg.strategy == Strategy::Certify || cfg.strategy == Strategy::FiniteField) {
      const bool ok = detail::over_primes(l, v, cfg, [&](const auto& field, const auto& lp) {
        const auto out = detail::ff_transitivity(lp, preannihilator(lp), k, cfg);
        detail::add_strategy(v, out.route);
        v.evidence.enumerations.push_back(out.enumeration);
        if (out.low_rank) {
          v.evidence.notes.push_back(field.tag() + " has a rank <= " + std::to_string(k) +
                                     " element (field-local): " + out.witness_text);
          return false;
        }
        v.certified_over.push_back(field.tag());
        return true;
      });
      if (ok) {
        v.status = Status::CertifiedFiniteField;
        return v;
      }
      v.certified_over.clear();
    }
    if (cfg.strategy == Strategy::Certify || cfg.strategy == Strategy::Numeric) {
      detail::add_strategy(v, "numeric");
      v.evidence.seed = cfg.seed;
      const auto sr = rank_witness_search_numeric(perp, k, cfg.seed, cfg.numeric);
      if (sr.witness) return disprove(sr.witness);
      v.evidence.notes.push_back("numeric search found no exact witness in " + std::to_string(sr.restarts_used) +
                                 " restarts");
    }
    return v;
  }
}

// ---------------------------------------------------------------------------
// Separation.

template <class S>
SeparationVerdict<S> check_k_separating(const MatrixSubspace<S>& l, Index k, const DeciderConfig& cfg = {}) {
  if (k < 1 || k > l.cols()) throw ParameterOutOfRange("k-separation needs 1 <= k <= n");
  SeparationVerdict<S> v;
  v.k = k;
  v.field = l.field().tag();
  v.finite_field = Field<S>::finite;
  const Index n = l.cols();
  if (l.is_full()) {
    detail::add_strategy(v, "full-space");
    v.status = Status::CertifiedExact;
    return v;
  }

  // Standard-basis probe: U spanned by k-1 coordinate vectors, preferring the
  // failing U with the smallest W (ties: lexicographic).
  detail::add_strategy(v, "basis-probe");
  {
    std::vector<std::vector<int>> sets;
    if (k == 1)
      sets.push_back({});
    else
      detail::combinations(static_cast<int>(n), static_cast<int>(k - 1), sets);
    std::optional<std::pair<Index, Mat<S>>> best;
    for (const auto& set : sets) {
      Mat<S> u = zeros(l.field(), n, k - 1);
      for (std::size_t j = 0; j < set.size(); ++j) u(set[j], static_cast<Index>(j)) = l.field().one();
      auto [wdim, x] = detail::separation_failure_at(l, u);
      if (x && (!best || wdim < best->first)) best.emplace(wdim, *x);
    }
    if (best) {
      v.status = Status::Disproved;
      v.witness = best->second;
      return v;
    }
    if (k == 1) {
      v.status = Status::CertifiedExact;  // the only U is {0}
      return v;
    }
  }

  if constexpr (Field<S>::finite) {
    detail::add_strategy(v, "ff-exhaustive");
    try {
      const auto r = separation_check_ff(l, k, cfg.budget);
      v.evidence.enumerations.push_back({l.field().tag(), "subspaces", r.visited, r.total});
      v.evidence.primes.push_back(l.field().characteristic());
      if (r.witness) {
        v.status = Status::Disproved;
        v.witness = r.witness;
        return v;
      }
    } catch (const BudgetExceeded& e) {
      v.evidence.budget_exceeded = true;
      v.evidence.notes.push_back(e.what());
      return v;
    }
    v.status = Status::CertifiedFiniteField;
    v.certified_over.push_back(l.field().tag());
    return v;
  } else {
    if (cfg.strategy != Strategy::FiniteField && cfg.strategy != Strategy::Exact) {
      detail::add_strategy(v, "random-sampling");
      v.evidence.seed = cfg.seed;
      std::mt19937_64 rng(cfg.seed);
      std::uniform_int_distribution<int> d(-2, 2);
      for (int t = 0; t < cfg.sampling_trials; ++t) {
        Mat<S> u(n, k - 1);
        do {
          for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < k - 1; ++j) u(i, j) = l.field().from_int(d(rng));
        } while (rank(u) != k - 1);
        if (auto x = detail::separation_failure_at(l, u).second) {
          v.status = Status::Disproved;
          v.witness = *x;
          return v;
        }
      }
    }
    if (cfg.strategy == Strategy::Certify || cfg.strategy == Strategy::FiniteField) {
      detail::add_strategy(v, "ff-exhaustive");
      const bool ok = detail::over_primes(l, v, cfg, [&](const auto& field, const auto& lp) {
        const auto r = separation_check_ff(lp, k, cfg.budget);
        v.evidence.enumerations.push_back({field.tag(), "subspaces", r.visited, r.total});
        if (r.witness) {
          v.evidence.notes.push_back(field.tag() + " has a non-separated tuple (field-local): " +
                                     format_matrix(field, *r.witness));
          return false;
        }
        v.certified_over.push_back(field.tag());
        return true;
      });
      if (ok) {
        v.status = Status::CertifiedFiniteField;
        return v;
      }
      v.certified_over.clear();
    }
    return v;
  }
}

}  // namespace translab
