#pragma once

// Exhaustive enumeration engine over finite fields.
//
// Field elements are encoded as their Field<S>::index_of value (0 = zero,
// 1 = one for both GF(p) and GF(p^2)). Matrices are flat row-major arrays of
// these codes. Enumeration order over projective points of GF(q)^d is
// lexicographic on (position of the leading one, remaining coordinates), the
// last coordinate varying fastest.

#include "translab/errors.hpp"
#include "translab/field.hpp"
#include "translab/linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <thread>
#include <vector>

namespace translab::ff {

using Code = std::uint32_t;

class Arith {
 public:
  explicit Arith(const Field<PrimeField>& f) : p_(static_cast<Code>(f.modulus())), q_(p_) { init(); }
  explicit Arith(const Field<QuadExt>& f)
      : p_(static_cast<Code>(f.modulus())), q_(p_ * p_), ext_(true), omega_(static_cast<Code>(f.omega())) {
    init();
  }

  Code q() const { return q_; }

  Code add(Code x, Code y) const {
    if (!ext_) return (x + y) % p_;
    return (x % p_ + y % p_) % p_ + ((x / p_ + y / p_) % p_) * p_;
  }
  Code neg(Code x) const {
    if (!ext_) return x ? p_ - x : 0;
    const Code a = x % p_, b = x / p_;
    return (a ? p_ - a : 0) + (b ? p_ - b : 0) * p_;
  }
  Code sub(Code x, Code y) const { return add(x, neg(y)); }
  Code mul(Code x, Code y) const {
    if (!ext_) return static_cast<Code>(std::uint64_t{x} * y % p_);
    const std::uint64_t a = x % p_, b = x / p_, c = y % p_, d = y / p_;
    const std::uint64_t re = (a * c + b * d % p_ * omega_) % p_;
    const std::uint64_t im = (a * d + b * c) % p_;
    return static_cast<Code>(re + im * p_);
  }
  Code inv(Code x) const {
    if (!inv_.empty()) return inv_[x];
    return slow_inv(x);
  }

  /// Rank of a rows x cols matrix, destroying its contents.
  int rank_inplace(Code* m, int rows, int cols) const {
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
      int sel = r;
      while (sel < rows && m[sel * cols + c] == 0) ++sel;
      if (sel == rows) continue;
      if (sel != r)
        for (int j = c; j < cols; ++j) std::swap(m[sel * cols + j], m[r * cols + j]);
      const Code pinv = inv(m[r * cols + c]);
      for (int i = r + 1; i < rows; ++i) {
        const Code lead = m[i * cols + c];
        if (!lead) continue;
        const Code f = neg(mul(lead, pinv));
        for (int j = c; j < cols; ++j)
          if (m[r * cols + j]) m[i * cols + j] = add(m[i * cols + j], mul(f, m[r * cols + j]));
      }
      ++r;
    }
    return r;
  }

  int rank(std::vector<Code> m, int rows, int cols) const { return rank_inplace(m.data(), rows, cols); }

 private:
  void init() {
    if (q_ <= (1u << 20)) {
      inv_.assign(q_, 0);
      for (Code x = 1; x < q_; ++x) inv_[x] = slow_inv(x);
    }
  }
  Code slow_inv(Code x) const {
    // x^(q-2) by square and multiply.
    Code result = 1, base = x;
    std::uint64_t e = q_ - 2;
    while (e) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }

  Code p_;
  Code q_;
  bool ext_ = false;
  Code omega_ = 0;
  std::vector<Code> inv_;
};

/// Reduced row-echelon form in place; returns the pivot columns.
inline std::vector<int> rref_inplace(const Arith& ar, std::vector<Code>& m, int rows, int cols) {
  std::vector<int> piv;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int sel = r;
    while (sel < rows && m[static_cast<std::size_t>(sel * cols + c)] == 0) ++sel;
    if (sel == rows) continue;
    if (sel != r)
      for (int j = 0; j < cols; ++j) std::swap(m[static_cast<std::size_t>(sel * cols + j)], m[static_cast<std::size_t>(r * cols + j)]);
    const Code pinv = ar.inv(m[static_cast<std::size_t>(r * cols + c)]);
    for (int j = c; j < cols; ++j) m[static_cast<std::size_t>(r * cols + j)] = ar.mul(m[static_cast<std::size_t>(r * cols + j)], pinv);
    for (int i = 0; i < rows; ++i) {
      const Code lead = m[static_cast<std::size_t>(i * cols + c)];
      if (i == r || !lead) continue;
      const Code f = ar.neg(lead);
      for (int j = c; j < cols; ++j)
        if (m[static_cast<std::size_t>(r * cols + j)])
          m[static_cast<std::size_t>(i * cols + j)] =
              ar.add(m[static_cast<std::size_t>(i * cols + j)], ar.mul(f, m[static_cast<std::size_t>(r * cols + j)]));
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

/// Right null space basis (free-variable order), each vector of length cols.
inline std::vector<std::vector<Code>> right_kernel(const Arith& ar, std::vector<Code> m, int rows, int cols) {
  const std::vector<int> piv = rref_inplace(ar, m, rows, cols);
  std::vector<bool> is_piv(static_cast<std::size_t>(cols), false);
  for (int p : piv) is_piv[static_cast<std::size_t>(p)] = true;
  std::vector<std::vector<Code>> out;
  for (int f = 0; f < cols; ++f) {
    if (is_piv[static_cast<std::size_t>(f)]) continue;
    std::vector<Code> v(static_cast<std::size_t>(cols), 0);
    v[static_cast<std::size_t>(f)] = 1;
    for (std::size_t k = 0; k < piv.size(); ++k)
      v[static_cast<std::size_t>(piv[k])] = ar.neg(m[k * static_cast<std::size_t>(cols) + static_cast<std::size_t>(f)]);
    out.push_back(std::move(v));
  }
  return out;
}

template <class S>
std::vector<Code> encode(const Field<S>& f, const Mat<S>& a) {
  std::vector<Code> out(static_cast<std::size_t>(a.size()));
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out[static_cast<std::size_t>(i * a.cols() + j)] = static_cast<Code>(f.index_of(a(i, j)));
  return out;
}

template <class S>
Mat<S> decode(const Field<S>& f, const std::vector<Code>& codes, Index rows, Index cols) {
  Mat<S> a(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) a(i, j) = f.element(codes[static_cast<std::size_t>(i * cols + j)]);
  return a;
}

template <class S>
Vec<S> decode_vector(const Field<S>& f, const std::vector<Code>& codes) {
  Vec<S> v(static_cast<Index>(codes.size()));
  for (std::size_t i = 0; i < codes.size(); ++i) v(static_cast<Index>(i)) = f.element(codes[i]);
  return v;
}

/// q^e, saturating at UINT64_MAX.
inline std::uint64_t saturating_pow(std::uint64_t q, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / q) return std::numeric_limits<std::uint64_t>::max();
    r *= q;
  }
  return r;
}

/// Number of projective points (q^d - 1)/(q - 1), saturating.
inline std::uint64_t projective_count(std::uint64_t q, std::uint64_t d) {
  std::uint64_t total = 0;
  for (std::uint64_t i = 0; i < d; ++i) {
    const std::uint64_t block = saturating_pow(q, d - 1 - i);
    if (block == std::numeric_limits<std::uint64_t>::max() ||
        total > std::numeric_limits<std::uint64_t>::max() - block)
      return std::numeric_limits<std::uint64_t>::max();
    total += block;
  }
  return total;
}

/// Gaussian binomial [n choose k]_q, saturating.
inline std::uint64_t gaussian_binomial(std::uint64_t q, std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  // Sum over pivot sets of q^(free entries); computed by the recursion
  // [n,k] = [n-1,k-1] + q^k [n-1,k].
  std::vector<std::vector<long double>> g(n + 1, std::vector<long double>(k + 1, 0));
  for (std::uint64_t i = 0; i <= n; ++i) g[i][0] = 1;
  for (std::uint64_t i = 1; i <= n; ++i)
    for (std::uint64_t j = 1; j <= std::min(i, k); ++j)
      g[i][j] = g[i - 1][j - 1] + static_cast<long double>(saturating_pow(q, j)) * g[i - 1][j];
  const long double v = g[n][k];
  if (v >= static_cast<long double>(std::numeric_limits<std::uint64_t>::max()))
    return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(v + 0.5L);
}

/// One visited point of a subspace enumeration.
struct Point {
  std::uint64_t index;
  const std::vector<Code>& coeffs;
  const std::vector<Code>& matrix;
};

/// Visits every projective point of span(basis) in canonical order, within
/// [begin, end) of the global index. The visitor returns true to stop early.
/// Returns the number of points visited.
inline std::uint64_t scan_projective(const Arith& ar, const std::vector<std::vector<Code>>& basis,
                                     std::uint64_t begin, std::uint64_t end,
                                     const std::function<bool(const Point&)>& visit) {
  const std::size_t d = basis.size();
  if (d == 0 || begin >= end) return 0;
  const std::size_t len = basis[0].size();
  const Code q = ar.q();

  std::vector<std::uint64_t> offset(d + 1, 0);
  for (std::size_t i = 0; i < d; ++i) offset[i + 1] = offset[i] + saturating_pow(q, d - 1 - i);
  end = std::min(end, offset[d]);

  std::vector<Code> coeffs(d, 0), mat(len, 0);
  auto rebuild = [&]() {
    std::fill(mat.begin(), mat.end(), 0);
    for (std::size_t j = 0; j < d; ++j) {
      if (!coeffs[j]) continue;
      for (std::size_t t = 0; t < len; ++t)
        if (basis[j][t]) mat[t] = ar.add(mat[t], ar.mul(coeffs[j], basis[j][t]));
    }
  };
  auto position = [&](std::uint64_t idx) {
    std::size_t lead = 0;
    while (offset[lead + 1] <= idx) ++lead;
    std::fill(coeffs.begin(), coeffs.end(), 0);
    coeffs[lead] = 1;
    std::uint64_t tail = idx - offset[lead];
    for (std::size_t j = d; j-- > lead + 1;) {
      coeffs[j] = static_cast<Code>(tail % q);
      tail /= q;
    }
    rebuild();
    return lead;
  };

  std::size_t lead = position(begin);
  std::uint64_t visited = 0;
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    ++visited;
    if (visit(Point{idx, coeffs, mat})) break;
    if (idx + 1 == end) break;
    if (idx + 1 == offset[lead + 1]) {
      lead = position(idx + 1);
      continue;
    }
    // Odometer step on coordinates lead+1..d-1, updating the matrix in place.
    for (std::size_t j = d; j-- > lead + 1;) {
      const Code old = coeffs[j];
      const Code next = old + 1 == q ? 0 : old + 1;
      coeffs[j] = next;
      const Code delta = ar.sub(next, old);
      for (std::size_t t = 0; t < len; ++t)
        if (basis[j][t]) mat[t] = ar.add(mat[t], ar.mul(delta, basis[j][t]));
      if (next != 0) break;
    }
  }
  return visited;
}

/// Splits [0, total) into `threads` contiguous chunks and runs fn on each.
/// Chunk results are indexed by chunk so merging is order-independent.
template <class Result>
std::vector<Result> run_chunks(std::uint64_t total, unsigned threads,
                               const std::function<Result(std::uint64_t, std::uint64_t)>& fn) {
  threads = std::max(1u, threads);
  if (threads == 1 || total < threads) return {fn(0, total)};
  std::vector<Result> results(threads);
  std::vector<std::thread> pool;
  const std::uint64_t step = (total + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t b = std::min(total, t * step), e = std::min(total, b + step);
    pool.emplace_back([&, t, b, e] { results[t] = fn(b, e); });
  }
  for (auto& th : pool) th.join();
  return results;
}

/// Visits every k-dimensional subspace of GF(q)^n, given as the n x k matrix
/// whose columns are the rows of its k x n RREF. Pivot sets are visited in
/// lexicographic order, free entries by odometer. Visitor returns true to stop.
inline std::uint64_t for_each_subspace(const Arith& ar, int n, int k,
                                       const std::function<bool(const std::vector<Code>&)>& visit) {
  if (k < 0 || k > n) return 0;
  std::vector<int> piv(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) piv[static_cast<std::size_t>(i)] = i;
  std::uint64_t visited = 0;
  std::vector<Code> x(static_cast<std::size_t>(n * k));
  while (true) {
    // Free positions (row r of the RREF, column c): c > piv[r], c not a pivot.
    std::vector<std::pair<int, int>> free;
    for (int r = 0; r < k; ++r)
      for (int c = piv[static_cast<std::size_t>(r)] + 1; c < n; ++c)
        if (std::find(piv.begin(), piv.end(), c) == piv.end()) free.emplace_back(r, c);
    std::vector<Code> digits(free.size(), 0);
    while (true) {
      std::fill(x.begin(), x.end(), 0);
      for (int r = 0; r < k; ++r) x[static_cast<std::size_t>(piv[static_cast<std::size_t>(r)] * k + r)] = 1;
      for (std::size_t f = 0; f < free.size(); ++f)
        x[static_cast<std::size_t>(free[f].second * k + free[f].first)] = digits[f];
      ++visited;
      if (visit(x)) return visited;
      std::size_t f = free.size();
      while (f > 0) {
        --f;
        if (++digits[f] < ar.q()) break;
        digits[f] = 0;
        if (f == 0) {
          f = free.size() + 1;  // sentinel: odometer wrapped
          break;
        }
      }
      if (free.empty() || f == free.size() + 1) break;
    }
    // Next pivot combination.
    int i = k - 1;
    while (i >= 0 && piv[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++piv[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) piv[static_cast<std::size_t>(j)] = piv[static_cast<std::size_t>(j - 1)] + 1;
  }
  return visited;
}

/// Visits every vector of GF(q)^n up to scalars (projective points), in the
/// same order as scan_projective on the standard basis.
inline std::uint64_t for_each_projective_vector(const Arith& ar, int n,
                                                const std::function<bool(const std::vector<Code>&)>& visit) {
  std::vector<std::vector<Code>> e(static_cast<std::size_t>(n), std::vector<Code>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  return scan_projective(ar, e, 0, projective_count(ar.q(), static_cast<std::uint64_t>(n)),
                         [&](const Point& p) { return visit(p.matrix); });
}

}  // namespace translab::ff
