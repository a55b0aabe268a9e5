#pragma once

#include "translab/linalg.hpp"
#include "translab/subspace.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace translab {

/// A nonzero element of V with rank at most `rank_bound`, given both by its
/// coefficients on V's canonical basis and as an assembled matrix.
template <class S>
struct RankWitness {
  Vec<S> coefficients;
  Mat<S> matrix;
  Index rank_bound = 0;
  Index rank = 0;
};

/// Independent re-check: membership, coefficient consistency, nonzero, rank.
template <class S>
bool verify_rank_witness(const MatrixSubspace<S>& v, const RankWitness<S>& w) {
  if (w.matrix.rows() != v.rows() || w.matrix.cols() != v.cols()) return false;
  if (is_zero_matrix(w.matrix)) return false;
  const auto c = v.coordinates_of(w.matrix);
  if (!c || *c != w.coefficients) return false;
  const Index r = rank(w.matrix);
  return r == w.rank && r <= w.rank_bound;
}

/// Builds and verifies a witness from coefficients; nullopt if it fails.
template <class S>
std::optional<RankWitness<S>> make_witness(const MatrixSubspace<S>& v, const Vec<S>& coeffs, Index k) {
  RankWitness<S> w;
  w.coefficients = bind(v.field(), Mat<S>(coeffs));
  w.matrix = v.element(w.coefficients);
  if (is_zero_matrix(w.matrix)) return std::nullopt;
  w.rank = rank(w.matrix);
  w.rank_bound = k;
  if (w.rank > k) return std::nullopt;
  return w;
}

template <class S>
std::optional<RankWitness<S>> make_witness_from_matrix(const MatrixSubspace<S>& v, const Mat<S>& t, Index k) {
  const auto c = v.coordinates_of(t);
  if (!c) return std::nullopt;
  return make_witness(v, *c, k);
}

struct NumericOptions {
  double tolerance = 1e-9;
  int iterations = 2000;
  int restarts = 8;
  std::int64_t max_denominator = 1000000;
};

}  // namespace translab
