#include "translab/families.hpp"
#include "translab/subspace.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace translab;

namespace {

const Field<Rational> Q;

template <class S>
MatrixSubspace<S> random_subspace(const Field<S>& f, std::mt19937_64& rng, Index rows, Index cols, Index gens,
                                  int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  Mat<S> coords(gens, rows * cols);
  for (Index i = 0; i < gens; ++i)
    for (Index j = 0; j < rows * cols; ++j) coords(i, j) = f.from_int(d(rng));
  return MatrixSubspace<S>(rows, cols, f, coords);
}

template <class S>
Mat<S> random_matrix(const Field<S>& f, std::mt19937_64& rng, Index rows, Index cols, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  Mat<S> a(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) a(i, j) = f.from_int(d(rng));
  return a;
}

MatrixSubspace<Rational> span1(const Mat<Rational>& a) {
  const std::vector<Mat<Rational>> g{a};
  return MatrixSubspace<Rational>::from_generators(Q, g);
}

}  // namespace

TEST(FromGenerators, Examples) {
  const std::vector<Mat<Rational>> two{identity(Q, 2), Mat<Rational>(identity(Q, 2) * Rational(2))};
  EXPECT_EQ(MatrixSubspace<Rational>::from_generators(Q, two).dim(), 1);
  std::vector<Mat<Rational>> units;
  for (Index q = 0; q < 9; ++q) units.push_back(matrix_unit(Q, 3, 3, q / 3, q % 3));
  EXPECT_EQ(MatrixSubspace<Rational>::from_generators(Q, units).dim(), 9);
  EXPECT_EQ(toeplitz_space(Q, 3).dim(), 5);
}

TEST(FromGenerators, Errors) {
  const std::vector<Mat<Rational>> bad{identity(Q, 2), identity(Q, 3)};
  EXPECT_THROW(MatrixSubspace<Rational>::from_generators(Q, bad), ShapeMismatch);
  EXPECT_THROW(MatrixSubspace<Rational>::from_generators(Q, std::vector<Mat<Rational>>{}), ShapeMismatch);
  EXPECT_EQ(MatrixSubspace<Rational>::from_generators(2, 3, Q, std::vector<Mat<Rational>>{}).dim(), 0);
}

TEST(Contains, Examples) {
  EXPECT_TRUE(toeplitz_space(Q, 3).contains(identity(Q, 3)));
  EXPECT_FALSE(trace_zero(Q, 3).contains(identity(Q, 3)));
  EXPECT_TRUE(trace_zero(Q, 3).contains(matrix_unit(Q, 3, 3, 0, 1)));
  EXPECT_TRUE(toeplitz_space(Q, 3).contains(zeros(Q, 3, 3)));
  EXPECT_TRUE(MatrixSubspace<Rational>::zero(3, 3, Q).contains(zeros(Q, 3, 3)));
  EXPECT_THROW(toeplitz_space(Q, 3).contains(zeros(Q, 2, 3)), ShapeMismatch);
}

TEST(Preannihilator, Examples) {
  EXPECT_EQ(preannihilator(full_space(Q, 3, 3)).dim(), 0);
  const auto tp = preannihilator(toeplitz_space(Q, 3));
  EXPECT_EQ(tp.dim(), 4);
  for (Index b = 0; b < tp.dim(); ++b) {
    const Mat<Rational> t = tp.basis(b);
    for (Index d = -2; d <= 2; ++d) {
      Rational s = 0;
      for (Index i = 0; i < 3; ++i)
        if (i + d >= 0 && i + d < 3) s += t(i, i + d);
      EXPECT_EQ(s, 0);
    }
  }
  EXPECT_EQ(preannihilator(span1(from_ints(Q, 3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 0}))).dim(), 8);
}

TEST(Preannihilator, TracePairingConvention) {
  // L = span{E_12} in Mat(2, 2): Tr(E_12 T) = T_21.
  const auto perp = preannihilator(span1(matrix_unit(Q, 2, 2, 0, 1)));
  EXPECT_EQ(perp.dim(), 3);
  EXPECT_FALSE(perp.contains(matrix_unit(Q, 2, 2, 1, 0)));
  EXPECT_TRUE(perp.contains(matrix_unit(Q, 2, 2, 0, 1)));
  // Rectangular ambient: the pre-annihilator of L in Mat(2, 3) lives in Mat(3, 2).
  const auto rect = preannihilator(span1(from_ints(Q, 2, 3, {1, 2, 0, 0, 0, 3})));
  EXPECT_EQ(rect.rows(), 3);
  EXPECT_EQ(rect.cols(), 2);
  for (const auto& t : rect.basis())
    EXPECT_EQ(Mat<Rational>(from_ints(Q, 2, 3, {1, 2, 0, 0, 0, 3}) * t).trace(), 0);
}

TEST(SumIntersect, Examples) {
  const auto t3 = toeplitz_space(Q, 3);
  EXPECT_EQ(sum(t3, t3), t3);
  EXPECT_EQ(intersect(t3, t3), t3);
  EXPECT_EQ(intersect(t3, trace_zero(Q, 3)).dim(), 4);
  EXPECT_EQ(sum(span1(matrix_unit(Q, 2, 2, 0, 0)), span1(matrix_unit(Q, 2, 2, 1, 1))).dim(), 2);
}

TEST(Tensor, Examples) {
  EXPECT_EQ(tensor(span1(identity(Q, 2)), full_space(Q, 2, 2)).dim(), 4);
  EXPECT_EQ(tensor(toeplitz_space(Q, 2), toeplitz_space(Q, 2)).dim(), 9);
  EXPECT_THROW(tensor(toeplitz_space(Field<PrimeField>(7), 2), toeplitz_space(Field<PrimeField>(5), 2)), FieldMismatch);
}

TEST(ProductSpan, Examples) {
  EXPECT_TRUE(product_span(full_space(Q, 2, 2), full_space(Q, 2, 2)).is_full());
  EXPECT_EQ(product_span(toeplitz_space(Q, 3), toeplitz_space(Q, 3)).dim(), 9);
  const auto e12 = span1(matrix_unit(Q, 2, 2, 0, 1));
  EXPECT_TRUE(product_span(e12, e12).is_zero());
  EXPECT_THROW(product_span(full_space(Q, 2, 3), full_space(Q, 2, 3)), ShapeMismatch);
}

TEST(PowerSpanIndex, Examples) {
  EXPECT_EQ(power_span_index(full_space(Q, 3, 3), 5), 1);
  EXPECT_EQ(power_span_index(toeplitz_space(Q, 3), 5), 2);
  EXPECT_EQ(power_span_index(dual_transitive_8dim(Q), 5), 3);
  EXPECT_FALSE(power_span_index(span1(matrix_unit(Q, 2, 2, 0, 1)), 4).has_value());
}

TEST(EquivalenceTransform, Examples) {
  const auto t3 = toeplitz_space(Q, 3);
  EXPECT_EQ(equivalence_transform(identity(Q, 3), t3, identity(Q, 3)), t3);
  const Mat<Rational> s = from_ints(Q, 3, 3, {1, 2, 0, 0, 1, 0, 3, 0, 1});
  const Mat<Rational> t = from_ints(Q, 3, 3, {2, 0, 0, 1, 1, 0, 0, 5, 1});
  EXPECT_TRUE(equivalence_transform(s, full_space(Q, 3, 3), t).is_full());
  EXPECT_THROW(equivalence_transform(zeros(Q, 3, 3), t3, t), SingularTransform);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    Mat<Rational> a = random_matrix(Q, rng, 3, 3, -3, 3), b = random_matrix(Q, rng, 3, 3, -3, 3);
    if (!is_invertible(a) || !is_invertible(b)) continue;
    EXPECT_EQ(equivalence_transform(a, t3, b).dim(), 5);
  }
}

TEST(Compress, Examples) {
  const auto t3 = toeplitz_space(Q, 3);
  EXPECT_EQ(compress(identity(Q, 3), t3, identity(Q, 3)), t3);
  Mat<Rational> p = zeros(Q, 4, 4);
  p(0, 0) = 1;
  p(2, 2) = 1;
  EXPECT_EQ(compress(p, full_space(Q, 4, 4), p), full_space(Q, 2, 2));
  Mat<Rational> notidem = identity(Q, 3);
  notidem(0, 0) = 2;
  EXPECT_THROW(compress(notidem, t3, identity(Q, 3)), NotIdempotent);
}

TEST(Compress, CornerIntersection) {
  // Intersect the corner-Toeplitz spaces of M_5 and compress to e_0, e_1, e_2.
  const auto inter = corner_toeplitz_intersection(Q, 5);
  EXPECT_EQ(inter, toeplitz_space(Q, 5));
  const Mat<Rational> p = coordinate_projection(Q, 5, 2, 3);
  const auto c = compress(p, inter, p);
  EXPECT_EQ(c.dim(), 5);
  EXPECT_EQ(c, toeplitz_space(Q, 3));
}

TEST(Compress, DimensionBound) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 20; ++t) {
    const auto l = random_subspace(Q, rng, 4, 4, 1 + t % 6, -2, 2);
    // Oblique rank-2 idempotent P = B (C B)^{-1} C with C B = I.
    const Mat<Rational> b = from_ints(Q, 4, 2, {1, 0, 1, 1, 0, 2, 0, 0});
    const Mat<Rational> c = from_ints(Q, 2, 4, {1, 0, 0, 0, -1, 1, 0, 0});
    const Mat<Rational> proj = b * c;
    ASSERT_EQ(Mat<Rational>(proj * proj), proj);
    EXPECT_LE(compress(proj, l, identity(Q, 4)).dim(), l.dim());
    EXPECT_EQ(compress(identity(Q, 4), l, identity(Q, 4)).dim(), l.dim());
  }
}

TEST(TransposeAdjoint, Examples) {
  const auto t3 = toeplitz_space(Q, 3);
  EXPECT_EQ(transpose_space(t3), t3);
  EXPECT_EQ(transpose_space(span1(matrix_unit(Q, 2, 2, 0, 1))), span1(matrix_unit(Q, 2, 2, 1, 0)));
  const Field<GaussRational> qi;
  Mat<GaussRational> a(2, 2);
  a << GaussRational(1, 2), GaussRational(0, 1), GaussRational(3), GaussRational(0, -1);
  const auto l = MatrixSubspace<GaussRational>::from_generators(qi, std::vector<Mat<GaussRational>>{a});
  EXPECT_EQ(adjoint_space(adjoint_space(l)), l);
  EXPECT_NE(adjoint_space(l), transpose_space(l));
}

TEST(DiagonalBimodule, Examples) {
  const auto c = diagonal_bimodule_closure(span1(identity(Q, 2)));
  EXPECT_EQ(c, sum(span1(matrix_unit(Q, 2, 2, 0, 0)), span1(matrix_unit(Q, 2, 2, 1, 1))));
  EXPECT_TRUE(diagonal_bimodule_closure(toeplitz_space(Q, 3)).is_full());
  const auto pat = pattern_subspace(3, 3, Q, {{0, 0}, {1, 2}, {2, 1}});
  EXPECT_EQ(diagonal_bimodule_closure(pat), pat);
}

TEST(Properties, DualityInvolutionAndDimension) {
  std::mt19937_64 rng(21);
  const Field<PrimeField> f5(5);
  for (int t = 0; t < 40; ++t) {
    const Index rows = 1 + t % 3, cols = 1 + (t / 3) % 4;
    const auto l = random_subspace(Q, rng, rows, cols, t % 7, -3, 3);
    const auto perp = preannihilator(l);
    EXPECT_EQ(l.dim() + perp.dim(), rows * cols);
    EXPECT_EQ(preannihilator(perp), l);
    const auto lf = random_subspace(f5, rng, rows, cols, t % 7, 0, 4);
    EXPECT_EQ(preannihilator(preannihilator(lf)), lf);
  }
}

template <class S>
void check_dual_tensor(const Field<S>& f, std::mt19937_64& rng, int trials, int lo, int hi) {
  for (int t = 0; t < trials; ++t) {
    const auto l = random_subspace(f, rng, 2, 2, t % 5, lo, hi);
    const auto m = random_subspace(f, rng, 2, 3, (t * 7) % 7, lo, hi);
    const auto lhs = preannihilator(tensor(l, m));
    const auto rhs = sum(tensor(preannihilator(l), full_space(f, 3, 2)),
                         tensor(full_space(f, 2, 2), preannihilator(m)));
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(Properties, DualTensorIdentity) {
  std::mt19937_64 rng(22);
  check_dual_tensor(Q, rng, 10, -2, 2);
  check_dual_tensor(Field<PrimeField>(5), rng, 20, 0, 4);
}

TEST(Properties, ProductSpanAssociative) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 15; ++t) {
    const auto a = random_subspace(Q, rng, 2, 3, 1 + t % 3, -2, 2);
    const auto b = random_subspace(Q, rng, 3, 2, 1 + t % 2, -2, 2);
    const auto c = random_subspace(Q, rng, 2, 3, 1 + (t + 1) % 3, -2, 2);
    EXPECT_EQ(product_span(product_span(a, b), c), product_span(a, product_span(b, c)));
  }
}
