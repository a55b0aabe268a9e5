#include "translab/deciders.hpp"
#include "translab/families.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace translab;

namespace {

const Field<Rational> Q;
const Field<GaussRational> Qi;
const Field<PrimeField> F2(2), F3(3), F5(5), F7(7);

template <class S>
MatrixSubspace<S> random_subspace(const Field<S>& f, std::mt19937_64& rng, Index rows, Index cols, Index gens) {
  Mat<S> coords(gens, rows * cols);
  if constexpr (Field<S>::finite) {
    std::uniform_int_distribution<std::int64_t> d(0, static_cast<std::int64_t>(ff::Arith(f).q()) - 1);
    for (Index i = 0; i < gens; ++i)
      for (Index j = 0; j < rows * cols; ++j) coords(i, j) = f.element(d(rng));
  } else {
    std::uniform_int_distribution<int> d(-3, 3);
    for (Index i = 0; i < gens; ++i)
      for (Index j = 0; j < rows * cols; ++j) coords(i, j) = f.from_int(d(rng));
  }
  MatrixSubspace<S> out(rows, cols, f, coords);
  return out.dim() == gens ? out : random_subspace(f, rng, rows, cols, gens);
}

template <class S>
MatrixSubspace<S> span_of(const Field<S>& f, std::vector<Mat<S>> g) {
  return MatrixSubspace<S>::from_generators(f, g);
}

template <class S>
Mat<S> ints(const Field<S>& f, Index r, Index c, std::initializer_list<long long> v) {
  return from_ints(f, r, c, v);
}

}  // namespace

// ---------------------------------------------------------------------------
// check_k_transitive

TEST(CheckKTransitive, FullSpaceIsCertifiedExact) {
  const auto v = check_k_transitive(full_space(Q, 3, 3), 1);
  EXPECT_EQ(v.status, Status::CertifiedExact);
  EXPECT_FALSE(v.witness);
}

TEST(CheckKTransitive, RankAnnihilator) {
  const auto l = rank_annihilator_space(Q, 3, 3, 1);
  EXPECT_EQ(check_k_transitive(l, 1).status, Status::CertifiedExact);
  const auto v = check_k_transitive(l, 2);
  ASSERT_EQ(v.status, Status::Disproved);
  ASSERT_TRUE(v.witness);
  EXPECT_TRUE(verify_rank_witness(preannihilator(l), *v.witness));
  EXPECT_TRUE(span_of(Q, {v.witness->matrix}) == span_of(Q, {rank_annihilator_witness(Q, 3, 3, 1)}));
}

TEST(CheckKTransitive, ToeplitzFourCertifiedOverTwoPrimes) {
  const auto v = check_k_transitive(toeplitz_space(Q, 4), 1);
  EXPECT_EQ(v.status, Status::CertifiedFiniteField);
  EXPECT_EQ(v.certified_over, (std::vector<std::string>{"GF(5)", "GF(7)"}));
  EXPECT_EQ(v.evidence.primes, (std::vector<std::int64_t>{5, 7}));
  EXPECT_NE(v.validity().find("not a proof"), std::string::npos);
}

TEST(CheckKTransitive, TraceZeroIsSingletonExact) {
  EXPECT_EQ(check_k_transitive(trace_zero(Q, 3), 2).status, Status::CertifiedExact);
}

TEST(CheckKTransitive, ShortCircuitAtFullRank) {
  const auto v = check_k_transitive(toeplitz_space(Q, 3), 3);
  ASSERT_EQ(v.status, Status::Disproved);
  EXPECT_TRUE(verify_rank_witness(preannihilator(toeplitz_space(Q, 3)), *v.witness));
  EXPECT_EQ(check_k_transitive(full_space(Q, 2, 3), 5).status, Status::CertifiedExact);
}

TEST(CheckKTransitive, RejectsZeroK) {
  EXPECT_THROW(check_k_transitive(full_space(Q, 2, 2), 0), ParameterOutOfRange);
}

TEST(CheckKTransitive, FiniteFieldInputIsFieldLocal) {
  const auto v = check_k_transitive(toeplitz_space(F5, 3), 2);
  ASSERT_EQ(v.status, Status::Disproved);
  EXPECT_NE(v.validity().find("only"), std::string::npos);
  const auto c = check_k_transitive(toeplitz_space(F5, 4), 1);
  EXPECT_EQ(c.status, Status::CertifiedFiniteField);
  EXPECT_EQ(c.certified_over, std::vector<std::string>{"GF(5)"});
}

TEST(CheckKTransitive, ToeplitzThreeDisprovedAtTwo) {
  const auto l = toeplitz_space(Q, 3);
  const auto v = check_k_transitive(l, 2);
  ASSERT_EQ(v.status, Status::Disproved);
  EXPECT_TRUE(verify_rank_witness(preannihilator(l), *v.witness));
  EXPECT_LE(v.witness->rank, 2);
}

TEST(CheckKTransitive, GaussianInput) {
  const auto v = check_k_transitive(toeplitz_space(Qi, 3), 1);
  EXPECT_EQ(v.status, Status::CertifiedFiniteField);
  EXPECT_EQ(v.certified_over, (std::vector<std::string>{"GF(5)", "GF(7^2)"}));
}

TEST(CheckKTransitive, PencilWithoutRationalRootIsUnknown) {
  // L_perp = span{I, [[0,2],[1,0]]}: B0 + t B1 singular iff t^2 = 1/2.
  const auto perp = span_of(Q, {identity(Q, 2), ints(Q, 2, 2, {0, 2, 1, 0})});
  const auto v = check_k_transitive(preannihilator(perp), 1);
  EXPECT_EQ(v.status, Status::Unknown);
  ASSERT_TRUE(v.closure_certificate);
}

TEST(CheckKTransitive, SeedDeterminism) {
  std::mt19937_64 rng(4);
  DeciderConfig cfg;
  cfg.strategy = Strategy::Numeric;
  for (int t = 0; t < 3; ++t) {
    const auto l = random_subspace(Q, rng, 3, 3, 5);
    const auto a = check_k_transitive(l, 1, cfg), b = check_k_transitive(l, 1, cfg);
    EXPECT_EQ(a.status, b.status);
    EXPECT_EQ(a.evidence.strategies, b.evidence.strategies);
    EXPECT_EQ(a.evidence.notes, b.evidence.notes);
    EXPECT_EQ(a.evidence.seed, b.evidence.seed);
    EXPECT_EQ(a.witness.has_value(), b.witness.has_value());
    if (a.witness) {
      EXPECT_EQ(a.witness->matrix, b.witness->matrix);
    }
  }
}

TEST(CheckKTransitive, WitnessSoundnessOnRandomInputs) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    const Index dim = 2 + t % 6;
    const auto l = random_subspace(Q, rng, 3, 3, dim);
    for (Index k : {1, 2}) {
      const auto v = check_k_transitive(l, k);
      if (v.status == Status::Disproved) {
        ASSERT_TRUE(v.witness);
        EXPECT_TRUE(verify_rank_witness(preannihilator(l), *v.witness));
      }
    }
  }
}

// ---------------------------------------------------------------------------
// min_rank_ff_exhaustive

TEST(MinRankFF, SingleMatrix) {
  const Mat<PrimeField> r = bind(F5, ints(F5, 3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 0}));
  const auto res = min_rank_ff_exhaustive(span_of(F5, {r}));
  EXPECT_EQ(res.min_rank, 2);
  EXPECT_EQ(res.witness->matrix, r);
}

TEST(MinRankFF, ToeplitzPreannihilator) {
  const auto v = preannihilator(toeplitz_space(F5, 3));
  const auto res = min_rank_ff_exhaustive(v);
  EXPECT_EQ(res.min_rank, 2);
  ASSERT_TRUE(res.witness);
  EXPECT_TRUE(verify_rank_witness(v, *res.witness));
  EXPECT_EQ(res.enumerated, res.total);
}

TEST(MinRankFF, DualTransitivePreannihilatorOverGF3) {
  const Field<PrimeField> f(3);
  EXPECT_GE(min_rank_ff_exhaustive(preannihilator(dual_transitive_8dim(f))).min_rank, 2);
}

TEST(MinRankFF, BudgetExceeded) {
  EXPECT_THROW(min_rank_ff_exhaustive(full_space(F7, 3, 3), 1000), BudgetExceeded);
}

TEST(MinRankFF, ParallelMatchesSequential) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    const auto v = random_subspace(F3, rng, 3, 3, 3 + t % 4);
    for (Index stop : {0, 1, 2}) {
      const auto a = min_rank_ff_exhaustive(v, kDefaultBudget, 1, stop);
      const auto b = min_rank_ff_exhaustive(v, kDefaultBudget, 3, stop);
      EXPECT_EQ(a.min_rank, b.min_rank);
      EXPECT_EQ(a.enumerated, b.enumerated);
      EXPECT_EQ(a.witness->matrix, b.witness->matrix);
    }
  }
}

TEST(MinRankFF, AzoffEquivalenceOverGF3) {
  std::mt19937_64 rng(2024);
  for (Index dim = 3; dim <= 7; ++dim)
    for (int t = 0; t < 200; ++t) {
      auto l = random_subspace(F3, rng, 3, 3, dim);
      for (Index k : {1, 2}) {
        const auto perp = preannihilator(l);
        const bool azoff = perp.dim() == 0 || min_rank_ff_exhaustive(perp).min_rank > k;
        const auto def = definitional_check_ff(l, k);
        ASSERT_EQ(azoff, def.transitive) << "dim " << dim << " trial " << t << " k " << k;
        if (!def.transitive) {
          ASSERT_TRUE(def.obstruction);
          EXPECT_TRUE(verify_rank_witness(perp, *def.obstruction));
        }
      }
    }
}

// ---------------------------------------------------------------------------
// pencil_min_rank_exact

TEST(Pencil, Examples) {
  using Kind = PencilResult<Rational>::Kind;
  EXPECT_EQ(pencil_min_rank_exact(std::vector<Mat<Rational>>{ints(Q, 2, 2, {1, 0, 0, 2})}, 1).kind, Kind::NoLowRank);

  const auto e = pencil_min_rank_exact(std::vector<Mat<Rational>>{matrix_unit(Q, 2, 2, 0, 0), matrix_unit(Q, 2, 2, 1, 1)}, 1);
  ASSERT_EQ(e.kind, Kind::Witness);
  EXPECT_EQ(e.coefficients, ints(Q, 2, 1, {1, 0}));

  const auto d = pencil_min_rank_exact(std::vector<Mat<Rational>>{identity(Q, 2), ints(Q, 2, 2, {1, 0, 0, -1})}, 1);
  ASSERT_EQ(d.kind, Kind::Witness);
  EXPECT_EQ(d.coefficients, ints(Q, 2, 1, {1, 1}));
  EXPECT_EQ(d.matrix, ints(Q, 2, 2, {2, 0, 0, 0}));
}

TEST(Pencil, InfinityAndClosure) {
  using Kind = PencilResult<Rational>::Kind;
  const auto inf = pencil_min_rank_exact(std::vector<Mat<Rational>>{identity(Q, 2), matrix_unit(Q, 2, 2, 0, 1)}, 1);
  ASSERT_EQ(inf.kind, Kind::Witness);
  EXPECT_EQ(inf.coefficients, ints(Q, 2, 1, {0, 1}));

  const auto irr = pencil_min_rank_exact(std::vector<Mat<Rational>>{identity(Q, 2), ints(Q, 2, 2, {0, -1, 1, 0})}, 1);
  EXPECT_EQ(irr.kind, Kind::ClosureOnly);
  ASSERT_TRUE(irr.gcd);
  EXPECT_EQ(irr.gcd->degree(), 2);

  // Over Q(i) the same pencil has roots t = +-i.
  const auto gi = pencil_min_rank_exact(std::vector<Mat<GaussRational>>{identity(Qi, 2), ints(Qi, 2, 2, {0, -1, 1, 0})}, 1);
  ASSERT_EQ(gi.kind, PencilResult<GaussRational>::Kind::Witness);
  EXPECT_EQ(rank(gi.matrix), 1);
}

TEST(Pencil, DimensionTooLarge) {
  EXPECT_THROW(pencil_min_rank_exact(toeplitz_space(Q, 2), 1), DimensionTooLarge);
}

// ---------------------------------------------------------------------------
// rank_witness_search_numeric

TEST(NumericSearch, RecoversRankOne) {
  const Mat<Rational> r = ints(Q, 2, 3, {1, 2, 3, 2, 4, 6});
  const auto v = span_of(Q, {r});
  const auto res = rank_witness_search_numeric(v, 1, 1);
  ASSERT_TRUE(res.witness);
  EXPECT_TRUE(verify_rank_witness(v, *res.witness));
}

TEST(NumericSearch, ToeplitzPreannihilator) {
  const auto v = preannihilator(toeplitz_space(Q, 3));
  const auto res = rank_witness_search_numeric(v, 2, kDefaultSeed);
  ASSERT_TRUE(res.witness);
  EXPECT_TRUE(verify_rank_witness(v, *res.witness));
}

TEST(NumericSearch, NoWitnessForMinimalTransitive) {
  const auto v = preannihilator(minimal_k_transitive(Q, 4, 4, 2));
  for (std::uint64_t seed = 1; seed <= 10; ++seed) EXPECT_FALSE(rank_witness_search_numeric(v, 2, seed).witness);
}

TEST(NumericSearch, PerturbedCandidatesRejected) {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> noise(0.0, 1.0);
  const auto v = preannihilator(toeplitz_space(Q, 3));
  // E11 - E22 in coordinates of v.
  const auto c = *v.coordinates_of(Mat<Rational>(matrix_unit(Q, 3, 3, 0, 0) - matrix_unit(Q, 3, 3, 1, 1)));
  for (int t = 0; t < 200; ++t) {
    numeric::NumVec<Rational> x(c.size());
    for (Index i = 0; i < c.size(); ++i) x(i) = c(i).convert_to<double>() + (1e-4 + 1e-2 * std::abs(noise(rng))) * noise(rng);
    const auto got = exactify_candidate(v, 1, x);  // no rank-1 element exists
    EXPECT_FALSE(got);
    if (const auto g2 = exactify_candidate(v, 2, x)) {
      EXPECT_TRUE(verify_rank_witness(v, *g2));
    }
  }
}

// ---------------------------------------------------------------------------
// definitional_transitivity_sample

TEST(DefinitionalSample, Examples) {
  const auto full = definitional_transitivity_sample(full_space(Q, 3, 3), 2, 20, 3);
  EXPECT_FALSE(full.disproved);
  EXPECT_EQ(full.trials_run, 20);

  const auto e11 = definitional_transitivity_sample(span_of(Q, {matrix_unit(Q, 2, 2, 0, 0)}), 1, 20, 3);
  EXPECT_TRUE(e11.disproved);

  const auto l = toeplitz_space(Q, 3);
  const auto t = definitional_transitivity_sample(l, 2, 5, 3);
  ASSERT_TRUE(t.disproved);
  ASSERT_TRUE(t.obstruction);
  EXPECT_TRUE(verify_rank_witness(preannihilator(l), *t.obstruction));
}

// ---------------------------------------------------------------------------
// check_k_separating

TEST(CheckKSeparating, FullSpace) {
  for (Index k = 1; k <= 3; ++k) EXPECT_EQ(check_k_separating(full_space(Q, 3, 3), k).status, Status::CertifiedExact);
}

TEST(CheckKSeparating, ToeplitzThree) {
  const auto two = check_k_separating(toeplitz_space(F5, 3), 2);
  EXPECT_EQ(two.status, Status::CertifiedFiniteField);
  EXPECT_EQ(two.certified_over, std::vector<std::string>{"GF(5)"});
  EXPECT_EQ(check_k_separating(toeplitz_space(Q, 3), 2).status, Status::CertifiedFiniteField);

  const auto three = check_k_separating(toeplitz_space(Q, 3), 3);
  ASSERT_EQ(three.status, Status::Disproved);
  ASSERT_TRUE(three.witness);
  EXPECT_EQ(*three.witness, ints(Q, 3, 3, {1, 0, 0, 0, 0, 1, 0, 1, 0}));
  EXPECT_TRUE(verify_separation_witness(toeplitz_space(Q, 3), *three.witness));
}

TEST(CheckKSeparating, KOneIsExact) {
  EXPECT_EQ(check_k_separating(toeplitz_space(Q, 3), 1).status, Status::CertifiedExact);
  const auto v = check_k_separating(span_of(Q, {matrix_unit(Q, 2, 2, 0, 0)}), 1);
  ASSERT_EQ(v.status, Status::Disproved);
  EXPECT_TRUE(verify_separation_witness(span_of(Q, {matrix_unit(Q, 2, 2, 0, 0)}), *v.witness));
}

TEST(CheckKSeparating, Errors) {
  EXPECT_THROW(check_k_separating(full_space(Q, 2, 2), 0), ParameterOutOfRange);
  EXPECT_THROW(check_k_separating(full_space(Q, 2, 2), 3), ParameterOutOfRange);
}

TEST(CheckKSeparating, TransitiveImpliesNextSeparatingOverGF3) {
  // Dimensions at or above k(m+n-k), where k-transitive spaces exist over C.
  std::mt19937_64 rng(31);
  int certified = 0;
  for (int t = 0; t < 150; ++t) {
    for (Index k : {1, 2}) {
      const Index lo = k * (3 + 3 - k);
      const auto l = random_subspace(F3, rng, 3, 3, lo + t % (9 - lo));
      if (check_k_transitive(l, k).status != Status::CertifiedFiniteField) continue;
      ++certified;
      EXPECT_NE(check_k_separating(l, k + 1).status, Status::Disproved) << "trial " << t << " k " << k;
    }
  }
  EXPECT_GT(certified, 50);
}

TEST(CheckKSeparating, SmallFiniteFieldSpaceBreaksSeparationLemma) {
  // A 4-dimensional 1-transitive space over GF(3); over C the minimum is 5.
  // The restriction to span X is 1-transitive with dim 3 < k(m+1) = 4, so the
  // counting step of the lemma has nothing to work with.
  const auto l = span_of(F3, {ints(F3, 3, 3, {1, 0, 0, 2, 2, 0, 0, 2, 1}), ints(F3, 3, 3, {0, 1, 0, 0, 2, 1, 0, 0, 0}),
                              ints(F3, 3, 3, {0, 0, 1, 2, 0, 1, 0, 1, 0}), ints(F3, 3, 3, {0, 0, 0, 0, 0, 0, 1, 2, 0})});
  ASSERT_EQ(l.dim(), 4);
  EXPECT_EQ(check_k_transitive(l, 1).status, Status::CertifiedFiniteField);
  const auto s = check_k_separating(l, 2);
  ASSERT_EQ(s.status, Status::Disproved);
  EXPECT_TRUE(verify_separation_witness(l, *s.witness));
  std::vector<Mat<PrimeField>> restricted;
  for (Index i = 0; i < l.dim(); ++i) restricted.push_back(l.basis(i) * *s.witness);
  EXPECT_LT(MatrixSubspace<PrimeField>::from_generators(3, 2, F3, restricted).dim(), 4);
}

TEST(CheckKSeparating, TransitiveImpliesNextSeparatingOverQ) {
  // Exact k-transitivity via the pencil route; a rational separation witness
  // would contradict the lemma over C.
  std::mt19937_64 rng(5);
  int certified = 0;
  for (int t = 0; t < 40; ++t) {
    const auto l = preannihilator(random_subspace(Q, rng, 3, 3, 1 + t % 2));
    for (Index k : {1, 2}) {
      if (check_k_transitive(l, k).status != Status::CertifiedExact) continue;
      ++certified;
      EXPECT_NE(check_k_separating(l, k + 1).status, Status::Disproved) << "trial " << t << " k " << k;
    }
  }
  EXPECT_GT(certified, 10);
}

TEST(CheckKSeparating, ProductSpanTransitivityOverGF3) {
  std::mt19937_64 rng(8);
  int checked = 0;
  for (int t = 0; t < 60 && checked < 25; ++t) {
    const auto kk = random_subspace(F3, rng, 3, 3, 5 + t % 3);
    const auto ll = random_subspace(F3, rng, 3, 3, 5 + (t + 1) % 3);
    if (check_k_transitive(kk, 1).status != Status::CertifiedFiniteField) continue;
    if (check_k_transitive(ll, 1).status != Status::CertifiedFiniteField) continue;
    ++checked;
    const auto p = product_span(kk, ll);
    const auto v = check_k_transitive(p, 2);
    EXPECT_TRUE(v.status == Status::CertifiedFiniteField || v.status == Status::CertifiedExact) << "trial " << t;
  }
  EXPECT_GE(checked, 5);
}

// ---------------------------------------------------------------------------
// rank-one elements, spanning, invertibility, extremes

TEST(RankOneFF, Examples) {
  EXPECT_EQ(rank_one_elements_ff(full_space(F2, 2, 2)).size(), 9u);
  const auto tz = rank_one_elements_ff(trace_zero(F3, 2));
  // Projective x in GF(3)^2 (4 choices), y orthogonal to x: one projective y each.
  EXPECT_EQ(tz.size(), 4u);
  for (const auto& m : tz) EXPECT_TRUE(is_zero(m.trace()));
  EXPECT_TRUE(rank_one_elements_ff(span_of(F5, {identity(F5, 2)})).empty());
}

TEST(VerifyRankSpanning, Examples) {
  std::vector<Mat<Rational>> gens;
  for (int a = 1; a <= 5; ++a) {
    Mat<Rational> m(3, 3);
    for (Index i = 0; i < 3; ++i)
      for (Index j = 0; j < 3; ++j) {
        const Integer p = boost::multiprecision::pow(Integer(a), static_cast<unsigned>(std::abs(i - j)));
        m(i, j) = i >= j ? Rational(p) : Rational(Integer(1), p);
      }
    gens.push_back(m);
  }
  EXPECT_TRUE(verify_rank_spanning(toeplitz_space(Q, 3), 1, gens));

  std::vector<Mat<Rational>> tz;
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j)
      if (i != j) tz.push_back(matrix_unit(Q, 3, 3, i, j));
  for (Index j = 1; j < 3; ++j)
    tz.push_back(Mat<Rational>(matrix_unit(Q, 3, 3, 0, 0) + matrix_unit(Q, 3, 3, 0, j) - matrix_unit(Q, 3, 3, j, 0) -
                               matrix_unit(Q, 3, 3, j, j)));
  EXPECT_TRUE(verify_rank_spanning(trace_zero(Q, 3), 1, tz));

  EXPECT_FALSE(verify_rank_spanning(full_space(Q, 2, 2), 2, {identity(Q, 2)}));
}

TEST(FindInvertible, Examples) {
  const auto t = find_invertible(toeplitz_space(Q, 3), 50, 1);
  ASSERT_TRUE(t);
  EXPECT_FALSE(is_zero(determinant(t->matrix)));
  EXPECT_TRUE(toeplitz_space(Q, 3).contains(t->matrix));
  EXPECT_FALSE(find_invertible(span_of(Q, {matrix_unit(Q, 2, 2, 0, 1), matrix_unit(Q, 2, 2, 0, 0)}), 50, 1));
  EXPECT_TRUE(find_invertible(minimal_k_transitive(Q, 4, 4, 1), 50, 1));
}

TEST(RankExtremesFF, Examples) {
  const auto m2 = rank_extremes_ff(full_space(F2, 2, 2));
  EXPECT_EQ(m2.min_nonzero_rank, 1);
  EXPECT_EQ(m2.max_singular_rank, 1);
  EXPECT_EQ(m2.enumerated, 15u);

  const auto id = rank_extremes_ff(span_of(F5, {identity(F5, 3)}));
  EXPECT_EQ(id.min_nonzero_rank, 3);
  EXPECT_FALSE(id.max_singular_rank);

  const Field<PrimeField> f3(3);
  const auto d = rank_extremes_ff(dual_transitive_8dim(f3));
  EXPECT_EQ(d.min_nonzero_rank, 2);
  ASSERT_TRUE(d.max_singular_rank);
  EXPECT_GE(d.min_nonzero_rank + *d.max_singular_rank, 4);
}
