#include <gtest/gtest.h>

#include <random>

#include "cmrep/exact_linalg.hpp"
#include "cmrep/linear_program.hpp"
#include "oracles.hpp"

using namespace cmrep;

TEST(Rational, ParsesFractionsAndDecimals) {
    EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
    EXPECT_EQ(parse_rational("-0.25"), Rational(-1, 4));
    EXPECT_EQ(parse_rational("7"), Rational(7));
    EXPECT_EQ(parse_rational("010"), Rational(10));
    EXPECT_EQ(parse_rational("007/012"), Rational(7, 12));
    EXPECT_THROW(parse_rational("1/0"), ValidationError);
    EXPECT_THROW(parse_rational("abc"), ValidationError);
}

TEST(Pfaffian, SmallCases) {
    EXPECT_EQ(pfaffian(AntisymMatrix(0)), 1);
    EXPECT_EQ(pfaffian(AntisymMatrix::from_upper(2, {Rational(3)})), 3);
    // Pf of 4x4 = a01 a23 - a02 a13 + a03 a12.
    auto m = AntisymMatrix::from_upper(4, {1, 2, 3, 4, 5, 6});
    EXPECT_EQ(pfaffian(m), Rational(1 * 6 - 2 * 5 + 3 * 4));
}

TEST(Pfaffian, RejectsNonAntisymmetric) {
    EXPECT_THROW(AntisymMatrix::from_rows({{0, 1}, {1, 0}}), ValidationError);
    EXPECT_THROW(AntisymMatrix::from_rows({{1, 0}, {0, 0}}), ValidationError);
}

TEST(Pfaffian, MatchesExpansionAndDeterminant) {
    std::mt19937_64 rng(20);
    for (int trial = 0; trial < 120; ++trial) {
        const std::size_t n = trial % 11;
        auto a = oracle::random_antisymmetric(n, rng);
        auto m = AntisymMatrix::from_rows(a);
        const Rational pf = pfaffian(m);
        EXPECT_EQ(pf, oracle::pfaffian(a));
        EXPECT_EQ(pf * pf, oracle::determinant(a));
        if (n % 2) {
            EXPECT_EQ(pf, 0);
        }
    }
}

TEST(Pfaffian, EliminationAgreesWithTable) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        auto m = AntisymMatrix::from_rows(oracle::random_antisymmetric(2 * (trial % 7), rng));
        EXPECT_EQ(pfaffian_by_elimination(m), pfaffian(m));
    }
}

TEST(Pfaffian, DeletedMinorsMatchExplicitSubmatrices) {
    std::mt19937_64 rng(22);
    auto a = oracle::random_antisymmetric(8, rng);
    PfaffianTable table(AntisymMatrix::from_rows(a));
    for (std::uint64_t removed = 0; removed < 256; ++removed) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < 8; ++i) {
            if (removed >> i & 1u) idx.push_back(i);
        }
        EXPECT_EQ(table.of_deleted(removed), oracle::pfaffian(oracle::delete_indices(a, idx)));
    }
}

TEST(Signatures, MatchInversionCount) {
    const std::size_t d = 7;
    for (std::uint64_t K = 0; K < (1u << d); ++K) {
        std::vector<std::size_t> k;
        for (std::size_t i = 0; i < d; ++i) {
            if (K >> i & 1u) k.push_back(i);
        }
        EXPECT_EQ(signature_set(d, k), oracle::inversion_sign(oracle::moved_to_end(d, k, {})));
        for (std::size_t t = 0; t < d; ++t) {
            if (K >> t & 1u) continue;
            EXPECT_EQ(signature_single(d, k, t), oracle::inversion_sign(oracle::moved_to_end(d, k, {t})));
            for (std::size_t t2 = 0; t2 < d; ++t2) {
                if (t2 == t || (K >> t2 & 1u)) continue;
                EXPECT_EQ(signature_pair(d, k, t, t2), oracle::inversion_sign(oracle::moved_to_end(d, k, {t, t2})));
            }
        }
    }
}

TEST(Signatures, RejectRepeatedIndex) {
    const std::size_t K[] = {1};
    EXPECT_THROW(signature_single(3, K, 1), ValidationError);
    EXPECT_THROW(signature_pair(3, K, 0, 0), ValidationError);
}

TEST(LinearProgram, InteriorPointOfTriangle) {
    LinearProgram lp;
    lp.variables = {"x", "y"};
    lp.add({1, 0}, Relation::greater, 0);
    lp.add({0, 1}, Relation::greater, 0);
    lp.add({1, 1}, Relation::less, 1);
    auto w = lp_interior_point(lp);
    ASSERT_TRUE(w);
    EXPECT_GT(w->slack, 0);
    for (const auto& c : lp.constraints) EXPECT_TRUE(c.satisfied_strictly(w->point));
}

TEST(LinearProgram, StrictInfeasibility) {
    LinearProgram lp;
    lp.variables = {"x"};
    lp.add({1}, Relation::greater, 0);
    lp.add({1}, Relation::less, 0);
    EXPECT_FALSE(lp_interior_point(lp));
}

TEST(LinearProgram, SupremumAndUnbounded) {
    LinearProgram lp;
    lp.variables = {"x", "y"};
    lp.add({1, 2}, Relation::less, 4);
    lp.add({1, 0}, Relation::greater, 0);
    lp.add({0, 1}, Relation::greater, 0);
    auto s = lp_supremum(lp, {1, 1});
    ASSERT_EQ(s.status, LpStatus::optimal);
    EXPECT_EQ(s.value, 4);
    EXPECT_EQ(lp_supremum(lp, {-1, 0}).value, 0);
    LinearProgram open;
    open.variables = {"x"};
    open.add({1}, Relation::greater, 0);
    EXPECT_EQ(lp_supremum(open, {1}).status, LpStatus::unbounded);
}

TEST(LinearProgram, EqualityWithInteriorWitness) {
    LinearProgram lp;
    lp.variables = {"a", "b", "c"};
    for (int i = 0; i < 3; ++i) {
        std::vector<Rational> row(3);
        row[i] = 1;
        lp.add(row, Relation::less, 0);
    }
    lp.add({1, 1, 1}, Relation::equal, Rational(-3, 2));
    auto w = lp_interior_point(lp);
    ASSERT_TRUE(w);
    EXPECT_EQ(w->point, (std::vector<Rational>{Rational(-1, 2), Rational(-1, 2), Rational(-1, 2)}));
}
