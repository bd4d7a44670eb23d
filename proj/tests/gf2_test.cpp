#include <random>

#include <gtest/gtest.h>

#include "rcc/gf2.hpp"

using namespace rcc::gf2;

namespace {

BitMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
    BitMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m.set(i, j, rng() & 1u);
    return m;
}

BitVector random_vector(std::mt19937_64& rng, std::size_t n) {
    BitVector v(n);
    for (std::size_t i = 0; i < n; ++i)
        v.set(i, rng() & 1u);
    return v;
}

} // namespace

TEST(BitVector, BasicOps) {
    BitVector v(130);
    EXPECT_TRUE(v.none());
    v.set(0);
    v.set(64);
    v.set(129);
    EXPECT_EQ(v.count(), 3u);
    EXPECT_EQ(v.first_set(), 0u);
    EXPECT_EQ(v.find_next(1), 64u);
    EXPECT_EQ(v.find_next(65), 129u);
    EXPECT_EQ(v.find_next(130), BitVector::npos);
    EXPECT_EQ(v.indices(), (std::vector<int>{0, 64, 129}));
    v.flip(64);
    EXPECT_FALSE(v.test(64));
    auto u = BitVector::unit(130, 129);
    EXPECT_TRUE(v.dot(u));
    EXPECT_EQ((v ^ u).indices(), std::vector<int>{0});
}

TEST(BitVector, FromIndicesTogglesRepeats) {
    const std::vector<int> idx{1, 3, 3, 5};
    EXPECT_EQ(BitVector::from_indices(8, idx).indices(), (std::vector<int>{1, 5}));
}

TEST(Rank, ZeroMatrix) { EXPECT_EQ(rank(BitMatrix(5, 7)), 0u); }

TEST(Rank, Identity) {
    for (std::size_t k : {1u, 5u, 64u, 65u, 130u})
        EXPECT_EQ(rank(BitMatrix::identity(k)), k);
}

TEST(Rank, HopfIncidence) {
    BitMatrix m(4, 2);
    for (std::size_t r = 0; r < 4; ++r) {
        m.set(r, 0);
        m.set(r, 1);
    }
    EXPECT_EQ(rank(m), 1u);
}

TEST(Rank, EqualsTransposeRank) {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 200; ++t) {
        const auto m = random_matrix(rng, 1 + rng() % 20, 1 + rng() % 20);
        EXPECT_EQ(rank(m), rank(m.transpose()));
    }
}

TEST(Solve, ZeroTargetGivesLeftNullspace) {
    std::mt19937_64 rng(2);
    const auto m = random_matrix(rng, 9, 5);
    const auto sol = solve(m, BitVector(5));
    ASSERT_TRUE(sol);
    EXPECT_TRUE(sol->particular.none());
    EXPECT_EQ(sol->nullspace.size(), 9 - rank(m));
    for (const auto& v : sol->nullspace)
        EXPECT_TRUE(combine_rows(m, v).none());
}

TEST(Solve, Hopf) {
    BitMatrix m(4, 2);
    for (std::size_t r = 0; r < 4; ++r) {
        m.set(r, 0);
        m.set(r, 1);
    }
    BitVector both(2);
    both.set(0);
    both.set(1);
    const auto sol = solve(m, both);
    ASSERT_TRUE(sol);
    EXPECT_EQ(combine_rows(m, sol->particular), both);
    EXPECT_EQ(sol->nullspace.size(), 3u);
    EXPECT_FALSE(solve(m, BitVector::unit(2, 0)));
}

TEST(Solve, RandomInvertible) {
    std::mt19937_64 rng(3);
    int done = 0;
    while (done < 50) {
        const auto m = random_matrix(rng, 6, 6);
        if (rank(m) != 6)
            continue;
        ++done;
        const auto target = random_vector(rng, 6);
        const auto sol = solve(m, target);
        ASSERT_TRUE(sol);
        EXPECT_EQ(combine_rows(m, sol->particular), target);
        EXPECT_TRUE(sol->nullspace.empty());
    }
}

// |coset| = 2^(rows - rank) and every member reproduces the target.
TEST(Solve, CosetSizeAndSubstitution) {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 300; ++t) {
        const std::size_t r = 1 + rng() % 12, c = 1 + rng() % 12;
        const auto m = random_matrix(rng, r, c);
        const auto target = combine_rows(m, random_vector(rng, r));
        const auto sol = solve(m, target);
        ASSERT_TRUE(sol);
        EXPECT_EQ(sol->nullspace.size(), r - rank(m));
        EXPECT_EQ(combine_rows(m, sol->particular), target);
        auto x = sol->particular;
        for (const auto& v : sol->nullspace) {
            x ^= v;
            EXPECT_EQ(combine_rows(m, x), target);
        }
    }
}

TEST(Solve, DetectsTargetsOutsideRowSpace) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 300; ++t) {
        const auto m = random_matrix(rng, 1 + rng() % 8, 1 + rng() % 12);
        const auto target = random_vector(rng, m.cols());
        // Solvable exactly when appending the target does not raise the rank.
        BitMatrix aug(m.rows() + 1, m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            aug.row(i) = m.row(i);
        aug.row(m.rows()) = target;
        EXPECT_EQ(solve(m, target).has_value(), rank(aug) == rank(m));
    }
}

TEST(Solve, Deterministic) {
    std::mt19937_64 rng(6);
    const auto m = random_matrix(rng, 10, 8);
    const auto target = combine_rows(m, random_vector(rng, 10));
    const auto a = solve(m, target), b = solve(m, target);
    ASSERT_TRUE(a && b);
    EXPECT_EQ(a->particular, b->particular);
    EXPECT_EQ(a->nullspace, b->nullspace);
}

TEST(Multiply, MatchesTransposeCombination) {
    std::mt19937_64 rng(7);
    const auto m = random_matrix(rng, 7, 11);
    const auto y = random_vector(rng, 11);
    EXPECT_EQ(multiply(m, y), combine_rows(m.transpose(), y));
}
