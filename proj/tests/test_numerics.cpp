#include <algorithm>
#include <bit>
#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "spadsp/error.hpp"
#include "spadsp/numerics.hpp"

using namespace spadsp;
using spadsp::testing::random_complex;
using spadsp::testing::random_support;
using spadsp::testing::random_vector;

using Idx = std::vector<std::size_t>;

TEST(ComplexVector, LengthAndBounds) {
    ComplexVector v(4);
    EXPECT_EQ(v.size(), 4u);
    EXPECT_EQ(v.count_nonzero(), 0u);
    EXPECT_THROW(v.at(4), ParameterError);
    EXPECT_THROW(v[7], ParameterError);
    EXPECT_THROW(ComplexVector(0), ParameterError);
    EXPECT_THROW(ComplexVector(std::vector<Complex>{}), ParameterError);
}

TEST(ComplexVector, FiniteAndNorm) {
    ComplexVector v{{3, 4}, {0, 0}};
    EXPECT_DOUBLE_EQ(v.squared_norm(), 25.0);
    EXPECT_TRUE(v.all_finite());
    v[1] = {std::nan(""), 0};
    EXPECT_FALSE(v.all_finite());
}

TEST(SupportSet, SortsAndRejectsBadIndices) {
    SupportSet s(8, {5, 1, 3});
    EXPECT_EQ(s.indices(), (Idx{1, 3, 5}));
    EXPECT_TRUE(s.contains(3));
    EXPECT_FALSE(s.contains(2));
    EXPECT_THROW(SupportSet(8, {1, 1}), ParameterError);
    EXPECT_THROW(SupportSet(8, {8}), ParameterError);
    EXPECT_EQ(SupportSet(8, {2, 0}), SupportSet(8, {0, 2}));
    EXPECT_EQ(SupportSet::leading(8, 3).indices(), (Idx{0, 1, 2}));
    EXPECT_EQ(SupportSet::full(4).size(), 4u);
}

TEST(TopS, Examples) {
    EXPECT_EQ(top_s_support(ComplexVector{{3, 0}, {0, 0}, {0, 4}, {1, 0}}, 2).indices(), (Idx{0, 2}));
    EXPECT_EQ(top_s_support(ComplexVector{1, 1, 1, 1}, 2).indices(), (Idx{0, 1}));
}

TEST(TopS, RangeErrors) {
    ComplexVector v{1, 2, 3};
    EXPECT_THROW(top_s_support(v, 0), ParameterError);
    EXPECT_THROW(top_s_support(v, 4), ParameterError);
    EXPECT_THROW(top_s_support(v, 3, SupportSet(3, {0, 1})), ParameterError);
    EXPECT_THROW(top_s_support(v, 1, SupportSet(4, {0})), ParameterError);
}

TEST(TopS, MatchesSortOracle) {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const auto raw = random_complex(64, seed);
        Idx all(64);
        for (std::size_t i = 0; i < 64; ++i) all[i] = i;
        EXPECT_EQ(top_s_support(ComplexVector(raw), 12).indices(), spadsp::testing::sorted_top_s(raw, 12, all));
    }
}

TEST(TopS, RestrictedMatchesSortOracle) {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const auto raw = random_complex(64, seed);
        const auto within = random_support(64, 24, seed + 1000);
        EXPECT_EQ(top_s_support(ComplexVector(raw), 12, within).indices(),
                  spadsp::testing::sorted_top_s(raw, 12, within.indices()));
    }
}

TEST(TopS, TiesOnQuantizedValues) {
    // magnitudes from a tiny alphabet produce many ties
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        auto raw = random_complex(40, seed);
        for (auto& c : raw) c = {std::round(std::abs(c.real()) * 2.0), 0.0};
        Idx all(40);
        for (std::size_t i = 0; i < 40; ++i) all[i] = i;
        EXPECT_EQ(top_s_support(ComplexVector(raw), 7).indices(), spadsp::testing::sorted_top_s(raw, 7, all));
    }
}

TEST(TopS, SelectedDominateComplementAndDeterministic) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const auto v = random_vector(64, seed);
        for (std::size_t s : {1u, 5u, 12u, 64u}) {
            const auto sel = top_s_support(v, s);
            ASSERT_EQ(sel.size(), s);
            EXPECT_EQ(sel, top_s_support(v, s));
            double min_in = INFINITY, max_out = 0.0;
            for (std::size_t i = 0; i < 64; ++i) {
                if (sel.contains(i)) min_in = std::min(min_in, std::abs(v[i]));
                else max_out = std::max(max_out, std::abs(v[i]));
            }
            EXPECT_GE(min_in, max_out);
        }
    }
}

TEST(SupportUnion, Examples) {
    EXPECT_EQ(support_union(SupportSet(4, {0, 1}), SupportSet(4, {1, 2})).indices(), (Idx{0, 1, 2}));
    EXPECT_EQ(support_union(SupportSet(64, {0, 31}), SupportSet(64)).indices(), (Idx{0, 31}));
    EXPECT_THROW(support_union(SupportSet(4), SupportSet(5)), ParameterError);
}

TEST(SupportUnion, MatchesBitsetOracle) {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const auto a = random_support(64, 12, seed);
        const auto b = random_support(64, 12, seed + 500);
        const auto u = support_union(a, b);
        EXPECT_EQ(u.indices(), spadsp::testing::bitset_union(a, b));
        EXPECT_LE(u.size(), a.size() + b.size());
    }
}

TEST(SupportIntersection, Basic) {
    EXPECT_EQ(support_intersection(SupportSet(64, {0, 31, 40}), SupportSet(64, {0, 31, 32, 63})).indices(),
              (Idx{0, 31}));
}

TEST(ApplyMask, Examples) {
    const ComplexVector x{1, 2, 3, 4};
    EXPECT_EQ(apply_mask(x, SupportSet(4, {1, 3})), (ComplexVector{0, 2, 0, 4}));
    EXPECT_EQ(apply_mask(x, SupportSet::full(4)), x);
    EXPECT_THROW(apply_mask(x, SupportSet(5)), ParameterError);
}

TEST(ApplyMask, MatchesDenseSelectionMatrix) {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const auto x = random_vector(32, seed);
        const auto set = random_support(32, 1 + seed % 32, seed + 77);
        const Eigen::VectorXcd want = spadsp::testing::selection_matrix(set) * spadsp::testing::to_eigen(x);
        const auto got = apply_mask(x, set);
        for (std::size_t i = 0; i < 32; ++i) EXPECT_EQ(got[i], want(static_cast<Eigen::Index>(i)));
        EXPECT_EQ(apply_mask(got, set), got);
    }
}

TEST(Sparsify, Examples) {
    EXPECT_EQ(sparsify(ComplexVector{1, 2, 3}, SupportSet(3, {2})), (ComplexVector{0, 0, 3}));
    const auto h = random_vector(64, 9);
    const auto full = sparsify(h, SupportSet::full(64));
    for (std::size_t i = 0; i < 64; ++i) {
        EXPECT_EQ(std::bit_cast<std::uint64_t>(full[i].real()), std::bit_cast<std::uint64_t>(h[i].real()));
        EXPECT_EQ(std::bit_cast<std::uint64_t>(full[i].imag()), std::bit_cast<std::uint64_t>(h[i].imag()));
    }
}

TEST(Sparsify, NonzerosBoundedByKeep) {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const auto h = random_vector(64, seed);
        const auto keep = random_support(64, seed % 20, seed + 3);
        const auto out = sparsify(h, keep);
        EXPECT_LE(out.count_nonzero(), keep.size());
        for (std::size_t i = 0; i < 64; ++i) {
            if (keep.contains(i)) EXPECT_EQ(out[i], h[i]);
            else EXPECT_EQ(out[i], Complex{});
        }
    }
}
