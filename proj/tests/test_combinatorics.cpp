#include <gtest/gtest.h>

#include "oracles.hpp"
#include "schurchan/combinatorics.hpp"
#include "schurchan/errors.hpp"

using namespace schurchan;

namespace {

std::vector<Staircase> S(std::initializer_list<std::initializer_list<int>> xs) {
    std::vector<Staircase> out;
    for (auto& x : xs) out.emplace_back(x);
    return out;
}

}  // namespace

TEST(AddBoxes, MixedStaircaseExample) {
    EXPECT_EQ(add_boxes(Staircase{2, 1, 0, -1}), S({{3, 1, 0, -1}, {2, 2, 0, -1}, {2, 1, 1, -1}, {2, 1, 0, 0}}));
}

TEST(AddBoxes, SmallCases) {
    EXPECT_EQ(add_boxes(Staircase{0, 0}), S({{1, 0}}));
    EXPECT_EQ(add_boxes(Staircase{1, 1}), S({{2, 1}}));
}

TEST(RemoveBoxes, SmallCases) {
    EXPECT_EQ(remove_boxes(Staircase{2, 1}), S({{1, 1}, {2, 0}}));
    EXPECT_EQ(remove_boxes(Staircase{5, 3, 3, 2}), S({{4, 3, 3, 2}, {5, 3, 2, 2}, {5, 3, 3, 1}}));
}

TEST(RemoveBoxes, PartitionRemovalsStayPartitions) {
    // (1,0) minus a box: the partition (0,0) comes first, then the mixed (1,-1).
    auto r = remove_boxes(Staircase{1, 0});
    ASSERT_EQ(r.size(), 2u);
    EXPECT_EQ(r[0], (Staircase{0, 0}));
    EXPECT_EQ(r[1], (Staircase{1, -1}));
}

TEST(AddRemove, AreAdjointRelations) {
    for (int d = 1; d <= 3; ++d)
        for (int m = 0; m <= 3; ++m)
            for (int n = 0; n <= 3; ++n)
                for (auto& nu : enumerate_staircases(m, n, d)) {
                    for (auto& mu : add_boxes(nu)) {
                        auto back = remove_boxes(mu);
                        EXPECT_NE(std::find(back.begin(), back.end(), nu), back.end());
                    }
                    for (auto& mu : remove_boxes(nu)) {
                        auto fwd = add_boxes(mu);
                        EXPECT_NE(std::find(fwd.begin(), fwd.end(), nu), fwd.end());
                    }
                }
}

TEST(Validation, RejectsNonMonotone) {
    EXPECT_THROW(add_boxes(Staircase{0, 1}), ValidationError);
    EXPECT_THROW(dim_perm_irrep(Staircase{1, -1}), ValidationError);
    EXPECT_THROW(lr_coeff(Staircase{1, 0}, Staircase{1, 0, 0}, Staircase{2, 0}), ValidationError);
}

TEST(DimPermIrrep, MatchesTableauxCount) {
    EXPECT_EQ(dim_perm_irrep(Staircase{2, 1}), 2u);
    EXPECT_EQ(dim_perm_irrep(Staircase{3, 1}), 3u);
    EXPECT_EQ(dim_perm_irrep(Staircase{5, 0}), 1u);
    for (int m = 0; m <= 8; ++m)
        for (auto& p : partitions(m, 4)) EXPECT_EQ(dim_perm_irrep(p), oracle::count_syt(p.entries())) << p;
}

TEST(DimGlIrrep, Examples) {
    EXPECT_EQ(dim_gl_irrep(Staircase{1, 0}), 2u);
    EXPECT_EQ(dim_gl_irrep(Staircase{2, 1}), 2u);
    EXPECT_EQ(dim_gl_irrep(Staircase{1, -1}), 3u);
}

TEST(DimGlIrrep, MatchesCharacterDimensionAndShiftInvariance) {
    for (int d = 1; d <= 4; ++d)
        for (int m = 0; m <= 3; ++m)
            for (int n = 0; n <= 3; ++n)
                for (auto& g : enumerate_staircases(m, n, d)) {
                    EXPECT_EQ(dim_gl_irrep(g), oracle::char_dim(g.entries())) << g;
                    EXPECT_EQ(dim_gl_irrep(g), dim_gl_irrep(g.shifted(3)));
                }
}

TEST(SymDim, Examples) {
    EXPECT_EQ(sym_dim(2, 2), 3u);
    EXPECT_EQ(sym_dim(1, 5), 5u);
    EXPECT_EQ(sym_dim(3, 2), 4u);
    EXPECT_EQ(sym_dim(0, 3), 1u);
}

TEST(LrCoeff, Examples) {
    EXPECT_EQ(lr_coeff(Staircase{1, 0}, Staircase{1, 0}, Staircase{2, 0}), 1u);
    EXPECT_EQ(lr_coeff(Staircase{1, 0}, Staircase{1, 0}, Staircase{1, 1}), 1u);
    EXPECT_EQ(lr_coeff(Staircase{2, 1, 0}, Staircase{2, 1, 0}, Staircase{3, 2, 1}), 2u);
}

TEST(LrCoeff, MatchesCharacterPeeling) {
    for (int d = 1; d <= 3; ++d)
        for (int a = 0; a <= 3; ++a)
            for (int b = 0; a + b <= 3; ++b)
                for (int c = 0; c <= 3; ++c)
                    for (auto& l : enumerate_staircases(a, b, d))
                        for (auto& u : partitions(c, d))
                            for (auto& g : enumerate_staircases(a + c, b, d))
                                EXPECT_EQ(static_cast<long>(lr_coeff(l, u, g)),
                                          oracle::lr_by_characters(l.entries(), u.entries(), g.entries()))
                                    << l << " " << u << " " << g;
}

TEST(LrCoeff, SingleBoxIsMultiplicityFree) {
    for (int d = 1; d <= 3; ++d)
        for (int m = 0; m <= 3; ++m)
            for (int n = 0; n <= 2; ++n)
                for (auto& nu : enumerate_staircases(m, n, d)) {
                    auto up = add_boxes(nu);
                    for (auto& g : enumerate_staircases(m + 1, n, d)) {
                        auto c = lr_coeff(nu, Staircase::box(d), g);
                        EXPECT_LE(c, 1u);
                        EXPECT_EQ(c == 1, std::find(up.begin(), up.end(), g) != up.end());
                    }
                }
}

TEST(LrCoeff, DimensionSumRule) {
    for (int d = 1; d <= 3; ++d)
        for (int a = 0; a <= 2; ++a)
            for (int b = 0; b <= 2; ++b)
                for (auto& l : enumerate_staircases(a, b, d))
                    for (auto& u : enumerate_staircases(b, a, d)) {
                        std::uint64_t s = 0;
                        for (auto& g : enumerate_staircases(a + b, a + b, d))
                            if (g.size() == l.size() + u.size()) s += lr_coeff(l, u, g) * dim_gl_irrep(g);
                        EXPECT_EQ(s, dim_gl_irrep(l) * dim_gl_irrep(u)) << l << " " << u;
                    }
}

TEST(EnumerateStaircases, Examples) {
    EXPECT_EQ(enumerate_staircases(2, 0, 2), S({{2, 0}, {1, 1}}));
    EXPECT_EQ(enumerate_staircases(1, 1, 2), S({{1, -1}, {0, 0}}));
    EXPECT_EQ(enumerate_staircases(3, 0, 2), S({{3, 0}, {2, 1}}));
}

TEST(EnumerateStaircases, SortedWithoutDuplicates) {
    for (int d = 1; d <= 4; ++d)
        for (int m = 0; m <= 4; ++m)
            for (int n = 0; n <= 4; ++n) {
                auto v = enumerate_staircases(m, n, d);
                for (std::size_t i = 0; i + 1 < v.size(); ++i) EXPECT_GT(v[i], v[i + 1]);
                for (auto& g : v) EXPECT_NO_THROW(validate(g, m, n));
            }
}

TEST(SchurWeyl, DimensionCount) {
    for (int d = 1; d <= 3; ++d)
        for (int m = 0; m <= 6; ++m) {
            std::uint64_t s = 0, dm = 1;
            for (int i = 0; i < m; ++i) dm *= d;
            for (auto& l : partitions(m, d)) s += dim_perm_irrep(l) * dim_gl_irrep(l);
            EXPECT_EQ(s, dm);
        }
}
