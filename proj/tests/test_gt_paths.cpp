#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "schurchan/errors.hpp"
#include "schurchan/gt_paths.hpp"

using namespace schurchan;

namespace {

// Replays fixed uniforms.
class Scripted : public DrawSource {
public:
    explicit Scripted(std::vector<double> u) : u_(std::move(u)) {}
    double next() override { return u_.at(i_++); }

private:
    std::vector<double> u_;
    std::size_t i_ = 0;
};

Rational R(long a, long b) { return Rational(a) / b; }

}  // namespace

TEST(EnumeratePaths, ThreeBoxesQubit) {
    auto p = enumerate_paths(Staircase::empty(2), 3, 0);
    ASSERT_EQ(p.size(), 2u);
    EXPECT_EQ(p.at(Staircase{3, 0}).size(), 1u);
    EXPECT_EQ(p.at(Staircase{2, 1}).size(), 2u);
    auto& two = p.at(Staircase{2, 1});
    EXPECT_EQ(two[0].rows(), (std::vector<int>{0, 0, 1}));
    EXPECT_EQ(two[1].rows(), (std::vector<int>{0, 1, 0}));
}

TEST(EnumeratePaths, SingleRowRemovalIsUnique) {
    for (int n = 2; n <= 5; ++n)
        for (int m = 1; m < n; ++m) {
            auto p = enumerate_paths(Staircase{n, 0, 0}, 0, n - m);
            EXPECT_EQ(p.at(Staircase{m, 0, 0}).size(), 1u);
        }
}

TEST(EnumeratePaths, ZeroStepsIsIdentity) {
    auto p = enumerate_paths(Staircase{4, 2, 1}, 0, 0);
    ASSERT_EQ(p.size(), 1u);
    EXPECT_EQ(p.begin()->second.front().steps, std::vector<Staircase>{(Staircase{4, 2, 1})});
}

TEST(EnumeratePaths, CountsMatchTableaux) {
    for (int m = 0; m <= 6; ++m) {
        auto p = enumerate_paths(Staircase::empty(3), m, 0);
        for (auto& [lam, paths] : p) {
            EXPECT_EQ(paths.size(), oracle::count_syt(lam.entries()));
            for (auto& q : paths) EXPECT_NO_THROW(validate(q));
            for (std::size_t i = 0; i + 1 < paths.size(); ++i) EXPECT_LT(paths[i].rows(), paths[i + 1].rows());
        }
    }
}

TEST(EnumeratePaths, MixedExamplePathShape) {
    auto paths = paths_to(Staircase{2, 1, 0, -1}, 3, 1);
    EXPECT_FALSE(paths.empty());
    for (auto& p : paths) {
        EXPECT_EQ(p.steps.front(), Staircase::empty(4));
        EXPECT_EQ(p.steps[3].size(), 3);
        EXPECT_EQ(p.end(), (Staircase{2, 1, 0, -1}));
    }
}

TEST(EnumeratePaths, PathCountIdentity) {
    for (int d = 1; d <= 3; ++d)
        for (int k = 0; k <= 4; ++k)
            for (int l = 0; k + l <= 4; ++l)
                for (int a = 0; a <= 2; ++a)
                    for (int b = 0; b <= 1; ++b)
                        for (auto& mu : enumerate_staircases(a, b, d)) {
                            auto paths = enumerate_paths(mu, k, l);
                            for (auto& [lam, list] : paths) {
                                std::uint64_t s = 0;
                                for (auto& g : enumerate_staircases(k, l, d))
                                    s += paths_to(g, k, l).size() * lr_coeff(mu, g, lam);
                                EXPECT_EQ(list.size(), s) << mu << " -> " << lam;
                            }
                        }
}

TEST(ExactRemoval, Examples) {
    EXPECT_EQ(exact_removal_distribution(Staircase{3, 1}),
              (RemovalDistribution{{Staircase{2, 1}, R(2, 3)}, {Staircase{3, 0}, R(1, 3)}}));
    EXPECT_EQ(exact_removal_distribution(Staircase{4, 0}), (RemovalDistribution{{Staircase{3, 0}, R(1, 1)}}));
    EXPECT_EQ(exact_removal_distribution(Staircase{2, 1}),
              (RemovalDistribution{{Staircase{2, 0}, R(1, 2)}, {Staircase{1, 1}, R(1, 2)}}));
    EXPECT_THROW(exact_removal_distribution(Staircase{0, 0}), ValidationError);
}

TEST(NextStep, TwoBoxRecursionByHand) {
    EXPECT_EQ(next_step_distribution(Staircase{2, 1}, SamplerMode::alg1),
              (RemovalDistribution{{Staircase{2, 0}, R(1, 2)}, {Staircase{1, 1}, R(1, 2)}}));
    for (auto mode : {SamplerMode::alg1, SamplerMode::alg3})
        EXPECT_EQ(next_step_distribution(Staircase{5, 0}, mode), (RemovalDistribution{{Staircase{4, 0}, R(1, 1)}}));
}

TEST(NextStep, BothWalksEqualTableauRatio) {
    for (int m = 1; m <= 8; ++m)
        for (auto& lam : partitions(m, m)) {
            RemovalDistribution syt;
            auto total = oracle::count_syt(lam.entries());
            for (int i = 0; i < m; ++i) {
                auto e = lam.entries();
                if (e[i] == 0 || (i + 1 < m && e[i + 1] == e[i])) continue;
                --e[i];
                syt[Staircase(e)] = Rational(oracle::count_syt(e)) / Rational(total);
            }
            EXPECT_EQ(next_step_distribution(lam, SamplerMode::alg1), syt) << lam;
            EXPECT_EQ(next_step_distribution(lam, SamplerMode::alg3), syt) << lam;
            EXPECT_EQ(exact_removal_distribution(lam), syt) << lam;
        }
}

TEST(SampleRemoveBox, HookWalkExample) {
    // 13 boxes; (1,2) is the second; its hook has 3 cells right then 3 below.
    Scripted draws({1.5 / 13, 4.5 / 6, 0.25});
    WalkTrace trace;
    auto mu = sample_remove_box(Staircase{5, 3, 3, 2}, draws, SamplerMode::alg1, &trace);
    EXPECT_EQ(trace, (WalkTrace{{1, 2}, {3, 2}, {3, 3}}));
    EXPECT_EQ(mu, (Staircase{5, 3, 2, 2}));
}

TEST(SampleRemoveBox, SquashedWalkExample) {
    // squashed weights v = (1,2,1), w = (2,1,2); start mass of (1,1) is 2/13
    Scripted draws({1.0 / 13, 4.0 / 6, 0.25});
    WalkTrace trace;
    auto mu = sample_remove_box(Staircase{5, 3, 3, 2}, draws, SamplerMode::alg3, &trace);
    EXPECT_EQ(trace, (WalkTrace{{1, 1}, {2, 1}, {2, 2}}));
    EXPECT_EQ(mu, (Staircase{5, 3, 2, 2}));
}

TEST(SampleRemoveBox, SingleRowIsDeterministic) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i)
        for (auto mode : {SamplerMode::alg1, SamplerMode::alg3})
            EXPECT_EQ(sample_remove_box(Staircase{4, 0}, rng, mode), (Staircase{3, 0}));
    EXPECT_THROW(sample_remove_box(Staircase{0, 0}, rng, SamplerMode::alg1), ValidationError);
}

TEST(SampleRemoveBox, EmpiricalFrequencies) {
    for (auto lam : {Staircase{3, 1}, Staircase{4, 2, 1}})
        for (auto mode : {SamplerMode::alg1, SamplerMode::alg3}) {
            std::mt19937_64 rng(11);
            const int N = 100000;
            std::map<Staircase, int> hist;
            for (int i = 0; i < N; ++i) ++hist[sample_remove_box(lam, rng, mode)];
            double tv = 0;
            for (auto& [mu, p] : exact_removal_distribution(lam))
                tv += std::abs(hist[mu] / double(N) - p.convert_to<double>());
            EXPECT_LT(tv / 2, 0.01) << lam << " " << to_string(mode);
        }
}

TEST(SampleGtPath, UniqueAndUniformPaths) {
    std::mt19937_64 rng(5);
    auto p = sample_gt_path(Staircase{2, 0}, rng);
    EXPECT_EQ(p.steps, (std::vector<Staircase>{{0, 0}, {1, 0}, {2, 0}}));

    const int N = 100000;
    std::map<std::vector<int>, int> hist;
    for (int i = 0; i < N; ++i) ++hist[sample_gt_path(Staircase{2, 1}, rng).rows()];
    ASSERT_EQ(hist.size(), 2u);
    for (auto& [rows, c] : hist) EXPECT_NEAR(c / double(N), 0.5, 0.01);
}

TEST(SampleGtPath, ChiSquareOverAllPaths) {
    // 16 paths to (3,2,1); 15 degrees of freedom, critical value 37.70 at 1e-3
    for (auto mode : {SamplerMode::alg1, SamplerMode::alg3}) {
        std::mt19937_64 rng(17);
        const int N = 100000;
        std::map<std::vector<int>, int> hist;
        for (int i = 0; i < N; ++i) {
            auto p = sample_gt_path(Staircase{3, 2, 1}, rng, mode);
            ASSERT_NO_THROW(validate(p));
            ++hist[p.rows()];
        }
        ASSERT_EQ(hist.size(), 16u);
        double chi = 0, e = N / 16.0;
        for (auto& [r, c] : hist) chi += (c - e) * (c - e) / e;
        EXPECT_LT(chi, 37.70);
    }
}
