#include <gtest/gtest.h>

#include <cstdlib>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "oracles.hpp"
#include "schurchan/errors.hpp"
#include "schurchan/rep_kernel.hpp"

using namespace schurchan;

namespace {

double commutator_residual(const IrrepRealization& r) {
    const int d = r.d();
    double worst = 0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) {
                    MatR lhs = r.E(i, j) * r.E(k, l) - r.E(k, l) * r.E(i, j);
                    MatR rhs = MatR::Zero(r.dim(), r.dim());
                    if (j == k) rhs += r.E(i, l);
                    if (l == i) rhs -= r.E(k, j);
                    worst = std::max(worst, max_abs_diff(lhs, rhs));
                }
    return worst;
}

// Generators of the ambient (C^d)^{(x)a} (x) (conj C^d)^{(x)b}.
std::vector<MatR> ambient_generators(int d, int a, int b) {
    std::vector<MatR> g(d * d, MatR::Zero(1, 1));
    for (int s = 0; s < a + b; ++s) g = product_generators(g, site_generators(d, s >= a));
    return g;
}

// r(U) = exp(sum_ij X_ij E_ij) with X = log U.
MatC irrep_action(const IrrepRealization& r, const MatC& u) {
    const int d = r.d();
    MatC x = u.log();
    MatC h = MatC::Zero(r.dim(), r.dim());
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) h += x(i, j) * r.E(i, j).cast<cplx>();
    return h.exp();
}

MatC tensor_action(const MatC& u, int m, int n) {
    return oracle::kron(oracle::kron_power(u, m), oracle::kron_power(u.conjugate(), n));
}

// Rows of the first block labelled gamma.
MatR label_rows(const BlockIsometryR& iso, const Staircase& gamma) {
    int blk = iso.find(gamma);
    EXPECT_GE(blk, 0);
    return iso.block_rows(blk);
}

}  // namespace

TEST(PermutationOperator, IdentityAndSwap) {
    EXPECT_EQ(permutation_operator({0, 1, 2}, 2), MatR::Identity(8, 8));
    MatR swap = permutation_operator({1, 0}, 2);
    MatR expect = MatR::Zero(4, 4);
    expect(0, 0) = expect(3, 3) = expect(1, 2) = expect(2, 1) = 1;
    EXPECT_EQ(swap, expect);
}

TEST(PermutationOperator, PartialTransposeGivesMaximallyEntangledProjector) {
    MatR p = permutation_operator({1, 0}, 2, 1);
    VecR omega = vec(MatR::Identity(2, 2)) / std::sqrt(2.0);
    EXPECT_LT(max_abs_diff(p, 2.0 * omega * omega.transpose()), 1e-15);
    EXPECT_DOUBLE_EQ(p.trace(), 2.0);
}

TEST(PermutationOperator, RejectsBadInput) {
    EXPECT_THROW(permutation_operator({0, 0}, 2), ValidationError);
    EXPECT_THROW(permutation_operator({0, 2}, 2), ValidationError);
    EXPECT_THROW(permutation_operator({1, 0}, 2, 3), ValidationError);
}

TEST(PermutationOperator, MatchesOracle) {
    for (auto& s : oracle::all_permutations(3))
        EXPECT_LT(max_abs_diff(permutation_operator(s, 2).cast<cplx>(), oracle::site_permutation(s, 2)), 1e-15);
}

TEST(Vectorization, IdentityAndRoundTrip) {
    VecR v = vec(MatR::Identity(2, 2));
    EXPECT_EQ(v, (VecR(4) << 1, 0, 0, 1).finished());
    std::mt19937_64 rng(5);
    MatC m = oracle::random_matrix(2, 3, rng);
    EXPECT_EQ(unvec(vec(m), 2, 3), m);
    EXPECT_THROW(unvec(vec(m), 3, 3), ValidationError);
}

TEST(Vectorization, TraceFact) {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 5; ++rep) {
        MatC m = oracle::random_matrix(2, 3, rng);  // b x a
        MatC a = oracle::random_matrix(3, 3, rng);
        MatC b = oracle::random_matrix(2, 2, rng);
        VecC v = vec(m);
        MatC lhs = trace_second(MatC(v * v.adjoint() * oracle::kron(b, a.transpose())), 2, 3);
        MatC rhs = m * a * m.adjoint() * b;
        EXPECT_LT(max_abs_diff(lhs, rhs), 1e-12);
    }
}

TEST(CanonicalRealization, DefiningRepIsIdentity) {
    for (int d = 1; d <= 4; ++d) {
        auto& r = canonical_realization(Staircase::box(d));
        EXPECT_EQ(r.embedding, MatR::Identity(d, d));
        EXPECT_EQ(r.a, 1);
        EXPECT_EQ(r.b, 0);
    }
}

TEST(CanonicalRealization, SymmetricSquare) {
    auto& r = canonical_realization(Staircase{2, 0});
    ASSERT_EQ(r.dim(), 3);
    MatC proj = (r.embedding * r.embedding.transpose()).cast<cplx>();
    EXPECT_LT(max_abs_diff(proj, oracle::sym_projector(2, 2)), 1e-12);
}

TEST(CanonicalRealization, TracelessMixed) {
    auto& r = canonical_realization(Staircase{1, -1});
    ASSERT_EQ(r.dim(), 3);
    EXPECT_EQ(r.a, 1);
    EXPECT_EQ(r.b, 1);
    VecR omega = vec(MatR::Identity(2, 2)) / std::sqrt(2.0);
    MatR proj = r.embedding * r.embedding.transpose();
    EXPECT_LT(max_abs_diff(proj, MatR::Identity(4, 4) - omega * omega.transpose()), 1e-12);
}

TEST(CanonicalRealization, HighestWeightVectorComesFirst) {
    for (auto& g : enumerate_staircases(2, 2, 3)) {
        auto& r = canonical_realization(g);
        EXPECT_EQ(r.weight(0), g.entries()) << g;
    }
}

TEST(CanonicalRealization, StructuralInvariants) {
    for (int d = 1; d <= 3; ++d)
        for (int m = 0; m <= 3; ++m)
            for (int n = 0; n + m <= 4; ++n)
                for (auto& g : enumerate_staircases(m, n, d)) {
                    auto& r = canonical_realization(g);
                    EXPECT_EQ(static_cast<std::uint64_t>(r.dim()), dim_gl_irrep(g)) << g;
                    EXPECT_EQ(static_cast<std::uint64_t>(r.dim()), oracle::char_dim(g.entries())) << g;
                    EXPECT_LT(commutator_residual(r), 1e-10) << g;
                    EXPECT_LT(max_abs_diff(r.embedding.transpose() * r.embedding, MatR::Identity(r.dim(), r.dim())),
                              1e-10);
                    for (int i = 0; i < d; ++i) {
                        MatR e = r.E(i, i);
                        EXPECT_LT(max_abs_diff(e, MatR(e.diagonal().asDiagonal())), 1e-10) << g;
                    }
                    // the generators are the ambient action compressed to the subspace
                    auto amb = ambient_generators(d, r.a, r.b);
                    for (std::size_t k = 0; k < amb.size(); ++k)
                        EXPECT_LT(max_abs_diff(amb[k] * r.embedding, r.embedding * r.generators[k]), 1e-10) << g;
                }
}

TEST(CanonicalRealization, WeightsMatchCharacter) {
    for (auto& g : enumerate_staircases(3, 1, 3)) {
        auto& r = canonical_realization(g);
        std::map<std::vector<int>, long> seen;
        for (Index x = 0; x < r.dim(); ++x) ++seen[r.weight(x)];
        EXPECT_EQ(seen, oracle::character(g.entries())) << g;
    }
}

TEST(DualOf, ConjugateGenerators) {
    auto& r = canonical_realization(Staircase{2, 1, 0});
    auto c = dual_of(r);
    EXPECT_EQ(c.label, (Staircase{0, -1, -2}));
    EXPECT_EQ(c.model, IrrepRealization::Model::conjugate);
    EXPECT_LT(commutator_residual(c), 1e-10);
    auto back = dual_of(c);
    EXPECT_EQ(back.model, IrrepRealization::Model::canonical);
    for (std::size_t k = 0; k < r.generators.size(); ++k) EXPECT_EQ(back.generators[k], r.generators[k]);
}

TEST(SimpleCg, QubitPairSingletIsLast) {
    auto& cg = simple_cg(Staircase{1, 0}, false);
    ASSERT_EQ(cg.layout.size(), 2u);
    EXPECT_EQ(cg.layout[0], (Block{Staircase{2, 0}, 0, 0, 3}));
    EXPECT_EQ(cg.layout[1], (Block{Staircase{1, 1}, 0, 3, 1}));
    VecR singlet(4);
    singlet << 0, 1, -1, 0;
    singlet /= std::sqrt(2.0);
    EXPECT_NEAR(std::abs(cg.block_rows(1).row(0).dot(singlet)), 1.0, 1e-12);
}

TEST(SimpleCg, DualQubitTraceLine) {
    auto& cg = simple_cg(Staircase{1, 0}, true);
    ASSERT_EQ(cg.layout.size(), 2u);
    // remove_boxes order: row 0 first
    EXPECT_EQ(cg.layout[0], (Block{Staircase{0, 0}, 0, 0, 1}));
    EXPECT_EQ(cg.layout[1], (Block{Staircase{1, -1}, 0, 1, 3}));
    VecR omega = vec(MatR::Identity(2, 2)) / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(cg.block_rows(0).row(0).dot(omega)), 1.0, 1e-12);
}

TEST(SimpleCg, SingleRowDimensions) {
    for (int m = 1; m <= 5; ++m) {
        auto& cg = simple_cg(Staircase{m, 0}, false);
        ASSERT_EQ(cg.layout.size(), 2u);
        EXPECT_EQ(cg.layout[0].size, m + 2);
        EXPECT_EQ(cg.layout[1].size, m);
    }
}

TEST(SimpleCg, OrthogonalAndIntertwining) {
    for (int d = 2; d <= 3; ++d)
        for (auto& nu : enumerate_staircases(2, 1, d))
            for (bool dual : {false, true}) {
                auto& cg = simple_cg(nu, dual);
                EXPECT_LT(cg.isometry_residual(), 1e-10);
                auto& p = canonical_realization(nu);
                auto x = product_generators(p.generators, site_generators(d, dual));
                for (std::size_t b = 0; b < cg.layout.size(); ++b) {
                    auto& t = canonical_realization(cg.layout[b].label);
                    MatR rows = cg.block_rows(b);
                    for (std::size_t k = 0; k < x.size(); ++k)
                        EXPECT_LT(max_abs_diff(rows * x[k], t.generators[k] * rows), 1e-10);
                }
            }
}

TEST(SimpleCg, LexminStepReproducesCanonicalEmbedding) {
    // canonical (2,1) sits on the path (1,0) -> (2,0) -> (2,1)
    auto& r = canonical_realization(Staircase{2, 1});
    auto& parent = canonical_realization(Staircase{2, 0});
    auto& cg = simple_cg(Staircase{2, 0}, false);
    MatR rows = label_rows(cg, Staircase{2, 1});
    EXPECT_LT(max_abs_diff(kron(parent.embedding, MatR::Identity(2, 2)) * rows.transpose(), r.embedding), 1e-10);
}

TEST(GeneralCg, ReproducesSimpleCg) {
    auto& box = canonical_realization(Staircase{1, 0});
    auto g = general_cg(box, box);
    auto& s = simple_cg(Staircase{1, 0}, false);
    ASSERT_EQ(g.layout, s.layout);
    for (std::size_t b = 0; b < g.layout.size(); ++b) {
        double overlap = (g.block_rows(b) * s.block_rows(b).transpose()).trace() / g.layout[b].size;
        EXPECT_NEAR(std::abs(overlap), 1.0, 1e-12);
    }
}

TEST(GeneralCg, AdjointRepSquaredHasTwoCopies) {
    auto& a = canonical_realization(Staircase{2, 1, 0});
    auto g = general_cg(a, a);
    EXPECT_GE(g.find(Staircase{3, 2, 1}, 1), 0);
    EXPECT_EQ(g.find(Staircase{3, 2, 1}, 2), -1);
    EXPECT_LT(g.isometry_residual(), 1e-10);
}

TEST(GeneralCg, MixedTimesDefining) {
    auto& a = canonical_realization(Staircase{1, -1});
    auto& b = canonical_realization(Staircase{1, 0});
    auto g = general_cg(a, b);
    Index total = 0;
    for (auto& blk : g.layout) total += blk.size;
    EXPECT_EQ(total, 6);
    EXPECT_GE(g.find(Staircase{2, -1}), 0);
    EXPECT_GE(g.find(Staircase{1, 0}), 0);
}

TEST(GeneralCg, MultiplicitiesMatchCharacters) {
    for (int d = 1; d <= 3; ++d)
        for (int s = 1; s <= 5; ++s)
            for (int ka = 1; ka < s; ++ka)
                for (auto& la : partitions(ka, d))
                    for (auto& mu : partitions(s - ka, d)) {
                        auto& a = canonical_realization(la);
                        auto& b = canonical_realization(mu);
                        auto g = general_cg(a, b);
                        std::map<Staircase, int> copies;
                        for (auto& blk : g.layout) ++copies[blk.label];
                        for (auto& [gamma, c] : copies)
                            EXPECT_EQ(c, oracle::lr_by_characters(la.entries(), mu.entries(), gamma.entries()))
                                << la << " x " << mu << " -> " << gamma;
                        auto x = product_generators(a.generators, b.generators);
                        for (std::size_t i = 0; i < g.layout.size(); ++i) {
                            auto& t = canonical_realization(g.layout[i].label);
                            MatR rows = g.block_rows(i);
                            for (std::size_t k = 0; k < x.size(); ++k)
                                EXPECT_LT(max_abs_diff(rows * x[k], t.generators[k] * rows), 1e-10);
                        }
                    }
}

TEST(GeneralCg, ConjugateModels) {
    auto& a = canonical_realization(Staircase{2, 0});
    auto c = dual_of(canonical_realization(Staircase{1, 0}));
    auto g = general_cg(a, c);
    ASSERT_EQ(g.layout.size(), 2u);
    EXPECT_EQ(g.layout[0].label, (Staircase{2, -1}));
    EXPECT_EQ(g.layout[1].label, (Staircase{1, 0}));
    EXPECT_LT(g.isometry_residual(), 1e-10);
}

TEST(Intertwiner, SelfIsIdentity) {
    for (auto& g : enumerate_staircases(2, 1, 3)) {
        auto& r = canonical_realization(g);
        EXPECT_LT(max_abs_diff(intertwiner(r, r.generators), MatR::Identity(r.dim(), r.dim())), 1e-10);
    }
}

TEST(Intertwiner, ReorderedBasis) {
    auto& r = canonical_realization(Staircase{2, 0});
    // the symmetric subspace in the reverse basis order
    MatR perm = MatR::Zero(3, 3);
    perm(0, 2) = perm(1, 1) = perm(2, 0) = 1;
    std::vector<MatR> b(r.generators.size());
    for (std::size_t k = 0; k < b.size(); ++k) b[k] = perm * r.generators[k] * perm.transpose();
    MatR t = intertwiner(r, b);
    EXPECT_LT(max_abs_diff(t.transpose() * t, MatR::Identity(3, 3)), 1e-10);
    for (std::size_t k = 0; k < b.size(); ++k) EXPECT_LT(max_abs_diff(t * r.generators[k], b[k] * t), 1e-10);
    EXPECT_LT(max_abs_diff(t.cwiseAbs(), perm), 1e-10);
}

TEST(Intertwiner, SingletLine) {
    auto& r = canonical_realization(Staircase{1, 1});
    VecR singlet(4);
    singlet << 0, 1, -1, 0;
    singlet /= std::sqrt(2.0);
    auto amb = ambient_generators(2, 2, 0);
    std::vector<MatR> b(amb.size());
    for (std::size_t k = 0; k < b.size(); ++k) b[k] = singlet.transpose() * amb[k] * singlet;
    MatR t = intertwiner(r, b);
    ASSERT_EQ(t.rows(), 1);
    EXPECT_NEAR(t(0, 0), 1.0, 1e-12);
}

TEST(Intertwiner, RejectsTwoCopies) {
    auto& r = canonical_realization(Staircase{2, 0});
    std::vector<MatR> b(r.generators.size());
    for (std::size_t k = 0; k < b.size(); ++k) b[k] = kron(MatR::Identity(2, 2), r.generators[k]);
    EXPECT_THROW(intertwiner(r, b), InternalError);
}

TEST(SchurTransform, Layouts) {
    auto sizes = [](const SchurTransform& s) {
        std::map<Staircase, std::pair<int, Index>> out;
        for (auto& b : s.iso.layout) {
            ++out[b.label].first;
            out[b.label].second = b.size;
        }
        return out;
    };
    auto a = sizes(schur_transform(2, 0, 2));
    EXPECT_EQ(a.size(), 2u);
    EXPECT_EQ(a[Staircase({2, 0})], std::make_pair(1, Index(3)));
    EXPECT_EQ(a[Staircase({1, 1})], std::make_pair(1, Index(1)));
    auto b = sizes(schur_transform(3, 0, 2));
    EXPECT_EQ(b[Staircase({3, 0})], std::make_pair(1, Index(4)));
    EXPECT_EQ(b[Staircase({2, 1})], std::make_pair(2, Index(2)));
    auto c = sizes(schur_transform(1, 1, 2));
    EXPECT_EQ(c[Staircase({1, -1})], std::make_pair(1, Index(3)));
    EXPECT_EQ(c[Staircase({0, 0})], std::make_pair(1, Index(1)));
    EXPECT_EQ(schur_transform(3, 0, 2).iso.rows(), 8);
}

TEST(SchurTransform, PathsMatchLayout) {
    auto& s = schur_transform(2, 1, 3);
    ASSERT_EQ(s.paths.size(), s.iso.layout.size());
    for (std::size_t i = 0; i < s.paths.size(); ++i) {
        EXPECT_EQ(s.paths[i].end(), s.iso.layout[i].label);
        EXPECT_EQ(static_cast<std::uint64_t>(s.iso.layout[i].size), dim_gl_irrep(s.iso.layout[i].label));
        EXPECT_EQ(path_isometry(s.paths[i]), MatR(s.iso.block_rows(i)));
    }
    EXPECT_LT(s.iso.isometry_residual(), 1e-10);
}

TEST(SchurTransform, IntertwinesTensorAction) {
    std::mt19937_64 rng(11);
    for (auto [m, n, d] : {std::tuple{2, 0, 2}, {3, 0, 2}, {1, 1, 2}, {2, 1, 2}, {2, 2, 2}, {2, 1, 3}, {1, 1, 3}}) {
        auto& s = schur_transform(m, n, d);
        MatC u_sch = s.iso.matrix.cast<cplx>();
        for (int rep = 0; rep < 20; ++rep) {
            MatC u = oracle::haar(d, rng);
            MatC blocks = MatC::Zero(u_sch.rows(), u_sch.cols());
            for (auto& b : s.iso.layout)
                blocks.block(b.offset, b.offset, b.size, b.size) = irrep_action(canonical_realization(b.label), u);
            double err = (u_sch * tensor_action(u, m, n) - blocks * u_sch).norm();
            EXPECT_LT(err, 1e-8) << m << "," << n << "," << d;
        }
    }
}

TEST(SchurTransform, PermutationsActOnPathRegister) {
    for (int d = 2; d <= 3; ++d)
        for (int m = 2; m <= 4; ++m) {
            if (ipow(d, m) > 100) continue;
            auto& s = schur_transform(m, 0, d);
            for (int t = 0; t + 1 < m; ++t) {
                std::vector<int> sigma(m);
                std::iota(sigma.begin(), sigma.end(), 0);
                std::swap(sigma[t], sigma[t + 1]);
                MatR g = s.iso.matrix * permutation_operator(sigma, d) * s.iso.matrix.transpose();
                for (auto& bi : s.iso.layout)
                    for (auto& bj : s.iso.layout) {
                        MatR blk = g.block(bi.offset, bj.offset, bi.size, bj.size);
                        if (bi.label != bj.label) {
                            EXPECT_LT(blk.cwiseAbs().maxCoeff(), 1e-10);
                            continue;
                        }
                        double c = blk(0, 0);
                        EXPECT_LT(max_abs_diff(blk, c * MatR::Identity(bi.size, bi.size)), 1e-10);
                    }
            }
        }
}

TEST(SchurTransform, MixedCommutesWithTailPermutations) {
    auto& s = schur_transform(1, 2, 2);
    MatR g = s.iso.matrix * permutation_operator({0, 2, 1}, 2) * s.iso.matrix.transpose();
    for (auto& bi : s.iso.layout)
        for (auto& bj : s.iso.layout) {
            MatR blk = g.block(bi.offset, bj.offset, bi.size, bj.size);
            double c = bi.label == bj.label ? blk(0, 0) : 0.0;
            EXPECT_LT(max_abs_diff(blk, c * MatR::Identity(bi.size, bj.size)), 1e-10);
        }
}

TEST(SchurTransform, DenseLimit) {
    ::setenv("SCHURCHAN_MAX_DIM", "16", 1);
    EXPECT_THROW(schur_transform(5, 0, 2), ResourceError);
    ::unsetenv("SCHURCHAN_MAX_DIM");
    EXPECT_THROW(schur_transform(-1, 0, 2), ValidationError);
}

TEST(GeneralCg, VectorizationRelation) {
    struct Triple {
        Staircase lambda, mu, nu;
    };
    std::vector<Triple> cases = {
        {Staircase{1, 0}, Staircase{1, 0}, Staircase{2, 0}},
        {Staircase{1, 0}, Staircase{1, 0}, Staircase{1, 1}},
        {Staircase{2, 0}, Staircase{1, 0}, Staircase{2, 1}},
        {Staircase{2, 0}, Staircase{1, 1}, Staircase{3, 1}},
        {Staircase{1, 0, 0}, Staircase{1, 0, 0}, Staircase{1, 1, 0}},
        {Staircase{2, 1, 0}, Staircase{1, 0, 0}, Staircase{2, 1, 1}},
        {Staircase{2, 0, 0}, Staircase{1, 1, 0}, Staircase{2, 1, 1}},
    };
    for (auto& c : cases) {
        ASSERT_EQ(lr_coeff(c.lambda, c.mu, c.nu), 1u);
        auto& rl = canonical_realization(c.lambda);
        auto& rm = canonical_realization(c.mu);
        auto& rn = canonical_realization(c.nu);
        const Index ql = rl.dim(), qm = rm.dim(), qn = rn.dim();

        MatR u1 = label_rows(general_cg(rl, rm), c.nu);  // qn x (ql qm)
        auto nubar = dual_of(rn);
        MatR u2 = label_rows(general_cg(rm, nubar), c.lambda.dual());  // ql x (qm qn), canonical lambda-bar basis
        // express the lambda-bar block in the conjugate basis of Q_lambda
        MatR t = intertwiner(canonical_realization(c.lambda.dual()), dual_of(rl).generators);
        MatR y = u2.transpose() * t.transpose();  // (qm qn) x ql

        double num = 0, den = 0;
        VecR v1(ql * qm * qn), v2(ql * qm * qn);
        for (Index x = 0; x < ql; ++x)
            for (Index yy = 0; yy < qm; ++yy)
                for (Index z = 0; z < qn; ++z) {
                    Index at = (x * qm + yy) * qn + z;
                    v1(at) = u1(z, x * qm + yy);
                    v2(at) = y(yy * qn + z, x);
                }
        num = v2.dot(v1);
        den = v2.squaredNorm();
        double ratio = num / den;
        EXPECT_LT((v1 - ratio * v2).norm(), 1e-10) << c.lambda << c.mu << c.nu;
        EXPECT_NEAR(std::abs(ratio), std::sqrt(double(qn) / double(ql)), 1e-10);
    }
}
