#include "schurchan/rep_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "schurchan/errors.hpp"

namespace schurchan {

namespace {

constexpr double kBuildTol = 1e-10;

std::string label_str(const std::vector<int>& w) { return Staircase(w).str(); }

}  // namespace

std::vector<int> IrrepRealization::weight(Index x) const {
    std::vector<int> w(d());
    for (int i = 0; i < d(); ++i) w[i] = static_cast<int>(std::lround(E(i, i)(x, x)));
    return w;
}

std::vector<MatR> site_generators(int d, bool dual) {
    std::vector<MatR> g(d * d, MatR::Zero(d, d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (dual)
                g[i * d + j](j, i) = -1.0;
            else
                g[i * d + j](i, j) = 1.0;
        }
    return g;
}

std::vector<MatR> product_generators(const std::vector<MatR>& a, const std::vector<MatR>& b) {
    if (a.size() != b.size()) throw ValidationError("product_generators: different d");
    std::vector<MatR> x(a.size());
    const Index na = a.front().rows(), nb = b.front().rows();
    MatR ia = MatR::Identity(na, na), ib = MatR::Identity(nb, nb);
    for (std::size_t k = 0; k < a.size(); ++k) x[k] = kron(a[k], ib) + kron(ia, b[k]);
    return x;
}

namespace {

int dim_of(const std::vector<MatR>& g) { return static_cast<int>(g.front().rows()); }

int rank_d(const std::vector<MatR>& g) { return static_cast<int>(std::lround(std::sqrt(double(g.size())))); }

// Orthonormal basis of the highest-weight vectors of weight w: killed by every
// E_{i,i+1} and with E_ii eigenvalue w_i.
MatR highest_weight_space(const std::vector<MatR>& g, const std::vector<int>& w) {
    const int d = rank_d(g);
    const Index n = dim_of(g);
    MatR gram = MatR::Zero(n, n);
    for (int i = 0; i + 1 < d; ++i) {
        const MatR& r = g[i * d + i + 1];
        gram.noalias() += r.transpose() * r;
    }
    for (int i = 0; i < d; ++i) {
        MatR h = g[i * d + i] - w[i] * MatR::Identity(n, n);
        gram.noalias() += h.transpose() * h;
    }
    Eigen::SelfAdjointEigenSolver<MatR> es(gram);
    MatR k(n, 0);
    for (Index c = 0; c < n; ++c)
        if (es.eigenvalues()(c) < 1e-8) {
            k.conservativeResize(Eigen::NoChange, k.cols() + 1);
            k.col(k.cols() - 1) = es.eigenvectors().col(c);
        }
    MatR proj = k * k.transpose();
    return orthonormalize_columns<double>(proj, 1e-6);
}

// Grows the module generated from a highest-weight pair by lowering operators.
// Returns Y with Y * A_ij = X_ij * Y, Y * ha = hx.
MatR lower_span(const std::vector<MatR>& a, const VecR& ha, const std::vector<MatR>& x, const VecR& hx) {
    const int d = rank_d(a);
    const Index qa = dim_of(a), nx = dim_of(x);
    MatR qa_basis(qa, qa), qx_basis(nx, qa);
    Index count = 0;
    auto offer = [&](VecR u, VecR v) {
        for (int pass = 0; pass < 2; ++pass) {
            if (count == 0) break;
            VecR c = qa_basis.leftCols(count).transpose() * u;
            u -= qa_basis.leftCols(count) * c;
            v -= qx_basis.leftCols(count) * c;
        }
        double nrm = u.norm();
        if (nrm < 1e-8) return false;
        if (count == qa) throw InternalError("lower_span: module larger than the irrep");
        qa_basis.col(count) = u / nrm;
        qx_basis.col(count) = v / nrm;
        ++count;
        return true;
    };
    const double s = ha.norm();
    offer(ha / s, hx / s);
    for (Index head = 0; head < count; ++head)
        for (int i = 0; i + 1 < d; ++i) {
            const MatR& fa = a[(i + 1) * d + i];
            const MatR& fx = x[(i + 1) * d + i];
            offer(fa * qa_basis.col(head), fx * qx_basis.col(head));
        }
    if (count != qa) throw InternalError("lower_span: lowering operators did not span the irrep");
    return qx_basis * qa_basis.transpose();
}

// Flips the sign so that the first entry of column 0 above 1e-8 is positive.
void fix_sign(MatR& y) {
    for (Index i = 0; i < y.rows(); ++i)
        if (std::abs(y(i, 0)) > 1e-8) {
            if (y(i, 0) < 0) y = -y;
            return;
        }
}

double intertwining_residual(const MatR& y, const std::vector<MatR>& a, const std::vector<MatR>& x) {
    double r = 0;
    for (std::size_t k = 0; k < a.size(); ++k) r = std::max(r, max_abs_diff(y * a[k], x[k] * y));
    return r;
}

double box_content(const Staircase& nu, const Staircase& gamma, bool dual) {
    const int row = changed_row(nu, gamma);  // 0-based
    // split Casimir eigenvalue: box content, or its dual counterpart
    return dual ? -nu[row] + (row + 1) - nu.d() : nu[row] - row;
}

MatR split_casimir(const std::vector<MatR>& g, bool dual) {
    const int d = rank_d(g);
    auto s = site_generators(d, dual);
    const Index n = dim_of(g) * d;
    MatR om = MatR::Zero(n, n);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) om += kron(g[i * d + j], s[j * d + i]);
    return om;
}

// Projector onto the gamma block of Q_nu (x) site, as a Lagrange polynomial in
// the split Casimir.
MatR casimir_projector(const MatR& om, const Staircase& nu, const Staircase& gamma,
                       const std::vector<Staircase>& candidates, bool dual) {
    const double c = box_content(nu, gamma, dual);
    MatR p = MatR::Identity(om.rows(), om.cols());
    for (auto& other : candidates) {
        if (other == gamma) continue;
        const double c2 = box_content(nu, other, dual);
        if (std::abs(c - c2) < 1.0 - 1e-9)
            throw InternalError("split Casimir eigenvalues of " + gamma.str() + " and " + other.str() +
                                " are not separated");
        p = (om - c2 * MatR::Identity(om.rows(), om.cols())) * p / (c - c2);
    }
    if (max_abs_diff(om * p, c * p) > 1e-8) throw InternalError("split Casimir projector check failed");
    return p;
}

// Lexicographically smallest row sequence from the empty staircase to gamma.
bool lexmin_rec(std::vector<Staircase>& steps, const Staircase& target, const Staircase& top, int adds, int removes) {
    const int done = static_cast<int>(steps.size()) - 1;
    const Staircase& cur = steps.back();
    if (done == adds + removes) return cur == target;
    const bool adding = done < adds;
    auto next = adding ? add_boxes(cur) : remove_boxes(cur);
    for (auto& s : next) {
        bool ok = true;
        for (int i = 0; i < s.d() && ok; ++i) ok = adding ? s[i] <= top[i] : s[i] >= target[i];
        if (!ok) continue;
        steps.push_back(s);
        if (lexmin_rec(steps, target, top, adds, removes)) return true;
        steps.pop_back();
    }
    return false;
}

std::vector<Staircase> lexmin_path(const Staircase& gamma) {
    std::vector<int> top(gamma.d());
    for (int i = 0; i < gamma.d(); ++i) top[i] = std::max(gamma[i], 0);
    std::vector<Staircase> steps{Staircase::empty(gamma.d())};
    if (!lexmin_rec(steps, gamma, Staircase(top), gamma.positive_boxes(), gamma.negative_boxes()))
        throw InternalError("no path to " + gamma.str());
    return steps;
}

std::vector<std::vector<int>> product_weights(const IrrepRealization& p, bool dual) {
    const int d = p.d();
    std::vector<std::vector<int>> w;
    for (Index x = 0; x < p.dim(); ++x) {
        auto base = p.weight(x);
        for (int s = 0; s < d; ++s) {
            auto v = base;
            v[s] += dual ? -1 : 1;
            w.push_back(v);
        }
    }
    return w;
}

std::shared_ptr<const IrrepRealization> build_realization(const Staircase& gamma) {
    const int d = gamma.d();
    auto r = std::make_shared<IrrepRealization>();
    r->label = gamma;
    r->model = IrrepRealization::Model::canonical;
    if (gamma.is_zero()) {
        r->embedding = MatR::Identity(1, 1);
        r->generators.assign(d * d, MatR::Zero(1, 1));
        return r;
    }
    auto path = lexmin_path(gamma);
    const Staircase& parent = path[path.size() - 2];
    const bool dual = gamma.negative_boxes() > 0;
    const IrrepRealization& p = canonical_realization(parent);
    auto x = product_generators(p.generators, site_generators(d, dual));
    auto candidates = dual ? remove_boxes(parent) : add_boxes(parent);
    MatR proj = casimir_projector(split_casimir(p.generators, dual), parent, gamma, candidates, dual);

    // weight groups in descending order, indices ascending inside a group
    auto w = product_weights(p, dual);
    std::vector<Index> order(w.size());
    for (Index i = 0; i < static_cast<Index>(w.size()); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](Index u, Index v) { return w[u] > w[v]; });
    MatR cols(proj.rows(), proj.cols());
    for (Index i = 0; i < static_cast<Index>(order.size()); ++i) cols.col(i) = proj.col(order[i]);
    MatR basis = orthonormalize_columns<double>(cols, 1e-6);
    if (static_cast<std::uint64_t>(basis.cols()) != dim_gl_irrep(gamma))
        throw InternalError("realization of " + gamma.str() + " has the wrong dimension");

    r->a = p.a + (dual ? 0 : 1);
    r->b = p.b + (dual ? 1 : 0);
    r->embedding = kron(p.embedding, MatR::Identity(d, d)) * basis;
    r->generators.resize(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) r->generators[k] = basis.transpose() * x[k] * basis;
    return r;
}

}  // namespace

const IrrepRealization& canonical_realization(const Staircase& gamma) {
    validate(gamma);
    static std::mutex mtx;
    static std::map<Staircase, std::shared_ptr<const IrrepRealization>> cache;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(gamma);
        if (it != cache.end()) return *it->second;
    }
    auto r = build_realization(gamma);  // recursion happens outside the lock
    std::lock_guard<std::mutex> lock(mtx);
    return *cache.emplace(gamma, std::move(r)).first->second;
}

IrrepRealization dual_of(const IrrepRealization& r) {
    IrrepRealization out;
    out.label = r.label.dual();
    using M = IrrepRealization::Model;
    out.model = r.model == M::canonical ? M::conjugate : r.model == M::conjugate ? M::canonical : M::other;
    out.a = r.b;
    out.b = r.a;
    out.embedding = r.embedding;
    const int d = r.d();
    out.generators.resize(r.generators.size());
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) out.generators[i * d + j] = -r.E(i, j).transpose();
    return out;
}

MatR intertwiner(const IrrepRealization& a, const std::vector<MatR>& b_generators) {
    if (b_generators.size() != a.generators.size()) throw ValidationError("intertwiner: different d");
    const auto& w = a.label.entries();
    MatR ha = highest_weight_space(a.generators, w);
    MatR hb = highest_weight_space(b_generators, w);
    if (ha.cols() != 1 || hb.cols() != 1)
        throw InternalError("intertwiner: highest-weight space of " + a.label.str() + " has dimension " +
                            std::to_string(hb.cols()) + ", expected 1");
    MatR t = lower_span(a.generators, ha.col(0), b_generators, hb.col(0));
    fix_sign(t);
    if (intertwining_residual(t, a.generators, b_generators) > kBuildTol * std::max<double>(1.0, a.dim()))
        throw InternalError("intertwiner: residual above tolerance");
    return t;
}

const BlockIsometryR& simple_cg(const Staircase& nu, bool dual) {
    validate(nu);
    static std::mutex mtx;
    static std::map<std::pair<Staircase, bool>, std::shared_ptr<const BlockIsometryR>> cache;
    auto key = std::make_pair(nu, dual);
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(key);
        if (it != cache.end()) return *it->second;
    }
    const int d = nu.d();
    const IrrepRealization& p = canonical_realization(nu);
    auto x = product_generators(p.generators, site_generators(d, dual));
    MatR om = split_casimir(p.generators, dual);
    auto candidates = dual ? remove_boxes(nu) : add_boxes(nu);
    const Index n = p.dim() * d;

    auto out = std::make_shared<BlockIsometryR>();
    out->matrix.resize(n, n);
    Index offset = 0;
    for (auto& g : candidates) {
        const IrrepRealization& target = canonical_realization(g);
        MatR wbasis = orthonormalize_columns<double>(casimir_projector(om, nu, g, candidates, dual), 1e-6);
        if (wbasis.cols() != target.dim()) throw InternalError("simple_cg: block " + g.str() + " has wrong size");
        std::vector<MatR> bgen(x.size());
        for (std::size_t k = 0; k < x.size(); ++k) bgen[k] = wbasis.transpose() * x[k] * wbasis;
        MatR y = wbasis * intertwiner(target, bgen);
        fix_sign(y);
        out->matrix.middleRows(offset, target.dim()) = y.transpose();
        out->layout.push_back({g, 0, offset, target.dim()});
        offset += target.dim();
    }
    if (offset != n) throw InternalError("simple_cg: blocks do not fill Q_nu (x) site");
    if (out->isometry_residual() > kBuildTol * 100) throw InternalError("simple_cg: not orthogonal");
    std::lock_guard<std::mutex> lock(mtx);
    return *cache.emplace(key, std::move(out)).first->second;
}

namespace {

BlockIsometryR build_general_cg(const IrrepRealization& a, const IrrepRealization& b) {
    if (a.d() != b.d()) throw ValidationError("general_cg: different d");
    const int d = a.d();
    auto x = product_generators(a.generators, b.generators);
    const Index qa = a.dim(), qb = b.dim(), n = qa * qb;

    std::vector<std::vector<int>> wa(qa), wb(qb);
    for (Index i = 0; i < qa; ++i) wa[i] = a.weight(i);
    for (Index i = 0; i < qb; ++i) wb[i] = b.weight(i);
    std::map<std::vector<int>, std::vector<Index>, std::greater<>> groups;
    for (Index i = 0; i < qa; ++i)
        for (Index j = 0; j < qb; ++j) {
            std::vector<int> w(d);
            for (int s = 0; s < d; ++s) w[s] = wa[i][s] + wb[j][s];
            if (std::is_sorted(w.begin(), w.end(), std::greater<>())) groups[w].push_back(i * qb + j);
        }

    BlockIsometryR out;
    out.matrix.resize(n, n);
    Index offset = 0;
    for (auto& [w, idx] : groups) {
        // highest-weight vectors inside the weight-w subspace
        const Index s = static_cast<Index>(idx.size());
        MatR gram = MatR::Zero(s, s);
        for (int i = 0; i + 1 < d; ++i) {
            const MatR& r = x[i * d + i + 1];
            MatR rs(n, s);
            for (Index c = 0; c < s; ++c) rs.col(c) = r.col(idx[c]);
            gram.noalias() += rs.transpose() * rs;
        }
        Eigen::SelfAdjointEigenSolver<MatR> es(gram);
        MatR ker(s, 0);
        for (Index c = 0; c < s; ++c)
            if (es.eigenvalues()(c) < 1e-8) {
                ker.conservativeResize(Eigen::NoChange, ker.cols() + 1);
                ker.col(ker.cols() - 1) = es.eigenvectors().col(c);
            }
        const Staircase gamma(w);
        const std::uint64_t expect = lr_coeff(a.label, b.label, gamma);
        if (static_cast<std::uint64_t>(ker.cols()) != expect)
            throw InternalError("general_cg: multiplicity of " + label_str(w) + " is " + std::to_string(ker.cols()) +
                                ", lr_coeff says " + std::to_string(expect));
        if (ker.cols() == 0) continue;
        MatR hw = orthonormalize_columns<double>(MatR(ker * ker.transpose()), 1e-6);
        const IrrepRealization& target = canonical_realization(gamma);
        VecR e0 = VecR::Unit(target.dim(), 0);
        for (Index k = 0; k < hw.cols(); ++k) {
            VecR h = VecR::Zero(n);
            for (Index c = 0; c < s; ++c) h(idx[c]) = hw(c, k);
            MatR y = lower_span(target.generators, e0, x, h);
            out.matrix.middleRows(offset, target.dim()) = y.transpose();
            out.layout.push_back({gamma, static_cast<int>(k), offset, target.dim()});
            offset += target.dim();
        }
    }
    if (offset != n) throw InternalError("general_cg: blocks do not fill the product");
    if (out.isometry_residual() > 1e-8) throw InternalError("general_cg: not orthogonal");
    return out;
}

}  // namespace

BlockIsometryR general_cg(const IrrepRealization& a, const IrrepRealization& b) {
    using M = IrrepRealization::Model;
    if (a.model == M::other || b.model == M::other) return build_general_cg(a, b);
    static std::mutex mtx;
    static std::map<std::tuple<Staircase, M, Staircase, M>, std::shared_ptr<const BlockIsometryR>> cache;
    auto key = std::make_tuple(a.label, a.model, b.label, b.model);
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(key);
        if (it != cache.end()) return *it->second;
    }
    auto r = std::make_shared<const BlockIsometryR>(build_general_cg(a, b));
    std::lock_guard<std::mutex> lock(mtx);
    return *cache.emplace(key, std::move(r)).first->second;
}

MatR path_isometry(const GtPath& p) {
    validate(p);
    const int d = p.d();
    if (!p.start().is_zero()) throw ValidationError("path_isometry needs a path from the empty staircase");
    MatR r = MatR::Identity(1, 1);
    for (int t = 0; t < p.length(); ++t) {
        const auto& cg = simple_cg(p.steps[t], t >= p.k);
        int blk = cg.find(p.steps[t + 1]);
        r = cg.block_rows(blk) * kron(r, MatR::Identity(d, d));
    }
    return r;
}

const SchurTransform& schur_transform(int m, int n, int d) {
    if (m < 0 || n < 0 || d < 1) throw ValidationError("schur_transform: bad dimensions");
    const Index dim = ipow(d, m + n);
    check_dense_limit(dim, "schur_transform");
    static std::mutex mtx;
    static std::map<std::tuple<int, int, int>, std::shared_ptr<const SchurTransform>> cache;
    auto key = std::make_tuple(m, n, d);
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(key);
        if (it != cache.end()) return *it->second;
    }
    auto out = std::make_shared<SchurTransform>();
    out->iso.matrix.resize(dim, dim);
    Index offset = 0;
    auto all = enumerate_paths(Staircase::empty(d), m, n);
    for (auto& gamma : enumerate_staircases(m, n, d)) {
        auto it = all.find(gamma);
        if (it == all.end()) continue;
        for (std::size_t i = 0; i < it->second.size(); ++i) {
            MatR r = path_isometry(it->second[i]);
            out->iso.matrix.middleRows(offset, r.rows()) = r;
            out->iso.layout.push_back({gamma, static_cast<int>(i), offset, r.rows()});
            out->paths.push_back(it->second[i]);
            offset += r.rows();
        }
    }
    if (offset != dim) throw InternalError("schur_transform: blocks do not fill the space");
    if (out->iso.isometry_residual() > 1e-9) throw InternalError("schur_transform: not unitary");
    std::lock_guard<std::mutex> lock(mtx);
    return *cache.emplace(key, std::move(out)).first->second;
}

}  // namespace schurchan
