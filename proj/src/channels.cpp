#include "schurchan/channels.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>

#include <Eigen/SVD>

#include "schurchan/errors.hpp"

namespace schurchan {

MatC apply_channel(const ChoiMatrix& choi, const MatC& rho) {
    if (rho.rows() != choi.in_dim || rho.cols() != choi.in_dim)
        throw ValidationError("apply_channel: input is " + std::to_string(rho.rows()) + "x" +
                              std::to_string(rho.cols()) + ", channel expects " + std::to_string(choi.in_dim));
    const Index o = choi.out_dim;
    MatC out = MatC::Zero(o, o);
    for (Index i = 0; i < choi.in_dim; ++i)
        for (Index j = 0; j < choi.in_dim; ++j)
            if (rho(i, j) != cplx(0)) out += rho(i, j) * choi.matrix.block(i * o, j * o, o, o);
    return out;
}

CptpReport cptp_report(const ChoiMatrix& choi) {
    CptpReport r;
    r.hermiticity = max_abs_diff(choi.matrix, MatC(choi.matrix.adjoint()));
    r.min_eigenvalue = min_eigenvalue(choi.matrix);
    r.tp_residual = max_abs_diff(trace_second(choi.matrix, choi.in_dim, choi.out_dim),
                                 MatC::Identity(choi.in_dim, choi.in_dim));
    return r;
}

MatC Channel::operator()(const MatC& rho) const {
    if (rho.rows() != in_dim || rho.cols() != in_dim) throw ValidationError("channel: input has the wrong shape");
    return map(rho);
}

ChoiMatrix Channel::choi(int m, int n, int d) const {
    ChoiMatrix c{MatC::Zero(in_dim * out_dim, in_dim * out_dim), in_dim, out_dim, m, n, d};
    MatC unit = MatC::Zero(in_dim, in_dim);
    for (Index i = 0; i < in_dim; ++i)
        for (Index j = 0; j < in_dim; ++j) {
            unit(i, j) = 1.0;
            c.matrix.block(i * out_dim, j * out_dim, out_dim, out_dim) = map(unit);
            unit(i, j) = 0.0;
        }
    return c;
}

Channel from_kraus(std::vector<MatC> kraus) {
    if (kraus.empty()) throw ValidationError("from_kraus: no operators");
    Channel ch;
    ch.out_dim = kraus.front().rows();
    ch.in_dim = kraus.front().cols();
    for (auto& k : kraus)
        if (k.rows() != ch.out_dim || k.cols() != ch.in_dim) throw ValidationError("from_kraus: shapes differ");
    auto ks = std::make_shared<const std::vector<MatC>>(std::move(kraus));
    ch.map = [ks](const MatC& rho) {
        MatC out = MatC::Zero(ks->front().rows(), ks->front().rows());
        for (auto& k : *ks) out.noalias() += k * rho * k.adjoint();
        return out;
    };
    return ch;
}

Channel compose(const Channel& second, const Channel& first) {
    if (first.out_dim != second.in_dim) throw ValidationError("compose: dimensions do not match");
    Channel ch;
    ch.in_dim = first.in_dim;
    ch.out_dim = second.out_dim;
    ch.in_layout = first.in_layout;
    ch.out_layout = second.out_layout;
    auto f = first.map, s = second.map;
    ch.map = [f, s](const MatC& rho) { return s(f(rho)); };
    return ch;
}

std::vector<Block> uss_layout(int m, int n, int d) {
    const auto& st = schur_transform(m, n, d);
    std::vector<Block> out;
    Index offset = 0;
    for (auto& b : st.iso.layout) {
        if (!out.empty() && out.back().label == b.label) continue;
        out.push_back({b.label, 0, offset, b.size});
        offset += b.size;
    }
    return out;
}

namespace {

struct PathBlock {
    Index out_offset;  // offset of the label inside the direct sum
    MatC rows;         // R_p
    double dim_p;
};

std::shared_ptr<const std::vector<PathBlock>> path_blocks(int m, int n, int d, const std::vector<Block>& layout) {
    const auto& st = schur_transform(m, n, d);
    std::map<Staircase, int> count;
    for (auto& b : st.iso.layout) ++count[b.label];
    auto out = std::make_shared<std::vector<PathBlock>>();
    for (std::size_t i = 0; i < st.iso.layout.size(); ++i) {
        auto& b = st.iso.layout[i];
        auto it = std::find_if(layout.begin(), layout.end(), [&](const Block& x) { return x.label == b.label; });
        out->push_back({it->offset, st.iso.block_rows(i).cast<cplx>(), static_cast<double>(count[b.label])});
    }
    return out;
}

Index layout_dim(const std::vector<Block>& layout) {
    return layout.empty() ? 0 : layout.back().offset + layout.back().size;
}

}  // namespace

Channel uss_channel(int m, int n, int d) {
    Channel ch;
    ch.in_dim = ipow(d, m + n);
    ch.out_layout = uss_layout(m, n, d);
    ch.out_dim = layout_dim(ch.out_layout);
    auto blocks = path_blocks(m, n, d, ch.out_layout);
    const Index out_dim = ch.out_dim;
    ch.map = [blocks, out_dim](const MatC& rho) {
        MatC out = MatC::Zero(out_dim, out_dim);
        for (auto& b : *blocks) {
            const Index q = b.rows.rows();
            out.block(b.out_offset, b.out_offset, q, q).noalias() += b.rows * rho * b.rows.adjoint();
        }
        return out;
    };
    return ch;
}

Channel dual_uss_channel(int m, int n, int d) {
    Channel ch;
    ch.out_dim = ipow(d, m + n);
    ch.in_layout = uss_layout(m, n, d);
    ch.in_dim = layout_dim(ch.in_layout);
    auto blocks = path_blocks(m, n, d, ch.in_layout);
    const Index out_dim = ch.out_dim;
    ch.map = [blocks, out_dim](const MatC& a) {
        MatC out = MatC::Zero(out_dim, out_dim);
        for (auto& b : *blocks) {
            const Index q = b.rows.rows();
            out.noalias() += b.rows.adjoint() * a.block(b.out_offset, b.out_offset, q, q) * b.rows / b.dim_p;
        }
        return out;
    };
    return ch;
}

std::string to_string(IrrepForm form) {
    switch (form) {
        case IrrepForm::choi: return "choi";
        case IrrepForm::embed_trace: return "embed-trace";
        case IrrepForm::sandwich: return "sandwich";
    }
    return "?";
}

IrrepForm irrep_form_from_string(const std::string& s) {
    if (s == "choi") return IrrepForm::choi;
    if (s == "embed-trace") return IrrepForm::embed_trace;
    if (s == "sandwich") return IrrepForm::sandwich;
    throw ValidationError("unknown irrep channel form '" + s + "'");
}

namespace {

// Per multiplicity copy k, the Kraus vectors of one form as the columns of a
// (q_lambda q_mu) x q_gamma matrix, indexed (input x, output y) -> x*q_mu + y.
using CopyBasis = std::vector<MatR>;

std::uint64_t admissible(const Staircase& lambda, const Staircase& mu, const Staircase& gamma) {
    validate(lambda);
    validate(mu);
    validate(gamma);
    if (lambda.d() != mu.d() || lambda.d() != gamma.d()) throw ValidationError("irrep channel: rows differ");
    std::uint64_t c = lr_coeff(lambda.dual(), mu, gamma);
    if (c == 0)
        throw ValidationError("irrep channel: " + gamma.str() + " does not occur in conj" + lambda.str() + " x " +
                              mu.str());
    return c;
}

CopyBasis choi_basis(const Staircase& lambda, const Staircase& mu, const Staircase& gamma, std::uint64_t c) {
    auto u1 = general_cg(dual_of(canonical_realization(lambda)), canonical_realization(mu));
    const double ql = static_cast<double>(dim_gl_irrep(lambda)), qg = static_cast<double>(dim_gl_irrep(gamma));
    CopyBasis out;
    for (std::uint64_t k = 0; k < c; ++k)
        out.push_back(std::sqrt(ql / qg) * u1.block_rows(u1.find(gamma, static_cast<int>(k))).transpose());
    return out;
}

CopyBasis embed_basis(const Staircase& lambda, const Staircase& mu, const Staircase& gamma, std::uint64_t c) {
    auto u2 = general_cg(canonical_realization(mu), dual_of(canonical_realization(gamma)));
    const Index ql = dim_gl_irrep(lambda), qm = dim_gl_irrep(mu), qg = dim_gl_irrep(gamma);
    CopyBasis out;
    for (std::uint64_t k = 0; k < c; ++k) {
        int blk = u2.find(lambda, static_cast<int>(k));
        if (blk < 0) throw InternalError("irrep channel: embedding block missing");
        MatR rows = u2.block_rows(blk);  // q_lambda x (q_mu q_gamma)
        MatR w(ql * qm, qg);
        for (Index x = 0; x < ql; ++x)
            for (Index y = 0; y < qm; ++y)
                for (Index b = 0; b < qg; ++b) w(x * qm + y, b) = rows(x, y * qg + b);
        out.push_back(w);
    }
    return out;
}

CopyBasis sandwich_basis(const Staircase& lambda, const Staircase& mu, const Staircase& gamma, std::uint64_t c) {
    auto u3 = general_cg(canonical_realization(lambda), canonical_realization(gamma));
    const Index ql = dim_gl_irrep(lambda), qm = dim_gl_irrep(mu), qg = dim_gl_irrep(gamma);
    const double scale = std::sqrt(double(ql) / double(qm));
    CopyBasis out;
    for (std::uint64_t k = 0; k < c; ++k) {
        int blk = u3.find(mu, static_cast<int>(k));
        if (blk < 0) throw InternalError("irrep channel: sandwich block missing");
        MatR rows = u3.block_rows(blk);  // q_mu x (q_lambda q_gamma)
        MatR u(ql * qm, qg);
        for (Index x = 0; x < ql; ++x)
            for (Index y = 0; y < qm; ++y)
                for (Index a = 0; a < qg; ++a) u(x * qm + y, a) = scale * rows(y, x * qg + a);
        out.push_back(u);
    }
    return out;
}

MatC mix(const CopyBasis& basis, const VecC& coeff) {
    MatC v = MatC::Zero(basis.front().rows(), basis.front().cols());
    for (std::size_t k = 0; k < basis.size(); ++k) v += coeff(k) * basis[k].cast<cplx>();
    return v;
}

// Unitary Y with sum_k psi_k ref_k == sum_k' (Y psi)_k' other_k' up to a
// unitary on the Kraus index. The overlaps factor as Y (x) T; Y is read off
// against the strongest pair and polar-normalized.
MatR alignment(const CopyBasis& ref, const CopyBasis& other) {
    const Index c = static_cast<Index>(ref.size());
    std::vector<std::vector<MatR>> o(c, std::vector<MatR>(c));
    double best = -1;
    Index r0 = 0, k0 = 0;
    for (Index kp = 0; kp < c; ++kp)
        for (Index k = 0; k < c; ++k) {
            o[kp][k] = other[kp].transpose() * ref[k];
            double s = o[kp][k].squaredNorm();
            if (s > best) {
                best = s;
                r0 = kp;
                k0 = k;
            }
        }
    MatR y(c, c);
    for (Index kp = 0; kp < c; ++kp)
        for (Index k = 0; k < c; ++k) y(kp, k) = o[kp][k].cwiseProduct(o[r0][k0]).sum();
    Eigen::JacobiSVD<MatR> svd(y, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().transpose();
}

MatC choi_of(const MatC& kraus_vectors) { return kraus_vectors * kraus_vectors.adjoint(); }

struct FormData {
    CopyBasis basis;
    MatR align;  // psi in the choi basis -> coefficients in this basis
};

const FormData& form_data(const Staircase& lambda, const Staircase& mu, const Staircase& gamma, IrrepForm form) {
    static std::mutex mtx;
    static std::map<std::tuple<Staircase, Staircase, Staircase, IrrepForm>, std::shared_ptr<const FormData>> cache;
    auto key = std::make_tuple(lambda, mu, gamma, form);
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(key);
        if (it != cache.end()) return *it->second;
    }
    const std::uint64_t c = admissible(lambda, mu, gamma);
    auto data = std::make_shared<FormData>();
    CopyBasis ref = choi_basis(lambda, mu, gamma, c);
    if (form == IrrepForm::choi) {
        data->basis = ref;
        data->align = MatR::Identity(c, c);
    } else {
        data->basis = form == IrrepForm::embed_trace ? embed_basis(lambda, mu, gamma, c)
                                                     : sandwich_basis(lambda, mu, gamma, c);
        data->align = alignment(ref, data->basis);
        // the rotated basis must reproduce the reference channel on every copy
        for (Index k = 0; k < static_cast<Index>(c); ++k) {
            VecC e = VecC::Zero(c);
            e(k) = 1.0;
            if (k > 0) e(0) = 1.0;
            e.normalize();
            MatC lhs = choi_of(mix(ref, e));
            MatC rhs = choi_of(mix(data->basis, data->align.cast<cplx>() * e));
            if (max_abs_diff(lhs, rhs) > 1e-8)
                throw InternalError("irrep channel: " + to_string(form) + " form disagrees with the Choi form for " +
                                    lambda.str() + " -> " + mu.str() + " via " + gamma.str());
        }
    }
    std::lock_guard<std::mutex> lock(mtx);
    return *cache.emplace(key, std::move(data)).first->second;
}

void check_psi(const VecC& psi, std::uint64_t c) {
    if (static_cast<std::uint64_t>(psi.size()) != c)
        throw ValidationError("psi has length " + std::to_string(psi.size()) + ", multiplicity is " + std::to_string(c));
    if (std::abs(psi.norm() - 1.0) > 1e-9) throw ValidationError("psi is not a unit vector");
}

}  // namespace

std::vector<MatC> irrep_kraus(const Staircase& lambda, const Staircase& mu, const Staircase& gamma, const VecC& psi,
                              IrrepForm form) {
    check_psi(psi, admissible(lambda, mu, gamma));
    const auto& fd = form_data(lambda, mu, gamma, form);
    MatC v = mix(fd.basis, fd.align.cast<cplx>() * psi);
    const Index qm = dim_gl_irrep(mu), ql = dim_gl_irrep(lambda);
    std::vector<MatC> kraus;
    for (Index a = 0; a < v.cols(); ++a) kraus.push_back(unvec(v.col(a), ql, qm).transpose());
    return kraus;
}

Channel irrep_channel(const Staircase& lambda, const Staircase& mu, const Staircase& gamma, const VecC& psi,
                      IrrepForm form) {
    return from_kraus(irrep_kraus(lambda, mu, gamma, psi, form));
}

MatC irrep_embedding(const Staircase& lambda, const Staircase& mu, const Staircase& gamma, const VecC& psi) {
    check_psi(psi, admissible(lambda, mu, gamma));
    const auto& fd = form_data(lambda, mu, gamma, IrrepForm::embed_trace);
    MatC v = mix(fd.basis, fd.align.cast<cplx>() * psi);  // (x*q_mu + y, b)
    const Index ql = dim_gl_irrep(lambda), qm = dim_gl_irrep(mu), qg = dim_gl_irrep(gamma);
    MatC iota(qm * qg, ql);
    for (Index x = 0; x < ql; ++x)
        for (Index y = 0; y < qm; ++y)
            for (Index b = 0; b < qg; ++b) iota(y * qg + b, x) = v(x * qm + y, b);
    return iota;
}

void validate(const ExtremalSpec& spec) {
    if (spec.d < 1 || spec.m < 0 || spec.n < 0) throw ValidationError("spec: bad dimensions");
    std::set<Staircase> seen;
    for (auto& a : spec.assignments) {
        validate(a.lambda);
        validate(a.mu);
        validate(a.gamma);
        if (a.lambda.d() != spec.d || a.mu.d() != spec.d || a.gamma.d() != spec.d)
            throw ValidationError("spec: staircase with the wrong number of rows");
        if (!a.lambda.is_partition() || a.lambda.size() != spec.m)
            throw ValidationError("spec: lambda " + a.lambda.str() + " is not a partition of " + std::to_string(spec.m));
        if (!a.mu.is_partition() || a.mu.size() != spec.n)
            throw ValidationError("spec: mu " + a.mu.str() + " is not a partition of " + std::to_string(spec.n));
        if (!seen.insert(a.lambda).second) throw ValidationError("spec: lambda " + a.lambda.str() + " assigned twice");
        std::uint64_t c = lr_coeff(a.lambda.dual(), a.mu, a.gamma);
        if (c == 0)
            throw ValidationError("spec: " + a.gamma.str() + " is not in " + a.mu.str() + " + conj" + a.lambda.str());
        check_psi(a.psi, c);
    }
    for (auto& l : partitions(spec.m, spec.d))
        if (!seen.count(l)) throw ValidationError("spec: no assignment for lambda " + l.str());
}

Assignment make_assignment(const Staircase& lambda, const Staircase& mu, const Staircase& gamma) {
    std::uint64_t c = lr_coeff(lambda.dual(), mu, gamma);
    if (c == 0) throw ValidationError("make_assignment: inadmissible triple");
    VecC psi = VecC::Zero(static_cast<Index>(c));
    psi(0) = 1.0;
    return {lambda, mu, gamma, psi};
}

std::vector<ExtremalTriple> enumerate_extremal_triples(int m, int n, int d) {
    if (m < 0 || n < 0 || d < 1) throw ValidationError("enumerate_extremal_triples: bad dimensions");
    auto gammas = enumerate_staircases(n, m, d);
    std::reverse(gammas.begin(), gammas.end());
    std::vector<ExtremalTriple> out;
    for (auto& l : partitions(m, d))
        for (auto& mu : partitions(n, d))
            for (auto& g : gammas)
                if (auto c = lr_coeff(l.dual(), mu, g); c > 0) out.push_back({l, mu, g, c});
    return out;
}

ChoiMatrix assemble_choi(int m, int n, int d, const BlockMap& blocks) {
    const auto& sin = schur_transform(m, 0, d);
    const auto& sout = schur_transform(n, 0, d);
    const Index din = sin.iso.cols(), dout = sout.iso.cols();
    ChoiMatrix c{MatC::Zero(din * dout, din * dout), din, dout, m, n, d};
    for (auto& [key, mat] : blocks) {
        auto& [gamma, lambda_bar, mu] = key;
        const Staircase lambda = lambda_bar.dual();
        auto u1 = general_cg(dual_of(canonical_realization(lambda)), canonical_realization(mu));
        const double ql = static_cast<double>(dim_gl_irrep(lambda)), qg = static_cast<double>(dim_gl_irrep(gamma));
        const Index copies = mat.rows();
        MatC local = MatC::Zero(u1.cols(), u1.cols());
        for (Index k = 0; k < copies; ++k)
            for (Index kp = 0; kp < copies; ++kp) {
                if (mat(k, kp) == cplx(0)) continue;
                MatR bk = u1.block_rows(u1.find(gamma, static_cast<int>(k)));
                MatR bkp = u1.block_rows(u1.find(gamma, static_cast<int>(kp)));
                local += (ql / qg) * mat(k, kp) * (bk.transpose() * bkp).cast<cplx>();
            }
        double dim_pmu = 0;
        for (auto& b : sout.iso.layout) dim_pmu += b.label == mu;
        for (std::size_t i = 0; i < sin.iso.layout.size(); ++i) {
            if (sin.iso.layout[i].label != lambda) continue;
            MatR rp = sin.iso.block_rows(i);
            for (std::size_t j = 0; j < sout.iso.layout.size(); ++j) {
                if (sout.iso.layout[j].label != mu) continue;
                MatC x = kron(rp, MatR(sout.iso.block_rows(j))).cast<cplx>();
                c.matrix.noalias() += x.transpose() * local * x / dim_pmu;
            }
        }
    }
    return c;
}

ChoiMatrix extremal_choi(const ExtremalSpec& spec) {
    validate(spec);
    BlockMap blocks;
    for (auto& a : spec.assignments) blocks[{a.gamma, a.lambda.dual(), a.mu}] = a.psi * a.psi.adjoint();
    return assemble_choi(spec.m, spec.n, spec.d, blocks);
}

BlockMap block_decompose_choi(const ChoiMatrix& choi, double tol) {
    const int m = choi.m, n = choi.n, d = choi.d;
    if (d < 1 || choi.in_dim != ipow(d, m) || choi.out_dim != ipow(d, n))
        throw ValidationError("block_decompose_choi: Choi matrix lacks tensor-power dimensions");
    const auto& sin = schur_transform(m, 0, d);
    const auto& sout = schur_transform(n, 0, d);
    BlockMap out;
    for (auto& lambda : partitions(m, d))
        for (auto& mu : partitions(n, d)) {
            // first path on each side
            std::size_t ip = 0, jp = 0;
            while (sin.iso.layout[ip].label != lambda) ++ip;
            while (sout.iso.layout[jp].label != mu) ++jp;
            MatC x = kron(MatR(sin.iso.block_rows(ip)), MatR(sout.iso.block_rows(jp))).cast<cplx>();
            MatC g = x.conjugate() * choi.matrix * x.transpose();
            auto u1 = general_cg(dual_of(canonical_realization(lambda)), canonical_realization(mu));
            double dim_pmu = 0;
            for (auto& b : sout.iso.layout) dim_pmu += b.label == mu;
            const double ql = static_cast<double>(dim_gl_irrep(lambda));
            std::map<Staircase, int> copies;
            for (auto& b : u1.layout) ++copies[b.label];
            for (auto& [gamma, c] : copies) {
                MatC mat(c, c);
                for (int k = 0; k < c; ++k)
                    for (int kp = 0; kp < c; ++kp) {
                        MatC bk = u1.block_rows(u1.find(gamma, k)).cast<cplx>();
                        MatC bkp = u1.block_rows(u1.find(gamma, kp)).cast<cplx>();
                        mat(k, kp) = dim_pmu * (bk * g * bkp.transpose()).trace() / ql;
                    }
                out[{gamma, lambda.dual(), mu}] = mat;
            }
        }
    ChoiMatrix rebuilt = assemble_choi(m, n, d, out);
    double off = (rebuilt.matrix - choi.matrix).norm();
    if (off > tol)
        throw NotSymmetricError("block_decompose_choi: " + std::to_string(off) +
                                " of Frobenius mass lies outside the symmetric block structure");
    return out;
}

Channel irrep_layer(const ExtremalSpec& spec, IrrepForm form) {
    validate(spec);
    Channel ch;
    ch.in_layout = uss_layout(spec.m, 0, spec.d);
    ch.out_layout = uss_layout(spec.n, 0, spec.d);
    ch.in_dim = layout_dim(ch.in_layout);
    ch.out_dim = layout_dim(ch.out_layout);
    struct Piece {
        Index in_off, in_size, out_off, out_size;
        std::vector<MatC> kraus;
    };
    auto pieces = std::make_shared<std::vector<Piece>>();
    auto find = [](const std::vector<Block>& l, const Staircase& s) {
        return *std::find_if(l.begin(), l.end(), [&](const Block& b) { return b.label == s; });
    };
    for (auto& a : spec.assignments) {
        Block bi = find(ch.in_layout, a.lambda), bo = find(ch.out_layout, a.mu);
        pieces->push_back({bi.offset, bi.size, bo.offset, bo.size, irrep_kraus(a.lambda, a.mu, a.gamma, a.psi, form)});
    }
    const Index out_dim = ch.out_dim;
    ch.map = [pieces, out_dim](const MatC& rho) {
        MatC out = MatC::Zero(out_dim, out_dim);
        for (auto& p : *pieces) {
            MatC in = rho.block(p.in_off, p.in_off, p.in_size, p.in_size);
            for (auto& k : p.kraus) out.block(p.out_off, p.out_off, p.out_size, p.out_size).noalias() += k * in * k.adjoint();
        }
        return out;
    };
    return ch;
}

ChoiMatrix factored_channel(const ExtremalSpec& spec) {
    validate(spec);
    Channel full = compose(dual_uss_channel(spec.n, 0, spec.d),
                           compose(irrep_layer(spec, IrrepForm::embed_trace), uss_channel(spec.m, 0, spec.d)));
    return full.choi(spec.m, spec.n, spec.d);
}

SymmetryReport check_symmetries(const ChoiMatrix& choi, int trials, double tol, std::uint64_t seed) {
    const int m = choi.m, n = choi.n, d = choi.d;
    if (d < 1 || choi.in_dim != ipow(d, m) || choi.out_dim != ipow(d, n))
        throw ValidationError("check_symmetries: Choi matrix lacks tensor-power dimensions");
    SymmetryReport rep;
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        MatC u = haar_unitary(d, rng);
        MatC w = MatC::Identity(1, 1);
        for (int i = 0; i < m; ++i) w = kron(w, MatC(u.conjugate()));
        for (int i = 0; i < n; ++i) w = kron(w, u);
        rep.unitary_residual = std::max(rep.unitary_residual, (w * choi.matrix - choi.matrix * w).norm());
    }
    auto transpositions = [](int k) {
        std::vector<std::vector<int>> out;
        for (int t = 0; t + 1 < k; ++t) {
            std::vector<int> s(k);
            std::iota(s.begin(), s.end(), 0);
            std::swap(s[t], s[t + 1]);
            out.push_back(s);
        }
        return out;
    };
    const MatR iin = MatR::Identity(choi.in_dim, choi.in_dim), iout = MatR::Identity(choi.out_dim, choi.out_dim);
    std::vector<MatC> gens;
    for (auto& s : transpositions(m)) gens.push_back(kron(permutation_operator(s, d), iout).cast<cplx>());
    for (auto& s : transpositions(n)) gens.push_back(kron(iin, permutation_operator(s, d)).cast<cplx>());
    for (auto& g : gens)
        rep.permutation_residual = std::max(rep.permutation_residual, (g * choi.matrix - choi.matrix * g).norm());
    rep.passed = rep.unitary_residual < tol && rep.permutation_residual < tol;
    return rep;
}

}  // namespace schurchan
