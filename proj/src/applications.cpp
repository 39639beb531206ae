#include "schurchan/applications.hpp"

#include "schurchan/errors.hpp"
#include "schurchan/rep_kernel.hpp"

namespace schurchan {

namespace {

Staircase first_row(int k, int d) {
    std::vector<int> e(d, 0);
    e[0] = k;
    return Staircase(e);
}

void check_square(const MatC& rho, Index dim, const char* what) {
    if (rho.rows() != dim || rho.cols() != dim)
        throw ValidationError(std::string(what) + ": input must be " + std::to_string(dim) + "x" + std::to_string(dim));
}

// Trace 1 and PSD within numerical slack; only exact outputs are held to it.
void check_state(const MatC& out, const StreamOptions& opt, const char* what) {
    if (opt.mode != StreamMode::exact) return;
    if (std::abs(out.trace() - cplx(1.0)) > 1e-10 || min_eigenvalue(out) < -1e-10)
        throw InternalError(std::string(what) + ": output is not a density matrix");
}

AppResult run(const ExtremalSpec& spec, const MatC& rho, const StreamOptions& opt, const char* what) {
    auto r = streamed_apply(spec, rho, opt);
    check_state(r.output, opt, what);
    return {std::move(r.output), std::move(r.ledger), std::nullopt};
}

}  // namespace

ExtremalSpec symmetrization_spec(int m, int d) {
    if (m < 0 || d < 1) throw ValidationError("symmetrization_spec: bad dimensions");
    ExtremalSpec s{m, m, d, {}};
    for (auto& l : partitions(m, d)) s.assignments.push_back(make_assignment(l, l, Staircase::empty(d)));
    return s;
}

ExtremalSpec cloning_spec(int m, int n, int d) {
    if (m <= 0 || m >= n) throw ValidationError("cloning needs 0 < m < n");
    if (d < 2) throw ValidationError("cloning needs d >= 2");
    ExtremalSpec s{m, n, d, {}};
    const Staircase sym_in = first_row(m, d), sym_out = first_row(n, d);
    auto triples = enumerate_extremal_triples(m, n, d);
    for (auto& l : partitions(m, d)) {
        if (l == sym_in) {
            s.assignments.push_back(make_assignment(l, sym_out, first_row(n - m, d)));
            continue;
        }
        const ExtremalTriple* pick = nullptr;
        for (auto& t : triples)
            if (t.lambda == l && (!pick || (t.mu == sym_out && pick->mu != sym_out))) pick = &t;
        s.assignments.push_back(make_assignment(pick->lambda, pick->mu, pick->gamma));
    }
    return s;
}

Staircase gamma_min(const Staircase& lambda) {
    validate(lambda);
    if (!lambda.is_partition() || lambda.size() == 0)
        throw ValidationError("gamma_min needs a nonempty partition, got " + lambda.str());
    std::vector<int> e = lambda.entries();
    int i = 0;
    while (i + 1 < lambda.d() && e[i] == e[i + 1]) ++i;
    --e[i];
    return Staircase(e);
}

ExtremalSpec purity_spec(int m, int d) {
    if (m < 1 || d < 1) throw ValidationError("purity amplification needs m >= 1");
    ExtremalSpec s{m, 1, d, {}};
    for (auto& l : partitions(m, d))
        s.assignments.push_back(make_assignment(l, Staircase::box(d), gamma_min(l).dual()));
    return s;
}

MatR symmetric_projector(int m, int d) {
    const auto& st = schur_transform(m, 0, d);
    int blk = st.iso.find(first_row(m, d));
    if (blk < 0) throw InternalError("symmetric_projector: no symmetric block");
    MatR r = st.iso.block_rows(blk);
    return r.transpose() * r;
}

MatC depolarized(const VecC& psi, double alpha) {
    const Index d = psi.size();
    return (1.0 - alpha) * psi * psi.adjoint() + alpha * MatC::Identity(d, d) / double(d);
}

AppResult symmetrize(const MatC& rho, int m, int d, const StreamOptions& options) {
    check_square(rho, ipow(d, m), "symmetrize");
    return run(symmetrization_spec(m, d), rho, options, "symmetrize");
}

AppResult clone(const MatC& rho_sym, int m, int n, int d, const StreamOptions& options) {
    auto spec = cloning_spec(m, n, d);
    check_square(rho_sym, ipow(d, m), "clone");
    MatC p = symmetric_projector(m, d).cast<cplx>();
    double off = (p * rho_sym * p - rho_sym).norm();
    if (off > 1e-8)
        throw ValidationError("clone: input leaves the symmetric subspace (residual " + std::to_string(off) + ")");
    return run(spec, rho_sym, options, "clone");
}

AppResult clone(const VecC& psi, int m, int n, int d, const StreamOptions& options) {
    if (psi.size() != d) throw ValidationError("clone: psi must have length d");
    if (std::abs(psi.norm() - 1.0) > 1e-9) throw ValidationError("clone: psi is not normalized");
    VecC in = psi, out = psi;
    for (int i = 1; i < m; ++i) in = kron(in, psi);
    for (int i = 1; i < n; ++i) out = kron(out, psi);
    AppResult r = clone(MatC(in * in.adjoint()), m, n, d, options);
    r.fidelity = (out.adjoint() * r.output * out)(0, 0).real();
    return r;
}

AppResult purity_amplify(const MatC& rho, int m, int d, const std::optional<VecC>& reference,
                         const StreamOptions& options) {
    check_square(rho, ipow(d, m), "purity_amplify");
    AppResult r = run(purity_spec(m, d), rho, options, "purity_amplify");
    if (reference) {
        if (reference->size() != d) throw ValidationError("purity_amplify: reference must have length d");
        r.fidelity = (reference->adjoint() * r.output * *reference)(0, 0).real();
    }
    return r;
}

}  // namespace schurchan
