#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <tuple>
#include <vector>

#include "schurchan/combinatorics.hpp"
#include "schurchan/linalg.hpp"
#include "schurchan/rep_kernel.hpp"

namespace schurchan {

/// C = sum_ij |i><j| (x) Phi(|i><j|), input factor first. m, n, d describe the
/// tensor-power spaces when the channel acts on (C^d)^{(x)m}; they are zero
/// for channels between abstract spaces.
struct ChoiMatrix {
    MatC matrix;
    Index in_dim = 0;
    Index out_dim = 0;
    int m = 0, n = 0, d = 0;
};

/// Phi(rho) = tr_in[C (rho^T (x) 1)].
MatC apply_channel(const ChoiMatrix& choi, const MatC& rho);

struct CptpReport {
    double hermiticity = 0;  // max |C - C^dagger|
    double min_eigenvalue = 0;
    double tp_residual = 0;  // max |tr_out C - 1|
    bool ok(double tol = 1e-8) const { return hermiticity < tol && min_eigenvalue > -tol && tp_residual < tol; }
};
CptpReport cptp_report(const ChoiMatrix& choi);

/// A linear map between flattened spaces. Layouts name the blocks of
/// direct-sum spaces; they are empty for plain spaces.
struct Channel {
    Index in_dim = 0;
    Index out_dim = 0;
    std::vector<Block> in_layout, out_layout;
    std::function<MatC(const MatC&)> map;

    MatC operator()(const MatC& rho) const;
    /// Choi matrix by action on the matrix units.
    ChoiMatrix choi(int m = 0, int n = 0, int d = 0) const;
};

Channel from_kraus(std::vector<MatC> kraus);
/// second o first.
Channel compose(const Channel& second, const Channel& first);

/// Schur transform, measure the label, drop the path register. Output is the
/// block-diagonal state on the direct sum of Q_gamma in schur_transform order.
Channel uss_channel(int m, int n, int d);
/// Appends the maximally mixed path register and undoes the Schur transform.
Channel dual_uss_channel(int m, int n, int d);
/// Distinct labels of schur_transform(m,n,d), one block each.
std::vector<Block> uss_layout(int m, int n, int d);

enum class IrrepForm { choi, embed_trace, sandwich };
std::string to_string(IrrepForm form);
IrrepForm irrep_form_from_string(const std::string& s);

/// Kraus operators (q_mu x q_lambda) of Phi_{lambda,mu}^{gamma,psi}. psi is
/// given in the multiplicity basis of general_cg(dual lambda, mu); the other
/// forms are rotated onto it by a computed alignment of their own bases.
std::vector<MatC> irrep_kraus(const Staircase& lambda, const Staircase& mu, const Staircase& gamma, const VecC& psi,
                              IrrepForm form);
Channel irrep_channel(const Staircase& lambda, const Staircase& mu, const Staircase& gamma, const VecC& psi,
                      IrrepForm form = IrrepForm::choi);
/// The embedding Q_lambda -> Q_mu (x) conj Q_gamma of the embed-trace form,
/// a (q_mu q_gamma) x q_lambda isometry.
MatC irrep_embedding(const Staircase& lambda, const Staircase& mu, const Staircase& gamma, const VecC& psi);

struct Assignment {
    Staircase lambda, mu, gamma;
    VecC psi;
};

struct ExtremalSpec {
    int m = 0, n = 0, d = 0;
    std::vector<Assignment> assignments;  // one per lambda
};

/// Throws ValidationError on a malformed spec.
void validate(const ExtremalSpec& spec);
/// Assignment with psi = e_0 of the right length.
Assignment make_assignment(const Staircase& lambda, const Staircase& mu, const Staircase& gamma);

struct ExtremalTriple {
    Staircase lambda, mu, gamma;
    std::uint64_t multiplicity = 0;
};
std::vector<ExtremalTriple> enumerate_extremal_triples(int m, int n, int d);

ChoiMatrix extremal_choi(const ExtremalSpec& spec);
ChoiMatrix factored_channel(const ExtremalSpec& spec);
/// The middle layer of factored_channel: irrep channels between USS layouts.
Channel irrep_layer(const ExtremalSpec& spec, IrrepForm form = IrrepForm::embed_trace);

/// Multiplicity-space matrices keyed by (gamma, lambda-bar, mu).
using BlockKey = std::tuple<Staircase, Staircase, Staircase>;
using BlockMap = std::map<BlockKey, MatC>;
/// Extracts the M blocks; throws NotSymmetricError when the reconstruction
/// misses C by more than tol in Frobenius norm.
BlockMap block_decompose_choi(const ChoiMatrix& choi, double tol = 1e-8);
/// Inverse of block_decompose_choi.
ChoiMatrix assemble_choi(int m, int n, int d, const BlockMap& blocks);

struct SymmetryReport {
    double unitary_residual = 0;      // max Frobenius residual over trials
    double permutation_residual = 0;  // max over adjacent transpositions
    bool passed = false;
};
SymmetryReport check_symmetries(const ChoiMatrix& choi, int trials, double tol, std::uint64_t seed = 1);

}  // namespace schurchan
