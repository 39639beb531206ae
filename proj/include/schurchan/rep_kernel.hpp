#pragma once

#include <memory>
#include <vector>

#include "schurchan/combinatorics.hpp"
#include "schurchan/gt_paths.hpp"
#include "schurchan/linalg.hpp"

namespace schurchan {

/// A concrete model of Q_gamma inside (C^d)^{(x)a} (x) (conj C^d)^{(x)b}.
/// The basis is a weight basis: every E_ii is diagonal.
struct IrrepRealization {
    /// canonical: built by canonical_realization; conjugate: dual_of a canonical one.
    enum class Model { canonical, conjugate, other };

    Staircase label;
    Model model = Model::other;
    int a = 0;  // defining sites
    int b = 0;  // dual sites
    MatR embedding;               // ambient x dim, orthonormal columns
    std::vector<MatR> generators;  // E_ij at index i*d + j

    int d() const { return label.d(); }
    Index dim() const { return embedding.cols(); }
    const MatR& E(int i, int j) const { return generators[i * d() + j]; }
    /// Weight of basis vector x, read off the diagonal of E_ii.
    std::vector<int> weight(Index x) const;
};

/// One row block of a block isometry.
struct Block {
    Staircase label;
    int multiplicity = 0;  // copy or path index
    Index offset = 0;
    Index size = 0;

    friend bool operator==(const Block&, const Block&) = default;
};

template <typename Scalar>
struct BlockIsometry {
    Mat<Scalar> matrix;  // rows: target blocks, columns: source
    std::vector<Block> layout;

    Index rows() const { return matrix.rows(); }
    Index cols() const { return matrix.cols(); }
    auto block_rows(std::size_t i) const { return matrix.middleRows(layout[i].offset, layout[i].size); }
    /// Index of the first block carrying label, or -1.
    int find(const Staircase& label, int multiplicity = 0) const {
        for (std::size_t i = 0; i < layout.size(); ++i)
            if (layout[i].label == label && layout[i].multiplicity == multiplicity) return static_cast<int>(i);
        return -1;
    }
    double isometry_residual() const {
        return max_abs_diff(matrix.adjoint() * matrix, Mat<Scalar>::Identity(cols(), cols()));
    }
};

using BlockIsometryR = BlockIsometry<double>;

/// The gl(d) action on a single site: E_ij -> |i><j| or -|j><i| when dual.
std::vector<MatR> site_generators(int d, bool dual);
/// X_ij = A_ij (x) 1 + 1 (x) B_ij.
std::vector<MatR> product_generators(const std::vector<MatR>& a, const std::vector<MatR>& b);

/// Deterministic realization along the lexicographically smallest path from
/// the empty staircase. Cached; the reference stays valid for the process.
const IrrepRealization& canonical_realization(const Staircase& gamma);

/// The conjugate representation: generators -E_ij^T, label gamma.dual().
IrrepRealization dual_of(const IrrepRealization& r);

/// Q_nu (x) C^d (or conj C^d) split into Q_gamma blocks in add/remove order,
/// each mapped onto canonical_realization(gamma).
const BlockIsometryR& simple_cg(const Staircase& nu, bool dual);

/// Q_a (x) Q_b split into sum_gamma C^{c} (x) Q_gamma, one layout block per copy k.
/// Blocks are ordered by descending label, copies by ascending k. Results for
/// canonical and conjugate models are cached by label.
BlockIsometryR general_cg(const IrrepRealization& a, const IrrepRealization& b);

/// Isometric T with T * E^a_ij = E^b_ij * T. b is given by its generators.
/// Throws InternalError unless b holds exactly one copy of a.label.
MatR intertwiner(const IrrepRealization& a, const std::vector<MatR>& b_generators);

/// Mixed Schur transform on (C^d)^{(x)m} (x) (conj C^d)^{(x)n}.
struct SchurTransform {
    BlockIsometryR iso;          // layout: (gamma, path index, q_gamma rows)
    std::vector<GtPath> paths;   // paths[i] belongs to iso.layout[i]
};
const SchurTransform& schur_transform(int m, int n, int d);

/// The q_gamma x d^{m+n} block R_p for one empty-based path.
MatR path_isometry(const GtPath& p);

}  // namespace schurchan
