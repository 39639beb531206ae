#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "schurchan/errors.hpp"

namespace schurchan {

using cplx = std::complex<double>;
using Index = Eigen::Index;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatR = Mat<double>;
using MatC = Mat<cplx>;
using VecR = Vec<double>;
using VecC = Vec<cplx>;

/// d^k as an Index; throws ResourceError on overflow.
Index ipow(Index d, int k);

/// Kronecker product, first factor most significant.
template <typename DA, typename DB>
auto kron(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
    using S = typename Eigen::ScalarBinaryOpTraits<typename DA::Scalar, typename DB::Scalar>::ReturnType;
    Mat<S> r(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = S(a(i, j)) * b.template cast<S>();
    return r;
}

/// Traces out the middle factor of a (da, db, dc) tensor operator.
template <typename Derived>
Mat<typename Derived::Scalar> partial_trace(const Eigen::MatrixBase<Derived>& m, Index da, Index db, Index dc) {
    using S = typename Derived::Scalar;
    if (m.rows() != da * db * dc || m.cols() != da * db * dc) throw ValidationError("partial_trace: shape mismatch");
    Mat<S> r = Mat<S>::Zero(da * dc, da * dc);
    for (Index a = 0; a < da; ++a)
        for (Index a2 = 0; a2 < da; ++a2)
            for (Index b = 0; b < db; ++b)
                r.block(a * dc, a2 * dc, dc, dc) += m.block((a * db + b) * dc, (a2 * db + b) * dc, dc, dc);
    return r;
}

/// tr over the second factor of (da, db).
template <typename Derived>
Mat<typename Derived::Scalar> trace_second(const Eigen::MatrixBase<Derived>& m, Index da, Index db) {
    return partial_trace(m, da, db, 1);
}

/// tr over the first factor of (da, db).
template <typename Derived>
Mat<typename Derived::Scalar> trace_first(const Eigen::MatrixBase<Derived>& m, Index da, Index db) {
    return partial_trace(m, 1, da, db);
}

/// Row-major vectorization: vec(M)[i*cols + j] = M(i,j).
template <typename Derived>
Vec<typename Derived::Scalar> vec(const Eigen::MatrixBase<Derived>& m) {
    Vec<typename Derived::Scalar> v(m.size());
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
    return v;
}

template <typename Derived>
Mat<typename Derived::Scalar> unvec(const Eigen::MatrixBase<Derived>& v, Index rows, Index cols) {
    if (v.size() != rows * cols) throw ValidationError("unvec: length does not match shape");
    Mat<typename Derived::Scalar> m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = v(i * cols + j);
    return m;
}

/// Site permutation on (C^d)^{(x)m}: site sigma[k] of the output holds the
/// k-th input index. With transposed_tail > 0 the last sites are partially
/// transposed.
MatR permutation_operator(const std::vector<int>& sigma, int d, int transposed_tail = 0);

/// Gram-Schmidt over the columns of c in order; columns whose residual norm
/// falls below tol are dropped. Two passes per column.
template <typename Scalar>
Mat<Scalar> orthonormalize_columns(const Mat<Scalar>& c, double tol = 1e-6) {
    Mat<Scalar> q(c.rows(), 0);
    for (Index j = 0; j < c.cols(); ++j) {
        Vec<Scalar> v = c.col(j);
        for (int pass = 0; pass < 2; ++pass)
            if (q.cols() > 0) v -= q * (q.adjoint() * v);
        double n = v.norm();
        if (n < tol) continue;
        q.conservativeResize(Eigen::NoChange, q.cols() + 1);
        q.col(q.cols() - 1) = v / n;
    }
    return q;
}

/// Orthonormal basis of the kernel of a (via SVD), columns ordered by
/// Gram-Schmidt over the projected standard basis.
MatC null_space(const MatC& a, double tol = 1e-9);

/// max |A_ij - B_ij|.
template <typename DA, typename DB>
double max_abs_diff(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ValidationError("max_abs_diff: shape mismatch");
    if (a.size() == 0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

/// Haar-random element of SU(d): QR of a complex Ginibre matrix with R's
/// diagonal made positive, then rescaled by a d-th root of the determinant.
MatC haar_unitary(int d, std::mt19937_64& rng);

/// Hermitian part's smallest eigenvalue.
double min_eigenvalue(const MatC& m);

/// Dense dimension cap; SCHURCHAN_MAX_DIM overrides the default 4096.
Index dense_dim_limit();
void check_dense_limit(Index dim, const char* what);

}  // namespace schurchan
