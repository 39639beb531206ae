#include "schurchan/linalg.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

namespace schurchan {

Index ipow(Index d, int k) {
    Index r = 1;
    for (int i = 0; i < k; ++i) {
        if (d != 0 && r > std::numeric_limits<Index>::max() / d) throw ResourceError("dimension overflow");
        r *= d;
    }
    return r;
}

MatR permutation_operator(const std::vector<int>& sigma, int d, int transposed_tail) {
    const int m = static_cast<int>(sigma.size());
    if (transposed_tail < 0 || transposed_tail > m) throw ValidationError("permutation_operator: bad tail");
    std::vector<bool> seen(m, false);
    for (int s : sigma) {
        if (s < 0 || s >= m || seen[s]) throw ValidationError("permutation_operator: not a permutation");
        seen[s] = true;
    }
    const Index dim = ipow(d, m);
    MatR p = MatR::Zero(dim, dim);
    std::vector<int> in(m), out(m);
    for (Index x = 0; x < dim; ++x) {
        Index y = x;
        for (int k = m - 1; k >= 0; --k) {
            in[k] = static_cast<int>(y % d);
            y /= d;
        }
        for (int k = 0; k < m; ++k) out[sigma[k]] = in[k];
        // partial transpose: swap bra and ket digits on the tail sites
        std::vector<int> row = out, col = in;
        for (int k = m - transposed_tail; k < m; ++k) std::swap(row[k], col[k]);
        Index r = 0, c = 0;
        for (int k = 0; k < m; ++k) {
            r = r * d + row[k];
            c = c * d + col[k];
        }
        p(r, c) = 1.0;
    }
    return p;
}

MatC null_space(const MatC& a, double tol) {
    const Index n = a.cols();
    if (a.rows() == 0) return MatC::Identity(n, n);
    Eigen::JacobiSVD<MatC> svd(a, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    Index rank = 0;
    for (Index i = 0; i < s.size(); ++i)
        if (s(i) > tol) ++rank;
    MatC k = svd.matrixV().rightCols(n - rank);
    MatC proj = k * k.adjoint();
    return orthonormalize_columns<cplx>(proj, 1e-6);
}

MatC haar_unitary(int d, std::mt19937_64& rng) {
    if (d < 1) throw ValidationError("haar_unitary: d must be positive");
    std::normal_distribution<double> g(0.0, 1.0);
    MatC z(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) z(i, j) = cplx(g(rng), g(rng)) / std::sqrt(2.0);
    Eigen::HouseholderQR<MatC> qr(z);
    MatC q = qr.householderQ();
    const MatC& r = qr.matrixQR();
    for (int j = 0; j < d; ++j) q.col(j) *= std::polar(1.0, std::arg(r(j, j)));
    q /= std::pow(q.determinant(), 1.0 / d);
    return q;
}

double min_eigenvalue(const MatC& m) {
    if (m.size() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<MatC> es((m + m.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

Index dense_dim_limit() {
    if (const char* env = std::getenv("SCHURCHAN_MAX_DIM")) {
        try {
            long long v = std::stoll(env);
            if (v > 0) return static_cast<Index>(v);
        } catch (const std::exception&) {
        }
    }
    return 4096;
}

void check_dense_limit(Index dim, const char* what) {
    if (dim > dense_dim_limit())
        throw ResourceError(std::string(what) + ": dimension " + std::to_string(dim) + " exceeds the dense limit " +
                            std::to_string(dense_dim_limit()));
}

}  // namespace schurchan
