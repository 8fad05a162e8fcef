#pragma once

#include "numeric.hpp"
#include "schur.hpp"
#include "types.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace ltieq {

namespace detail {

/// Dense Kronecker solve of A X - X B = F for small blocks (at most 2x2).
inline Matrix tiny_sylvester(const Matrix& A, const Matrix& B, const Matrix& F) {
    const Index p = A.rows(), q = B.rows();
    Matrix K = Matrix::Zero(p * q, p * q);
    for (Index j = 0; j < q; ++j) {
        K.block(j * p, j * p, p, p) += A;
        for (Index k = 0; k < q; ++k) K.block(j * p, k * p, p, p) -= B(k, j) * Matrix::Identity(p, p);
    }
    Vector rhs(p * q);
    for (Index j = 0; j < q; ++j) rhs.segment(j * p, p) = F.col(j);
    Vector x = K.partialPivLu().solve(rhs);
    Matrix X(p, q);
    for (Index j = 0; j < q; ++j) X.col(j) = x.segment(j * p, p);
    return X;
}

/// Bartels-Stewart core for S2 X - X S1 = Q without the spectra precheck.
inline Matrix sylvester_bartels_stewart(const RealSchurForm& s2, const RealSchurForm& s1, const Matrix& Q) {
    const Index m2 = s2.n(), m1 = s1.n();
    if (m1 == 0 || m2 == 0) return Matrix(m2, m1);
    const Matrix F = s2.Q.transpose() * Q * s1.Q;
    const Matrix& T2 = s2.T;
    const Matrix& T1 = s1.T;
    Matrix Y = Matrix::Zero(m2, m1);
    const auto& rb = s2.blocks;  // row blocks, solved bottom-up
    const auto& cb = s1.blocks;  // column blocks, solved left-to-right
    for (Index jj = 0; jj < static_cast<Index>(cb.size()); ++jj) {
        const auto& bj = cb[jj];
        for (Index ii = static_cast<Index>(rb.size()) - 1; ii >= 0; --ii) {
            const auto& bi = rb[ii];
            Matrix rhs = F.block(bi.offset, bj.offset, bi.size, bj.size);
            const Index below = m2 - (bi.offset + bi.size);
            if (below > 0)
                rhs -= T2.block(bi.offset, bi.offset + bi.size, bi.size, below) *
                       Y.block(bi.offset + bi.size, bj.offset, below, bj.size);
            if (bj.offset > 0)
                rhs += Y.block(bi.offset, 0, bi.size, bj.offset) * T1.block(0, bj.offset, bj.offset, bj.size);
            Y.block(bi.offset, bj.offset, bi.size, bj.size) =
                tiny_sylvester(T2.block(bi.offset, bi.offset, bi.size, bi.size),
                               T1.block(bj.offset, bj.offset, bj.size, bj.size), rhs);
        }
    }
    return s2.Q * Y * s1.Q.transpose();
}

inline double min_eigen_separation(const RealSchurForm& a, const RealSchurForm& b) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& ea : a.eigenvalues())
        for (const auto& eb : b.eigenvalues()) best = std::min(best, std::abs(ea - eb));
    return best;
}

}  // namespace detail

/// Solve the Sylvester equation S2 X - X S1 = Q. The spectra of S1 and S2
/// must be disjoint, which makes the solution unique.
inline Matrix solve_sylvester(const Matrix& S1, const Matrix& S2, const Matrix& Q, const ToleranceConfig& cfg = {}) {
    if (S1.rows() != S1.cols() || S2.rows() != S2.cols()) throw ShapeError("Sylvester coefficients must be square");
    if (Q.rows() != S2.rows() || Q.cols() != S1.rows())
        throw ShapeError("Sylvester right-hand side must be " + std::to_string(S2.rows()) + "x" +
                         std::to_string(S1.rows()));
    const RealSchurForm s1 = real_schur(S1);
    const RealSchurForm s2 = real_schur(S2);
    if (S1.rows() > 0 && S2.rows() > 0) {
        const double sep = detail::min_eigen_separation(s1, s2);
        if (sep <= cfg.tolSpec)
            throw SpectraOverlap("spectra of the Sylvester coefficients are not disjoint (min eigenvalue distance " +
                                 std::to_string(sep) + ")");
    }
    return detail::sylvester_bartels_stewart(s2, s1, Q);
}

/// Full solution set of {A1 P = P A2, C1 P = C2}: a least-squares particular
/// solution (absent when the constraints are infeasible) plus an orthonormal
/// basis of the homogeneous space {X : A1 X = X A2, C1 X = 0}.
struct AffineMatrixSolution {
    std::optional<Matrix> particular;
    std::vector<Matrix> nullBasis;
};

inline AffineMatrixSolution solve_affine_matrix_equation(const Matrix& A1, const Matrix& A2, const Matrix& C1,
                                                         const Matrix& C2, const ToleranceConfig& cfg = {}) {
    const Index n = A1.rows(), p = C1.rows();
    if (A2.rows() != n || A2.cols() != n || A1.cols() != n)
        throw ShapeError("affine matrix equation requires equal square state matrices");
    if (C1.cols() != n || C2.cols() != n || C2.rows() != p)
        throw ShapeError("affine matrix equation requires matching observation shapes");
    AffineMatrixSolution out;
    if (n == 0) {
        out.particular = Matrix(0, 0);
        return out;
    }

    // column-major vectorization of A1 P - P A2 = 0 and C1 P = C2
    Matrix K = Matrix::Zero(n * n + p * n, n * n);
    for (Index j = 0; j < n; ++j) {
        K.block(j * n, j * n, n, n) += A1;
        for (Index k = 0; k < n; ++k) K.block(j * n, k * n, n, n) -= A2(k, j) * Matrix::Identity(n, n);
        K.block(n * n + j * p, j * n, p, n) = C1;
    }
    Vector rhs = Vector::Zero(n * n + p * n);
    for (Index j = 0; j < n; ++j) rhs.segment(n * n + j * p, p) = C2.col(j);

    Eigen::JacobiSVD<Matrix> svd(K, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cutoff =
        sv.size() == 0 ? 0.0 : cfg.tolRank * sv(0) * static_cast<double>(std::max(K.rows(), K.cols()));
    svd.setThreshold(Eigen::NumTraits<double>::epsilon());  // rank handled manually below
    Index rank = 0;
    for (Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++rank;

    // truncated-SVD least squares
    Vector y = Vector::Zero(n * n);
    for (Index i = 0; i < rank; ++i) y += (svd.matrixU().col(i).dot(rhs) / sv(i)) * svd.matrixV().col(i);
    Matrix P0(n, n);
    for (Index j = 0; j < n; ++j) P0.col(j) = y.segment(j * n, n);

    const double residual = (K * y - rhs).norm();
    if (residual <= cfg.tolResidual * (1.0 + rhs.norm())) out.particular = P0;

    for (Index i = rank; i < svd.matrixV().cols(); ++i) {
        Matrix N(n, n);
        for (Index j = 0; j < n; ++j) N.col(j) = svd.matrixV().col(i).segment(j * n, n);
        out.nullBasis.push_back(std::move(N));
    }
    return out;
}

}  // namespace ltieq
