#pragma once

#include "numeric.hpp"
#include "types.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace ltieq {

/// One 1x1 or 2x2 diagonal block of a real Schur form. 2x2 blocks carry a
/// complex-conjugate eigenvalue pair (realPart +- i*imagPart).
struct SchurBlock {
    Index offset = 0;
    Index size = 1;
    double realPart = 0.0;
    double imagPart = 0.0;
};

struct RealSchurForm {
    Matrix Q;  ///< orthogonal
    Matrix T;  ///< quasi-upper-triangular
    std::vector<SchurBlock> blocks;

    Index n() const { return T.rows(); }

    std::vector<std::complex<double>> eigenvalues() const {
        std::vector<std::complex<double>> ev;
        for (const auto& b : blocks) {
            ev.emplace_back(b.realPart, b.imagPart);
            if (b.size == 2) ev.emplace_back(b.realPart, -b.imagPart);
        }
        return ev;
    }
};

namespace detail {

inline SchurBlock block_at(const Matrix& T, Index offset, Index size) {
    SchurBlock b;
    b.offset = offset;
    b.size = size;
    if (size == 1) {
        b.realPart = T(offset, offset);
        b.imagPart = 0.0;
    } else {
        const double a = T(offset, offset), bb = T(offset, offset + 1);
        const double c = T(offset + 1, offset), d = T(offset + 1, offset + 1);
        b.realPart = 0.5 * (a + d);
        const double disc = 0.25 * (a - d) * (a - d) + bb * c;
        b.imagPart = disc < 0.0 ? std::sqrt(-disc) : 0.0;
    }
    return b;
}

/// Scan the quasi-triangular T for its 1x1/2x2 diagonal block structure.
inline std::vector<SchurBlock> scan_blocks(const Matrix& T) {
    std::vector<SchurBlock> blocks;
    const Index n = T.rows();
    Index i = 0;
    while (i < n) {
        const bool two = (i + 1 < n) && T(i + 1, i) != 0.0;
        blocks.push_back(block_at(T, i, two ? 2 : 1));
        i += two ? 2 : 1;
    }
    return blocks;
}

/// Solve the small Sylvester system A11 X - X A22 = -A12 by dense
/// vectorization (block sizes are at most 2).
inline Matrix small_sylvester_for_swap(const Matrix& A11, const Matrix& A22, const Matrix& A12) {
    const Index p = A11.rows(), q = A22.rows();
    Matrix K = Matrix::Zero(p * q, p * q);
    // column-major vec: vec(A11 X - X A22) = (I (x) A11 - A22^T (x) I) vec(X)
    for (Index j = 0; j < q; ++j) {
        K.block(j * p, j * p, p, p) += A11;
        for (Index k = 0; k < q; ++k) K.block(j * p, k * p, p, p) -= A22(k, j) * Matrix::Identity(p, p);
    }
    Eigen::JacobiSVD<Matrix> svd(K, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double condCap = 1.0 / std::sqrt(std::numeric_limits<double>::epsilon());
    if (sv(sv.size() - 1) <= 0.0 || sv(0) / sv(sv.size() - 1) > condCap)
        throw SwapIllConditioned("adjacent Schur block exchange requires a Sylvester solve with condition number above " +
                                 std::to_string(condCap));
    Vector rhs(p * q);
    for (Index j = 0; j < q; ++j) rhs.segment(j * p, p) = -A12.col(j);
    Vector x = svd.solve(rhs);
    Matrix X(p, q);
    for (Index j = 0; j < q; ++j) X.col(j) = x.segment(j * p, p);
    return X;
}

/// Exchange the adjacent diagonal blocks starting at offsets o1 and o1+p,
/// updating T and Q in place. Direct-swap via an orthogonal base change of
/// the invariant subspace of the trailing block.
inline void swap_adjacent_blocks(Matrix& T, Matrix& Q, Index o1, Index p, Index q) {
    const Index m = p + q;
    const Matrix A11 = T.block(o1, o1, p, p);
    const Matrix A12 = T.block(o1, o1 + p, p, q);
    const Matrix A22 = T.block(o1 + p, o1 + p, q, q);
    const Matrix X = small_sylvester_for_swap(A11, A22, A12);

    Matrix V(m, q);
    V.topRows(p) = X;
    V.bottomRows(q) = Matrix::Identity(q, q);
    Eigen::HouseholderQR<Matrix> qr(V);
    const Matrix Z = qr.householderQ();

    // rotate the m x m window, then propagate through the rest of T and Q
    T.block(o1, 0, m, T.cols()) = Z.transpose() * T.block(o1, 0, m, T.cols());
    T.block(0, o1, T.rows(), m) = T.block(0, o1, T.rows(), m) * Z;
    Q.block(0, o1, Q.rows(), m) = Q.block(0, o1, Q.rows(), m) * Z;

    // enforce exact quasi-triangularity in the rotated window
    T.block(o1 + q, o1, p, q).setZero();
    if (q == 2 && std::abs(T(o1 + 1, o1)) < 1e3 * std::numeric_limits<double>::epsilon() * T.norm())
        T(o1 + 1, o1) = 0.0;
    if (p == 2) {
        const Index o2 = o1 + q;
        if (std::abs(T(o2 + 1, o2)) < 1e3 * std::numeric_limits<double>::epsilon() * T.norm()) T(o2 + 1, o2) = 0.0;
    }
}

}  // namespace detail

/// Real Schur factorization A = Q T Q^T with explicit diagonal block metadata.
inline RealSchurForm real_schur(const Matrix& A) {
    if (A.rows() != A.cols()) throw ShapeError("real_schur requires a square matrix");
    if (!all_finite(A)) throw ValueError("real_schur requires finite input");
    RealSchurForm out;
    if (A.rows() == 0) {
        out.Q = Matrix(0, 0);
        out.T = Matrix(0, 0);
        return out;
    }
    Eigen::RealSchur<Matrix> schur;
    schur.compute(A, true);
    if (schur.info() != Eigen::Success)
        throw NonConvergence("QR iteration failed to converge within " +
                             std::to_string(40 * A.rows()) + " sweeps for a " + std::to_string(A.rows()) + "x" +
                             std::to_string(A.rows()) + " matrix");
    out.Q = schur.matrixU();
    out.T = schur.matrixT();
    // clear roundoff below the quasi-triangular profile
    for (Index j = 0; j < out.T.cols(); ++j)
        for (Index i = j + 2; i < out.T.rows(); ++i) out.T(i, j) = 0.0;
    out.blocks = detail::scan_blocks(out.T);
    return out;
}

/// Stable sort of the diagonal blocks by a strict-weak ordering, via adjacent
/// orthogonal block exchanges. Eigenvalue multiset and residual are preserved.
inline RealSchurForm reorder_schur(const RealSchurForm& s,
                                   const std::function<bool(const SchurBlock&, const SchurBlock&)>& less) {
    RealSchurForm out = s;
    auto& blocks = out.blocks;
    const std::size_t nb = blocks.size();
    // bubble sort: only adjacent exchanges are available
    for (std::size_t pass = 0; pass + 1 < nb; ++pass) {
        bool swapped = false;
        for (std::size_t i = 0; i + 1 < nb; ++i) {
            if (less(blocks[i + 1], blocks[i])) {
                detail::swap_adjacent_blocks(out.T, out.Q, blocks[i].offset, blocks[i].size, blocks[i + 1].size);
                std::swap(blocks[i], blocks[i + 1]);
                blocks[i].offset = blocks[i + 1].offset;  // keep the old left offset
                blocks[i + 1].offset = blocks[i].offset + blocks[i].size;
                swapped = true;
            }
        }
        if (!swapped) break;
    }
    return out;
}

/// Convenience overload: sort blocks by a scalar key.
inline RealSchurForm reorder_schur(const RealSchurForm& s, const std::function<double(const SchurBlock&)>& keyOf) {
    return reorder_schur(s, [&](const SchurBlock& a, const SchurBlock& b) { return keyOf(a) < keyOf(b); });
}

}  // namespace ltieq
