#pragma once

#include "types.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <vector>

namespace ltieq {

/// Numerical rank: number of singular values above tolRank * sigma_max * max(rows, cols).
/// A positive scaleRef replaces sigma_max in the cutoff when larger, so that a
/// submatrix of a bigger problem is ranked against the parent's scale instead
/// of its own (possibly pure-roundoff) leading singular value.
inline Index rank_with_tolerance(const Matrix& m, const ToleranceConfig& cfg = {}, double scaleRef = 0.0) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& sv = svd.singularValues();
    const double cutoff = cfg.tolRank * std::max(sv(0), scaleRef) * static_cast<double>(std::max(m.rows(), m.cols()));
    Index r = 0;
    for (Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++r;
    return r;
}

/// Orthonormal basis (as columns) of the row space of m.
inline Matrix row_space_basis(const Matrix& m, const ToleranceConfig& cfg = {}) {
    if (m.rows() == 0 || m.cols() == 0) return Matrix(m.cols(), 0);
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    const Index r = rank_with_tolerance(m, cfg);
    return svd.matrixV().leftCols(r);
}

/// Orthonormal basis (as columns) of the kernel of m.
inline Matrix null_space_basis(const Matrix& m, const ToleranceConfig& cfg = {}) {
    if (m.rows() == 0 || m.cols() == 0) return Matrix::Identity(m.cols(), m.cols());
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    const Index r = rank_with_tolerance(m, cfg);
    return svd.matrixV().rightCols(m.cols() - r);
}

inline double frob(const Matrix& m) { return m.size() == 0 ? 0.0 : m.norm(); }

/// Scale-invariant nonsingularity test: |det P| > 1e-10 * ||P||^n.
inline bool is_nonsingular(const Matrix& p) {
    if (p.rows() != p.cols()) return false;
    if (p.rows() == 0) return true;
    const double nrm = p.norm();
    if (!(nrm > 0.0)) return false;
    // work with the normalized matrix to keep the determinant in range
    const Matrix scaled = p / nrm;
    const double d = scaled.partialPivLu().determinant();
    return std::abs(d) > 1e-10;
}

inline Matrix block_diag(const std::vector<Matrix>& blocks) {
    Index rows = 0, cols = 0;
    for (const auto& b : blocks) {
        rows += b.rows();
        cols += b.cols();
    }
    Matrix out = Matrix::Zero(rows, cols);
    Index r = 0, c = 0;
    for (const auto& b : blocks) {
        out.block(r, c, b.rows(), b.cols()) = b;
        r += b.rows();
        c += b.cols();
    }
    return out;
}

inline Matrix hcat(const std::vector<Matrix>& blocks, Index rows) {
    Index cols = 0;
    for (const auto& b : blocks) cols += b.cols();
    Matrix out(rows, cols);
    Index c = 0;
    for (const auto& b : blocks) {
        out.block(0, c, rows, b.cols()) = b;
        c += b.cols();
    }
    return out;
}

}  // namespace ltieq
