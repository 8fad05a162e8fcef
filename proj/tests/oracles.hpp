#pragma once

// Independent reference implementations used to cross-check the library.
// These deliberately take different algorithmic routes: Gaussian elimination
// instead of SVD for rank, dense Kronecker solves instead of Bartels-Stewart,
// scaled Taylor series instead of Pade for the exponential, RK4 instead of
// the exponential for trajectories.

#include <ltieq/types.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <vector>

namespace oracles {

using ltieq::Index;
using ltieq::Matrix;
using ltieq::Vector;

/// Rank by Gaussian elimination with full pivoting and a relative threshold.
inline Index gauss_rank(Matrix m, double tol = 1e-10) {
    if (m.size() == 0) return 0;
    const double scale = m.cwiseAbs().maxCoeff();
    if (scale == 0.0) return 0;
    const double cutoff = tol * scale * static_cast<double>(std::max(m.rows(), m.cols()));
    Index rank = 0;
    const Index steps = std::min(m.rows(), m.cols());
    for (Index k = 0; k < steps; ++k) {
        Index pi = k, pj = k;
        double best = 0.0;
        for (Index i = k; i < m.rows(); ++i)
            for (Index j = k; j < m.cols(); ++j)
                if (std::abs(m(i, j)) > best) {
                    best = std::abs(m(i, j));
                    pi = i;
                    pj = j;
                }
        if (best <= cutoff) break;
        m.row(k).swap(m.row(pi));
        m.col(k).swap(m.col(pj));
        for (Index i = k + 1; i < m.rows(); ++i) m.row(i).tail(m.cols() - k) -= (m(i, k) / m(k, k)) * m.row(k).tail(m.cols() - k);
        ++rank;
    }
    return rank;
}

/// Solve S2 X - X S1 = Q by one dense Kronecker LU solve.
inline Matrix kron_sylvester(const Matrix& S1, const Matrix& S2, const Matrix& Q) {
    const Index m = S2.rows(), n = S1.rows();
    Matrix K = Matrix::Zero(m * n, m * n);
    for (Index j = 0; j < n; ++j) {
        K.block(j * m, j * m, m, m) += S2;
        for (Index k = 0; k < n; ++k) K.block(j * m, k * m, m, m) -= S1(k, j) * Matrix::Identity(m, m);
    }
    Vector rhs(m * n);
    for (Index j = 0; j < n; ++j) rhs.segment(j * m, m) = Q.col(j);
    Vector x = K.fullPivLu().solve(rhs);
    Matrix X(m, n);
    for (Index j = 0; j < n; ++j) X.col(j) = x.segment(j * m, m);
    return X;
}

/// Matrix exponential by scaling and squaring with a plain Taylor series.
inline Matrix taylor_expm(const Matrix& A, double t = 1.0) {
    const Index n = A.rows();
    Matrix M = A * t;
    int squarings = 0;
    while (M.norm() > 0.5) {
        M *= 0.5;
        ++squarings;
    }
    Matrix sum = Matrix::Identity(n, n);
    Matrix term = Matrix::Identity(n, n);
    for (int k = 1; k <= 40; ++k) {
        term = term * M / static_cast<double>(k);
        sum += term;
        if (term.norm() < 1e-18 * sum.norm()) break;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

/// Fixed-step classical RK4 integration of xdot = A x up to time t.
inline Vector rk4_state(const Matrix& A, const Vector& x0, double t, int stepsPerUnit = 4000) {
    const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(t) * stepsPerUnit)));
    const double h = t / steps;
    Vector x = x0;
    for (int i = 0; i < steps; ++i) {
        const Vector k1 = A * x;
        const Vector k2 = A * (x + 0.5 * h * k1);
        const Vector k3 = A * (x + 0.5 * h * k2);
        const Vector k4 = A * (x + h * k3);
        x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return x;
}

/// Observability matrix via explicitly formed powers of A.
inline Matrix obs_matrix_by_powers(const Matrix& A, const Matrix& C) {
    const Index n = A.rows(), p = C.rows();
    Matrix obs(p * n, n);
    Matrix Ak = Matrix::Identity(n, n);
    for (Index i = 0; i < n; ++i) {
        obs.middleRows(i * p, p) = C * Ak;
        Ak = Ak * A;
    }
    return obs;
}

// ---- seeded random generators ------------------------------------------

inline Matrix random_matrix(std::mt19937_64& rng, Index rows, Index cols, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = g(rng);
    return m;
}

/// A random similarity with condition number at most condCap.
inline Matrix well_conditioned_similarity(std::mt19937_64& rng, Index n, double condCap = 50.0) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        Matrix R = random_matrix(rng, n, n);
        Eigen::JacobiSVD<Matrix> svd(R);
        const auto& sv = svd.singularValues();
        if (sv(sv.size() - 1) > 0.0 && sv(0) / sv(sv.size() - 1) < condCap) return R;
    }
    return Matrix::Identity(n, n);
}

/// A random matrix with eigenvalue real parts bounded away from zero:
/// conjugated block-diagonal of random hyperbolic 1x1 / 2x2 blocks.
inline Matrix random_hyperbolic(std::mt19937_64& rng, Index n, double minAbsRe = 0.3, double maxAbsRe = 2.5) {
    std::uniform_real_distribution<double> mag(minAbsRe, maxAbsRe);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    Matrix D = Matrix::Zero(n, n);
    Index i = 0;
    while (i < n) {
        const double re = (uni(rng) < 0.5 ? -1.0 : 1.0) * mag(rng);
        if (i + 1 < n && uni(rng) < 0.4) {
            const double w = mag(rng);
            D(i, i) = re;
            D(i, i + 1) = w;
            D(i + 1, i) = -w;
            D(i + 1, i + 1) = re;
            i += 2;
        } else {
            D(i, i) = re;
            i += 1;
        }
    }
    const Matrix R = well_conditioned_similarity(rng, n);
    return R * D * R.partialPivLu().solve(Matrix::Identity(n, n));
}

}  // namespace oracles
