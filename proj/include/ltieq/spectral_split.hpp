#pragma once

#include "numeric.hpp"
#include "schur.hpp"
#include "sylvester.hpp"
#include "types.hpp"

#include <array>
#include <cmath>
#include <string>

namespace ltieq {

/// Block decomposition of (A, C) by the sign of the eigenvalue real parts:
/// P^{-1} A P = blockdiag(A0, Aplus, Aminus), C P = [C0 Cplus Cminus].
struct SpectralSplit {
    Matrix P;
    Matrix A0, Aplus, Aminus;
    Matrix C0, Cplus, Cminus;

    Index n0() const { return A0.rows(); }
    Index nPlus() const { return Aplus.rows(); }
    Index nMinus() const { return Aminus.rows(); }
};

namespace detail {

/// 0 = center, 1 = positive, 2 = negative real part.
inline int spectral_class(double re, double tau) {
    if (std::abs(re) <= tau) return 0;
    return re > 0.0 ? 1 : 2;
}

inline double classification_threshold(const Matrix& A, const ToleranceConfig& cfg) {
    return cfg.tolSpec * std::max(1.0, frob(A));
}

inline void require_not_borderline(const RealSchurForm& schur, double tau) {
    for (const auto& b : schur.blocks) {
        const double re = std::abs(b.realPart);
        if (re > tau / 10.0 && re < tau * 10.0)
            throw BorderlineSpectrum("eigenvalue real part " + std::to_string(b.realPart) +
                                     " lies within a factor 10 of the classification threshold " +
                                     std::to_string(tau) + "; the sign classification would be tolerance-driven");
    }
}

/// Wrap a quasi-triangular block as a Schur form (Q = I) for reuse of the
/// Bartels-Stewart core.
inline RealSchurForm as_schur(const Matrix& T) {
    RealSchurForm s;
    s.Q = Matrix::Identity(T.rows(), T.rows());
    s.T = T;
    s.blocks = scan_blocks(T);
    return s;
}

}  // namespace detail

/// Counts (n0, n+, n-) of eigenvalues with zero, positive and negative real
/// parts.
inline std::array<Index, 3> eigen_counts(const Matrix& A, const ToleranceConfig& cfg = {}) {
    if (A.rows() != A.cols()) throw ShapeError("eigen_counts requires a square matrix");
    const RealSchurForm schur = real_schur(A);
    const double tau = detail::classification_threshold(A, cfg);
    detail::require_not_borderline(schur, tau);
    std::array<Index, 3> counts{0, 0, 0};
    for (const auto& b : schur.blocks) counts[static_cast<std::size_t>(detail::spectral_class(b.realPart, tau))] += b.size;
    return counts;
}

/// Decompose (A, C) into center / unstable / stable diagonal blocks. The
/// transform is a reordered real Schur basis followed by Sylvester
/// annihilation of the cross-class coupling (class spectra are disjoint).
inline SpectralSplit spectral_split(const ObservedSystem& sys, const ToleranceConfig& cfg = {}) {
    sys.validate();
    RealSchurForm schur = real_schur(sys.A);
    const double tau = detail::classification_threshold(sys.A, cfg);
    detail::require_not_borderline(schur, tau);

    const auto classOf = [tau](const SchurBlock& b) { return detail::spectral_class(b.realPart, tau); };
    schur = reorder_schur(schur, [&](const SchurBlock& a, const SchurBlock& b) {
        if (classOf(a) != classOf(b)) return classOf(a) < classOf(b);
        if (a.realPart != b.realPart) return a.realPart < b.realPart;
        return std::abs(a.imagPart) < std::abs(b.imagPart);
    });

    std::array<Index, 3> counts{0, 0, 0};
    for (const auto& b : schur.blocks) counts[static_cast<std::size_t>(classOf(b))] += b.size;
    const Index n0 = counts[0], np = counts[1], nm = counts[2];
    const Index nh = np + nm;

    Matrix T = schur.T;
    Matrix P = schur.Q;

    // annihilate center-to-hyperbolic coupling: A0 X - X Ah = -T0h
    if (n0 > 0 && nh > 0) {
        const Matrix X = detail::sylvester_bartels_stewart(detail::as_schur(T.block(0, 0, n0, n0)),
                                                           detail::as_schur(T.block(n0, n0, nh, nh)),
                                                           -T.block(0, n0, n0, nh));
        P.rightCols(nh) += P.leftCols(n0) * X;
        T.block(0, n0, n0, nh).setZero();
    }
    // annihilate plus-to-minus coupling
    if (np > 0 && nm > 0) {
        const Matrix X = detail::sylvester_bartels_stewart(detail::as_schur(T.block(n0, n0, np, np)),
                                                           detail::as_schur(T.block(n0 + np, n0 + np, nm, nm)),
                                                           -T.block(n0, n0 + np, np, nm));
        P.rightCols(nm) += P.middleCols(n0, np) * X;
        T.block(n0, n0 + np, np, nm).setZero();
    }

    SpectralSplit out;
    out.P = P;
    out.A0 = T.block(0, 0, n0, n0);
    out.Aplus = T.block(n0, n0, np, np);
    out.Aminus = T.block(n0 + np, n0 + np, nm, nm);
    const Matrix CP = sys.C * P;
    out.C0 = CP.leftCols(n0);
    out.Cplus = CP.middleCols(n0, np);
    out.Cminus = CP.rightCols(nm);
    return out;
}

}  // namespace ltieq
