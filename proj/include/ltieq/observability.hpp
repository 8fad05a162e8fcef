#pragma once

#include "numeric.hpp"
#include "spectral_split.hpp"
#include "types.hpp"

#include <string>

namespace ltieq {

/// Kalman observability matrix [C; CA; ...; CA^{n-1}], stacked (p*n) x n.
inline Matrix observability_matrix(const ObservedSystem& sys) {
    sys.validate();
    const Index n = sys.n(), p = sys.p();
    Matrix obs(p * n, n);
    Matrix row = sys.C;
    for (Index i = 0; i < n; ++i) {
        obs.middleRows(i * p, p) = row;
        if (i + 1 < n) row = row * sys.A;
    }
    return obs;
}

/// Kalman rank of observability. scaleRef anchors the rank cutoff when the
/// system is a block of a larger one (see rank_with_tolerance).
inline Index kalman_rank(const ObservedSystem& sys, const ToleranceConfig& cfg = {}, double scaleRef = 0.0) {
    return rank_with_tolerance(observability_matrix(sys), cfg, scaleRef);
}

struct ObservabilityInfo {
    Matrix obsMatrix;
    Index kObs = 0;
    Matrix obsBasis;  ///< n x kObs, orthonormal columns spanning the observability row space
};

inline ObservabilityInfo observability_info(const ObservedSystem& sys, const ToleranceConfig& cfg = {}) {
    ObservabilityInfo info;
    info.obsMatrix = observability_matrix(sys);
    info.obsBasis = row_space_basis(info.obsMatrix, cfg);
    info.kObs = info.obsBasis.cols();
    return info;
}

/// Kalman observability decomposition: T^{-1} A T = [Ao 0; Am Au],
/// C T = [Co 0], with (Ao, Co) completely observable and observable
/// coordinates first.
struct ObservabilityDecomposition {
    Matrix T;   ///< orthogonal change of basis
    Matrix Ao;  ///< k x k
    Matrix Am;  ///< (n-k) x k
    Matrix Au;  ///< (n-k) x (n-k)
    Matrix Co;  ///< p x k
    Index k = 0;
};

inline ObservabilityDecomposition kalman_decompose(const ObservedSystem& sys, const ToleranceConfig& cfg = {}) {
    const Matrix obs = observability_matrix(sys);
    const Index n = sys.n();
    const Index k = rank_with_tolerance(obs, cfg);

    // right singular vectors: observability row space first, kernel after
    Matrix T = Matrix::Identity(n, n);
    if (n > 0) {
        Eigen::JacobiSVD<Matrix> svd(obs, Eigen::ComputeFullV);
        T = svd.matrixV();
    }

    const Matrix At = T.transpose() * sys.A * T;
    const Matrix Ct = sys.C * T;
    ObservabilityDecomposition out;
    out.T = T;
    out.k = k;
    out.Ao = At.topLeftCorner(k, k);
    out.Am = At.bottomLeftCorner(n - k, k);
    out.Au = At.bottomRightCorner(n - k, n - k);
    out.Co = Ct.leftCols(k);
    return out;
}

/// Kalman ranks of the center / unstable / stable subsystems. They add up to
/// the rank of the whole system; a mismatch signals that the rank tolerance
/// misclassified and is reported as an error.
struct SubRanks {
    Index k0 = 0;
    Index kPlus = 0;
    Index kMinus = 0;

    Index total() const { return k0 + kPlus + kMinus; }
};

inline SubRanks sub_ranks(const ObservedSystem& sys, const SpectralSplit& split, const ToleranceConfig& cfg = {}) {
    SubRanks out;
    // anchor the block rank cutoffs to the whole system's observability scale:
    // a split block whose observation rows are pure roundoff must rank as zero
    const double ref = frob(observability_matrix(sys));
    out.k0 = kalman_rank({split.A0, split.C0}, cfg, ref);
    out.kPlus = kalman_rank({split.Aplus, split.Cplus}, cfg, ref);
    out.kMinus = kalman_rank({split.Aminus, split.Cminus}, cfg, ref);
    const Index whole = kalman_rank(sys, cfg);
    if (out.total() != whole)
        throw AdditivityViolation("sub-ranks " + std::to_string(out.k0) + "+" + std::to_string(out.kPlus) + "+" +
                                  std::to_string(out.kMinus) + " do not add up to the Kalman rank " +
                                  std::to_string(whole) + "; the rank tolerance misclassified");
    return out;
}

}  // namespace ltieq
