#pragma once

#include "numeric.hpp"
#include "observability.hpp"
#include "spectral_split.hpp"
#include "sylvester.hpp"
#include "types.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace ltieq {

/// The complete topological-invariant index set
/// {n0, n+, n-, k_obs, k0, k+, k-}.
struct InvariantSignature {
    Index n0 = 0, nPlus = 0, nMinus = 0;
    Index kObs = 0;
    Index k0 = 0, kPlus = 0, kMinus = 0;

    friend bool operator==(const InvariantSignature&, const InvariantSignature&) = default;

    /// Name of the first differing index, or empty when equal.
    static std::string first_mismatch(const InvariantSignature& a, const InvariantSignature& b) {
        if (a.n0 != b.n0) return "n0";
        if (a.nPlus != b.nPlus) return "nPlus";
        if (a.nMinus != b.nMinus) return "nMinus";
        if (a.kObs != b.kObs) return "kObs";
        if (a.k0 != b.k0) return "k0";
        if (a.kPlus != b.kPlus) return "kPlus";
        if (a.kMinus != b.kMinus) return "kMinus";
        return {};
    }
};

struct EquivalenceVerdict {
    enum class Relation { Linear, Topological };
    enum class Reason {
        WitnessFound,
        DimensionMismatch,
        SignatureMismatch,
        InfeasibleConstraints,
        NoNonsingularWitness,
        CenterPairMismatch,
        ObservablePairMismatch,
    };

    Relation relation = Relation::Linear;
    bool equivalent = false;
    std::optional<Matrix> witness;  ///< nonsingular P with A1 P = P A2, C1 P = C2 (linear relation only)
    Reason reason = Reason::WitnessFound;
    std::string detail;
    bool deterministic = true;   ///< false when the verdict rests on randomized sampling
    double failureBound = 0.0;   ///< nominal failure probability bound for randomized negatives
};

inline const char* to_string(EquivalenceVerdict::Reason r) {
    switch (r) {
        case EquivalenceVerdict::Reason::WitnessFound: return "witness-found";
        case EquivalenceVerdict::Reason::DimensionMismatch: return "dimension-mismatch";
        case EquivalenceVerdict::Reason::SignatureMismatch: return "signature-mismatch";
        case EquivalenceVerdict::Reason::InfeasibleConstraints: return "infeasible-constraints";
        case EquivalenceVerdict::Reason::NoNonsingularWitness: return "no-nonsingular-witness";
        case EquivalenceVerdict::Reason::CenterPairMismatch: return "center-pair-mismatch";
        case EquivalenceVerdict::Reason::ObservablePairMismatch: return "observable-pair-mismatch";
    }
    return "unknown";
}

inline InvariantSignature signature_from_split(const ObservedSystem& sys, const SpectralSplit& split,
                                               const ToleranceConfig& cfg = {}) {
    InvariantSignature sig;
    sig.n0 = split.n0();
    sig.nPlus = split.nPlus();
    sig.nMinus = split.nMinus();
    const SubRanks ks = sub_ranks(sys, split, cfg);
    sig.k0 = ks.k0;
    sig.kPlus = ks.kPlus;
    sig.kMinus = ks.kMinus;
    sig.kObs = ks.total();
    return sig;
}

inline InvariantSignature invariant_signature(const ObservedSystem& sys, const ToleranceConfig& cfg = {}) {
    return signature_from_split(sys, spectral_split(sys, cfg), cfg);
}

namespace detail {

inline bool witness_residual_ok(const ObservedSystem& s1, const ObservedSystem& s2, const Matrix& P,
                                const ToleranceConfig& cfg) {
    const double aRes = frob(s1.A * P - P * s2.A);
    const double cRes = frob(s1.C * P - s2.C);
    const double pn = frob(P);
    return aRes <= cfg.tolResidual * (1.0 + frob(s1.A) + frob(s2.A)) * (1.0 + pn) &&
           cRes <= cfg.tolResidual * (1.0 + frob(s1.C)) * (1.0 + pn);
}

}  // namespace detail

/// Decide linear equivalence: search the affine solution space of
/// {A1 P = P A2, C1 P = C2} for a nonsingular element. A found witness is
/// verified directly; a negative on a nonempty space is randomized with a
/// reported failure bound.
inline EquivalenceVerdict linear_equivalent(const ObservedSystem& s1, const ObservedSystem& s2,
                                            const ToleranceConfig& cfg = {}) {
    EquivalenceVerdict v;
    v.relation = EquivalenceVerdict::Relation::Linear;
    if (s1.n() != s2.n() || s1.p() != s2.p()) {
        v.reason = EquivalenceVerdict::Reason::DimensionMismatch;
        v.detail = "state or output dimensions differ";
        return v;
    }
    const Index n = s1.n();
    if (n == 0) {
        v.equivalent = true;
        v.witness = Matrix(0, 0);
        return v;
    }

    const AffineMatrixSolution sol = solve_affine_matrix_equation(s1.A, s2.A, s1.C, s2.C, cfg);
    if (!sol.particular) {
        v.reason = EquivalenceVerdict::Reason::InfeasibleConstraints;
        v.detail = "the constraint system A1 P = P A2, C1 P = C2 has no solution";
        return v;
    }

    const auto accept = [&](const Matrix& P) {
        return is_nonsingular(P) && detail::witness_residual_ok(s1, s2, P, cfg);
    };

    // prefer the identity when it happens to be a witness (identical systems)
    const Matrix I = Matrix::Identity(n, n);
    if (detail::witness_residual_ok(s1, s2, I, cfg)) {
        v.equivalent = true;
        v.witness = I;
        v.reason = EquivalenceVerdict::Reason::WitnessFound;
        return v;
    }
    if (accept(*sol.particular)) {
        v.equivalent = true;
        v.witness = *sol.particular;
        v.reason = EquivalenceVerdict::Reason::WitnessFound;
        return v;
    }

    if (sol.nullBasis.empty()) {
        v.reason = EquivalenceVerdict::Reason::NoNonsingularWitness;
        v.detail = "the unique solution of the constraint system is singular";
        return v;
    }

    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < cfg.samples; ++trial) {
        Matrix P = *sol.particular;
        for (const auto& N : sol.nullBasis) P += gauss(rng) * N;
        if (accept(P)) {
            v.equivalent = true;
            v.witness = std::move(P);
            v.reason = EquivalenceVerdict::Reason::WitnessFound;
            return v;
        }
    }

    v.reason = EquivalenceVerdict::Reason::NoNonsingularWitness;
    v.detail = "no nonsingular element found in a " + std::to_string(sol.nullBasis.size()) +
               "-dimensional solution space after " + std::to_string(cfg.samples) + " samples";
    v.deterministic = false;
    v.failureBound = std::min(1.0, static_cast<double>(n) / static_cast<double>(std::max(cfg.samples, 1)));
    return v;
}

/// Decide topological equivalence: equal invariant signatures, linearly
/// equivalent center pairs, and linearly equivalent completely observable
/// hyperbolic parts. No homeomorphism is constructed.
inline EquivalenceVerdict topologically_equivalent(const ObservedSystem& s1, const ObservedSystem& s2,
                                                   const ToleranceConfig& cfg = {}) {
    EquivalenceVerdict v;
    v.relation = EquivalenceVerdict::Relation::Topological;
    if (s1.n() != s2.n() || s1.p() != s2.p()) {
        v.reason = EquivalenceVerdict::Reason::DimensionMismatch;
        v.detail = "state or output dimensions differ";
        return v;
    }

    const SpectralSplit sp1 = spectral_split(s1, cfg);
    const SpectralSplit sp2 = spectral_split(s2, cfg);
    const InvariantSignature sig1 = signature_from_split(s1, sp1, cfg);
    const InvariantSignature sig2 = signature_from_split(s2, sp2, cfg);
    if (!(sig1 == sig2)) {
        v.reason = EquivalenceVerdict::Reason::SignatureMismatch;
        v.detail = InvariantSignature::first_mismatch(sig1, sig2);
        return v;
    }

    // center pairs must be linearly equivalent
    const EquivalenceVerdict center =
        linear_equivalent({sp1.A0, sp1.C0}, {sp2.A0, sp2.C0}, cfg);
    if (!center.equivalent) {
        v.reason = EquivalenceVerdict::Reason::CenterPairMismatch;
        v.detail = std::string("center pairs not linearly equivalent (") + to_string(center.reason) + ")";
        v.deterministic = center.deterministic;
        v.failureBound = center.failureBound;
        return v;
    }

    // completely observable hyperbolic parts must be linearly equivalent
    const ObservedSystem h1{block_diag({sp1.Aplus, sp1.Aminus}), hcat({sp1.Cplus, sp1.Cminus}, s1.p())};
    const ObservedSystem h2{block_diag({sp2.Aplus, sp2.Aminus}), hcat({sp2.Cplus, sp2.Cminus}, s2.p())};
    const ObservabilityDecomposition d1 = kalman_decompose(h1, cfg);
    const ObservabilityDecomposition d2 = kalman_decompose(h2, cfg);
    const EquivalenceVerdict observable = linear_equivalent({d1.Ao, d1.Co}, {d2.Ao, d2.Co}, cfg);
    if (!observable.equivalent) {
        v.reason = EquivalenceVerdict::Reason::ObservablePairMismatch;
        v.detail = std::string("hyperbolic observable parts not linearly equivalent (") + to_string(observable.reason) +
                   ")";
        v.deterministic = observable.deterministic;
        v.failureBound = observable.failureBound;
        return v;
    }

    v.equivalent = true;
    v.reason = EquivalenceVerdict::Reason::WitnessFound;
    v.detail = "signatures equal; center and hyperbolic observable parts linearly equivalent";
    v.deterministic = center.deterministic && observable.deterministic;
    return v;
}

}  // namespace ltieq
