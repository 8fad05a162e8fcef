#pragma once

#include "equivalence.hpp"
#include "numeric.hpp"
#include "observability.hpp"
#include "spectral_split.hpp"
#include "types.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace ltieq {

/// Diagonal +-1 block replacing the unobservable hyperbolic dynamics:
/// dPlus entries +1 followed by dMinus entries -1.
inline Matrix ehat(Index dPlus, Index dMinus) {
    if (dPlus < 0 || dMinus < 0) throw ShapeError("ehat requires nonnegative block sizes");
    Matrix e = Matrix::Zero(dPlus + dMinus, dPlus + dMinus);
    for (Index i = 0; i < dPlus; ++i) e(i, i) = 1.0;
    for (Index i = dPlus; i < dPlus + dMinus; ++i) e(i, i) = -1.0;
    return e;
}

/// Result of canonicalizing a completely observable pair: (Ahat, Chat) with
/// the change of basis T (new coordinates are T x) and the observability
/// indices of the row scan.
struct ObservableCanonical {
    Matrix Ahat;
    Matrix Chat;
    Matrix T;
    std::vector<Index> indices;
};

/// Single-output observer canonical form: Ahat has ones on the superdiagonal
/// and the Cayley-Hamilton coefficients of C A^n = mu_n C + ... + mu_1 C A^{n-1}
/// in the last row; Chat = [1 0 ... 0]. Constant on linear-equivalence classes.
inline ObservableCanonical observable_canonical_siso(const ObservedSystem& sys, const ToleranceConfig& cfg = {}) {
    if (sys.p() != 1) throw NotSISO("observable_canonical_siso requires a single output, got p = " + std::to_string(sys.p()));
    const Index n = sys.n();
    const Matrix T = observability_matrix(sys);
    const Index k = rank_with_tolerance(T, cfg);
    if (k != n)
        throw NotObservable("system is not completely observable: Kalman rank " + std::to_string(k) + " < n = " +
                            std::to_string(n));
    ObservableCanonical out;
    out.T = T;
    out.indices = {n};
    out.Ahat = Matrix::Zero(n, n);
    out.Chat = Matrix::Zero(1, n);
    if (n == 0) return out;
    out.Chat(0, 0) = 1.0;
    for (Index i = 0; i + 1 < n; ++i) out.Ahat(i, i + 1) = 1.0;
    // last row [mu_n ... mu_1] from C A^n = [mu_n ... mu_1] T
    const Matrix can = T.row(n - 1) * sys.A;  // = C A^n
    out.Ahat.row(n - 1) = T.transpose().partialPivLu().solve(can.transpose()).transpose();
    return out;
}

/// Multi-output Luenberger-style echelon form. The observability matrix is
/// scanned in stacked order (c_1 ... c_p, c_1 A ...) and the first n
/// independent rows fix the basis, grouped per output.
inline ObservableCanonical observable_canonical_mimo(const ObservedSystem& sys, const ToleranceConfig& cfg = {}) {
    const Index n = sys.n(), p = sys.p();
    const Matrix obs = observability_matrix(sys);
    if (rank_with_tolerance(obs, cfg) != n)
        throw NotObservable("system is not completely observable");
    ObservableCanonical out;
    out.indices.assign(static_cast<std::size_t>(p), 0);
    if (n == 0) {
        out.T = Matrix(0, 0);
        out.Ahat = Matrix(0, 0);
        out.Chat = Matrix(p, 0);
        return out;
    }

    std::vector<Index> nu(static_cast<std::size_t>(p), 0);
    Matrix selected(n, n);
    Index found = 0;
    for (Index r = 0; r < obs.rows() && found < n; ++r) {
        selected.row(found) = obs.row(r);
        if (rank_with_tolerance(selected.topRows(found + 1), cfg) == found + 1) {
            ++found;
            ++nu[static_cast<std::size_t>(r % p)];
        }
    }

    // group rows per output: c_i, c_i A, ..., c_i A^{nu_i - 1}
    Matrix T(n, n);
    Index row = 0;
    for (Index i = 0; i < p; ++i)
        for (Index j = 0; j < nu[static_cast<std::size_t>(i)]; ++j) T.row(row++) = obs.row(j * p + i);

    out.T = T;
    const Matrix Tinv = T.partialPivLu().solve(Matrix::Identity(n, n));
    out.Ahat = T * sys.A * Tinv;
    out.Chat = sys.C * Tinv;
    for (Index i = 0; i < p; ++i) out.indices[static_cast<std::size_t>(i)] = nu[static_cast<std::size_t>(i)];
    return out;
}

inline ObservableCanonical observable_canonical(const ObservedSystem& sys, const ToleranceConfig& cfg = {}) {
    return sys.p() == 1 ? observable_canonical_siso(sys, cfg) : observable_canonical_mimo(sys, cfg);
}

/// The assembled topological canonical form: blockdiag(Nhat, Bhat, Ehat) with
/// observation [Khat Dhat 0].
struct CanonicalForm {
    Matrix Nhat, Khat;    ///< center block (linear-equivalence canonical when centerIsCanonical)
    Matrix Bhat, Dhat;    ///< completely observable hyperbolic block
    Matrix Ehat;          ///< diagonal +-1 unobservable hyperbolic block
    Matrix assembledA;
    Matrix assembledC;
    bool centerIsCanonical = true;
};

namespace detail {

inline ObservedSystem hyperbolic_part(const SpectralSplit& split, Index p) {
    return {block_diag({split.Aplus, split.Aminus}), hcat({split.Cplus, split.Cminus}, p)};
}

inline void assemble(CanonicalForm& cf, Index p) {
    cf.assembledA = block_diag({cf.Nhat, cf.Bhat, cf.Ehat});
    cf.assembledC = hcat({cf.Khat, cf.Dhat, Matrix::Zero(p, cf.Ehat.cols())}, p);
}

}  // namespace detail

/// Build the topological-equivalence canonical form: spectral split, Kalman
/// decomposition of the hyperbolic part, collapse of the unobservable
/// hyperbolic block to Ehat, and canonicalization of the observable pieces.
inline CanonicalForm topological_canonical(const ObservedSystem& sys, const ToleranceConfig& cfg = {}) {
    const SpectralSplit split = spectral_split(sys, cfg);
    const SubRanks ks = sub_ranks(sys, split, cfg);
    const Index p = sys.p();

    CanonicalForm cf;
    if (split.n0() == 0) {
        cf.Nhat = Matrix(0, 0);
        cf.Khat = Matrix(p, 0);
    } else if (ks.k0 == split.n0()) {
        const ObservableCanonical oc = observable_canonical({split.A0, split.C0}, cfg);
        cf.Nhat = oc.Ahat;
        cf.Khat = oc.Chat;
    } else {
        // no canonical form is available for unobservable center pairs;
        // emit the Schur-ordered representative and flag it
        cf.Nhat = split.A0;
        cf.Khat = split.C0;
        cf.centerIsCanonical = false;
    }

    const Index k = ks.kPlus + ks.kMinus;
    if (k > 0) {
        const ObservabilityDecomposition dec = kalman_decompose(detail::hyperbolic_part(split, p), cfg);
        const ObservableCanonical oc = observable_canonical({dec.Ao, dec.Co}, cfg);
        cf.Bhat = oc.Ahat;
        cf.Dhat = oc.Chat;
    } else {
        cf.Bhat = Matrix(0, 0);
        cf.Dhat = Matrix(p, 0);
    }

    cf.Ehat = ehat(split.nPlus() - ks.kPlus, split.nMinus() - ks.kMinus);
    detail::assemble(cf, p);
    return cf;
}

/// Variant for completely observable center pairs (k0 = n0): the center and
/// hyperbolic observable blocks merge into a single observable canonical
/// block, stored in (Bhat, Dhat); Nhat is empty.
inline CanonicalForm merged_observable_canonical(const ObservedSystem& sys, const ToleranceConfig& cfg = {}) {
    const SpectralSplit split = spectral_split(sys, cfg);
    const SubRanks ks = sub_ranks(sys, split, cfg);
    const Index p = sys.p();
    if (ks.k0 != split.n0())
        throw CenterNotObservable("merged canonical form requires a completely observable center pair (k0 = " +
                                  std::to_string(ks.k0) + ", n0 = " + std::to_string(split.n0()) + ")");

    Matrix Ac, Cc;
    const Index k = ks.kPlus + ks.kMinus;
    if (k > 0) {
        const ObservabilityDecomposition dec = kalman_decompose(detail::hyperbolic_part(split, p), cfg);
        Ac = block_diag({split.A0, dec.Ao});
        Cc = hcat({split.C0, dec.Co}, p);
    } else {
        Ac = split.A0;
        Cc = split.C0;
    }
    const ObservableCanonical oc = observable_canonical({Ac, Cc}, cfg);

    CanonicalForm cf;
    cf.Nhat = Matrix(0, 0);
    cf.Khat = Matrix(p, 0);
    cf.Bhat = oc.Ahat;
    cf.Dhat = oc.Chat;
    cf.Ehat = ehat(split.nPlus() - ks.kPlus, split.nMinus() - ks.kMinus);
    detail::assemble(cf, p);
    return cf;
}

/// A family in the 3-D single-output catalog plus its real parameters.
struct Catalog3DEntry {
    std::string family;
    std::vector<double> params;
};

namespace detail {

inline Matrix center_rep_A(const std::string& tag, double mu) {
    Matrix A = Matrix::Zero(3, 3);
    if (tag == "zero") return A;
    if (tag == "nilpotent2") {
        A(1, 0) = 1.0;
        return A;
    }
    if (tag == "nilpotent3") {
        A(1, 0) = 1.0;
        A(2, 1) = 1.0;
        return A;
    }
    // rotation block plus a zero eigenvalue
    A(0, 1) = 1.0;
    A(1, 0) = mu;
    return A;
}

inline Matrix row3(double a, double b, double c) {
    Matrix r(1, 3);
    r << a, b, c;
    return r;
}

/// Elementary symmetric functions of the 3x3 spectrum, with per-coefficient
/// borderline guards. Unlike Schur eigenvalue real parts, these are
/// polynomial in the entries, so a conjugated nilpotent (whose eigenvalues
/// scatter by eps^{1/3}) still reads as zero to high accuracy.
struct CharPoly3 {
    double e1, e2, e3;  // trace, second invariant, determinant
};

inline CharPoly3 char_poly_3(const Matrix& A, const ToleranceConfig& cfg) {
    const double s = std::max(1.0, frob(A));
    CharPoly3 cp;
    cp.e1 = A.trace();
    cp.e2 = 0.5 * (cp.e1 * cp.e1 - (A * A).trace());
    cp.e3 = A.determinant();
    const double taus[3] = {cfg.tolSpec * s, cfg.tolSpec * s * s, cfg.tolSpec * s * s * s};
    const double vals[3] = {cp.e1, cp.e2, cp.e3};
    for (int i = 0; i < 3; ++i) {
        const double v = std::abs(vals[i]);
        if (v > taus[i] / 10.0 && v < taus[i] * 10.0)
            throw BorderlineSpectrum("characteristic coefficient e" + std::to_string(i + 1) + " = " +
                                     std::to_string(vals[i]) + " lies within a factor 10 of its zero threshold " +
                                     std::to_string(taus[i]) + "; the catalog classification would be tolerance-driven");
    }
    return cp;
}

}  // namespace detail

/// Classify a 3-D single-output system against the explicit catalog of
/// canonical forms. Center systems are matched by linear equivalence to an
/// instantiated representative; hyperbolic systems are read off the
/// topological canonical form.
inline Catalog3DEntry classify_3d_siso(const ObservedSystem& sys, const ToleranceConfig& cfg = {}) {
    if (sys.n() != 3) throw ShapeError("classify_3d_siso requires n = 3");
    if (sys.p() != 1) throw NotSISO("classify_3d_siso requires p = 1");

    // all-center iff the characteristic polynomial is lambda^3 + e2 lambda
    // with e2 >= 0 (eigenvalues {0, 0, 0} or {0, +-i omega})
    const detail::CharPoly3 cp = detail::char_poly_3(sys.A, cfg);
    const double s = std::max(1.0, frob(sys.A));
    const bool e1Zero = std::abs(cp.e1) <= cfg.tolSpec * s;
    const bool e2Zero = std::abs(cp.e2) <= cfg.tolSpec * s * s;
    const bool e3Zero = std::abs(cp.e3) <= cfg.tolSpec * s * s * s;
    const bool allCenter = e1Zero && e3Zero && (e2Zero || cp.e2 > 0.0);

    if (!allCenter) {
        const auto counts = eigen_counts(sys.A, cfg);
        if (counts[0] != 0)
            throw MixedSpectrum("the 3-D catalog covers only all-center or all-hyperbolic spectra; got n0 = " +
                                std::to_string(counts[0]));
        const CanonicalForm cf = topological_canonical(sys, cfg);
        const Index k = cf.Bhat.rows();
        Catalog3DEntry entry;
        switch (k) {
            case 3:
                entry.family = "3=0+3+0";
                entry.params = {cf.Bhat(2, 2), cf.Bhat(2, 1), cf.Bhat(2, 0)};  // mu1, mu2, mu3
                break;
            case 2:
                entry.family = "3=0+2+1";
                entry.params = {cf.Bhat(1, 1), cf.Bhat(1, 0), cf.Ehat(0, 0)};  // mu1, mu2, iota
                break;
            case 1:
                entry.family = "3=0+1+2";
                entry.params = {cf.Bhat(0, 0), cf.Ehat(0, 0), cf.Ehat(1, 1)};  // mu, iota1 >= iota2
                break;
            default:
                entry.family = "3=0+0+3";
                entry.params = {cf.Ehat(0, 0), cf.Ehat(1, 1), cf.Ehat(2, 2)};  // iota1 >= iota2 >= iota3
                break;
        }
        return entry;
    }

    // center case: identify the similarity class of A, then the output class
    const Index k = kalman_rank(sys, cfg);

    std::string aTag;
    double mu = 0.0;
    if (e2Zero) {  // nilpotent: char poly reduces to lambda^3
        const Index r = rank_with_tolerance(sys.A, cfg);
        aTag = r == 0 ? "zero" : (r == 1 ? "nilpotent2" : "nilpotent3");
    } else {  // rotation pair plus a zero eigenvalue, omega^2 = e2
        aTag = "rotation";
        mu = -cp.e2;
    }

    std::string cTag;
    Matrix Crep;
    if (aTag == "zero") {
        cTag = k == 0 ? "" : "-observed";
        Crep = k == 0 ? detail::row3(0, 0, 0) : detail::row3(0, 0, 1);
    } else if (aTag == "nilpotent2") {
        cTag = k == 0 ? "" : (k == 2 ? "-c2" : "-c3");
        Crep = k == 0 ? detail::row3(0, 0, 0) : (k == 2 ? detail::row3(0, 1, 0) : detail::row3(0, 0, 1));
    } else if (aTag == "nilpotent3") {
        cTag = k == 0 ? "" : (k == 1 ? "-c1" : (k == 2 ? "-c2" : "-c3"));
        Crep = k == 0 ? detail::row3(0, 0, 0)
                      : (k == 1 ? detail::row3(1, 0, 0) : (k == 2 ? detail::row3(0, 1, 0) : detail::row3(0, 0, 1)));
    } else {
        cTag = k == 0 ? "" : (k == 1 ? "-c3" : (k == 2 ? "-c2" : "-c23"));
        Crep = k == 0 ? detail::row3(0, 0, 0)
                      : (k == 1 ? detail::row3(0, 0, 1) : (k == 2 ? detail::row3(0, 1, 0) : detail::row3(0, 1, 1)));
    }

    const ObservedSystem rep{detail::center_rep_A(aTag, mu), Crep};
    const EquivalenceVerdict check = linear_equivalent(sys, rep, cfg);
    if (!check.equivalent)
        throw NotInCatalog("center pair is not linearly equivalent to the catalog representative for class " + aTag +
                           cTag + " (" + to_string(check.reason) + "); the published center list does not cover it");

    Catalog3DEntry entry;
    entry.family = "center:" + aTag + cTag;
    if (aTag == "rotation") entry.params = {mu};
    return entry;
}

}  // namespace ltieq
