// Acceptance harness: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion is timed.

#include <ltieq/canonical.hpp>
#include <ltieq/equivalence.hpp>
#include <ltieq/trajectory.hpp>

#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace ltieq;

namespace {

Matrix inv(const Matrix& m) { return m.partialPivLu().solve(Matrix::Identity(m.rows(), m.cols())); }

ObservedSystem conjugate(const ObservedSystem& s, const Matrix& R) { return {inv(R) * s.A * R, s.C * R}; }

ObservedSystem jordan4(double a, double c1, double c2, double c3, double c4) {
    Matrix A = Matrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i) A(i, i) = a;
    for (int i = 1; i < 4; ++i) A(i, i - 1) = 1.0;
    Matrix C(1, 4);
    C << c1, c2, c3, c4;
    return {A, C};
}

struct Harness {
    int failures = 0;

    void criterion(int number, const std::string& label, const std::function<bool(std::string&)>& body) {
        std::string detail;
        bool ok = false;
        const auto start = std::chrono::steady_clock::now();
        try {
            ok = body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double ms =
            std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(std::chrono::steady_clock::now() -
                                                                                  start)
                .count();
        if (!ok) ++failures;
        std::printf("%s criterion %d (%s) [%.0f ms]%s%s\n", ok ? "PASS" : "FAIL", number, label.c_str(), ms,
                    detail.empty() ? "" : " -- ", detail.c_str());
    }
};

// witnesses collected from the positive decisions of criteria 1-3
std::vector<std::tuple<ObservedSystem, ObservedSystem, Matrix>> g_witnesses;

bool criterion1(std::string& detail) {
    const ObservedSystem base = jordan4(2, 3, 4, 0, 0);
    const double cs[][4] = {{0, 1, 0, 0}, {1, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 0}, {1, 0, 0, 0}};
    for (double a : {1.0, 2.0, 3.0}) {
        for (const auto& c : cs) {
            const ObservedSystem other = jordan4(a, c[0], c[1], c[2], c[3]);
            const bool expected = a == 2.0 && c[1] != 0.0 && c[2] == 0.0 && c[3] == 0.0;
            const EquivalenceVerdict v = linear_equivalent(base, other);
            if (v.equivalent != expected) {
                detail = "wrong verdict at a=" + std::to_string(a);
                return false;
            }
            if (v.equivalent) g_witnesses.emplace_back(base, other, *v.witness);
        }
    }
    return true;
}

bool criterion2(std::string& detail) {
    Matrix A1 = 3.0 * Matrix::Identity(2, 2);
    Matrix A2(2, 2);
    A2 << 3, 0, 1, 3;
    Matrix C(1, 2);
    C << 1, 0;
    std::vector<ObservedSystem> systems{{A1, C}, {A2, C}};
    for (double a : {1.0, 2.0, 5.0}) {
        Matrix Ad(2, 2);
        Ad << 3, 0, 0, a;
        systems.push_back({Ad, C});
    }
    for (std::size_t i = 0; i < systems.size(); ++i) {
        for (std::size_t j = i + 1; j < systems.size(); ++j) {
            if (!topologically_equivalent(systems[i], systems[j]).equivalent) {
                detail = "pair (" + std::to_string(i) + "," + std::to_string(j) + ") not topologically equivalent";
                return false;
            }
            const EquivalenceVerdict lin = linear_equivalent(systems[i], systems[j]);
            if (lin.equivalent) {
                detail = "pair (" + std::to_string(i) + "," + std::to_string(j) + ") unexpectedly linearly equivalent";
                return false;
            }
        }
    }
    return true;
}

bool criterion3(std::string& detail) {
    const ObservedSystem base = jordan4(2, 3, 4, 0, 0);
    for (const auto& [c1, c2] : {std::pair{0.0, 1.0}, {7.0, -3.0}}) {
        Matrix A = Matrix::Zero(4, 4);
        A(0, 0) = 2.0;
        A(1, 0) = 1.0;
        A(1, 1) = 2.0;
        A(2, 2) = 1.0;
        A(3, 3) = 1.0;
        Matrix C(1, 4);
        C << c1, c2, 0, 0;
        const ObservedSystem other{A, C};
        if (!topologically_equivalent(base, other).equivalent) {
            detail = "c1=" + std::to_string(c1) + " c2=" + std::to_string(c2) + " not equivalent";
            return false;
        }
        // the hyperbolic observable parts are linearly equivalent; collect that
        // witness for the trajectory cross-check
        const SpectralSplit s1 = spectral_split(base);
        const SpectralSplit s2 = spectral_split(other);
        const ObservedSystem h1{block_diag({s1.Aplus, s1.Aminus}), hcat({s1.Cplus, s1.Cminus}, 1)};
        const ObservedSystem h2{block_diag({s2.Aplus, s2.Aminus}), hcat({s2.Cplus, s2.Cminus}, 1)};
        const ObservabilityDecomposition d1 = kalman_decompose(h1);
        const ObservabilityDecomposition d2 = kalman_decompose(h2);
        const EquivalenceVerdict v = linear_equivalent({d1.Ao, d1.Co}, {d2.Ao, d2.Co});
        if (!v.equivalent) {
            detail = "observable parts unexpectedly inequivalent";
            return false;
        }
        g_witnesses.emplace_back(ObservedSystem{d1.Ao, d1.Co}, ObservedSystem{d2.Ao, d2.Co}, *v.witness);
    }
    return true;
}

bool criterion4(std::string& detail) {
    const InvariantSignature sig = invariant_signature(jordan4(2, 3, 4, 0, 0));
    InvariantSignature expected;
    expected.n0 = 0;
    expected.nPlus = 4;
    expected.nMinus = 0;
    expected.kObs = 2;
    expected.k0 = 0;
    expected.kPlus = 2;
    expected.kMinus = 0;
    if (!(sig == expected)) {
        detail = "signature mismatch at index " + InvariantSignature::first_mismatch(sig, expected);
        return false;
    }
    return true;
}

bool criterion5(std::string& detail) {
    std::mt19937_64 rng(90005);
    struct Rep {
        ObservedSystem sys;
        std::string family;
        std::vector<double> params;  // empty: family match only
        bool exact = false;          // iota-type parameters compare exactly
    };
    auto row = [](double a, double b, double c) {
        Matrix r(1, 3);
        r << a, b, c;
        return r;
    };
    std::vector<Rep> reps;

    // center catalog, mu = -1 for the rotation classes
    const std::vector<std::pair<std::string, Matrix>> centers = {
        {"zero", row(0, 0, 0)},          {"zero-observed", row(0, 0, 1)},
        {"nilpotent2", row(0, 0, 0)},    {"nilpotent2-c2", row(0, 1, 0)},
        {"nilpotent2-c3", row(0, 0, 1)}, {"nilpotent3", row(0, 0, 0)},
        {"nilpotent3-c1", row(1, 0, 0)}, {"nilpotent3-c2", row(0, 1, 0)},
        {"nilpotent3-c3", row(0, 0, 1)}, {"rotation", row(0, 0, 0)},
        {"rotation-c3", row(0, 0, 1)},   {"rotation-c2", row(0, 1, 0)},
        {"rotation-c23", row(0, 1, 1)},
    };
    for (const auto& [name, C] : centers) {
        const std::string aTag = name.substr(0, name.find('-'));
        Rep r;
        r.sys = {ltieq::detail::center_rep_A(aTag, -1.0), C};
        r.family = "center:" + name;
        if (aTag == "rotation") r.params = {-1.0};
        reps.push_back(r);
    }

    // hyperbolic families with explicit parameter instances
    {
        Matrix A(3, 3);
        A << 0, 1, 0, 0, 0, 1, 6, -11, 6;
        reps.push_back({{A, row(1, 0, 0)}, "3=0+3+0", {6, -11, 6}, false});
    }
    for (double iota : {1.0, -1.0}) {
        Matrix A = Matrix::Zero(3, 3);
        A(0, 1) = 1.0;
        A(1, 0) = -2.0;
        A(1, 1) = 3.0;
        A(2, 2) = iota;
        reps.push_back({{A, row(1, 0, 0)}, "3=0+2+1", {3, -2, iota}, false});
    }
    for (const auto& [i1, i2] : {std::pair{1.0, 1.0}, {1.0, -1.0}, {-1.0, -1.0}}) {
        Matrix A = Matrix::Zero(3, 3);
        A(0, 0) = -1.5;
        A(1, 1) = i1;
        A(2, 2) = i2;
        reps.push_back({{A, row(1, 0, 0)}, "3=0+1+2", {-1.5, i1, i2}, false});
    }
    const double iotaTriples[][3] = {{1, 1, 1}, {1, 1, -1}, {1, -1, -1}, {-1, -1, -1}};
    for (const auto& t : iotaTriples) {
        Matrix A = Matrix::Zero(3, 3);
        for (int i = 0; i < 3; ++i) A(i, i) = t[i] * (1.0 + 0.3 * i);  // distinct moduli, signs per t
        reps.push_back({{A, row(0, 0, 0)}, "3=0+0+3", {t[0], t[1], t[2]}, true});
    }

    for (const auto& rep : reps) {
        for (int trial = 0; trial < 20; ++trial) {
            const Matrix R = oracles::well_conditioned_similarity(rng, 3);
            const Catalog3DEntry e = classify_3d_siso(conjugate(rep.sys, R));
            if (e.family != rep.family) {
                detail = rep.family + " trial " + std::to_string(trial) + " classified as " + e.family;
                return false;
            }
            if (e.params.size() != rep.params.size()) {
                detail = rep.family + ": parameter count mismatch";
                return false;
            }
            for (std::size_t i = 0; i < e.params.size(); ++i) {
                const double tol = 1e-8 * std::max(1.0, std::abs(rep.params[i]));
                const bool iotaLike = std::abs(rep.params[i]) == 1.0 && (rep.exact || rep.family == "3=0+2+1" ||
                                                                         rep.family == "3=0+1+2");
                if (iotaLike ? e.params[i] != rep.params[i] : std::abs(e.params[i] - rep.params[i]) > tol) {
                    detail = rep.family + ": parameter " + std::to_string(i) + " off";
                    return false;
                }
            }
        }
    }
    return true;
}

bool criterion6(std::string& detail) {
    std::mt19937_64 rng(90006);

    // (a) additivity of the sub-ranks
    for (int trial = 0; trial < 300; ++trial) {
        const Index n0 = static_cast<Index>(rng() % 2) * 2;
        const Index nh = 1 + static_cast<Index>(rng() % 3);
        const Index n = n0 + nh;
        Matrix D = Matrix::Zero(n, n);
        if (n0 == 2) {
            D(0, 1) = 1.0;
            D(1, 0) = -1.0;
        }
        D.bottomRightCorner(nh, nh) = oracles::random_hyperbolic(rng, nh);
        const Matrix R = oracles::well_conditioned_similarity(rng, n);
        const ObservedSystem sys{R * D * inv(R), oracles::random_matrix(rng, 1, n)};
        const SpectralSplit sp = spectral_split(sys);
        const SubRanks ks = sub_ranks(sys, sp);
        if (ks.total() != kalman_rank(sys)) {
            detail = "additivity failed at trial " + std::to_string(trial);
            return false;
        }
    }

    // (b) signature invariance under similarity
    for (int trial = 0; trial < 300; ++trial) {
        const Index n0 = static_cast<Index>(rng() % 2) * 2;
        const Index nh = 1 + static_cast<Index>(rng() % 3);
        const Index n = n0 + nh;
        Matrix D = Matrix::Zero(n, n);
        if (n0 == 2) {
            D(0, 1) = 1.3;
            D(1, 0) = -1.3;
        }
        D.bottomRightCorner(nh, nh) = oracles::random_hyperbolic(rng, nh);
        const Matrix R0 = oracles::well_conditioned_similarity(rng, n);
        const ObservedSystem s{R0 * D * inv(R0), oracles::random_matrix(rng, 1, n)};
        const Matrix R = oracles::well_conditioned_similarity(rng, n);
        if (!(invariant_signature(s) == invariant_signature(conjugate(s, R)))) {
            detail = "signature changed under similarity at trial " + std::to_string(trial);
            return false;
        }
    }

    // (c) completely observable pairs: linear and topological verdicts coincide
    int done = 0;
    while (done < 300) {
        const Index n = 2 + static_cast<Index>(rng() % 3);
        const ObservedSystem s{oracles::random_hyperbolic(rng, n), oracles::random_matrix(rng, 1, n)};
        ObservedSystem t = s;
        if (rng() % 2 == 0) {
            t = conjugate(s, oracles::well_conditioned_similarity(rng, n));
        } else {
            t = {oracles::random_hyperbolic(rng, n), oracles::random_matrix(rng, 1, n)};
        }
        if (kalman_rank(s) != n || kalman_rank(t) != n) continue;
        ++done;
        if (linear_equivalent(s, t).equivalent != topologically_equivalent(s, t).equivalent) {
            detail = "observable verdicts diverged at trial " + std::to_string(done);
            return false;
        }
    }

    // (d) linear equivalence implies topological equivalence
    for (int trial = 0; trial < 300; ++trial) {
        const Index n = 2 + static_cast<Index>(rng() % 3);
        const ObservedSystem s{oracles::random_hyperbolic(rng, n), oracles::random_matrix(rng, 1, n)};
        const ObservedSystem t = conjugate(s, oracles::well_conditioned_similarity(rng, n));
        if (!linear_equivalent(s, t).equivalent) {
            detail = "conjugate pair not linearly equivalent at trial " + std::to_string(trial);
            return false;
        }
        if (!topologically_equivalent(s, t).equivalent) {
            detail = "linear but not topological at trial " + std::to_string(trial);
            return false;
        }
    }
    return true;
}

bool criterion7(std::string& detail) {
    std::mt19937_64 rng(90007);

    for (int trial = 0; trial < 100; ++trial) {
        const Index m = 1 + static_cast<Index>(rng() % 4);
        const Index n = 1 + static_cast<Index>(rng() % 4);
        const Matrix S1 = Matrix(oracles::random_matrix(rng, n, n)) + 6.0 * Matrix::Identity(n, n);
        const Matrix S2 = Matrix(oracles::random_matrix(rng, m, m)) - 6.0 * Matrix::Identity(m, m);
        const Matrix Q = oracles::random_matrix(rng, m, n);
        const Matrix X = solve_sylvester(S1, S2, Q);
        const Matrix Xref = oracles::kron_sylvester(S1, S2, Q);
        if ((X - Xref).norm() > 1e-9 * std::max(1.0, Xref.norm())) {
            detail = "Sylvester mismatch at trial " + std::to_string(trial);
            return false;
        }
    }

    for (int trial = 0; trial < 100; ++trial) {
        const Index n = 1 + static_cast<Index>(rng() % 5);
        Matrix A = oracles::random_matrix(rng, n, n);
        if (A.norm() > 4.0) A *= 4.0 / A.norm();
        if ((expm(A) - oracles::taylor_expm(A)).norm() > 1e-10) {
            detail = "expm mismatch at trial " + std::to_string(trial);
            return false;
        }
    }

    for (int trial = 0; trial < 50; ++trial) {
        const Index n = 2 + static_cast<Index>(rng() % 3);
        Matrix A = oracles::random_matrix(rng, n, n);
        if (A.norm() > 3.0) A *= 3.0 / A.norm();
        const Matrix C = oracles::random_matrix(rng, 1, n);
        const Vector x0 = oracles::random_matrix(rng, n, 1);
        const TrajectorySample t = simulate_observation({A, C}, x0, uniform_times(2.0, 10));
        for (std::size_t i = 0; i < t.times.size(); ++i) {
            const Vector ref = oracles::rk4_state(A, x0, t.times[i]);
            if ((t.states[i] - ref).norm() > 1e-8 * std::max(1.0, ref.norm())) {
                detail = "trajectory mismatch at trial " + std::to_string(trial);
                return false;
            }
        }
    }
    return true;
}

bool criterion8(std::string& detail) {
    if (g_witnesses.empty()) {
        detail = "no witnesses collected from criteria 1-3";
        return false;
    }
    for (std::size_t i = 0; i < g_witnesses.size(); ++i) {
        const auto& [s1, s2, P] = g_witnesses[i];
        std::vector<Vector> x0set;
        for (Index k = 0; k < s1.n(); ++k) x0set.push_back(Vector::Unit(s1.n(), k));
        x0set.push_back(Vector::Ones(s1.n()));
        const WitnessCheckReport rep = check_linear_witness(s1, s2, P, x0set, uniform_times(2.0, 33));
        if (!rep.pass || rep.maxDiscrepancy > 1e-8) {
            detail = "witness " + std::to_string(i) + " discrepancy " + std::to_string(rep.maxDiscrepancy);
            return false;
        }
    }
    detail = std::to_string(g_witnesses.size()) + " witnesses checked";
    return true;
}

bool criterion9(std::string& detail) {
    std::mt19937_64 rng(90009);
    for (int trial = 0; trial < 200; ++trial) {
        const Index n0 = static_cast<Index>(rng() % 2) * 2;
        const Index nh = 1 + static_cast<Index>(rng() % 3);
        const Index n = n0 + nh;
        Matrix D = Matrix::Zero(n, n);
        if (n0 == 2) {
            D(0, 1) = 1.0;
            D(1, 0) = -1.0;
        }
        D.bottomRightCorner(nh, nh) = oracles::random_hyperbolic(rng, nh);
        const Matrix R0 = oracles::well_conditioned_similarity(rng, n);
        const Index r = 1 + static_cast<Index>(rng() % n);
        Matrix C = Matrix(oracles::random_matrix(rng, 1, r) * oracles::random_matrix(rng, r, n));
        ObservedSystem s{R0 * D * inv(R0), C};

        CanonicalForm a;
        try {
            a = topological_canonical(s);
        } catch (const NumericalError&) {
            continue;  // skip draws outside the canonicalizable set
        }
        if (!a.centerIsCanonical) continue;

        const CanonicalForm again = topological_canonical({a.assembledA, a.assembledC});
        const double scale = std::max(1.0, a.assembledA.norm());
        if ((a.assembledA - again.assembledA).norm() > 1e-6 * scale ||
            (a.assembledC - again.assembledC).norm() > 1e-6 * scale) {
            detail = "idempotence failed at trial " + std::to_string(trial);
            return false;
        }

        const Matrix R = oracles::well_conditioned_similarity(rng, n);
        const CanonicalForm b = topological_canonical(conjugate(s, R));
        if ((a.assembledA - b.assembledA).norm() > 1e-5 * scale ||
            (a.assembledC - b.assembledC).norm() > 1e-5 * scale) {
            detail = "class constancy failed at trial " + std::to_string(trial);
            return false;
        }
    }
    return true;
}

}  // namespace

int main() {
    Harness h;
    h.criterion(1, "linear-equivalence grid against the Jordan fixture", criterion1);
    h.criterion(2, "triple: topologically but not linearly equivalent", criterion2);
    h.criterion(3, "Jordan fixture vs block system, topological equivalence", criterion3);
    h.criterion(4, "invariant signature fixture", criterion4);
    h.criterion(5, "3-D catalog round-trip under conjugation", criterion5);
    h.criterion(6, "property suite: additivity, invariance, observable coincidence, implication", criterion6);
    h.criterion(7, "oracle equivalences: Sylvester, expm, trajectories", criterion7);
    h.criterion(8, "witness trajectory checks", criterion8);
    h.criterion(9, "canonical idempotence and class constancy", criterion9);
    if (h.failures == 0) std::printf("all acceptance criteria passed\n");
    return h.failures == 0 ? 0 : 1;
}
