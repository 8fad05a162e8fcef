#pragma once

#include "expm.hpp"
#include "numeric.hpp"
#include "types.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace ltieq {

/// A sampled observation trajectory: states x(t) = e^{At} x0 and outputs
/// w(t) = C x(t) on an ascending time grid.
struct TrajectorySample {
    std::vector<double> times;
    std::vector<Vector> states;
    std::vector<Vector> outputs;
};

/// Uniform grid of `points` samples on [0, tMax].
inline std::vector<double> uniform_times(double tMax = 2.0, int points = 33) {
    if (points < 1) throw ValueError("time grid needs at least one point");
    std::vector<double> t(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        t[static_cast<std::size_t>(i)] = points == 1 ? 0.0 : tMax * static_cast<double>(i) / (points - 1);
    return t;
}

inline TrajectorySample simulate_observation(const ObservedSystem& sys, const Vector& x0,
                                             const std::vector<double>& times) {
    sys.validate();
    if (x0.size() != sys.n()) throw ShapeError("initial state must have dimension " + std::to_string(sys.n()));
    if (!x0.allFinite()) throw ValueError("initial state must be finite");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(times[i])) throw ValueError("time grid must be finite");
        if (i > 0 && times[i] < times[i - 1]) throw ValueError("time grid must be ascending");
    }
    TrajectorySample out;
    out.times = times;
    out.states.reserve(times.size());
    out.outputs.reserve(times.size());
    for (double t : times) {
        Vector x = expm(sys.A, t) * x0;
        out.outputs.push_back(sys.C * x);
        out.states.push_back(std::move(x));
    }
    return out;
}

/// Per-initial-state result of a witness trajectory check.
struct WitnessCheckEntry {
    Vector x0;
    double maxDiscrepancy = 0.0;
    bool pass = false;
};

struct WitnessCheckReport {
    bool pass = false;
    double maxDiscrepancy = 0.0;
    double threshold = 0.0;
    std::vector<WitnessCheckEntry> entries;
};

/// Verify a claimed linear-equivalence witness empirically: for each x0, the
/// outputs of S1 started at x0 and of S2 started at P^{-1} x0 must agree on
/// the whole grid.
inline WitnessCheckReport check_linear_witness(const ObservedSystem& s1, const ObservedSystem& s2, const Matrix& P,
                                               const std::vector<Vector>& x0set, const std::vector<double>& times,
                                               const ToleranceConfig& cfg = {}) {
    if (s1.n() != s2.n() || s1.p() != s2.p()) throw ShapeError("witness check requires matching system dimensions");
    if (P.rows() != s1.n() || P.cols() != s1.n())
        throw ShapeError("witness must be " + std::to_string(s1.n()) + "x" + std::to_string(s1.n()));
    if (!is_nonsingular(P))
        throw SingularWitness("claimed witness is singular (normalized determinant below 1e-10)");
    const auto lu = P.partialPivLu();

    WitnessCheckReport report;
    double outScale = 0.0;
    for (const Vector& x0 : x0set) {
        const TrajectorySample w = simulate_observation(s1, x0, times);
        const TrajectorySample z = simulate_observation(s2, lu.solve(x0), times);
        WitnessCheckEntry entry;
        entry.x0 = x0;
        for (std::size_t i = 0; i < times.size(); ++i) {
            entry.maxDiscrepancy =
                std::max(entry.maxDiscrepancy, (w.outputs[i] - z.outputs[i]).lpNorm<Eigen::Infinity>());
            outScale = std::max(outScale, w.outputs[i].lpNorm<Eigen::Infinity>());
        }
        report.maxDiscrepancy = std::max(report.maxDiscrepancy, entry.maxDiscrepancy);
        report.entries.push_back(std::move(entry));
    }
    report.threshold = cfg.tolResidual * (1.0 + outScale);
    report.pass = true;
    for (auto& e : report.entries) {
        e.pass = e.maxDiscrepancy <= report.threshold;
        report.pass = report.pass && e.pass;
    }
    return report;
}

}  // namespace ltieq
