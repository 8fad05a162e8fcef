// Command-line surface for the ltieq library: classification, canonical
// forms, equivalence decisions and trajectory checks over JSON system files.

#include <ltieq/canonical.hpp>
#include <ltieq/equivalence.hpp>
#include <ltieq/observability.hpp>
#include <ltieq/report_io.hpp>
#include <ltieq/spectral_split.hpp>
#include <ltieq/trajectory.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace ltieq;

struct GlobalOptions {
    ToleranceConfig cfg;
    std::string output = "json";
};

void add_common_flags(CLI::App* cmd, GlobalOptions& g) {
    cmd->add_option("--tol-spec", g.cfg.tolSpec, "eigenvalue real-part classification tolerance");
    cmd->add_option("--tol-rank", g.cfg.tolRank, "relative SVD rank cutoff");
    cmd->add_option("--tol-residual", g.cfg.tolResidual, "matrix-equation residual acceptance");
    cmd->add_option("--samples", g.cfg.samples, "randomized nonsingularity trials");
    cmd->add_option("--seed", g.cfg.seed, "seed for randomized searches");
    cmd->add_option("--output", g.output, "report format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
}

void emit(const Report& r, const GlobalOptions& g) {
    std::cout << (g.output == "text" ? render_text(r) : r.render_json());
}

Json split_payload(const SpectralSplit& sp) {
    Json j;
    j["n0"] = sp.n0();
    j["nPlus"] = sp.nPlus();
    j["nMinus"] = sp.nMinus();
    j["P"] = to_json(sp.P);
    j["A0"] = to_json(sp.A0);
    j["Aplus"] = to_json(sp.Aplus);
    j["Aminus"] = to_json(sp.Aminus);
    j["C0"] = to_json(sp.C0);
    j["Cplus"] = to_json(sp.Cplus);
    j["Cminus"] = to_json(sp.Cminus);
    return j;
}

int run_invariants(const std::string& path, const GlobalOptions& g) {
    const ParsedSystem s = parse_system(path);
    Report r{"invariants", {s.label}, g.cfg, {}, {}};
    r.payload["signature"] = to_json(invariant_signature(s.sys, g.cfg));
    emit(r, g);
    return 0;
}

int run_split(const std::string& path, const GlobalOptions& g) {
    const ParsedSystem s = parse_system(path);
    Report r{"split", {s.label}, g.cfg, {}, {}};
    r.payload = split_payload(spectral_split(s.sys, g.cfg));
    emit(r, g);
    return 0;
}

int run_kalman(const std::string& path, const GlobalOptions& g) {
    const ParsedSystem s = parse_system(path);
    const ObservabilityDecomposition dec = kalman_decompose(s.sys, g.cfg);
    Report r{"kalman", {s.label}, g.cfg, {}, {}};
    r.payload["kObs"] = dec.k;
    r.payload["T"] = to_json(dec.T);
    r.payload["Ao"] = to_json(dec.Ao);
    r.payload["Am"] = to_json(dec.Am);
    r.payload["Au"] = to_json(dec.Au);
    r.payload["Co"] = to_json(dec.Co);
    emit(r, g);
    return 0;
}

int run_canonical(const std::string& path, bool merged, const GlobalOptions& g) {
    const ParsedSystem s = parse_system(path);
    const CanonicalForm cf =
        merged ? merged_observable_canonical(s.sys, g.cfg) : topological_canonical(s.sys, g.cfg);
    Report r{"canonical", {s.label}, g.cfg, {}, {}};
    if (!cf.centerIsCanonical)
        r.warnings.push_back("center pair is not completely observable; its block is a Schur-ordered "
                             "representative, not a canonical form");
    r.payload["canonical"] = to_json(cf);
    emit(r, g);
    return 0;
}

int run_catalog3d(const std::string& path, const GlobalOptions& g) {
    const ParsedSystem s = parse_system(path);
    const Catalog3DEntry entry = classify_3d_siso(s.sys, g.cfg);
    Report r{"catalog3d", {s.label}, g.cfg, {}, {}};
    r.payload["family"] = entry.family;
    r.payload["params"] = entry.params;
    emit(r, g);
    return 0;
}

int run_equiv(const std::string& pathA, const std::string& pathB, const std::string& mode, const GlobalOptions& g) {
    const ParsedSystem a = parse_system(pathA);
    const ParsedSystem b = parse_system(pathB);
    const EquivalenceVerdict v = mode == "linear" ? linear_equivalent(a.sys, b.sys, g.cfg)
                                                  : topologically_equivalent(a.sys, b.sys, g.cfg);
    Report r{"equiv", {a.label, b.label}, g.cfg, {}, {}};
    r.payload["mode"] = mode;
    r.payload["verdict"] = to_json(v);
    emit(r, g);
    return v.equivalent ? 0 : 1;
}

int run_simulate(const std::string& path, const std::vector<double>& x0raw, double tMax, int points,
                 const GlobalOptions& g) {
    const ParsedSystem s = parse_system(path);
    Vector x0;
    if (x0raw.empty()) {
        x0 = Vector::Ones(s.sys.n());
    } else {
        if (static_cast<Index>(x0raw.size()) != s.sys.n())
            throw ShapeError("--x0 must supply " + std::to_string(s.sys.n()) + " components");
        x0 = Eigen::Map<const Vector>(x0raw.data(), static_cast<Index>(x0raw.size()));
    }
    const TrajectorySample traj = simulate_observation(s.sys, x0, uniform_times(tMax, points));
    Report r{"simulate", {s.label}, g.cfg, {}, {}};
    r.payload["times"] = traj.times;
    Json outputs = Json::array();
    Json states = Json::array();
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        outputs.push_back(to_json(traj.outputs[i].transpose())[0]);
        states.push_back(to_json(traj.states[i].transpose())[0]);
    }
    r.payload["states"] = states;
    r.payload["outputs"] = outputs;
    emit(r, g);
    return 0;
}

int run_check_witness(const std::string& pathA, const std::string& pathB, const std::string& witnessPath, double tMax,
                      int points, const GlobalOptions& g) {
    const ParsedSystem a = parse_system(pathA);
    const ParsedSystem b = parse_system(pathB);

    std::ifstream in(witnessPath);
    if (!in) throw ParseError("cannot open witness file '" + witnessPath + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    Json wj;
    try {
        wj = Json::parse(buf.str());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(witnessPath + ": malformed JSON: " + e.what());
    }
    const Matrix P = matrix_from_json(wj.is_object() && wj.contains("P") ? wj["P"] : wj, "P");

    // canonical basis directions plus the all-ones vector
    std::vector<Vector> x0set;
    for (Index i = 0; i < a.sys.n(); ++i) x0set.push_back(Vector::Unit(a.sys.n(), i));
    x0set.push_back(Vector::Ones(a.sys.n()));

    const WitnessCheckReport rep = check_linear_witness(a.sys, b.sys, P, x0set, uniform_times(tMax, points), g.cfg);
    Report r{"check-witness", {a.label, b.label, witnessPath}, g.cfg, {}, {}};
    r.payload["pass"] = rep.pass;
    r.payload["maxDiscrepancy"] = rep.maxDiscrepancy;
    r.payload["threshold"] = rep.threshold;
    emit(r, g);
    return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"classify uncontrolled LTI systems with observation up to linear and topological equivalence"};
    app.require_subcommand(1);
    GlobalOptions g;

    std::string file1, file2, witnessFile, mode = "linear";
    std::vector<double> x0raw;
    double tMax = 2.0;
    int points = 33;
    bool merged = false;

    auto* cInv = app.add_subcommand("invariants", "invariant signature {n0, n+, n-, k_obs, k0, k+, k-}");
    cInv->add_option("system", file1, "system JSON file")->required();
    auto* cSplit = app.add_subcommand("split", "spectral split into center / unstable / stable blocks");
    cSplit->add_option("system", file1, "system JSON file")->required();
    auto* cKalman = app.add_subcommand("kalman", "Kalman observability decomposition");
    cKalman->add_option("system", file1, "system JSON file")->required();
    auto* cCanon = app.add_subcommand("canonical", "topological canonical form");
    cCanon->add_option("system", file1, "system JSON file")->required();
    cCanon->add_flag("--merged", merged, "merged observable form (requires completely observable center)");
    auto* cCat = app.add_subcommand("catalog3d", "classify a 3-D single-output system against the catalog");
    cCat->add_option("system", file1, "system JSON file")->required();
    auto* cEquiv = app.add_subcommand("equiv", "decide equivalence of two systems");
    cEquiv->add_option("--mode", mode, "linear or topological")->check(CLI::IsMember({"linear", "topological"}));
    cEquiv->add_option("first", file1, "first system JSON file")->required();
    cEquiv->add_option("second", file2, "second system JSON file")->required();
    auto* cSim = app.add_subcommand("simulate", "sample the observation trajectory w(t) = C e^{At} x0");
    cSim->add_option("system", file1, "system JSON file")->required();
    cSim->add_option("--x0", x0raw, "initial state components (default: all ones)");
    cSim->add_option("--t-max", tMax, "simulation horizon");
    cSim->add_option("--points", points, "number of uniform samples");
    auto* cCheck = app.add_subcommand("check-witness", "trajectory-check a claimed linear-equivalence witness");
    cCheck->add_option("first", file1, "first system JSON file")->required();
    cCheck->add_option("second", file2, "second system JSON file")->required();
    cCheck->add_option("witness", witnessFile, "witness JSON file ({\"P\": [[...]]} or a bare matrix)")->required();
    cCheck->add_option("--t-max", tMax, "simulation horizon");
    cCheck->add_option("--points", points, "number of uniform samples");

    for (auto* cmd : {cInv, cSplit, cKalman, cCanon, cCat, cEquiv, cSim, cCheck}) add_common_flags(cmd, g);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cInv->parsed()) return run_invariants(file1, g);
        if (cSplit->parsed()) return run_split(file1, g);
        if (cKalman->parsed()) return run_kalman(file1, g);
        if (cCanon->parsed()) return run_canonical(file1, merged, g);
        if (cCat->parsed()) return run_catalog3d(file1, g);
        if (cEquiv->parsed()) return run_equiv(file1, file2, mode, g);
        if (cSim->parsed()) return run_simulate(file1, x0raw, tMax, points, g);
        if (cCheck->parsed()) return run_check_witness(file1, file2, witnessFile, tMax, points, g);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
