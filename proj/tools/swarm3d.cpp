// swarm3d: configuration generation, symmetry analysis, feasibility checking,
// simulation runs, and offline trace verification.

#include <swarm3d/swarm3d.hpp>

#include <CLI11.hpp>

#include <iostream>

using namespace swarm3d;

namespace {

constexpr int EXIT_NEGATIVE = 1;
constexpr int EXIT_ERROR = 2;

Vec3 parse_vec(const std::string& s) {
    Vec3 v;
    if (std::sscanf(s.c_str(), "%lf,%lf,%lf", &v.x, &v.y, &v.z) != 3)
        throw std::invalid_argument("expected x,y,z");
    return v;
}

ConfigFile generate_shape(const std::string& shape, int k, double radius, double noise,
                          const std::string& seed_point, const std::string& composite,
                          uint64_t seed, int multiplicity) {
    ConfigFile out;
    auto base = [&]() -> Configuration {
        if (shape == "tetrahedron") return shapes::tetrahedron(radius);
        if (shape == "cube") return shapes::cube(radius);
        if (shape == "octahedron") return shapes::octahedron(radius);
        if (shape == "cuboctahedron") return shapes::cuboctahedron(radius);
        if (shape == "icosahedron") return shapes::icosahedron(radius);
        if (shape == "dodecahedron") return shapes::dodecahedron(radius);
        if (shape == "icosidodecahedron") return shapes::icosidodecahedron(radius);
        if (shape == "sphenoid") return shapes::sphenoid(radius);
        if (shape == "pyramid") return shapes::pyramid(k, radius);
        if (shape == "prism") return shapes::prism(k, radius);
        if (shape == "antiprism") return shapes::antiprism(k, radius);
        if (shape == "ngon") return shapes::ngon(k, radius);
        if (shape == "orbit") {
            if (seed_point.empty()) throw std::invalid_argument("orbit needs --seed-point");
            // --k selects C_k/D_k via --group; handled below in composite parser
            throw std::invalid_argument("orbit needs --group");
        }
        throw std::invalid_argument("unknown shape: " + shape);
    };

    Configuration pts;
    if (shape == "composite") {
        if (composite.empty()) throw std::invalid_argument("composite needs --parts");
        // --parts "cube@1.0,octahedron@0.5"
        std::stringstream ss(composite);
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto at = item.find('@');
            std::string nm = at == std::string::npos ? item : item.substr(0, at);
            double r = at == std::string::npos ? radius : std::stod(item.substr(at + 1));
            ConfigFile part = generate_shape(nm, k, r, 0.0, "", "", seed, 1);
            pts.insert(pts.end(), part.points.begin(), part.points.end());
        }
    } else {
        pts = base();
    }
    if (noise > 0) pts = shapes::perturbed(std::move(pts), noise, seed);
    out.points = std::move(pts);
    if (multiplicity > 1)
        out.multiplicities.assign(out.points.size(), multiplicity);
    return out;
}

ConfigFile generate_orbit(const std::string& group, const std::string& seed_point,
                          double radius) {
    GroupKind g = GroupKind::parse(group);
    Vec3 s = parse_vec(seed_point);
    ConfigFile out;
    out.points = shapes::orbit(g, s, radius);
    return out;
}

json axes_report(const Arrangement& arr) {
    json axes = json::array();
    for (const auto& ax : arr.axes) {
        json ja;
        ja["direction"] = io_detail::vec_to_json(ax.direction);
        ja["fold"] = ax.fold == 0 ? json("inf") : json(ax.fold);
        ja["occupied"] = ax.occupied;
        ja["oriented"] = ax.oriented;
        ja["principal"] = ax.principal;
        axes.push_back(ja);
    }
    return axes;
}

int cmd_analyze(const std::string& input, bool as_json, double tol_rel) {
    ConfigFile c = config_from_json(read_json_file(input));
    Tolerance tol;
    tol.rel_eps = tol_rel;
    Configuration pts = c.expanded();
    Arrangement arr = detect_rotation_group(pts, tol);
    json j;
    j["gamma"] = arr.kind.str();
    j["order"] = arr.kind.finite() ? json(arr.kind.order()) : json("inf");
    j["axes"] = axes_report(arr);
    if (!arr.kind.finite()) {
        j["error"] = "collinear configuration: rotation group " + arr.kind.str();
        std::cout << (as_json ? j.dump(2)
                              : "error: collinear configuration (gamma = " + arr.kind.str() + ")")
                  << "\n";
        return EXIT_ERROR;
    }
    bool multiset = !c.multiplicities.empty();
    if (!multiset) {
        OrbitDecomposition dec = decompose(pts, arr, tol);
        json jorb = json::array();
        for (size_t i = 0; i < dec.orbits.size(); ++i) {
            json jo;
            jo["size"] = dec.orbits[i].size();
            jo["folding"] = dec.foldings[i];
            jo["radius"] = dec.radii[i];
            jo["members"] = dec.orbits[i];
            jorb.push_back(jo);
        }
        j["orbits"] = jorb;
        j["symmetricity"] = json::array();
        for (const auto& m : symmetricity(pts, tol).maximal)
            j["symmetricity"].push_back(m.str());
    } else {
        j["symmetricity"] = json::array();
        for (const auto& m : symmetricity_multiset(c.points, c.multiplicities, tol).maximal)
            j["symmetricity"].push_back(m.str());
    }
    if (as_json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "gamma = " << j["gamma"].get<std::string>() << " (order "
                  << j["order"].dump() << ")\n";
        for (const auto& ja : j["axes"])
            std::cout << "  axis fold " << ja["fold"].dump() << " dir "
                      << ja["direction"].dump()
                      << (ja["occupied"].get<bool>() ? " occupied" : " unoccupied")
                      << (ja["principal"].get<bool>() ? " principal" : "")
                      << (ja["oriented"].get<bool>() ? " oriented" : "") << "\n";
        if (j.contains("orbits")) {
            std::cout << "orbits:\n";
            for (const auto& jo : j["orbits"])
                std::cout << "  size " << jo["size"] << " folding " << jo["folding"]
                          << " radius " << jo["radius"] << "\n";
        }
        std::cout << "symmetricity maximal: " << j["symmetricity"].dump() << "\n";
    }
    return 0;
}

int cmd_check(const std::string& pfile, const std::string& ffile, bool as_json, double tol_rel) {
    ConfigFile pc = config_from_json(read_json_file(pfile));
    ConfigFile fc = config_from_json(read_json_file(ffile));
    Tolerance tol;
    tol.rel_eps = tol_rel;
    if (!pc.multiplicities.empty())
        throw std::invalid_argument("initial configuration must be multiplicity-free");
    Feasibility f = feasible(pc.points, fc.pattern(), tol);
    json j;
    j["feasible"] = f.ok;
    if (f.blocker) j["blocker"] = f.blocker->str();
    if (as_json) std::cout << j.dump(2) << "\n";
    else if (f.ok) std::cout << "feasible\n";
    else std::cout << "infeasible (blocked by " << f.blocker->str() << ")\n";
    return f.ok ? 0 : EXIT_NEGATIVE;
}

int cmd_run(const std::string& pfile, const std::string& ffile, const std::string& algorithm,
            const std::string& adversary, uint64_t seed, int max_steps, double tol_rel,
            const std::string& out_trace, bool as_json, bool strict) {
    ConfigFile pc = config_from_json(read_json_file(pfile));
    std::optional<Pattern> target;
    if (!ffile.empty()) target = config_from_json(read_json_file(ffile)).pattern();
    SimConfig cfg;
    cfg.algorithm = parse_algorithm(algorithm);
    cfg.adversary = AdversarySpec::parse(adversary);
    cfg.seed = seed;
    cfg.max_steps = max_steps;
    cfg.tol.rel_eps = tol_rel;
    cfg.permissive = !strict;
    Trace t = run(pc.points, target, cfg);
    if (!out_trace.empty()) write_json_file(out_trace, to_json(t));
    json j;
    j["outcome"] = outcome_name(t.outcome.kind);
    j["steps"] = t.outcome.steps;
    j["final_gamma"] = t.steps.back().gamma;
    j["final_sigma"] = t.steps.back().sigma;
    if (!t.outcome.message.empty()) j["message"] = t.outcome.message;
    if (as_json) std::cout << j.dump(2) << "\n";
    else
        std::cout << outcome_name(t.outcome.kind) << " steps=" << t.outcome.steps
                  << " gamma=" << t.steps.back().gamma << " sigma=" << t.steps.back().sigma
                  << "\n";
    if (t.outcome.kind == OutcomeKind::Error) return EXIT_ERROR;
    if (t.outcome.kind == OutcomeKind::BudgetExceeded) return EXIT_NEGATIVE;
    return 0;
}

struct VerifyReport {
    std::vector<std::pair<std::string, bool>> checks;
    bool all() const {
        for (const auto& [n, ok] : checks)
            if (!ok) return false;
        return true;
    }
    void add(const std::string& name, bool ok) { checks.push_back({name, ok}); }
};

int cmd_verify(const std::string& tfile, bool as_json, double tol_rel) {
    Trace t = trace_from_json(read_json_file(tfile));
    Tolerance tol;
    tol.rel_eps = tol_rel;
    VerifyReport rep;

    // movement consistency: consecutive configurations differ only at movers
    bool moves_ok = true;
    for (size_t i = 0; i + 1 < t.steps.size(); ++i) {
        const auto& a = t.steps[i];
        const auto& b = t.steps[i + 1];
        if (a.config.size() != b.config.size()) { moves_ok = false; break; }
        std::set<int> movers(a.moved.begin(), a.moved.end());
        for (size_t r = 0; r < a.config.size(); ++r) {
            bool changed = dist(a.config[r], b.config[r]) > tol.point(1.0);
            if (changed && !movers.count(int(r))) moves_ok = false;
        }
    }
    rep.add("move-set consistency", moves_ok);

    // recorded gamma matches recomputation
    bool gamma_ok = true;
    for (const auto& s : t.steps) {
        std::string g;
        try {
            g = detect_rotation_group(s.config, tol).kind.str();
        } catch (const std::exception&) {
            g = "?";
        }
        if (g != s.gamma) gamma_ok = false;
    }
    rep.add("gamma recomputation", gamma_ok);

    // sigma monotonicity (the symmetry the robots can never break)
    bool sigma_ok = true;
    if (!t.steps.empty() && !t.initial_frames.empty()) {
        try {
            GroupKind sigma0 = frame_group(t.initial_frames, tol).kind;
            if (sigma0.finite()) {
                for (const auto& s : t.steps) {
                    std::vector<LocalFrame> frames = t.initial_frames;
                    for (size_t r = 0; r < frames.size(); ++r) frames[r].origin = s.config[r];
                    GroupKind sig = frame_group(frames, tol).kind;
                    if (!sig.finite() || !is_subgroup(sigma0, sig)) sigma_ok = false;
                }
            }
        } catch (const std::exception&) {
            sigma_ok = false;
        }
    }
    rep.add("sigma monotonicity", sigma_ok);

    // occupied axis classes never grow when a leave procedure runs
    bool axes_ok = true;
    for (size_t i = 0; i + 1 < t.steps.size(); ++i) {
        const auto& s = t.steps[i];
        if (s.procedure != "go-to-center" && s.procedure != "go-to-corner" &&
            s.procedure != "go-to-sphere")
            continue;
        try {
            Arrangement before = detect_rotation_group(s.config, tol);
            Arrangement after = detect_rotation_group(t.steps[i + 1].config, tol);
            if (!before.kind.finite() || !after.kind.finite()) continue;
            auto axis_lines = [](const Arrangement& a, bool occupied) {
                std::vector<Vec3> lines;
                for (const auto& ax : a.axes)
                    if (ax.occupied == occupied) lines.push_back(detail::canonical_line_dir(ax.direction));
                return lines;
            };
            auto subset_of = [](const std::vector<Vec3>& sub, const std::vector<Vec3>& sup) {
                for (const auto& a : sub) {
                    bool hit = false;
                    for (const auto& b : sup) hit |= std::abs(a.dot(b)) > 1 - 1e-6;
                    if (!hit) return false;
                }
                return true;
            };
            auto occ_after = axis_lines(after, true);
            auto occ_before = axis_lines(before, true);
            auto unocc_after = axis_lines(after, false);
            auto all_before = axis_lines(before, true);
            for (const auto& v : axis_lines(before, false)) all_before.push_back(v);
            // occupied axes strictly shrink; no new axis appears at all
            if (!subset_of(occ_after, occ_before)) axes_ok = false;
            if (occ_after.size() >= occ_before.size()) axes_ok = false;
            if (!subset_of(unocc_after, all_before)) axes_ok = false;
        } catch (const std::exception&) {
            axes_ok = false;
        }
    }
    rep.add("occupied-axis monotonicity", axes_ok);

    // no multiplicity before the final formation jump
    bool mult_ok = true;
    for (size_t i = 0; i < t.steps.size(); ++i) {
        const auto& s = t.steps[i];
        bool final_jump = i + 1 == t.steps.size() &&
                          t.outcome.kind == OutcomeKind::Formed;
        if (final_jump) continue;
        PointSet ps = make_point_set(s.config, tol);
        if (ps.has_multiplicity()) mult_ok = false;
    }
    rep.add("no premature multiplicity", mult_ok);

    // formed outcome must actually be similar to the target
    bool formed_ok = true;
    if (t.outcome.kind == OutcomeKind::Formed) {
        if (!t.target) formed_ok = false;
        else {
            Tolerance simtol = tol;
            simtol.rel_eps = std::max(tol.rel_eps, 1e-6);
            formed_ok = similar(t.steps.back().config, t.target->expanded(), simtol).has_value();
        }
    }
    rep.add("similarity claim", formed_ok);

    json j;
    j["checks"] = json::array();
    for (const auto& [name, ok] : rep.checks)
        j["checks"].push_back({{"name", name}, {"pass", ok}});
    j["pass"] = rep.all();
    if (as_json) std::cout << j.dump(2) << "\n";
    else
        for (const auto& [name, ok] : rep.checks)
            std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
    return rep.all() ? 0 : EXIT_NEGATIVE;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"3D pattern formation for synchronous point robots"};
    app.require_subcommand(1);

    double tol_rel = 1e-9;
    bool as_json = false;
    app.add_option("--tol", tol_rel, "relative geometric tolerance")->capture_default_str();
    app.add_flag("--json", as_json, "machine-readable output");

    // gen
    auto* gen = app.add_subcommand("gen", "generate a configuration file");
    std::string shape, seed_point, group, parts, out_path = "config.json";
    int k = 4, multiplicity = 1;
    double radius = 1.0, noise = 0.0;
    uint64_t seed = 1;
    gen->add_option("shape", shape,
                    "tetrahedron|cube|octahedron|cuboctahedron|icosahedron|dodecahedron|"
                    "icosidodecahedron|sphenoid|pyramid|prism|antiprism|ngon|orbit|composite")
        ->required();
    gen->add_option("--k", k, "parameter for pyramid/prism/antiprism/ngon");
    gen->add_option("--radius", radius, "circumradius");
    gen->add_option("--noise", noise, "relative perturbation magnitude");
    gen->add_option("--seed", seed, "seed for perturbation/choices");
    gen->add_option("--seed-point", seed_point, "orbit seed point as x,y,z");
    gen->add_option("--group", group, "orbit group kind (C4, D3, T, O, I)");
    gen->add_option("--parts", parts, "composite parts, e.g. cube@1.0,octahedron@0.5");
    gen->add_option("--multiplicity", multiplicity, "replicate every point");
    gen->add_option("--out", out_path, "output path")->capture_default_str();

    // analyze
    auto* analyze = app.add_subcommand("analyze", "rotation group, orbits, symmetricity");
    std::string analyze_in;
    analyze->add_option("config", analyze_in, "configuration file")->required();

    // check
    auto* check = app.add_subcommand("check", "feasibility of forming F from P");
    std::string check_p, check_f;
    check->add_option("P", check_p, "initial configuration file")->required();
    check->add_option("F", check_f, "target pattern file")->required();

    // run
    auto* runc = app.add_subcommand("run", "simulate an execution");
    std::string run_p, run_f, algorithm = "psi_pf", adversary = "random", out_trace;
    int max_steps = 50;
    uint64_t run_seed = 1;
    bool strict = false;
    runc->add_option("P", run_p, "initial configuration file")->required();
    runc->add_option("F", run_f, "target pattern file (optional)");
    runc->add_option("--algorithm", algorithm, "psi_sym|psi_pf|go_to_center")
        ->capture_default_str();
    runc->add_option("--adversary", adversary, "random|symmetric:<G>")->capture_default_str();
    runc->add_option("--seed", run_seed, "seed");
    runc->add_option("--max-steps", max_steps, "step budget")->capture_default_str();
    runc->add_option("--out", out_trace, "trace output path");
    runc->add_flag("--strict", strict, "error out on infeasible pairs");

    // verify
    auto* verify = app.add_subcommand("verify", "re-check the invariants of a trace");
    std::string verify_in;
    verify->add_option("trace", verify_in, "trace file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            ConfigFile c = shape == "orbit" ? generate_orbit(group, seed_point, radius)
                                            : generate_shape(shape, k, radius, noise, seed_point,
                                                             parts, seed, multiplicity);
            write_json_file(out_path, to_json(c));
            std::cout << "wrote " << out_path << " (" << c.points.size() << " points)\n";
            return 0;
        }
        if (analyze->parsed()) return cmd_analyze(analyze_in, as_json, tol_rel);
        if (check->parsed()) return cmd_check(check_p, check_f, as_json, tol_rel);
        if (runc->parsed())
            return cmd_run(run_p, run_f, algorithm, adversary, run_seed, max_steps, tol_rel,
                           out_trace, as_json, strict);
        if (verify->parsed()) return cmd_verify(verify_in, as_json, tol_rel);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return EXIT_ERROR;
    }
    return 0;
}
