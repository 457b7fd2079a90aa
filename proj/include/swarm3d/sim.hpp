// FSYNC Look-Compute-Move execution engine with adversarial local-frame
// assignment, termination detection, and trace recording.
#pragma once

#include "formation.hpp"

namespace swarm3d {

enum class AlgorithmKind { PsiSym, PsiPf, GoToCenter };

inline const char* algorithm_name(AlgorithmKind a) {
    switch (a) {
        case AlgorithmKind::PsiSym: return "psi_sym";
        case AlgorithmKind::PsiPf: return "psi_pf";
        case AlgorithmKind::GoToCenter: return "go_to_center";
    }
    return "?";
}

inline AlgorithmKind parse_algorithm(const std::string& s) {
    if (s == "psi_sym") return AlgorithmKind::PsiSym;
    if (s == "psi_pf") return AlgorithmKind::PsiPf;
    if (s == "go_to_center") return AlgorithmKind::GoToCenter;
    throw std::invalid_argument("unknown algorithm: " + s);
}

struct AdversarySpec {
    enum Kind { RandomFrames, SymmetricFrames } kind = RandomFrames;
    GroupKind group = GroupKind::C(1);  // for SymmetricFrames
    int embedding_choice = 0;

    std::string str() const {
        if (kind == RandomFrames) return "random";
        return "symmetric:" + group.str();
    }
    static AdversarySpec parse(const std::string& s) {
        AdversarySpec a;
        if (s == "random") return a;
        if (s.rfind("symmetric:", 0) == 0) {
            a.kind = SymmetricFrames;
            a.group = GroupKind::parse(s.substr(10));
            return a;
        }
        throw std::invalid_argument("unknown adversary: " + s);
    }
};

struct Robot {
    int index = 0;
    LocalFrame frame;
};

struct SimConfig {
    AlgorithmKind algorithm = AlgorithmKind::PsiPf;
    AdversarySpec adversary;
    uint64_t seed = 1;
    int max_steps = 50;
    Tolerance tol;
    bool permissive = true;               // infeasible pairs stall instead of erroring
    double similarity_rel_eps = 1e-6;     // residual for the formed check
};

enum class OutcomeKind { Formed, TerminalNoTarget, BudgetExceeded, Error };

inline const char* outcome_name(OutcomeKind k) {
    switch (k) {
        case OutcomeKind::Formed: return "Formed";
        case OutcomeKind::TerminalNoTarget: return "Terminal-no-target";
        case OutcomeKind::BudgetExceeded: return "BudgetExceeded";
        case OutcomeKind::Error: return "Error";
    }
    return "?";
}

struct TraceStep {
    Configuration config;        // configuration at this time
    std::vector<int> moved;      // robots with a destination this step
    int moved_orbit = -1;
    std::string procedure = "none";
    std::string gamma, sigma;
};

struct Outcome {
    OutcomeKind kind = OutcomeKind::BudgetExceeded;
    int steps = 0;
    std::string message;
};

struct Trace {
    std::string algorithm;
    std::string adversary;
    uint64_t seed = 0;
    std::optional<Pattern> target;
    std::vector<LocalFrame> initial_frames;
    std::vector<TraceStep> steps;
    Outcome outcome;
};

// ---------------------------------------------------------------------------
// Adversaries

// Frame generator for an initial configuration. Random: independent
// right-handed frames. Symmetric: sigma(P) = G through a chosen embedding
// into the unoccupied axes of gamma(P).
inline std::vector<LocalFrame> make_adversary(const AdversarySpec& spec, const Configuration& P0,
                                              uint64_t seed, const Tolerance& tol = {}) {
    if (spec.kind == AdversarySpec::RandomFrames) {
        RngStream rng(hash_mix(seed, 0xadf5a17ULL));
        std::vector<LocalFrame> frames(P0.size());
        for (size_t i = 0; i < P0.size(); ++i) {
            frames[i].origin = P0[i];
            frames[i].basis = rng.rotation();
            frames[i].scale = rng.uniform(0.5, 2.0);
        }
        return frames;
    }
    if (spec.group == GroupKind::C(1)) {
        Embedding triv;
        triv.kind = GroupKind::C(1);
        triv.elements = {Mat3::identity()};
        return symmetric_frame_assignment(P0, spec.group, triv, seed, tol);
    }
    Arrangement gamma = detect_rotation_group(P0, tol);
    auto embs = enumerate_embeddings(spec.group, gamma);
    std::vector<const Embedding*> ok;
    for (const auto& e : embs)
        if (e.uses_only_unoccupied(gamma)) ok.push_back(&e);
    if (ok.empty()) throw std::invalid_argument("adversary group not in the symmetricity");
    std::sort(ok.begin(), ok.end(), [&](const Embedding* a, const Embedding* b) {
        return detail::lex_cmp(detail::embedding_rank_key(*a, gamma),
                               detail::embedding_rank_key(*b, gamma)) < 0;
    });
    const Embedding& e = *ok[size_t(spec.embedding_choice) % ok.size()];
    return symmetric_frame_assignment(P0, spec.group, e, seed, tol);
}

// ---------------------------------------------------------------------------
// Compute dispatch

namespace detail {

inline StepResult compute_step(const Configuration& P, AlgorithmKind alg, const Pattern* target,
                               uint64_t seed, const Tolerance& tol, bool permissive) {
    switch (alg) {
        case AlgorithmKind::GoToCenter: {
            StepResult r;
            r.moves = go_to_center_step(P, seed, tol);
            r.moved_orbit = 0;
            r.procedure = Procedure::GoToCenter;
            return r;
        }
        case AlgorithmKind::PsiSym:
            return psi_sym_step(P, seed, tol);
        case AlgorithmKind::PsiPf:
            if (!target) throw std::invalid_argument("psi_pf needs a target pattern");
            return psi_pf_step(P, *target, seed, tol, permissive);
    }
    throw std::logic_error("unreachable");
}

}  // namespace detail

// One fully synchronous Look-Compute-Move cycle: all robots observe P
// simultaneously, compute, and move rigidly; frames travel with their robots,
// orientations and scales unchanged.
inline std::pair<Configuration, std::vector<Robot>> fsync_step(
    const Configuration& P, const std::vector<Robot>& robots, AlgorithmKind alg,
    const Pattern* target, uint64_t seed, const Tolerance& tol = {}, bool permissive = true) {
    StepResult r = detail::compute_step(P, alg, target, seed, tol, permissive);
    Configuration P2 = r.moves.apply(P);
    std::vector<Robot> robots2 = robots;
    for (size_t i = 0; i < robots2.size(); ++i) robots2[i].frame.origin = P2[i];
    return {P2, robots2};
}

// The per-robot view of the same cycle: the robot observes P through its own
// frame, computes in local coordinates, and the destination maps back through
// the frame. Equivariant algorithms make this agree with the global step.
inline std::optional<Point3> compute_through_frame(const Configuration& P, size_t robot,
                                                   const LocalFrame& frame, AlgorithmKind alg,
                                                   const Pattern* target, uint64_t seed,
                                                   const Tolerance& tol = {},
                                                   bool permissive = true) {
    Configuration obs = look(P, frame);
    StepResult r = detail::compute_step(obs, alg, target, seed, tol, permissive);
    if (!r.moves.dest[robot]) return std::nullopt;
    return frame.to_global(*r.moves.dest[robot]);
}

// ---------------------------------------------------------------------------
// Execution

inline Trace run(const Configuration& P0, const std::optional<Pattern>& target,
                 const SimConfig& cfg) {
    if (P0.size() < 3) throw std::invalid_argument("need at least 3 robots");
    if (target && target->total() != P0.size())
        throw std::invalid_argument("size mismatch between configuration and target");
    if (!cfg.permissive && target) {
        Feasibility f = feasible(P0, *target, cfg.tol);
        if (!f.ok)
            throw std::invalid_argument("infeasible pair (blocked by " + f.blocker->str() + ")");
    }

    Trace trace;
    trace.algorithm = algorithm_name(cfg.algorithm);
    trace.adversary = cfg.adversary.str();
    trace.seed = cfg.seed;
    trace.target = target;
    trace.initial_frames = make_adversary(cfg.adversary, P0, cfg.seed, cfg.tol);

    std::vector<Robot> robots(P0.size());
    for (size_t i = 0; i < P0.size(); ++i) robots[i] = {int(i), trace.initial_frames[i]};
    Configuration P = P0;

    Tolerance simtol = cfg.tol;
    simtol.rel_eps = cfg.similarity_rel_eps;
    Configuration target_expanded;
    if (target) target_expanded = target->expanded();

    for (int t = 0;; ++t) {
        TraceStep step;
        step.config = P;
        try {
            step.gamma = detect_rotation_group(P, cfg.tol).kind.str();
        } catch (const std::exception&) {
            step.gamma = "?";
        }
        try {
            std::vector<LocalFrame> frames;
            for (const auto& r : robots) frames.push_back(r.frame);
            step.sigma = frame_group(frames, cfg.tol).kind.str();
        } catch (const std::exception&) {
            step.sigma = "?";
        }
        trace.steps.push_back(std::move(step));

        if (target && similar(P, target_expanded, simtol)) {
            trace.outcome = {OutcomeKind::Formed, t, ""};
            return trace;
        }
        bool terminal = false;
        try {
            terminal = psi_sym_terminal(P, cfg.tol);
        } catch (const std::exception&) {
            terminal = false;
        }
        if (!target && cfg.algorithm != AlgorithmKind::GoToCenter && terminal) {
            trace.outcome = {OutcomeKind::TerminalNoTarget, t, ""};
            return trace;
        }
        if (t >= cfg.max_steps) {
            trace.outcome = {OutcomeKind::BudgetExceeded, t, ""};
            return trace;
        }

        StepResult r;
        try {
            if (cfg.algorithm == AlgorithmKind::PsiSym && terminal) {
                r.moves = MoveSet(P.size());  // stall on terminal configurations
            } else {
                r = detail::compute_step(P, cfg.algorithm, target ? &*target : nullptr,
                                         cfg.seed, cfg.tol, cfg.permissive);
            }
        } catch (const std::exception& ex) {
            if (cfg.algorithm == AlgorithmKind::GoToCenter) {
                trace.outcome = {OutcomeKind::TerminalNoTarget, t, ex.what()};
                return trace;
            }
            trace.outcome = {OutcomeKind::Error, t, ex.what()};
            return trace;
        }

        TraceStep& cur = trace.steps.back();
        for (size_t i = 0; i < P.size(); ++i)
            if (r.moves.dest[i]) cur.moved.push_back(int(i));
        cur.moved_orbit = r.moved_orbit;
        cur.procedure = procedure_name(r.procedure);

        // a stalled permissive run burns budget without moving
        P = r.moves.apply(P);
        for (size_t i = 0; i < robots.size(); ++i) robots[i].frame.origin = P[i];
    }
}

}  // namespace swarm3d
