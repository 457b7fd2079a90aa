// JSON file formats: configuration files (points, optional multiplicities and
// frames) and trace files. Both schema-versioned; coordinates round-trip
// losslessly.
#pragma once

#include "sim.hpp"

#include <json.hpp>

#include <fstream>

namespace swarm3d {

using json = nlohmann::ordered_json;

struct ConfigFile {
    Configuration points;
    std::vector<int> multiplicities;      // optional; empty means all 1
    std::vector<LocalFrame> frames;       // optional

    Pattern pattern() const { return {points, multiplicities}; }
    Configuration expanded() const { return pattern().expanded(); }
};

namespace io_detail {

inline json vec_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

inline Vec3 vec_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3) throw std::invalid_argument("expected [x, y, z]");
    Vec3 v{j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
    if (!v.finite()) throw std::invalid_argument("non-finite coordinate");
    return v;
}

inline json mat_to_json(const Mat3& m) {
    json cols = json::array();
    for (int c = 0; c < 3; ++c) cols.push_back(vec_to_json(m.col(c)));
    return cols;
}

inline Mat3 mat_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3) throw std::invalid_argument("expected a 3x3 basis");
    return Mat3::from_columns(vec_from_json(j[0]), vec_from_json(j[1]), vec_from_json(j[2]));
}

}  // namespace io_detail

inline json to_json(const ConfigFile& c) {
    json j;
    j["version"] = 1;
    j["points"] = json::array();
    for (const auto& p : c.points) j["points"].push_back(io_detail::vec_to_json(p));
    if (!c.multiplicities.empty()) j["multiplicities"] = c.multiplicities;
    if (!c.frames.empty()) {
        j["frames"] = json::array();
        for (const auto& f : c.frames) {
            json jf;
            jf["origin"] = io_detail::vec_to_json(f.origin);
            jf["basis"] = io_detail::mat_to_json(f.basis);
            jf["scale"] = f.scale;
            j["frames"].push_back(jf);
        }
    }
    return j;
}

inline ConfigFile config_from_json(const json& j) {
    if (!j.contains("version") || j["version"].get<int>() != 1)
        throw std::invalid_argument("unsupported config file version");
    ConfigFile c;
    for (const auto& p : j.at("points")) c.points.push_back(io_detail::vec_from_json(p));
    if (c.points.size() < 3) throw std::invalid_argument("need at least 3 points");
    if (j.contains("multiplicities")) {
        c.multiplicities = j["multiplicities"].get<std::vector<int>>();
        if (c.multiplicities.size() != c.points.size())
            throw std::invalid_argument("multiplicities size mismatch");
        for (int m : c.multiplicities)
            if (m < 1) throw std::invalid_argument("multiplicity must be >= 1");
    }
    if (j.contains("frames")) {
        for (const auto& jf : j["frames"]) {
            LocalFrame f;
            f.origin = io_detail::vec_from_json(jf.at("origin"));
            f.basis = io_detail::mat_from_json(jf.at("basis"));
            f.scale = jf.at("scale").get<double>();
            f.validate();
            c.frames.push_back(f);
        }
        if (c.frames.size() != c.points.size())
            throw std::invalid_argument("frames size mismatch");
    }
    return c;
}

inline json to_json(const Trace& t) {
    json j;
    j["version"] = 1;
    json meta;
    meta["algorithm"] = t.algorithm;
    meta["seed"] = t.seed;
    meta["adversary"] = t.adversary;
    if (t.target) {
        meta["target"] = json::array();
        for (const auto& p : t.target->positions) meta["target"].push_back(io_detail::vec_to_json(p));
        if (!t.target->multiplicities.empty())
            meta["target_multiplicities"] = t.target->multiplicities;
    }
    meta["initial_frames"] = json::array();
    for (const auto& f : t.initial_frames) {
        json jf;
        jf["origin"] = io_detail::vec_to_json(f.origin);
        jf["basis"] = io_detail::mat_to_json(f.basis);
        jf["scale"] = f.scale;
        meta["initial_frames"].push_back(jf);
    }
    j["metadata"] = meta;
    j["steps"] = json::array();
    for (const auto& s : t.steps) {
        json js;
        js["configuration"] = json::array();
        for (const auto& p : s.config) js["configuration"].push_back(io_detail::vec_to_json(p));
        js["moved"] = s.moved;
        js["moved_orbit"] = s.moved_orbit;
        js["procedure"] = s.procedure;
        js["gamma"] = s.gamma;
        js["sigma"] = s.sigma;
        j["steps"].push_back(js);
    }
    j["outcome"] = {{"kind", outcome_name(t.outcome.kind)},
                    {"steps", t.outcome.steps},
                    {"message", t.outcome.message}};
    return j;
}

inline Trace trace_from_json(const json& j) {
    if (!j.contains("version") || j["version"].get<int>() != 1)
        throw std::invalid_argument("unsupported trace file version");
    Trace t;
    const json& meta = j.at("metadata");
    t.algorithm = meta.at("algorithm").get<std::string>();
    t.seed = meta.at("seed").get<uint64_t>();
    t.adversary = meta.at("adversary").get<std::string>();
    if (meta.contains("target")) {
        Pattern f;
        for (const auto& p : meta["target"]) f.positions.push_back(io_detail::vec_from_json(p));
        if (meta.contains("target_multiplicities"))
            f.multiplicities = meta["target_multiplicities"].get<std::vector<int>>();
        t.target = f;
    }
    if (meta.contains("initial_frames")) {
        for (const auto& jf : meta["initial_frames"]) {
            LocalFrame f;
            f.origin = io_detail::vec_from_json(jf.at("origin"));
            f.basis = io_detail::mat_from_json(jf.at("basis"));
            f.scale = jf.at("scale").get<double>();
            t.initial_frames.push_back(f);
        }
    }
    for (const auto& js : j.at("steps")) {
        TraceStep s;
        for (const auto& p : js.at("configuration")) s.config.push_back(io_detail::vec_from_json(p));
        s.moved = js.at("moved").get<std::vector<int>>();
        s.moved_orbit = js.at("moved_orbit").get<int>();
        s.procedure = js.at("procedure").get<std::string>();
        s.gamma = js.at("gamma").get<std::string>();
        s.sigma = js.at("sigma").get<std::string>();
        t.steps.push_back(std::move(s));
    }
    const json& jo = j.at("outcome");
    std::string kind = jo.at("kind").get<std::string>();
    if (kind == "Formed") t.outcome.kind = OutcomeKind::Formed;
    else if (kind == "Terminal-no-target") t.outcome.kind = OutcomeKind::TerminalNoTarget;
    else if (kind == "BudgetExceeded") t.outcome.kind = OutcomeKind::BudgetExceeded;
    else if (kind == "Error") t.outcome.kind = OutcomeKind::Error;
    else throw std::invalid_argument("unknown outcome kind: " + kind);
    t.outcome.steps = jo.at("steps").get<int>();
    t.outcome.message = jo.at("message").get<std::string>();
    return t;
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    json j;
    in >> j;
    return j;
}

}  // namespace swarm3d
