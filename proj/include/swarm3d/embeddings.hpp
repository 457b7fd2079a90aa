// Embeddings of a rotation group into a host arrangement, and the
// symmetricity of a configuration: the set of groups embeddable into the
// unoccupied rotation axes of gamma(P).
#pragma once

#include "orbits.hpp"

namespace swarm3d {

// A concrete embedded copy of a group inside a host arrangement: its axes sit
// on host axis lines (fold dividing the host fold), with orientation choices
// resolved where they matter.
struct Embedding {
    GroupKind kind = GroupKind::C(1);
    std::vector<Mat3> elements;   // rotation matrices of the embedded copy
    std::vector<Axis> axes;       // embedded axes with subgroup folds
    std::vector<int> host_axes;   // per embedded axis: index into host.axes

    bool uses_only_unoccupied(const Arrangement& host) const {
        for (int h : host_axes)
            if (host.axes[h].occupied) return false;
        return true;
    }
};

namespace detail {

inline uint64_t element_set_key(const std::vector<Mat3>& elems) {
    std::vector<uint64_t> keys;
    keys.reserve(elems.size());
    for (const auto& m : elems) keys.push_back(mat_key(m));
    std::sort(keys.begin(), keys.end());
    uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (uint64_t k : keys) h = hash_mix(h, k);
    return h;
}

inline int find_host_axis(const Arrangement& host, const Vec3& dir, double ang_eps = 1e-6) {
    for (size_t i = 0; i < host.axes.size(); ++i)
        if (std::abs(host.axes[i].direction.dot(dir)) > 1.0 - ang_eps) return int(i);
    return -1;
}

inline void enumerate_cyclic_embeddings(int k, const Arrangement& host,
                                        std::vector<Embedding>& out) {
    for (size_t hi = 0; hi < host.axes.size(); ++hi) {
        const Axis& ha = host.axes[hi];
        if (ha.fold <= 0 || ha.fold % k != 0) continue;
        std::vector<int> signs = ha.oriented ? std::vector<int>{1} : std::vector<int>{1, -1};
        for (int sgn : signs) {
            Embedding e;
            e.kind = GroupKind::C(k);
            Vec3 d = ha.direction * double(sgn);
            e.axes.push_back({d, k, true, true, false});
            e.host_axes.push_back(int(hi));
            e.elements = close_group({rotation_about(d, 2 * M_PI / k)});
            out.push_back(std::move(e));
        }
    }
}

inline void enumerate_dihedral_embeddings(int l, const Arrangement& host,
                                          std::vector<Embedding>& out) {
    const double ang_eps = 1e-6;
    std::set<uint64_t> seen;
    for (size_t hp = 0; hp < host.axes.size(); ++hp) {
        const Axis& pa = host.axes[hp];
        if (pa.fold <= 0 || pa.fold % l != 0) continue;
        Vec3 u = pa.direction;
        // perpendicular host axes able to carry a 2-fold rotation
        std::vector<int> perp;
        for (size_t i = 0; i < host.axes.size(); ++i) {
            if (i == hp) continue;
            const Axis& a = host.axes[i];
            if (a.fold <= 0 || a.fold % 2 != 0) continue;
            if (std::abs(a.direction.dot(u)) < ang_eps) perp.push_back(int(i));
        }
        if (int(perp.size()) < l) continue;
        Vec3 ref = std::abs(u.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
        Vec3 v = (ref - u * ref.dot(u)).normalized();
        Vec3 w = u.cross(v);
        std::vector<double> az(perp.size());
        for (size_t i = 0; i < perp.size(); ++i) {
            const Vec3& d = host.axes[perp[i]].direction;
            double t = std::atan2(d.dot(w), d.dot(v));
            az[i] = std::fmod(t + 2 * M_PI, M_PI);  // axis line angle mod pi
        }
        auto axis_at = [&](double target) -> int {
            double t = std::fmod(target + 4 * M_PI, M_PI);
            for (size_t i = 0; i < perp.size(); ++i) {
                double d = std::abs(az[i] - t);
                d = std::min(d, M_PI - d);
                if (d < ang_eps) return int(i);
            }
            return -1;
        };
        for (size_t start = 0; start < perp.size(); ++start) {
            std::vector<int> sel;
            for (int j = 0; j < l; ++j) {
                int q = axis_at(az[start] + j * M_PI / l);
                if (q < 0) break;
                sel.push_back(q);
            }
            if (int(sel.size()) != l) continue;
            std::vector<int> sorted_sel = sel;
            std::sort(sorted_sel.begin(), sorted_sel.end());
            if (std::unique(sorted_sel.begin(), sorted_sel.end()) != sorted_sel.end()) continue;
            uint64_t key = hash_mix(uint64_t(hp), 0);
            for (int q : sorted_sel) key = hash_mix(key, uint64_t(perp[q]));
            if (seen.count(key)) continue;
            seen.insert(key);

            Embedding e;
            e.kind = GroupKind::D(l);
            e.axes.push_back({u, l, false, true, false});
            e.host_axes.push_back(int(hp));
            std::vector<Mat3> gens{rotation_about(u, 2 * M_PI / l)};
            for (int q : sel) {
                Vec3 d = host.axes[perp[q]].direction;
                e.axes.push_back({d, 2, l % 2 == 1, false, false});
                e.host_axes.push_back(perp[q]);
            }
            gens.push_back(rotation_about(host.axes[perp[sel[0]]].direction, M_PI));
            e.elements = close_group(gens);
            if (e.elements.size() != size_t(2 * l)) continue;
            out.push_back(std::move(e));
        }
    }
}

inline void enumerate_polyhedral_embeddings(const GroupKind& g, const Arrangement& host,
                                            std::vector<Embedding>& out) {
    Arrangement sub = make_arrangement(g);
    // anchor pair: one max-fold axis and one axis of a different class
    int a1 = 0;
    for (size_t i = 0; i < sub.axes.size(); ++i)
        if (sub.axes[i].fold > sub.axes[a1].fold) a1 = int(i);
    int a2 = -1;
    for (size_t i = 0; i < sub.axes.size(); ++i)
        if (sub.axes[i].fold != sub.axes[a1].fold) { a2 = int(i); break; }
    if (a2 < 0) a2 = a1 == 0 ? 1 : 0;
    Vec3 d1 = sub.axes[a1].direction, d2 = sub.axes[a2].direction;
    double want_cos = std::abs(d1.dot(d2));

    std::set<uint64_t> seen;
    for (size_t h1 = 0; h1 < host.axes.size(); ++h1) {
        if (host.axes[h1].fold % sub.axes[a1].fold != 0) continue;
        for (size_t h2 = 0; h2 < host.axes.size(); ++h2) {
            if (h2 == h1) continue;
            if (host.axes[h2].fold % sub.axes[a2].fold != 0) continue;
            Vec3 e1 = host.axes[h1].direction, e2 = host.axes[h2].direction;
            if (std::abs(std::abs(e1.dot(e2)) - want_cos) > 1e-6) continue;
            for (int s1 : {1, -1})
                for (int s2 : {1, -1}) {
                    Vec3 t1 = e1 * double(s1), t2 = e2 * double(s2);
                    if (std::abs(t1.dot(t2) - d1.dot(d2)) > 1e-6) continue;
                    Vec3 u2 = (d2 - d1 * d2.dot(d1)).normalized();
                    Vec3 v2 = (t2 - t1 * t2.dot(t1)).normalized();
                    Mat3 U = Mat3::from_columns(d1, u2, d1.cross(u2));
                    Mat3 V = Mat3::from_columns(t1, v2, t1.cross(v2));
                    Mat3 R = V * U.transposed();
                    // verify every sub-axis lands on a compatible host axis
                    std::vector<int> hosts(sub.axes.size(), -1);
                    bool ok = true;
                    for (size_t i = 0; i < sub.axes.size() && ok; ++i) {
                        int hi = find_host_axis(host, R * sub.axes[i].direction);
                        ok = hi >= 0 && host.axes[hi].fold % sub.axes[i].fold == 0;
                        hosts[i] = hi;
                    }
                    if (!ok) continue;
                    std::vector<Mat3> elems;
                    elems.reserve(sub.elements.size());
                    for (const auto& m : sub.elements) elems.push_back(R * m * R.transposed());
                    uint64_t key = element_set_key(elems);
                    if (seen.count(key)) continue;
                    seen.insert(key);

                    int patterns = g.family == GroupFamily::Tetrahedral ? 2 : 1;
                    for (int pat = 0; pat < patterns; ++pat) {
                        Embedding e;
                        e.kind = g;
                        e.elements = elems;
                        bool valid = true;
                        for (size_t i = 0; i < sub.axes.size(); ++i) {
                            Axis ax = sub.axes[i];
                            ax.direction = R * ax.direction;
                            if (ax.oriented && pat == 1) ax.direction = -ax.direction;
                            ax.occupied = false;
                            const Axis& ha = host.axes[hosts[i]];
                            if (ax.oriented && ha.oriented &&
                                ax.direction.dot(ha.direction) < 0.9)
                                valid = false;
                            e.axes.push_back(ax);
                            e.host_axes.push_back(hosts[i]);
                        }
                        if (valid) out.push_back(std::move(e));
                    }
                }
        }
    }
}

}  // namespace detail

// All embeddings of kind g into the host arrangement. Empty when g is not a
// subgroup of the host kind. Oriented axes of g landing on unoriented host
// axes produce one embedding per direction choice.
inline std::vector<Embedding> enumerate_embeddings(const GroupKind& g, const Arrangement& host) {
    if (!host.kind.finite()) throw std::invalid_argument("unsupported: infinite host kind");
    if (!g.finite()) throw std::invalid_argument("unsupported: infinite kinds");
    std::vector<Embedding> out;
    if (!is_subgroup(g, host.kind)) return out;
    if (g.is_cyclic() && g.n == 1) {
        Embedding e;
        e.kind = g;
        e.elements = {Mat3::identity()};
        out.push_back(std::move(e));
        return out;
    }
    if (g.is_cyclic()) {
        detail::enumerate_cyclic_embeddings(g.n, host, out);
    } else if (g.is_dihedral()) {
        detail::enumerate_dihedral_embeddings(g.n, host, out);
    } else {
        detail::enumerate_polyhedral_embeddings(g, host, out);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Symmetricity

// Downward-closed set of group kinds reported by its maximal elements.
struct SymmetricitySet {
    std::vector<GroupKind> maximal;

    bool contains(const GroupKind& g) const {
        if (g == GroupKind::C(1)) return true;
        for (const auto& m : maximal)
            if (is_subgroup(g, m)) return true;
        return false;
    }
    std::string str() const {
        std::string s = "{";
        for (size_t i = 0; i < maximal.size(); ++i) {
            if (i) s += ", ";
            s += maximal[i].str();
        }
        return s + "}";
    }
};

namespace detail {

inline SymmetricitySet reduce_to_maximal(std::vector<GroupKind> kinds) {
    SymmetricitySet out;
    for (const auto& g : kinds) {
        bool dominated = false;
        for (const auto& h : kinds)
            if (g != h && is_subgroup(g, h)) { dominated = true; break; }
        if (!dominated) out.maximal.push_back(g);
    }
    std::sort(out.maximal.begin(), out.maximal.end());
    out.maximal.erase(std::unique(out.maximal.begin(), out.maximal.end()), out.maximal.end());
    return out;
}

inline std::vector<GroupKind> candidate_subkinds(const GroupKind& host) {
    std::vector<GroupKind> cands;
    auto add_divisors = [&](int f, bool dihedral_too) {
        for (int k = 2; k <= f; ++k) {
            if (f % k) continue;
            cands.push_back(GroupKind::C(k));
            if (dihedral_too && k >= 2) cands.push_back(GroupKind::D(k));
        }
    };
    switch (host.family) {
        case GroupFamily::Cyclic:
            add_divisors(host.n, false);
            break;
        case GroupFamily::Dihedral:
            add_divisors(host.n, true);
            cands.push_back(GroupKind::C(2));
            cands.push_back(GroupKind::D(2));
            break;
        case GroupFamily::Tetrahedral:
            cands.insert(cands.end(), {GroupKind::C(2), GroupKind::C(3), GroupKind::D(2),
                                       GroupKind::T()});
            break;
        case GroupFamily::Octahedral:
            cands.insert(cands.end(), {GroupKind::C(2), GroupKind::C(3), GroupKind::C(4),
                                       GroupKind::D(2), GroupKind::D(3), GroupKind::D(4),
                                       GroupKind::T(), GroupKind::O()});
            break;
        case GroupFamily::Icosahedral:
            cands.insert(cands.end(), {GroupKind::C(2), GroupKind::C(3), GroupKind::C(5),
                                       GroupKind::D(2), GroupKind::D(3), GroupKind::D(5),
                                       GroupKind::T(), GroupKind::I()});
            break;
        default:
            break;
    }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    return cands;
}

}  // namespace detail

// Symmetricity of a set of points: all kinds embeddable into the unoccupied
// axes of gamma(P), reported by maximal elements. {C1} when every axis is
// occupied or some point sits at b(P).
inline SymmetricitySet symmetricity(const Configuration& P, const Tolerance& tol = {}) {
    if (P.size() < 3) throw std::invalid_argument("need at least 3 points");
    PointSet s = make_point_set(P, tol);
    if (s.has_multiplicity()) throw std::invalid_argument("symmetricity requires a set");
    if (collinear(s)) throw std::invalid_argument("collinear configuration");
    Arrangement arr = detect_rotation_group(P, tol);

    bool center_occupied = false;
    for (const auto& p : s.pos)
        if (dist(p, s.center) <= s.eps) center_occupied = true;

    std::vector<GroupKind> qualifying{GroupKind::C(1)};
    if (!center_occupied) {
        for (const auto& g : detail::candidate_subkinds(arr.kind)) {
            auto embs = enumerate_embeddings(g, arr);
            for (const auto& e : embs)
                if (e.uses_only_unoccupied(arr)) { qualifying.push_back(g); break; }
        }
    }
    return detail::reduce_to_maximal(std::move(qualifying));
}

// Symmetricity of a multiset: kinds admitting an arrangement that decomposes F
// into transitive multisets (multiplicity on a k-fold axis a multiple of k,
// |G| at the center) or plain transitive |G|-sets.
inline SymmetricitySet symmetricity_multiset(const Configuration& positions,
                                             const std::vector<int>& multiplicities,
                                             const Tolerance& tol = {}) {
    if (positions.size() != multiplicities.size())
        throw std::invalid_argument("positions/multiplicities size mismatch");
    Configuration expanded;
    for (size_t i = 0; i < positions.size(); ++i) {
        if (multiplicities[i] < 1) throw std::invalid_argument("multiplicity must be >= 1");
        for (int c = 0; c < multiplicities[i]; ++c) expanded.push_back(positions[i]);
    }
    if (expanded.size() < 3) throw std::invalid_argument("need at least 3 points");
    PointSet s = make_point_set(expanded, tol);
    if (collinear(s)) throw std::invalid_argument("collinear configuration");
    Arrangement arr = detect_rotation_group(expanded, tol);

    auto point_fold = [&](const Embedding& e, const Point3& p) -> int {
        Vec3 r = p - s.center;
        if (r.norm() <= s.eps) return int(e.elements.size());
        for (const auto& ax : e.axes)
            if (r.cross(ax.direction).norm() <= s.eps) return ax.fold;
        return 1;
    };

    std::vector<GroupKind> qualifying{GroupKind::C(1)};
    for (const auto& g : detail::candidate_subkinds(arr.kind)) {
        for (const auto& e : enumerate_embeddings(g, arr)) {
            bool ok = true;
            for (size_t i = 0; i < s.pos.size() && ok; ++i)
                ok = s.mult[i] % point_fold(e, s.pos[i]) == 0;
            if (ok) { qualifying.push_back(g); break; }
        }
    }
    // C1 always qualifies: a point of multiplicity m is m parallel singleton orbits.
    return detail::reduce_to_maximal(std::move(qualifying));
}

inline SymmetricitySet symmetricity_multiset(const Configuration& expanded,
                                             const Tolerance& tol = {}) {
    return symmetricity_multiset(expanded, std::vector<int>(expanded.size(), 1), tol);
}

}  // namespace swarm3d
