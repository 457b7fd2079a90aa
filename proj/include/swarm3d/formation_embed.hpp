// Target embedding and matching: fixing the image F~ of the target pattern in
// a terminal configuration and assigning each robot a destination point.
// Included at the end of formation.hpp.
#pragma once

#include "formation.hpp"

namespace swarm3d {

// A regular polygon on the equator plane of a directed axis, used as the
// azimuth anchor when an embedding leaves rotational freedom.
struct ReferencePolygon {
    Vec3 axis;               // directed axis the polygon is perpendicular to
    std::vector<Vec3> dirs;  // unit vertex directions in the equator plane
    double radius = 0;       // radius of the source ring
};

namespace detail {

struct RingInfo {
    std::vector<int> members;  // unique-position indices
    double radius = 0;         // distance of the ring sphere from the center
    bool on_axis = false;
    bool equatorial = false;   // all members at h ~ 0
    int size() const { return int(members.size()); }
};

inline std::vector<double> ring_order_key(const PointSet& s, const RingInfo& ring,
                                          bool common_data) {
    if (!common_data) {
        // paper ordering: the minimal local view of the ring's points
        return local_view_of(s, s.pos[ring.members[0]]);
    }
    // raw deterministic key for common target data
    std::vector<double> key{ring.radius};
    std::vector<std::array<double, 3>> raw;
    for (int m : ring.members) raw.push_back({s.pos[m].x, s.pos[m].y, s.pos[m].z});
    std::sort(raw.begin(), raw.end());
    for (const auto& r : raw) key.insert(key.end(), r.begin(), r.end());
    return key;
}

inline std::vector<RingInfo> subgroup_rings(const PointSet& s, const std::vector<Mat3>& elems,
                                            const Vec3& u) {
    // orbits of the subgroup given by `elems` over the unique positions
    PointGrid grid(s);
    std::vector<int> orbit_id(s.pos.size(), -1);
    std::vector<RingInfo> rings;
    for (size_t i = 0; i < s.pos.size(); ++i) {
        if (orbit_id[i] >= 0) continue;
        RingInfo ring;
        for (const auto& m : elems) {
            Point3 q = apply_about(m, s.pos[i], s.center);
            int j = grid.find(q, s.eps);
            if (j >= 0 && orbit_id[j] < 0) {
                orbit_id[j] = int(rings.size());
                ring.members.push_back(j);
            }
        }
        ring.radius = dist(s.pos[i], s.center);
        ring.on_axis = true;
        ring.equatorial = true;
        for (int m : ring.members) {
            Vec3 r = s.pos[m] - s.center;
            if (r.cross(u).norm() > s.eps) ring.on_axis = false;
            if (std::abs(r.dot(u)) > s.eps) ring.equatorial = false;
        }
        rings.push_back(std::move(ring));
    }
    return rings;
}

inline double azimuth_about(const Vec3& u, const Vec3& v, const Vec3& w, const Vec3& r) {
    Vec3 perp = r - u * r.dot(u);
    return std::fmod(std::atan2(perp.dot(w), perp.dot(v)) + 2 * M_PI, 2 * M_PI);
}

}  // namespace detail

// Reference polygon of a configuration for one axis of its arrangement.
// axis_index < 0 selects the C1 construction (first point defines the axis,
// first off-line point the polygon). For an oriented axis the construction is
// cyclic (project the first off-axis ring); for an unoriented one it is
// dihedral (twist the first free ring pair onto the axial planes, or take the
// equatorial ring directly).
inline ReferencePolygon reference_polygon(const Configuration& config, const Arrangement& arr,
                                          int axis_index, const Tolerance& tol = {},
                                          bool common_data = false) {
    PointSet s = make_point_set(config, tol);
    if (s.has_multiplicity() && !common_data)
        throw std::invalid_argument("reference polygon of a multiset requires common data");
    ReferencePolygon out;

    auto order_rings = [&](std::vector<detail::RingInfo>& rings) {
        std::vector<std::vector<double>> keys(rings.size());
        for (size_t i = 0; i < rings.size(); ++i) {
            if (rings[i].radius <= s.eps)
                keys[i] = {};  // center first
            else
                keys[i] = detail::ring_order_key(s, rings[i], common_data);
        }
        std::vector<int> idx(rings.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) {
            bool ca = keys[a].empty(), cb = keys[b].empty();
            if (ca != cb) return ca;
            int c = detail::lex_cmp(keys[a], keys[b]);
            if (c) return c < 0;
            return a < b;
        });
        std::vector<detail::RingInfo> sorted;
        for (int i : idx) sorted.push_back(std::move(rings[i]));
        rings = std::move(sorted);
    };

    if (axis_index < 0 || arr.kind == GroupKind::C(1)) {
        // C1: axis through the first element, polygon from the first off-line element
        std::vector<detail::RingInfo> rings =
            detail::subgroup_rings(s, {Mat3::identity()}, Vec3{0, 0, 1});
        order_rings(rings);
        const detail::RingInfo* first = nullptr;
        for (const auto& r : rings)
            if (r.radius > s.eps) { first = &r; break; }
        if (!first) throw std::invalid_argument("degenerate configuration");
        Vec3 u = (s.pos[first->members[0]] - s.center).normalized();
        out.axis = u;
        for (const auto& r : rings) {
            Vec3 rel = s.pos[r.members[0]] - s.center;
            Vec3 perp = rel - u * rel.dot(u);
            if (perp.norm() > s.eps) {
                out.dirs = {perp.normalized()};
                out.radius = perp.norm();
                return out;
            }
        }
        throw std::invalid_argument("all points collinear with the reference axis");
    }

    const Axis& ax = arr.axes.at(axis_index);
    Vec3 u = ax.direction;
    int k = ax.fold;
    out.axis = u;

    // dihedral arrangement, secondary axis specified: the polygon is the pair
    // of intersections of the principal axis with the equator plane
    if (arr.kind.is_dihedral() && !ax.principal) {
        const Axis* prin = arr.principal_axis();
        if (!prin) throw std::invalid_argument("dihedral arrangement lacks a principal axis");
        out.dirs = {prin->direction, -prin->direction};
        out.radius = 1.0;
        return out;
    }

    Vec3 ref = std::abs(u.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    Vec3 v = (ref - u * ref.dot(u)).normalized();
    Vec3 w = u.cross(v);

    if (ax.oriented) {
        // cyclic construction: project the first off-axis C_k ring
        auto elems = detail::close_group({rotation_about(u, 2 * M_PI / k)});
        auto rings = detail::subgroup_rings(s, elems, u);
        order_rings(rings);
        for (const auto& r : rings) {
            if (r.on_axis) continue;
            out.radius = 0;
            for (int m : r.members) {
                Vec3 rel = s.pos[m] - s.center;
                Vec3 perp = rel - u * rel.dot(u);
                out.dirs.push_back(perp.normalized());
                out.radius = std::max(out.radius, perp.norm());
            }
            return out;
        }
        throw std::invalid_argument("no off-axis ring for the reference polygon");
    }

    // dihedral construction about an unoriented axis: secondaries are the
    // perpendicular even-fold axes of the arrangement
    std::vector<double> grid;  // half-plane azimuths
    for (const auto& a2 : arr.axes) {
        if (a2.fold % 2 != 0 || std::abs(a2.direction.dot(u)) > 1e-6) continue;
        double t = detail::azimuth_about(u, v, w, a2.direction);
        grid.push_back(std::fmod(t, 2 * M_PI));
        grid.push_back(std::fmod(t + M_PI, 2 * M_PI));
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-9; }),
               grid.end());
    if (grid.empty()) throw std::invalid_argument("no secondary axes for the dihedral polygon");

    std::vector<Mat3> gens{rotation_about(u, 2 * M_PI / k)};
    // any perpendicular even-fold axis carries a pi rotation of the group
    for (const auto& a2 : arr.axes)
        if (a2.fold % 2 == 0 && std::abs(a2.direction.dot(u)) < 1e-6) {
            gens.push_back(rotation_about(a2.direction, M_PI));
            break;
        }
    auto elems = detail::close_group(gens);
    auto rings = detail::subgroup_rings(s, elems, u);
    order_rings(rings);

    // prefer the equatorial k-ring on the secondary axes (U_{D,2})
    for (const auto& r : rings) {
        if (r.on_axis || !r.equatorial || r.size() != k) continue;
        for (int m : r.members) {
            Vec3 rel = s.pos[m] - s.center;
            Vec3 perp = rel - u * rel.dot(u);
            out.dirs.push_back(perp.normalized());
            out.radius = std::max(out.radius, perp.norm());
        }
        return out;
    }

    auto dir_at = [&](double az) { return v * std::cos(az) + w * std::sin(az); };
    auto snap = [&](double theta, int sense) {
        // next grid azimuth from theta in the given sense (+1 ccw, -1 cw)
        double best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (double g : grid)
            for (int rep = -1; rep <= 1; ++rep) {
                double cand = g + rep * 2 * M_PI;
                double d = sense > 0 ? cand - theta : theta - cand;
                if (d >= -1e-9 && d < best_d) { best_d = d; best = cand; }
            }
        return std::fmod(best + 4 * M_PI, 2 * M_PI);
    };

    for (const auto& r : rings) {
        if (r.on_axis) continue;
        std::vector<int> top, bottom, mid;
        for (int m : r.members) {
            double h = (s.pos[m] - s.center).dot(u);
            (h > s.eps ? top : (h < -s.eps ? bottom : mid)).push_back(m);
        }
        if (!top.empty() && !bottom.empty() && mid.empty()) {
            // free ring pair: twist each base onto the axial planes; the screw
            // sense points from the base toward the center
            std::set<int64_t> azset_top, azset_bot;
            double rho = 0;
            for (int m : top) {
                double t = detail::azimuth_about(u, v, w, s.pos[m] - s.center);
                azset_top.insert(int64_t(std::llround(snap(t, -1) * 1e7)));
                Vec3 rel = s.pos[m] - s.center;
                rho = std::max(rho, (rel - u * rel.dot(u)).norm());
            }
            for (int m : bottom) {
                double t = detail::azimuth_about(u, v, w, s.pos[m] - s.center);
                azset_bot.insert(int64_t(std::llround(snap(t, +1) * 1e7)));
            }
            if (azset_top != azset_bot)
                throw std::runtime_error("twisted prism bases failed to align");
            for (int64_t q : azset_top) out.dirs.push_back(dir_at(double(q) * 1e-7));
            out.radius = rho;
            if (int(out.dirs.size()) != k)
                throw std::runtime_error("twisted polygon has unexpected vertex count");
            return out;
        }
        if (!mid.empty() && top.empty() && bottom.empty()) {
            // planar free ring: choose the k-subset of axial planes the ring
            // hugs (the class with the smaller angular-offset signature)
            std::vector<double> az;
            for (int m : mid)
                az.push_back(detail::azimuth_about(u, v, w, s.pos[m] - s.center));
            auto class_dirs = [&](int offset) {
                std::vector<double> cls;
                for (size_t gi = offset; gi < grid.size(); gi += 2) cls.push_back(grid[gi]);
                return cls;
            };
            auto signature = [&](const std::vector<double>& cls) {
                std::vector<double> sig;
                for (double a : az) {
                    double best = M_PI;
                    for (double g : cls) {
                        double d = std::abs(std::fmod(a - g + 4 * M_PI, 2 * M_PI));
                        d = std::min(d, 2 * M_PI - d);
                        best = std::min(best, d);
                    }
                    sig.push_back(best);
                }
                std::sort(sig.begin(), sig.end());
                return sig;
            };
            auto c0 = class_dirs(0), c1 = class_dirs(1);
            auto chosen = detail::lex_cmp(signature(c0), signature(c1)) <= 0 ? c0 : c1;
            for (double g : chosen) out.dirs.push_back(dir_at(g));
            out.radius = r.radius;
            if (int(out.dirs.size()) != k)
                throw std::runtime_error("planar polygon has unexpected vertex count");
            return out;
        }
    }
    throw std::invalid_argument("no eligible ring for the reference polygon");
}

// ---------------------------------------------------------------------------
// Target embedding

struct EmbeddedTarget {
    Configuration points;     // expanded to one entry per robot
    Configuration positions;  // unique positions of F~
    std::vector<int> mults;
    SimilarityTransform transform;
};

namespace detail {

inline int embedding_point_fold(const Embedding& e, const PointSet& s, const Point3& p) {
    Vec3 r = p - s.center;
    if (r.norm() <= s.eps) return int(e.elements.size());
    for (const auto& ax : e.axes)
        if (r.cross(ax.direction).norm() <= s.eps) return ax.fold;
    return 1;
}

inline bool embedding_qualifies(const Embedding& e, const PointSet& f) {
    for (size_t i = 0; i < f.pos.size(); ++i)
        if (f.mult[i] % embedding_point_fold(e, f, f.pos[i]) != 0) return false;
    return true;
}

inline std::vector<double> embedding_rank_key(const Embedding& e, const Arrangement& host) {
    std::vector<double> key;
    int prin = -1;
    for (size_t i = 0; i < e.axes.size(); ++i)
        if (e.axes[i].principal) prin = int(i);
    if (prin < 0 && !e.axes.empty()) prin = 0;
    if (prin >= 0) {
        key.push_back(-double(host.axes[e.host_axes[prin]].fold));
        const Vec3& d = host.axes[e.host_axes[prin]].direction;
        key.insert(key.end(), {d.x, d.y, d.z});
    }
    for (size_t i = 0; i < e.axes.size(); ++i) {
        const Vec3& d = e.axes[i].direction;
        key.insert(key.end(), {double(e.axes[i].fold), d.x, d.y, d.z});
    }
    return key;
}

// Anchor frame (axis direction, equator reference direction) of a C1
// configuration: the axis runs to the first ordered element, the reference
// direction to the first element off that line.
inline std::pair<Vec3, Vec3> c1_anchor(const Configuration& config, const Tolerance& tol,
                                       bool common_data) {
    PointSet s = make_point_set(config, tol);
    std::vector<detail::RingInfo> rings = subgroup_rings(s, {Mat3::identity()}, {0, 0, 1});
    std::vector<std::pair<std::vector<double>, int>> keyed;
    for (size_t i = 0; i < rings.size(); ++i) {
        std::vector<double> key;
        if (rings[i].radius > s.eps) key = ring_order_key(s, rings[i], common_data);
        keyed.push_back({std::move(key), int(i)});
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        bool ca = a.first.empty(), cb = b.first.empty();
        if (ca != cb) return ca;
        int c = lex_cmp(a.first, b.first);
        if (c) return c < 0;
        return a.second < b.second;
    });
    Vec3 u{0, 0, 1};
    bool have_axis = false;
    for (const auto& [key, ri] : keyed) {
        Point3 p = s.pos[rings[ri].members[0]];
        Vec3 r = p - s.center;
        if (!have_axis) {
            if (r.norm() <= s.eps) continue;
            u = r.normalized();
            have_axis = true;
            continue;
        }
        Vec3 perp = r - u * r.dot(u);
        if (perp.norm() > s.eps) return {u, perp.normalized()};
    }
    throw std::invalid_argument("degenerate configuration: no reference frame");
}

}  // namespace detail

// Fix the image of the target pattern in a terminal configuration P:
// B(F~) = B(P), the axes of gamma(P) land on compatible axes of gamma(F~), and
// remaining rotational freedom is pinned by overlapping reference polygons.
inline EmbeddedTarget embed_target(const Configuration& P, const Pattern& F,
                                   const Tolerance& tol = {}) {
    Feasibility feas = feasible(P, F, tol);
    if (!feas.ok)
        throw std::invalid_argument("infeasible pair (blocked by " + feas.blocker->str() + ")");
    if (!psi_sym_terminal(P, tol)) throw std::invalid_argument("not a terminal configuration");

    PointSet sp = make_point_set(P, tol);
    Configuration expF = F.expanded();
    Ball bF = smallest_enclosing_ball(expF);

    EmbeddedTarget out;
    auto finish = [&](const Mat3& R, double scl) {
        out.transform.rotation = R;
        out.transform.scale = scl;
        out.transform.translation = sp.center - R * bF.center * scl;
        for (size_t i = 0; i < F.positions.size(); ++i) {
            out.positions.push_back(out.transform.apply(F.positions[i]));
            out.mults.push_back(F.mult(i));
        }
        for (size_t i = 0; i < F.positions.size(); ++i)
            for (int c = 0; c < F.mult(i); ++c) out.points.push_back(out.positions[i]);
    };

    // gathering target: every robot heads for the center
    if (bF.radius <= tol.point(sp.radius)) {
        finish(Mat3::identity(), 1.0);
        return out;
    }

    double scl = sp.radius / bF.radius;

    if (is_regular_ngon(P, tol)) {
        // the stall case: F itself must be a regular n-gon similar to P
        auto z = similar(P, expF, tol);
        if (!z) throw std::invalid_argument("infeasible pair (regular n-gon stall)");
        out.transform = *z;
        for (size_t i = 0; i < F.positions.size(); ++i) {
            out.positions.push_back(z->apply(F.positions[i]));
            out.mults.push_back(F.mult(i));
        }
        for (size_t i = 0; i < F.positions.size(); ++i)
            for (int c = 0; c < F.mult(i); ++c) out.points.push_back(out.positions[i]);
        return out;
    }

    Arrangement arrP = detect_rotation_group(P, tol);
    Arrangement arrF = detect_rotation_group(expF, tol);
    PointSet sf = make_point_set(expF, tol);

    Mat3 R = Mat3::identity();
    if (arrP.kind == GroupKind::C(1)) {
        auto [uP, dP] = detail::c1_anchor(P, tol, false);
        Vec3 uF, dF;
        if (arrF.kind == GroupKind::C(1)) {
            std::tie(uF, dF) = detail::c1_anchor(expF, tol, true);
        } else {
            // host: a maximum-fold axis of gamma(F)
            int host = 0;
            for (size_t i = 0; i < arrF.axes.size(); ++i)
                if (arrF.axes[i].fold > arrF.axes[host].fold) host = int(i);
            uF = arrF.axes[host].direction;
            auto poly = reference_polygon(expF, arrF, host, tol, true);
            dF = poly.dirs[0];
        }
        Mat3 A = Mat3::from_columns(uP, dP, uP.cross(dP));
        Mat3 B = Mat3::from_columns(uF, dF, uF.cross(dF));
        R = A * B.transposed();
    } else if (arrP.kind.is_polyhedral()) {
        // axes-to-axes alignment; orientations pin the tetrahedral case
        auto embs = enumerate_embeddings(arrP.kind, arrF);
        std::vector<const Embedding*> ok;
        for (const auto& e : embs)
            if (detail::embedding_qualifies(e, sf)) ok.push_back(&e);
        if (ok.empty()) throw std::invalid_argument("infeasible pair (no qualifying embedding)");
        std::sort(ok.begin(), ok.end(), [&](const Embedding* a, const Embedding* b) {
            return detail::lex_cmp(detail::embedding_rank_key(*a, arrF),
                                   detail::embedding_rank_key(*b, arrF)) < 0;
        });
        const Embedding& e = *ok.front();
        // rotation mapping the embedded axes (in F coords) onto arrP's axes
        int a1 = 0;
        for (size_t i = 0; i < e.axes.size(); ++i)
            if (e.axes[i].fold > e.axes[a1].fold) a1 = int(i);
        int a2 = -1;
        for (size_t i = 0; i < e.axes.size(); ++i)
            if (e.axes[i].fold != e.axes[a1].fold) { a2 = int(i); break; }
        if (a2 < 0) a2 = a1 == 0 ? 1 : 0;
        bool found = false;
        for (const auto& t1 : arrP.axes) {
            if (t1.fold != e.axes[a1].fold) continue;
            for (const auto& t2 : arrP.axes) {
                if (t2.fold != e.axes[a2].fold) continue;
                for (int s1 : {1, -1})
                    for (int s2 : {1, -1}) {
                        Vec3 p1 = t1.direction * double(s1), p2 = t2.direction * double(s2);
                        if (e.axes[a1].oriented && s1 < 0) continue;
                        if (e.axes[a2].oriented && s2 < 0) continue;
                        Vec3 f1 = e.axes[a1].direction, f2 = e.axes[a2].direction;
                        if (std::abs(p1.dot(p2) - f1.dot(f2)) > 1e-6) continue;
                        Vec3 fo = (f2 - f1 * f2.dot(f1)).normalized();
                        Vec3 po = (p2 - p1 * p2.dot(p1)).normalized();
                        Mat3 A = Mat3::from_columns(p1, po, p1.cross(po));
                        Mat3 B = Mat3::from_columns(f1, fo, f1.cross(fo));
                        Mat3 cand = A * B.transposed();
                        // verify: all embedded axes map onto arrP axes, folds and
                        // orientations preserved
                        bool all_ok = true;
                        for (const auto& ea : e.axes) {
                            Vec3 img = cand * ea.direction;
                            bool hit = false;
                            for (const auto& pa : arrP.axes) {
                                if (pa.fold != ea.fold) continue;
                                double d = pa.direction.dot(img);
                                if (ea.oriented && pa.oriented ? d > 1 - 1e-6
                                                               : std::abs(d) > 1 - 1e-6) {
                                    hit = true;
                                    break;
                                }
                            }
                            if (!hit) { all_ok = false; break; }
                        }
                        if (all_ok && !found) {
                            R = cand;
                            found = true;
                        }
                    }
            }
        }
        if (!found) throw std::runtime_error("failed to align polyhedral axes");
    } else {
        // cyclic or dihedral: principal axis to the best host axis, azimuth
        // pinned by reference polygons
        auto embs = enumerate_embeddings(arrP.kind, arrF);
        std::vector<const Embedding*> ok;
        for (const auto& e : embs)
            if (detail::embedding_qualifies(e, sf)) ok.push_back(&e);
        if (ok.empty()) throw std::invalid_argument("infeasible pair (no qualifying embedding)");
        std::sort(ok.begin(), ok.end(), [&](const Embedding* a, const Embedding* b) {
            return detail::lex_cmp(detail::embedding_rank_key(*a, arrF),
                                   detail::embedding_rank_key(*b, arrF)) < 0;
        });
        const Embedding& e = *ok.front();
        int prinP = 0;
        for (size_t i = 0; i < arrP.axes.size(); ++i)
            if (arrP.axes[i].principal) prinP = int(i);
        Vec3 uP = arrP.axes[prinP].direction;
        auto polyP = reference_polygon(P, arrP, prinP, tol, false);
        int host = e.host_axes[0];  // embedded principal is pushed first
        Vec3 uF = e.axes[0].direction;
        auto polyF = reference_polygon(expF, arrF, host, tol, true);
        Vec3 dP = polyP.dirs[0], dF = polyF.dirs[0];
        Mat3 A = Mat3::from_columns(uP, dP, uP.cross(dP));
        Mat3 B = Mat3::from_columns(uF, dF, uF.cross(dF));
        R = A * B.transposed();
    }

    finish(R, scl);

    // every symmetry of P must map F~ onto itself
    PointSet sof = make_point_set(out.points, tol);
    detail::PointGrid grid(sof);
    for (const auto& m : arrP.elements)
        if (!detail::matrix_preserves(sof, grid, m))
            throw std::runtime_error("embedded target does not respect the configuration symmetry");
    return out;
}

// ---------------------------------------------------------------------------
// Matching

struct Matching {
    std::vector<int> robot_to_target;  // index into EmbeddedTarget::points
    double total_weight = 0;
};

// Nearest-point assignment between two transitive orbits of equal size, with
// conflicts (two nearest targets per robot) resolved by the right-screw rule
// around the unique cycle axis.
inline std::vector<int> match_transitive_orbit(const std::vector<Point3>& robots,
                                               const std::vector<Point3>& targets,
                                               const Arrangement& arr, double eps) {
    size_t n = robots.size();
    if (targets.size() != n) throw std::invalid_argument("orbit size mismatch");
    std::vector<int> pick(n, -1);
    std::vector<std::vector<int>> near(n);
    for (size_t i = 0; i < n; ++i) {
        double dmin = std::numeric_limits<double>::infinity();
        for (const auto& t : targets) dmin = std::min(dmin, dist(robots[i], t));
        for (size_t j = 0; j < n; ++j)
            if (dist(robots[i], targets[j]) <= dmin + eps) near[i].push_back(int(j));
        if (near[i].size() > 2)
            throw std::runtime_error("matching conflict exceeds the two-nearest structure");
    }
    for (size_t i = 0; i < n; ++i) {
        if (near[i].size() == 1) {
            pick[i] = near[i][0];
            continue;
        }
        // two nearest targets: resolve around the cycle axis
        const Point3 &f1 = targets[near[i][0]], &f2 = targets[near[i][1]];
        const Vec3 r = robots[i] - arr.center;
        const Axis* cycle_axis = nullptr;
        for (const auto& ax : arr.axes) {
            Vec3 a = ax.direction;
            Vec3 g1 = f1 - arr.center, g2 = f2 - arr.center;
            double h1 = g1.dot(a), h2 = g2.dot(a);
            double rho1 = (g1 - a * h1).norm(), rho2 = (g2 - a * h2).norm();
            if (std::abs(h1 - h2) > 4 * eps || std::abs(rho1 - rho2) > 4 * eps) continue;
            if (rho1 <= 4 * eps) continue;
            if ((r - a * r.dot(a)).norm() <= 4 * eps) continue;
            cycle_axis = &ax;
            break;
        }
        if (!cycle_axis) throw std::runtime_error("no cycle axis for a matching conflict");
        Vec3 w = cycle_axis->direction;
        double hbar = (f1 - arr.center).dot(w);
        Vec3 vpos = hbar > 4 * eps ? -w : w;  // positive direction toward the center
        Vec3 rp = (r - vpos * r.dot(vpos)).normalized();
        auto signed_az = [&](const Point3& f) {
            Vec3 g = f - arr.center;
            Vec3 fp = (g - vpos * g.dot(vpos)).normalized();
            return std::atan2(vpos.cross(rp).dot(fp), rp.dot(fp));
        };
        pick[i] = signed_az(f1) < signed_az(f2) ? near[i][0] : near[i][1];
    }
    std::vector<int> seen(n, 0);
    for (size_t i = 0; i < n; ++i) {
        if (pick[i] < 0 || seen[pick[i]]++)
            throw std::runtime_error("matching is not a bijection");
    }
    return pick;
}

// Perfect matching between a terminal configuration and the embedded target:
// orbits are paired in the agreed order, each robot heads for its nearest
// point of the paired target orbit.
inline Matching match_assign(const Configuration& P, const EmbeddedTarget& Ft,
                             const Tolerance& tol = {}) {
    Arrangement arrP = detect_rotation_group(P, tol);
    size_t n = P.size();
    if (Ft.points.size() != n) throw std::invalid_argument("size mismatch");

    Configuration uni = P;
    uni.insert(uni.end(), Ft.points.begin(), Ft.points.end());
    PointSet us = make_point_set(uni, tol);
    detail::PointGrid ugrid(us);
    for (const auto& m : arrP.elements)
        if (!detail::matrix_preserves(us, ugrid, m))
            throw std::invalid_argument("gamma(P) does not act on P union F~");

    auto key_of_position = [&](const Point3& p) -> LocalView {
        if (dist(p, us.center) <= us.eps) return {};
        return detail::local_view_of(us, p);
    };
    auto key_less = [](const LocalView& a, const LocalView& b) {
        if (a.empty() != b.empty()) return a.empty();
        return detail::lex_cmp(a, b) < 0;
    };

    // P orbits
    OrbitDecomposition decP = decompose_unordered(P, arrP, tol);
    std::vector<std::pair<LocalView, int>> pkeys;
    for (size_t i = 0; i < decP.orbits.size(); ++i) {
        int rep = *std::min_element(decP.orbits[i].begin(), decP.orbits[i].end());
        pkeys.push_back({key_of_position(P[rep]), int(i)});
    }
    std::stable_sort(pkeys.begin(), pkeys.end(),
                     [&](const auto& a, const auto& b) { return key_less(a.first, b.first); });

    // F components: position orbits split by capacity
    struct Component {
        std::vector<int> positions;  // indices into Ft.positions
        int capacity = 1;
        LocalView key;
    };
    std::vector<Component> comps;
    {
        OrbitDecomposition decF = decompose_unordered(Ft.positions, arrP, tol);
        for (size_t oi = 0; oi < decF.orbits.size(); ++oi) {
            const auto& orb = decF.orbits[oi];
            int m = Ft.mults[orb[0]];
            int fold = int(arrP.elements.size()) / int(orb.size());
            if (m % fold != 0)
                throw std::runtime_error("target multiplicities incompatible with the orbit fold");
            Component c;
            c.positions = orb;
            c.capacity = fold;
            c.key = key_of_position(Ft.positions[orb[0]]);
            for (int copy = 0; copy < m / fold; ++copy) comps.push_back(c);
        }
        std::stable_sort(comps.begin(), comps.end(),
                         [&](const Component& a, const Component& b) {
                             return key_less(a.key, b.key);
                         });
    }
    if (comps.size() != pkeys.size())
        throw std::runtime_error("orbit count mismatch between P and the target");

    // expanded slot bookkeeping: position index -> expanded point indices
    std::vector<std::vector<int>> slots(Ft.positions.size());
    {
        int k = 0;
        for (size_t i = 0; i < Ft.positions.size(); ++i)
            for (int c = 0; c < Ft.mults[i]; ++c) slots[i].push_back(k++);
    }

    Matching M;
    M.robot_to_target.assign(n, -1);
    for (size_t rank = 0; rank < pkeys.size(); ++rank) {
        const auto& orbit = decP.orbits[pkeys[rank].second];
        const Component& comp = comps[rank];
        if (orbit.size() != comp.positions.size() * size_t(comp.capacity))
            throw std::runtime_error("orbit/component size mismatch");
        if (comp.capacity == 1) {
            std::vector<Point3> robots, targets;
            for (int i : orbit) robots.push_back(P[i]);
            for (int j : comp.positions) targets.push_back(Ft.positions[j]);
            auto pick = match_transitive_orbit(robots, targets, arrP, us.eps * 4);
            for (size_t i = 0; i < orbit.size(); ++i) {
                int pos_idx = comp.positions[pick[i]];
                int slot = slots[pos_idx].back();
                slots[pos_idx].pop_back();
                M.robot_to_target[orbit[i]] = slot;
                M.total_weight += dist(P[orbit[i]], Ft.positions[pos_idx]);
            }
        } else {
            // capacity > 1: each robot gathers at its nearest position
            std::vector<int> load(comp.positions.size(), 0);
            std::vector<int> choice(orbit.size(), -1);
            bool overflow = false;
            for (size_t i = 0; i < orbit.size(); ++i) {
                double dmin = std::numeric_limits<double>::infinity();
                int best = -1;
                for (size_t j = 0; j < comp.positions.size(); ++j) {
                    double d = dist(P[orbit[i]], Ft.positions[comp.positions[j]]);
                    if (d < dmin) { dmin = d; best = int(j); }
                }
                choice[i] = best;
                if (++load[best] > comp.capacity) overflow = true;
            }
            if (overflow) {
                // minimum-weight assignment onto replicated slots
                std::vector<std::vector<double>> cost(orbit.size(),
                                                      std::vector<double>(orbit.size()));
                std::vector<int> slot_pos;
                for (size_t j = 0; j < comp.positions.size(); ++j)
                    for (int c = 0; c < comp.capacity; ++c) slot_pos.push_back(int(j));
                for (size_t i = 0; i < orbit.size(); ++i)
                    for (size_t j = 0; j < slot_pos.size(); ++j)
                        cost[i][j] = dist(P[orbit[i]], Ft.positions[comp.positions[slot_pos[j]]]);
                std::vector<int> asg;
                detail::hungarian_min_weight(cost, &asg);
                for (size_t i = 0; i < orbit.size(); ++i) choice[i] = slot_pos[asg[i]];
            }
            for (size_t i = 0; i < orbit.size(); ++i) {
                int pos_idx = comp.positions[choice[i]];
                int slot = slots[pos_idx].back();
                slots[pos_idx].pop_back();
                M.robot_to_target[orbit[i]] = slot;
                M.total_weight += dist(P[orbit[i]], Ft.positions[pos_idx]);
            }
        }
    }
    return M;
}

// ---------------------------------------------------------------------------
// psi_pf

// One step of the pattern formation algorithm: run psi_sym until terminal,
// then jump to the matched points of the embedded target. In permissive mode
// an infeasible pair stalls instead of throwing.
inline StepResult psi_pf_step(const Configuration& P, const Pattern& F, uint64_t seed,
                              const Tolerance& tol = {}, bool permissive = false) {
    if (!permissive) {
        Feasibility feas = feasible(P, F, tol);
        if (!feas.ok)
            throw std::invalid_argument("infeasible pair (blocked by " + feas.blocker->str() +
                                        ")");
    }
    if (!psi_sym_terminal(P, tol)) return psi_sym_step(P, seed, tol);
    StepResult out;
    out.moves = MoveSet(P.size());
    try {
        EmbeddedTarget Ft = embed_target(P, F, tol);
        Matching M = match_assign(P, Ft, tol);
        for (size_t i = 0; i < P.size(); ++i) {
            const Point3& d = Ft.points[M.robot_to_target[i]];
            if (dist(d, P[i]) > tol.point(1.0)) out.moves.dest[i] = d;
        }
        out.procedure = Procedure::FormPattern;
    } catch (const std::exception&) {
        if (!permissive) throw;
        out.procedure = Procedure::None;  // stall: the pair cannot be embedded
    }
    return out;
}

}  // namespace swarm3d
