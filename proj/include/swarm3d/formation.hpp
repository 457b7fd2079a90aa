// Formation algorithms: feasibility, the go-to-center symmetry breaker for
// transitive polyhedral configurations, the symmetry-breaking algorithm
// psi_sym, target embedding, matching, and the pattern-formation algorithm
// psi_pf.
#pragma once

#include "frames.hpp"

namespace swarm3d {

// Per-robot destinations; absent means stay.
struct MoveSet {
    std::vector<std::optional<Point3>> dest;

    explicit MoveSet(size_t n = 0) : dest(n) {}
    bool anyone_moves() const {
        for (const auto& d : dest)
            if (d) return true;
        return false;
    }
    Configuration apply(const Configuration& P) const {
        Configuration out = P;
        for (size_t i = 0; i < P.size() && i < dest.size(); ++i)
            if (dest[i]) out[i] = *dest[i];
        return out;
    }
};

enum class Procedure { None, Expand, Shrink, GoToSphere, GoToCorner, GoToCenter, FormPattern };

inline const char* procedure_name(Procedure p) {
    switch (p) {
        case Procedure::Expand: return "expand";
        case Procedure::Shrink: return "shrink";
        case Procedure::GoToSphere: return "go-to-sphere";
        case Procedure::GoToCorner: return "go-to-corner";
        case Procedure::GoToCenter: return "go-to-center";
        case Procedure::FormPattern: return "form";
        default: return "none";
    }
}

struct StepResult {
    MoveSet moves;
    int moved_orbit = -1;
    Procedure procedure = Procedure::None;
};

// Target pattern, possibly with multiplicities.
struct Pattern {
    Configuration positions;
    std::vector<int> multiplicities;  // empty means all 1

    static Pattern of(Configuration pts) { return {std::move(pts), {}}; }
    int mult(size_t i) const {
        return multiplicities.empty() ? 1 : multiplicities[i];
    }
    size_t total() const {
        if (multiplicities.empty()) return positions.size();
        size_t t = 0;
        for (int m : multiplicities) t += size_t(m);
        return t;
    }
    Configuration expanded() const {
        Configuration out;
        for (size_t i = 0; i < positions.size(); ++i)
            for (int c = 0; c < mult(i); ++c) out.push_back(positions[i]);
        return out;
    }
};

// ---------------------------------------------------------------------------
// Feasibility (the formability characterization)

struct Feasibility {
    bool ok = false;
    std::optional<GroupKind> blocker;
};

inline SymmetricitySet pattern_symmetricity(const Pattern& F, const Tolerance& tol = {}) {
    // gathering targets (all positions coincident) admit every G whose order
    // divides the multiplicity
    Configuration exp = F.expanded();
    if (exp.size() < 3) throw std::invalid_argument("need at least 3 points");
    bool coincident = true;
    Ball b = smallest_enclosing_ball(exp);
    for (const auto& p : exp) coincident &= dist(p, b.center) <= tol.point(1.0);
    if (coincident) {
        int n = int(exp.size());
        std::vector<GroupKind> q{GroupKind::C(1)};
        for (int k = 2; k <= n; ++k)
            if (n % k == 0) q.push_back(GroupKind::C(k));
        for (int l = 2; 2 * l <= n; ++l)
            if (n % (2 * l) == 0) q.push_back(GroupKind::D(l));
        if (n % 12 == 0) q.push_back(GroupKind::T());
        if (n % 24 == 0) q.push_back(GroupKind::O());
        if (n % 60 == 0) q.push_back(GroupKind::I());
        return detail::reduce_to_maximal(std::move(q));
    }
    if (F.multiplicities.empty()) return symmetricity_multiset(F.positions, tol);
    return symmetricity_multiset(F.positions, F.multiplicities, tol);
}

// P can form F iff every maximal element of rho(P) belongs to rho(F).
inline Feasibility feasible(const Configuration& P, const Pattern& F, const Tolerance& tol = {}) {
    if (P.size() != F.total()) throw std::invalid_argument("size mismatch");
    SymmetricitySet sp = symmetricity(P, tol);
    SymmetricitySet sf = pattern_symmetricity(F, tol);
    for (const auto& m : sp.maximal)
        if (!sf.contains(m)) return {false, m};
    return {true, std::nullopt};
}

// ---------------------------------------------------------------------------
// Per-robot deterministic choice streams keyed by the robot's local view, so
// robots with identical views make identical local choices.

namespace detail {

inline uint64_t view_hash(const LocalView& v) {
    uint64_t h = 0x51a7e5ULL;
    for (double x : v) h = hash_mix(h, uint64_t(int64_t(std::llround(x * 1e6))));
    return h;
}

struct RobotFrame {
    Vec3 north, v, w;  // right-handed; v points at the meridian
    uint64_t key;
};

// Canonical frame of robot `self` derived from its local view.
inline RobotFrame robot_view_frame(const PointSet& s, const Point3& self) {
    LocalView view = local_view_of(s, self);
    Vec3 north = (self - s.center).normalized();
    // recover the meridian: the off-axis point matching the view's second triple
    double scale = std::max(s.radius, 1e-300);
    double want_amp = view[3], want_lat = view[5];
    Vec3 best_v{0, 0, 0};
    for (size_t i = 0; i < s.pos.size(); ++i) {
        Vec3 r = s.pos[i] - s.center;
        if (r.cross(north).norm() <= s.eps) continue;
        double amp = r.norm() / scale;
        double lat = std::acos(std::clamp(r.normalized().dot(north), -1.0, 1.0));
        if (std::abs(amp - want_amp) > 1e-7 || std::abs(lat - want_lat) > 1e-7) continue;
        Vec3 v = (r - north * r.dot(north)).normalized();
        // candidate meridian; accept the first matching the minimal view
        best_v = v;
        break;
    }
    RobotFrame f;
    f.north = north;
    f.v = best_v;
    f.w = north.cross(best_v);
    f.key = view_hash(view);
    return f;
}

inline RngStream choice_stream(uint64_t seed, uint64_t robot_key, uint64_t salt) {
    return RngStream(hash_mix(hash_mix(seed, robot_key), salt));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Faces of the convex (semi-)regular polyhedra handled by go-to-center

namespace detail {

struct FaceSet {
    std::vector<std::vector<int>> faces;  // vertex indices per face
    std::vector<Point3> centers;
    double edge_length = 0;
};

inline FaceSet polyhedron_faces(const Configuration& pts, double eps) {
    size_t n = pts.size();
    FaceSet out;
    double lmin = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) lmin = std::min(lmin, dist(pts[i], pts[j]));
    out.edge_length = lmin;
    std::vector<std::vector<int>> adj(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (i != j && dist(pts[i], pts[j]) <= lmin + eps) adj[i].push_back(int(j));

    Point3 centroid{0, 0, 0};
    for (const auto& p : pts) centroid += p;
    centroid = centroid / double(n);

    std::vector<Vec3> normals;
    for (size_t a = 0; a < n; ++a)
        for (int b : adj[a])
            for (int c : adj[b]) {
                if (c == int(a)) continue;
                Vec3 nrm = (pts[b] - pts[a]).cross(pts[c] - pts[a]);
                double nn = nrm.norm();
                if (nn < 1e-12) continue;
                nrm = nrm / nn;
                if (nrm.dot(pts[a] - centroid) < 0) nrm = -nrm;
                double d0 = nrm.dot(pts[a]);
                bool supporting = true;
                std::vector<int> on_plane;
                for (size_t k = 0; k < n; ++k) {
                    double d = nrm.dot(pts[k]) - d0;
                    if (d > eps) { supporting = false; break; }
                    if (d > -eps) on_plane.push_back(int(k));
                }
                if (!supporting || on_plane.size() < 3) continue;
                bool dup = false;
                for (const auto& fn : normals)
                    if (fn.dot(nrm) > 1.0 - 1e-9) { dup = true; break; }
                if (dup) continue;
                normals.push_back(nrm);
                Point3 c0{0, 0, 0};
                for (int k : on_plane) c0 += pts[k];
                out.faces.push_back(on_plane);
                out.centers.push_back(c0 / double(on_plane.size()));
            }
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// go-to-center (symmetry breaking for a transitive polyhedral configuration)

namespace detail {

// Moves for the robots listed in `members` whose positions form U_{G,mu}
// (G in {T,O,I}, mu > 1). Face selection is seed-driven per robot view.
inline void go_to_center_moves(const Configuration& P, const std::vector<int>& members,
                               uint64_t seed, const Tolerance& tol, MoveSet& moves) {
    Configuration orbit_pts;
    for (int i : members) orbit_pts.push_back(P[i]);
    Arrangement g = detect_rotation_group(orbit_pts, tol);
    if (!g.kind.is_polyhedral()) throw std::invalid_argument("not transitive 3D orbit");
    OrbitDecomposition dec = decompose_unordered(orbit_pts, g, tol);
    if (dec.orbits.size() != 1 || dec.foldings[0] <= 1)
        throw std::invalid_argument("not transitive 3D orbit");

    PointSet full = make_point_set(P, tol);
    PointSet os = make_point_set(orbit_pts, tol);
    FaceSet fs = polyhedron_faces(orbit_pts, os.eps * 8 + os.radius * 1e-9);
    double epsilon = fs.edge_length / 100.0;

    // cuboctahedron: triangle faces only; icosidodecahedron: pentagon faces only
    int face_size_filter = 0;
    if (g.kind == GroupKind::O() && dec.foldings[0] == 2) face_size_filter = 3;
    if (g.kind == GroupKind::I() && dec.foldings[0] == 2) face_size_filter = 5;

    for (size_t mi = 0; mi < members.size(); ++mi) {
        int ri = members[mi];
        std::vector<int> adjacent;
        for (size_t f = 0; f < fs.faces.size(); ++f) {
            if (face_size_filter && int(fs.faces[f].size()) != face_size_filter) continue;
            for (int v : fs.faces[f])
                if (v == int(mi)) { adjacent.push_back(int(f)); break; }
        }
        if (adjacent.empty()) throw std::runtime_error("robot has no eligible adjacent face");
        RobotFrame rf = robot_view_frame(full, P[ri]);
        // canonical face order in the robot's own frame
        std::vector<std::pair<std::array<double, 2>, int>> keyed;
        for (int f : adjacent) {
            Vec3 r = fs.centers[f] - os.center;
            double lat = std::acos(std::clamp(r.normalized().dot(rf.north), -1.0, 1.0));
            Vec3 perp = r - rf.north * r.dot(rf.north);
            double lon = perp.norm() > 1e-12
                             ? std::fmod(std::atan2(perp.dot(rf.w), perp.dot(rf.v)) + 2 * M_PI,
                                         2 * M_PI)
                             : 0.0;
            keyed.push_back({{lat, lon}, f});
        }
        std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
            if (eps_cmp(a.first[0], b.first[0])) return a.first[0] < b.first[0];
            if (eps_cmp(a.first[1], b.first[1])) return a.first[1] < b.first[1];
            return a.second < b.second;
        });
        RngStream st = choice_stream(seed, rf.key, 0xfacesULL);
        int pick = keyed[st.below(keyed.size())].second;
        Point3 c = fs.centers[pick];
        moves.dest[ri] = c + (P[ri] - c).normalized() * epsilon;
    }
}

}  // namespace detail

// One step of the go-to-center algorithm on a configuration forming one of the
// seven transitive polyhedra U_{G,mu}, G in {T,O,I}, mu > 1. Each robot stops
// epsilon = edge/100 before the center of a chosen adjacent face.
inline MoveSet go_to_center_step(const Configuration& P, uint64_t seed,
                                 const Tolerance& tol = {}) {
    MoveSet moves(P.size());
    std::vector<int> all(P.size());
    std::iota(all.begin(), all.end(), 0);
    detail::go_to_center_moves(P, all, seed, tol, moves);
    return moves;
}

// ---------------------------------------------------------------------------
// Regular polygons and psi_sym terminality

inline bool is_regular_ngon(const Configuration& P, const Tolerance& tol = {}) {
    size_t n = P.size();
    if (n < 3) return false;
    PointSet s = make_point_set(P, tol);
    if (s.pos.size() != n) return false;
    for (const auto& p : s.pos)
        if (std::abs(dist(p, s.center) - s.radius) > s.eps) return false;
    Vec3 nrm{0, 0, 0};
    for (size_t i = 1; i + 1 < n; ++i) {
        Vec3 c = (s.pos[i] - s.pos[0]).cross(s.pos[i + 1] - s.pos[0]);
        if (c.norm() > nrm.norm()) nrm = c;
    }
    if (nrm.norm() < 1e-12) return false;
    nrm = nrm.normalized();
    for (const auto& p : s.pos)
        if (std::abs((p - s.center).dot(nrm)) > s.eps) return false;
    Vec3 v = (s.pos[0] - s.center).normalized();
    Vec3 w = nrm.cross(v);
    std::vector<double> az;
    for (const auto& p : s.pos) {
        Vec3 r = p - s.center;
        az.push_back(std::fmod(std::atan2(r.dot(w), r.dot(v)) + 2 * M_PI, 2 * M_PI));
    }
    std::sort(az.begin(), az.end());
    double ang_eps = 8 * s.eps / std::max(s.radius, 1e-300);
    for (size_t i = 0; i < n; ++i) {
        double gap = (i + 1 < n ? az[i + 1] : az[0] + 2 * M_PI) - az[i];
        if (std::abs(gap - 2 * M_PI / n) > ang_eps) return false;
    }
    return true;
}

// Terminal configurations of psi_sym: gamma = C1, a regular n-gon, or no
// robot on any rotation axis.
inline bool psi_sym_terminal(const Configuration& P, const Tolerance& tol = {}) {
    if (P.size() < 3) throw std::invalid_argument("need at least 3 points");
    Arrangement arr = detect_rotation_group(P, tol);
    if (!arr.kind.finite())
        throw std::invalid_argument("collinear configuration unsupported");
    if (arr.kind == GroupKind::C(1)) return true;
    if (is_regular_ngon(P, tol)) return true;
    for (const auto& ax : arr.axes)
        if (ax.occupied) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Reference prism (go-to-corner destinations)

// Corners of the prism inscribed in Ball(b, rad(inner)/2) for a dihedral
// arrangement: the cylinder of radius rad(inner)/4 parallel to the principal
// axis, cut by the planes spanned by the principal and each secondary axis.
// For D_k the bases are regular 2k-gons.
inline std::vector<Point3> reference_prism(const Arrangement& arr, const Ball& inner) {
    if (!arr.kind.is_dihedral()) throw std::invalid_argument("reference prism needs a dihedral group");
    const Axis* prin = arr.principal_axis();
    if (!prin) throw std::invalid_argument("reference prism needs a distinguished principal axis");
    double rc = inner.radius / 4.0;
    double rs = inner.radius / 2.0;
    double h = std::sqrt(std::max(rs * rs - rc * rc, 0.0));
    Vec3 u = prin->direction;
    std::vector<Point3> corners;
    for (const auto& ax : arr.axes) {
        if (ax.principal) continue;
        for (int sgn : {1, -1}) {
            Vec3 d = ax.direction * double(sgn);
            corners.push_back(inner.center + d * rc + u * h);
            corners.push_back(inner.center + d * rc - u * h);
        }
    }
    return corners;
}

// ---------------------------------------------------------------------------
// psi_sym

namespace detail {

inline bool point_on_line(const Point3& p, const Point3& b, const Vec3& u, double eps) {
    return (p - b).cross(u).norm() <= eps;
}

// Is every point of the orbit on an axis of the given predicate?
template <typename Pred>
inline bool orbit_on_axes(const Configuration& P, const std::vector<int>& orbit,
                          const Arrangement& arr, double eps, Pred pred) {
    for (int i : orbit) {
        bool on = false;
        for (const auto& ax : arr.axes)
            if (pred(ax) && point_on_line(P[i], arr.center, ax.direction, eps)) { on = true; break; }
        if (!on) return false;
    }
    return true;
}

inline Point3 sphere_escape_point(const PointSet& s, const Arrangement& arr, const Vec3& north,
                                  const Vec3& v, const Vec3& w, RngStream& st) {
    double inner = std::numeric_limits<double>::infinity();
    for (const auto& p : s.pos) inner = std::min(inner, dist(p, s.center));
    double r = inner / 2.0;
    bool flat_group = arr.kind.is_cyclic() || arr.kind.is_dihedral();
    const double guard = 1e-3;  // angular clearance from axes and the equator
    for (int tries = 0; tries < 4096; ++tries) {
        double lon = st.uniform(0, 2 * M_PI);
        double lat = std::acos(1 - 2 * st.uniform());
        Vec3 d = north * std::cos(lat) +
                 (v * std::cos(lon) + w * std::sin(lon)) * std::sin(lat);
        bool ok = true;
        for (const auto& ax : arr.axes) {
            double c = std::abs(d.dot(ax.direction));
            if (std::acos(std::clamp(c, 0.0, 1.0)) < guard) { ok = false; break; }
        }
        if (ok && flat_group) {
            const Axis* prin = arr.principal_axis();
            Vec3 pu = prin ? prin->direction : north;
            if (std::abs(std::asin(std::clamp(d.dot(pu), -1.0, 1.0))) < guard) ok = false;
        }
        if (ok) return s.center + d * r;
    }
    throw std::runtime_error("go-to-sphere could not find a clear destination");
}

}  // namespace detail

// One step of psi_sym on a non-terminal configuration. Exactly one
// gamma-orbit moves, selected by the P_ip / P_is / P_imax rules.
inline StepResult psi_sym_step(const Configuration& P, uint64_t seed,
                               const Tolerance& tol = {}) {
    if (psi_sym_terminal(P, tol)) throw std::invalid_argument("already terminal");
    Arrangement arr = detect_rotation_group(P, tol);
    PointSet s = make_point_set(P, tol);
    OrbitDecomposition dec = decompose(P, arr, tol);
    StepResult out;
    out.moves = MoveSet(P.size());

    auto orbit_index_of_point = [&](int pi) {
        return dec.orbit_of(pi);
    };

    // center robot leaves first (its orbit is the singleton at b(P))
    int center_robot = -1;
    for (size_t i = 0; i < P.size(); ++i)
        if (dist(P[i], s.center) <= s.eps) { center_robot = int(i); break; }
    if (center_robot >= 0) {
        const Axis* anchor = nullptr;
        for (const auto& ax : arr.axes)
            if (!anchor || ax.fold > anchor->fold) anchor = &ax;
        Vec3 north = anchor ? anchor->direction : Vec3{0, 0, 1};
        // meridian from the innermost off-axis point
        Vec3 v{1, 0, 0};
        double best = std::numeric_limits<double>::infinity();
        for (const auto& p : s.pos) {
            Vec3 r = p - s.center;
            if (r.cross(north).norm() <= s.eps) continue;
            if (r.norm() < best) {
                best = r.norm();
                v = (r - north * r.dot(north)).normalized();
            }
        }
        RngStream st = detail::choice_stream(seed, 0xce17e6ULL, 0x5fe7eULL);
        out.moves.dest[center_robot] =
            detail::sphere_escape_point(s, arr, north, v, north.cross(v), st);
        out.moved_orbit = orbit_index_of_point(center_robot);
        out.procedure = Procedure::GoToSphere;
        return out;
    }

    // Expand guard: keep at least one whole orbit alone on B(P)
    if (!arr.kind.is_cyclic()) {
        std::vector<int> on_ball;
        for (size_t i = 0; i < P.size(); ++i)
            if (std::abs(dist(P[i], s.center) - s.radius) <= s.eps) on_ball.push_back(int(i));
        std::vector<int> last = dec.orbits.back();
        std::sort(last.begin(), last.end());
        if (on_ball != last) {
            double inner = innermost_empty_ball(P, s.center).radius;
            for (int i : dec.orbits.back())
                out.moves.dest[i] = s.center + (P[i] - s.center).normalized() * (2.0 * inner);
            out.moved_orbit = int(dec.orbits.size()) - 1;
            out.procedure = Procedure::Expand;
            return out;
        }
    }

    auto shrink_orbit = [&](int oi, const Configuration& Q) {
        Ball bq = smallest_enclosing_ball(Q);
        double target = innermost_empty_ball(Q, bq.center).radius / 2.0;
        for (int i : dec.orbits[oi]) {
            Vec3 r = P[i] - bq.center;
            Vec3 d = r.norm() > s.eps ? r.normalized() : arr.axes[0].direction;
            out.moves.dest[i] = bq.center + d * target;
        }
        out.moved_orbit = oi;
        out.procedure = Procedure::Shrink;
    };

    auto first_orbit_on = [&](auto pred) -> int {
        for (size_t oi = 0; oi < dec.orbits.size(); ++oi)
            if (detail::orbit_on_axes(P, dec.orbits[oi], arr, s.eps, pred)) return int(oi);
        return -1;
    };

    if (arr.kind.is_cyclic()) {
        int ip = first_orbit_on([](const Axis& a) { return a.principal; });
        if (ip < 0) throw std::runtime_error("psi_sym: no occupied axis in non-terminal state");
        if (ip != 0) {
            Configuration rest;
            for (size_t i = 0; i < P.size(); ++i) {
                int oi = dec.orbit_of(int(i));
                if (oi != ip) rest.push_back(P[i]);
            }
            shrink_orbit(ip, rest);
        } else {
            // the innermost on-axis robot leaves the axis
            int ri = dec.orbits[0][0];
            detail::RobotFrame rf = detail::robot_view_frame(s, P[ri]);
            RngStream st = detail::choice_stream(seed, rf.key, 0x5fe7eULL);
            out.moves.dest[ri] =
                detail::sphere_escape_point(s, arr, rf.north, rf.v, rf.w, st);
            out.moved_orbit = 0;
            out.procedure = Procedure::GoToSphere;
        }
        return out;
    }

    if (arr.kind.is_dihedral()) {
        int ip = first_orbit_on([](const Axis& a) { return a.principal; });
        int is = first_orbit_on([](const Axis& a) { return !a.principal; });
        int chosen = -1;
        if (ip >= 0) chosen = ip;
        else if (is >= 0 && dec.orbits[is].size() != P.size()) chosen = is;
        if (chosen < 0) throw std::runtime_error("psi_sym: no occupied axis in non-terminal state");
        if (chosen != 0) {
            shrink_orbit(chosen, P);
        } else {
            Ball inner = innermost_empty_ball(P, s.center);
            auto corners = reference_prism(arr, inner);
            for (int ri : dec.orbits[chosen]) {
                double dmin = std::numeric_limits<double>::infinity();
                for (const auto& c : corners) dmin = std::min(dmin, dist(P[ri], c));
                std::vector<Point3> near;
                for (const auto& c : corners)
                    if (dist(P[ri], c) <= dmin + s.eps) near.push_back(c);
                detail::RobotFrame rf = detail::robot_view_frame(s, P[ri]);
                std::sort(near.begin(), near.end(), [&](const Point3& a, const Point3& b) {
                    Vec3 ra = a - s.center, rb = b - s.center;
                    double la = std::acos(std::clamp(ra.normalized().dot(rf.north), -1.0, 1.0));
                    double lb = std::acos(std::clamp(rb.normalized().dot(rf.north), -1.0, 1.0));
                    if (detail::eps_cmp(la, lb)) return la < lb;
                    auto lon = [&](const Vec3& r) {
                        Vec3 perp = r - rf.north * r.dot(rf.north);
                        if (perp.norm() < 1e-12) return 0.0;
                        return std::fmod(std::atan2(perp.dot(rf.w), perp.dot(rf.v)) + 2 * M_PI,
                                         2 * M_PI);
                    };
                    return lon(ra) < lon(rb);
                });
                RngStream st = detail::choice_stream(seed, rf.key, 0xc07e7ULL);
                out.moves.dest[ri] = near[st.below(near.size())];
            }
            out.moved_orbit = chosen;
            out.procedure = Procedure::GoToCorner;
        }
        return out;
    }

    // polyhedral: the orbit on the occupied axes of maximum fold
    int max_fold = 0;
    for (const auto& ax : arr.axes)
        if (ax.occupied) max_fold = std::max(max_fold, ax.fold);
    int imax = first_orbit_on([&](const Axis& a) { return a.fold == max_fold; });
    if (imax < 0) throw std::runtime_error("psi_sym: no occupied axis in non-terminal state");
    if (imax != 0) {
        shrink_orbit(imax, P);
    } else {
        detail::go_to_center_moves(P, dec.orbits[imax], seed, tol, out.moves);
        out.moved_orbit = imax;
        out.procedure = Procedure::GoToCenter;
    }
    return out;
}

}  // namespace swarm3d

#include "formation_embed.hpp"
