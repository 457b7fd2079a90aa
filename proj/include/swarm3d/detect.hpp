// Rotation-group detection for point multisets: gamma(P) with its concrete
// arrangement of axes, occupancy flags, and canonical axis orientations.
#pragma once

#include "groups.hpp"

namespace swarm3d {

// ---------------------------------------------------------------------------
// Point multisets with collapsed duplicates

struct PointSet {
    std::vector<Point3> pos;     // unique positions
    std::vector<int> mult;       // multiplicity per position
    std::vector<int> owner;      // original index -> unique index
    Point3 center{0, 0, 0};      // b(P)
    double radius = 0.0;         // rad(B(P))
    double eps = 0.0;            // point tolerance at this scale

    int total() const {
        int t = 0;
        for (int m : mult) t += m;
        return t;
    }
    bool has_multiplicity() const {
        for (int m : mult)
            if (m > 1) return true;
        return false;
    }
};

inline PointSet make_point_set(const Configuration& P, const Tolerance& tol = {}) {
    if (P.size() < 1) throw std::invalid_argument("empty point set");
    for (const auto& p : P)
        if (!p.finite()) throw std::invalid_argument("non-finite point");
    PointSet s;
    Ball b = smallest_enclosing_ball(P);
    s.center = b.center;
    s.radius = b.radius;
    s.eps = tol.point(b.radius);
    s.owner.resize(P.size());
    for (size_t i = 0; i < P.size(); ++i) {
        int hit = -1;
        for (size_t j = 0; j < s.pos.size(); ++j)
            if (dist(P[i], s.pos[j]) <= s.eps) { hit = int(j); break; }
        if (hit < 0) {
            s.pos.push_back(P[i]);
            s.mult.push_back(1);
            s.owner[i] = int(s.pos.size()) - 1;
        } else {
            s.mult[hit]++;
            s.owner[i] = hit;
        }
    }
    return s;
}

namespace detail {

// Cheap nearest-position lookup on a uniform grid keyed by truncated coords.
struct PointGrid {
    double cell;
    Point3 origin;
    std::unordered_map<uint64_t, std::vector<int>> buckets;
    const PointSet* ps;

    explicit PointGrid(const PointSet& s) : ps(&s) {
        cell = std::max(s.eps * 8.0, s.radius * 1e-7 + s.eps);
        origin = s.center - Vec3{s.radius * 2, s.radius * 2, s.radius * 2};
        for (size_t i = 0; i < s.pos.size(); ++i) buckets[key(s.pos[i])].push_back(int(i));
    }
    uint64_t key(const Point3& p) const {
        auto ix = int64_t(std::floor((p.x - origin.x) / cell));
        auto iy = int64_t(std::floor((p.y - origin.y) / cell));
        auto iz = int64_t(std::floor((p.z - origin.z) / cell));
        uint64_t h = hash_mix(hash_mix(hash_mix(0xabcdULL, uint64_t(ix)), uint64_t(iy)),
                              uint64_t(iz));
        return h;
    }
    // index of a position within eps of q, or -1
    int find(const Point3& q, double eps) const {
        for (int dx = -1; dx <= 1; ++dx)
            for (int dy = -1; dy <= 1; ++dy)
                for (int dz = -1; dz <= 1; ++dz) {
                    Point3 probe{q.x + dx * cell, q.y + dy * cell, q.z + dz * cell};
                    auto it = buckets.find(key(probe));
                    if (it == buckets.end()) continue;
                    for (int i : it->second)
                        if (dist(q, ps->pos[i]) <= eps) return i;
                }
        return -1;
    }
};

// Does rotation by `angle` about the axis (center, u) map the multiset to itself?
inline bool rotation_preserves(const PointSet& s, const PointGrid& grid, const Vec3& u,
                               double angle) {
    Mat3 R = rotation_about(u, angle);
    for (size_t i = 0; i < s.pos.size(); ++i) {
        Point3 q = apply_about(R, s.pos[i], s.center);
        int j = grid.find(q, s.eps);
        if (j < 0 || s.mult[j] != s.mult[i]) return false;
    }
    return true;
}

inline bool matrix_preserves(const PointSet& s, const PointGrid& grid, const Mat3& R) {
    for (size_t i = 0; i < s.pos.size(); ++i) {
        Point3 q = apply_about(R, s.pos[i], s.center);
        int j = grid.find(q, s.eps);
        if (j < 0 || s.mult[j] != s.mult[i]) return false;
    }
    return true;
}

// Eigen-decomposition of a symmetric 3x3 matrix (cyclic Jacobi).
inline void jacobi_eigen(Mat3 A, double eval[3], Vec3 evec[3]) {
    Mat3 V = Mat3::identity();
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = std::abs(A(0, 1)) + std::abs(A(0, 2)) + std::abs(A(1, 2));
        if (off < 1e-14 * (std::abs(A(0, 0)) + std::abs(A(1, 1)) + std::abs(A(2, 2)) + 1e-300))
            break;
        for (int p = 0; p < 2; ++p)
            for (int q = p + 1; q < 3; ++q) {
                if (std::abs(A(p, q)) < 1e-300) continue;
                double theta = (A(q, q) - A(p, p)) / (2 * A(p, q));
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1), sn = t * c;
                Mat3 J = Mat3::identity();
                J(p, p) = c; J(q, q) = c; J(p, q) = sn; J(q, p) = -sn;
                A = J.transposed() * A * J;
                V = V * J;
            }
    }
    for (int i = 0; i < 3; ++i) {
        eval[i] = A(i, i);
        evec[i] = V.col(i);
    }
    // sort ascending
    int idx[3] = {0, 1, 2};
    std::sort(idx, idx + 3, [&](int a, int b) { return eval[a] < eval[b]; });
    double ev[3] = {eval[idx[0]], eval[idx[1]], eval[idx[2]]};
    Vec3 vv[3] = {evec[idx[0]], evec[idx[1]], evec[idx[2]]};
    for (int i = 0; i < 3; ++i) { eval[i] = ev[i]; evec[i] = vv[i]; }
}

struct Cylindrical {
    double h, rho, theta;
    int mult;
};

inline std::vector<Cylindrical> cylindrical_coords(const PointSet& s, const Vec3& u) {
    Vec3 ref = std::abs(u.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    Vec3 v = (ref - u * ref.dot(u)).normalized();
    Vec3 w = u.cross(v);
    std::vector<Cylindrical> out;
    out.reserve(s.pos.size());
    for (size_t i = 0; i < s.pos.size(); ++i) {
        Vec3 r = s.pos[i] - s.center;
        double h = r.dot(u);
        Vec3 perp = r - u * h;
        double rho = perp.norm();
        double theta = rho > 1e-14 ? std::atan2(perp.dot(w), perp.dot(v)) : 0.0;
        out.push_back({h, rho, theta, s.mult[i]});
    }
    return out;
}

// Quick necessary test for any nontrivial rotation about u: every off-axis
// point needs a companion at matching (h, rho).
inline bool axis_plausible(const PointSet& s, const Vec3& u) {
    auto cyl = cylindrical_coords(s, u);
    std::vector<int> off;
    for (size_t i = 0; i < cyl.size(); ++i)
        if (cyl[i].rho > s.eps) off.push_back(int(i));
    if (off.empty()) return false;  // collinear with axis; handled elsewhere
    for (int i : off) {
        bool ok = false;
        for (int j : off) {
            if (j == i) continue;
            if (std::abs(cyl[i].h - cyl[j].h) <= s.eps &&
                std::abs(cyl[i].rho - cyl[j].rho) <= s.eps) { ok = true; break; }
        }
        if (!ok) return false;
    }
    return true;
}

// Largest k >= 2 such that rotation by 2*pi/k about u preserves the multiset; 1 if none.
inline int axis_fold(const PointSet& s, const PointGrid& grid, const Vec3& u) {
    auto cyl = cylindrical_coords(s, u);
    // smallest off-axis ring constrains the preserved angles
    struct Ring { double h, rho; std::vector<double> thetas; };
    std::vector<Ring> rings;
    for (const auto& c : cyl) {
        if (c.rho <= s.eps) continue;
        bool put = false;
        for (auto& r : rings)
            if (std::abs(r.h - c.h) <= s.eps && std::abs(r.rho - c.rho) <= s.eps) {
                r.thetas.push_back(c.theta);
                put = true;
                break;
            }
        if (!put) rings.push_back({c.h, c.rho, {c.theta}});
    }
    if (rings.empty()) return 1;
    const Ring* ring = &rings[0];
    for (const auto& r : rings)
        if (r.thetas.size() < ring->thetas.size()) ring = &r;
    std::vector<double> ths = ring->thetas;
    std::sort(ths.begin(), ths.end());
    double ang_eps = 4.0 * s.eps / std::max(ring->rho, 1e-12);
    for (size_t j = 1; j < ths.size(); ++j) {
        double a = ths[j] - ths[0];
        if (a < ang_eps) continue;
        if (!rotation_preserves(s, grid, u, a)) continue;
        int k = int(std::lround(2 * M_PI / a));
        if (k < 2) continue;
        double exact = 2 * M_PI / k;
        if (std::abs(a - exact) > ang_eps + 1e-9) continue;
        if (k > s.total()) continue;
        if (rotation_preserves(s, grid, u, exact)) return k;
    }
    return 1;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Canonical cylindrical signature: a rotation-invariant total encoding of the
// multiset as seen along a directed axis. Two directions of an axis get equal
// signatures exactly when some symmetry of P reverses the axis; otherwise the
// lexicographically smaller one canonically orients it.

namespace detail {

inline int eps_cmp(double a, double b, double eps = 1e-7) {
    if (a < b - eps) return -1;
    if (a > b + eps) return 1;
    return 0;
}

inline int lex_cmp(const std::vector<double>& a, const std::vector<double>& b,
                   double eps = 1e-7) {
    size_t n = std::min(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) {
        int c = eps_cmp(a[i], b[i], eps);
        if (c) return c;
    }
    return a.size() == b.size() ? 0 : (a.size() < b.size() ? -1 : 1);
}

inline std::vector<double> axis_signature(const PointSet& s, const Vec3& u) {
    auto cyl = cylindrical_coords(s, u);
    double scale = std::max(s.radius, 1e-300);
    std::vector<size_t> anchors;
    for (size_t i = 0; i < cyl.size(); ++i)
        if (cyl[i].rho > s.eps) anchors.push_back(i);
    if (anchors.empty()) {
        std::vector<double> sig;
        std::vector<std::pair<double, int>> hs;
        for (const auto& c : cyl) hs.push_back({c.h / scale, c.mult});
        std::sort(hs.begin(), hs.end());
        for (auto [h, m] : hs) { sig.push_back(h); sig.push_back(m); }
        return sig;
    }
    std::vector<double> best;
    for (size_t a : anchors) {
        std::vector<std::array<double, 4>> rows;
        rows.reserve(cyl.size());
        for (const auto& c : cyl) {
            double dth = -1.0;
            if (c.rho > s.eps) {
                dth = std::fmod(c.theta - cyl[a].theta + 4 * M_PI, 2 * M_PI);
                if (dth > 2 * M_PI - 1e-9) dth = 0.0;
            }
            rows.push_back({c.h / scale, c.rho / scale, dth, double(c.mult)});
        }
        std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
            for (int i = 0; i < 4; ++i) {
                int c = eps_cmp(x[i], y[i]);
                if (c) return c < 0;
            }
            return false;
        });
        std::vector<double> sig;
        sig.reserve(rows.size() * 4);
        for (const auto& r : rows) sig.insert(sig.end(), r.begin(), r.end());
        if (best.empty() || lex_cmp(sig, best) < 0) best = std::move(sig);
    }
    return best;
}

// Canonical direction for an axis line: the direction with the smaller
// signature. Returns false when the two directions are equivalent under P's
// symmetries (axis not orientable from P).
inline bool orient_axis(const PointSet& s, Vec3& u) {
    auto sp = axis_signature(s, u);
    auto sm = axis_signature(s, -u);
    int c = lex_cmp(sp, sm);
    if (c > 0) u = -u;
    return c != 0;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Detection

namespace detail {

inline std::vector<Vec3> candidate_axes(const PointSet& s) {
    std::vector<Vec3> cands;
    auto push = [&](const Vec3& v) {
        double n = v.norm();
        if (n < 4.0 * s.eps) return;
        cands.push_back(canonical_line_dir(v / n));
    };

    // inertia tensor about the enclosing-ball center
    Mat3 J;
    J.m = {0, 0, 0, 0, 0, 0, 0, 0, 0};
    for (size_t i = 0; i < s.pos.size(); ++i) {
        Vec3 r = (s.pos[i] - s.center) / std::max(s.radius, 1e-300);
        double m = s.mult[i];
        double rr = r.norm2();
        J(0, 0) += m * (rr - r.x * r.x);
        J(1, 1) += m * (rr - r.y * r.y);
        J(2, 2) += m * (rr - r.z * r.z);
        J(0, 1) -= m * r.x * r.y;
        J(0, 2) -= m * r.x * r.z;
        J(1, 2) -= m * r.y * r.z;
    }
    J(1, 0) = J(0, 1); J(2, 0) = J(0, 2); J(2, 1) = J(1, 2);
    double ev[3];
    Vec3 evec[3];
    jacobi_eigen(J, ev, evec);
    double scale = std::max({std::abs(ev[2]), 1e-300});
    double gap_lo = (ev[1] - ev[0]) / scale;
    double gap_hi = (ev[2] - ev[1]) / scale;
    const double DEG = 1e-7;

    if (gap_lo > DEG && gap_hi > DEG) {
        // asymmetric top: any symmetry axis is one of the three eigenvectors
        for (int i = 0; i < 3; ++i) push(evec[i]);
        return cands;
    }

    if (gap_lo > DEG || gap_hi > DEG) {
        // symmetric top: the isolated eigenvector plus in-plane 2-fold candidates
        Vec3 special = gap_lo > DEG ? evec[0] : evec[2];
        push(special);
        Vec3 u = special.normalized();
        auto cyl = cylindrical_coords(s, u);
        // a 2-fold at azimuth f maps (h, rho, th) to (-h, rho, 2f - th)
        std::vector<size_t> off;
        for (size_t i = 0; i < cyl.size(); ++i)
            if (cyl[i].rho > s.eps) off.push_back(i);
        Vec3 ref = std::abs(u.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
        Vec3 v = (ref - u * ref.dot(u)).normalized();
        Vec3 w = u.cross(v);
        auto dir_at = [&](double th) { return v * std::cos(th) + w * std::sin(th); };
        for (size_t ii = 0; ii < off.size(); ++ii) {
            const auto& ci = cyl[off[ii]];
            for (size_t jj = ii; jj < off.size(); ++jj) {
                const auto& cj = cyl[off[jj]];
                if (std::abs(ci.h + cj.h) > 2 * s.eps) continue;
                if (std::abs(ci.rho - cj.rho) > 2 * s.eps) continue;
                double f = 0.5 * (ci.theta + cj.theta);
                push(dir_at(f));
                push(dir_at(f + M_PI / 2));  // the mate perpendicular in-plane axis
            }
        }
        return cands;
    }

    // spherical top: generate complete candidates from one invariant shell
    std::vector<std::vector<int>> shells;
    {
        std::vector<int> idx(s.pos.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) {
            return dist(s.pos[a], s.center) < dist(s.pos[b], s.center);
        });
        for (int i : idx) {
            double r = dist(s.pos[i], s.center);
            if (r <= s.eps) continue;  // center point constrains nothing
            if (!shells.empty()) {
                double r0 = dist(s.pos[shells.back().back()], s.center);
                if (std::abs(r - r0) <= 2 * s.eps) {
                    shells.back().push_back(i);
                    continue;
                }
            }
            shells.push_back({i});
        }
    }
    const std::vector<int>* shell = nullptr;
    for (const auto& sh : shells)
        if (sh.size() >= 3 && (!shell || sh.size() < shell->size())) shell = &sh;

    if (!shell) {
        for (size_t i = 0; i < s.pos.size(); ++i) {
            push(s.pos[i] - s.center);
            for (size_t j = i + 1; j < s.pos.size(); ++j)
                push((s.pos[i] + s.pos[j]) * 0.5 - s.center);
        }
        return cands;
    }

    const auto& sh = *shell;
    for (int i : sh) push(s.pos[i] - s.center);
    for (size_t a = 0; a < sh.size(); ++a)
        for (size_t b = a + 1; b < sh.size(); ++b)
            push((s.pos[sh[a]] + s.pos[sh[b]]) * 0.5 - s.center);
    for (size_t a = 0; a < sh.size(); ++a)
        for (size_t b = a + 1; b < sh.size(); ++b)
            for (size_t c = b + 1; c < sh.size(); ++c) {
                const Point3 &pa = s.pos[sh[a]], &pb = s.pos[sh[b]], &pc = s.pos[sh[c]];
                Vec3 n = (pb - pa).cross(pc - pa);
                double nn = n.norm();
                if (nn < 1e-12 * s.radius * s.radius) continue;
                Ball circ = detail::ball_from_3(pa, pb, pc);
                Vec3 d = circ.center - s.center;
                if (d.norm() > 4.0 * s.eps) push(d);
                else push(n);  // ring on a great circle: axis is the plane normal
            }
    return cands;
}

}  // namespace detail

// Collinearity: all points within tolerance of one line.
inline bool collinear(const PointSet& s) {
    if (s.pos.size() < 2) return true;
    // direction of the farthest point from the center
    size_t far = 0;
    for (size_t i = 1; i < s.pos.size(); ++i)
        if (dist(s.pos[i], s.center) > dist(s.pos[far], s.center)) far = i;
    double fr = dist(s.pos[far], s.center);
    if (fr <= s.eps) return true;  // all coincident with the center
    Vec3 u = (s.pos[far] - s.center) / fr;
    for (const auto& p : s.pos)
        if ((p - s.center).cross(u).norm() > s.eps) return false;
    return true;
}

// The rotation group gamma(P) of a point multiset with its arrangement in P.
// Collinear inputs yield CyclicInf/DihedralInf (single pseudo-axis, fold 0).
inline Arrangement detect_rotation_group(const Configuration& P, const Tolerance& tol = {}) {
    if (P.size() < 3) throw std::invalid_argument("need at least 3 points");
    PointSet s = make_point_set(P, tol);

    if (collinear(s)) {
        Arrangement arr;
        arr.center = s.center;
        size_t far = 0;
        for (size_t i = 1; i < s.pos.size(); ++i)
            if (dist(s.pos[i], s.center) > dist(s.pos[far], s.center)) far = i;
        Vec3 u = dist(s.pos[far], s.center) > s.eps
                     ? (s.pos[far] - s.center).normalized()
                     : Vec3{0, 0, 1};
        // symmetric against b(P)?
        bool sym = true;
        for (size_t i = 0; i < s.pos.size() && sym; ++i) {
            Point3 q = s.center * 2.0 - s.pos[i];
            bool hit = false;
            for (size_t j = 0; j < s.pos.size(); ++j)
                if (dist(q, s.pos[j]) <= s.eps && s.mult[j] == s.mult[i]) { hit = true; break; }
            sym = hit;
        }
        Axis ax;
        ax.fold = 0;
        ax.principal = true;
        ax.occupied = true;
        ax.oriented = !sym;
        ax.direction = detail::canonical_line_dir(u);
        if (!sym) {
            ax.direction = u;
            detail::orient_axis(s, ax.direction);
        }
        arr.kind = sym ? GroupKind::Dinf() : GroupKind::Cinf();
        arr.axes.push_back(ax);
        arr.elements.clear();
        return arr;
    }

    detail::PointGrid grid(s);
    auto cands = detail::candidate_axes(s);
    // dedupe candidate lines
    std::sort(cands.begin(), cands.end(), [](const Vec3& a, const Vec3& b) {
        if (std::abs(a.x - b.x) > 1e-7) return a.x < b.x;
        if (std::abs(a.y - b.y) > 1e-7) return a.y < b.y;
        return a.z < b.z;
    });
    std::vector<Vec3> uniq;
    for (const auto& c : cands) {
        bool dup = false;
        for (auto it = uniq.rbegin(); it != uniq.rend(); ++it) {
            if (std::abs(it->x - c.x) > 1e-6) break;
            if (std::abs(it->dot(c)) > 1.0 - 1e-10) { dup = true; break; }
        }
        if (!dup) uniq.push_back(c);
    }

    std::vector<Mat3> gens;
    std::vector<std::pair<Vec3, int>> found;
    for (const auto& u : uniq) {
        if (!detail::axis_plausible(s, u)) continue;
        bool covered = false;
        for (const auto& [fu, ff] : found)
            if (std::abs(fu.dot(u)) > 1.0 - 1e-9) { covered = true; break; }
        if (covered) continue;
        int k = detail::axis_fold(s, grid, u);
        if (k >= 2) {
            found.push_back({u, k});
            gens.push_back(rotation_about(u, 2 * M_PI / k));
        }
    }

    Arrangement arr;
    if (gens.empty()) {
        arr.kind = GroupKind::C(1);
        arr.center = s.center;
        arr.elements = {Mat3::identity()};
    } else {
        auto elems = detail::close_group(gens, 128);
        arr = classify_rotation_set(elems, s.center);
    }

    // occupancy
    for (auto& ax : arr.axes) {
        for (size_t i = 0; i < s.pos.size(); ++i) {
            Vec3 r = s.pos[i] - s.center;
            if (r.cross(ax.direction).norm() <= s.eps) { ax.occupied = true; break; }
        }
    }

    // canonical directions for oriented axes
    for (auto& ax : arr.axes)
        if (ax.oriented) detail::orient_axis(s, ax.direction);

    // D2: the principal axis is the one distinguished by the configuration
    if (arr.kind == GroupKind::D(2)) {
        int best = -1;
        std::vector<double> best_sig;
        for (int i = 0; i < 3; ++i) {
            Vec3 d = arr.axes[i].direction;
            auto sig = detail::axis_signature(s, d);
            auto sig2 = detail::axis_signature(s, -d);
            if (detail::lex_cmp(sig2, sig) < 0) sig = sig2;
            if (best < 0 || detail::lex_cmp(sig, best_sig) < 0) {
                best = i;
                best_sig = sig;
            }
        }
        arr.axes[best].principal = true;
        std::swap(arr.axes[0], arr.axes[best]);
    }
    return arr;
}

// True when every element of the arrangement maps the multiset onto itself.
inline bool acts_on(const Arrangement& arr, const Configuration& P, const Tolerance& tol = {}) {
    PointSet s = make_point_set(P, tol);
    detail::PointGrid grid(s);
    for (const auto& m : arr.elements)
        if (!detail::matrix_preserves(s, grid, m)) return false;
    return true;
}

}  // namespace swarm3d
