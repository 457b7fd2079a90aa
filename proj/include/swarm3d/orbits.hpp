// Local views and the ordered orbit decomposition of a configuration under a
// group arrangement. The view ordering realizes the agreement the robots can
// reach from any right-handed local frame: views depend only on distances,
// angles, and chirality, never on the observer's coordinate system.
#pragma once

#include "detect.hpp"

namespace swarm3d {

// A local view is an n-tuple of (amplitude, longitude, latitude) triples, the
// earth axis running from b(P) through the observing point. Amplitudes are
// normalized by rad(B(P)) so views are scale-free.
using LocalView = std::vector<double>;

inline int compare_views(const LocalView& a, const LocalView& b, double eps = 1e-7) {
    return detail::lex_cmp(a, b, eps);
}

namespace detail {

struct ViewContext {
    const PointSet* s;
    double inner_radius;
};

inline LocalView local_view_of(const PointSet& s, const Point3& self) {
    Vec3 axis = self - s.center;
    double self_r = axis.norm();
    if (self_r <= s.eps) throw std::invalid_argument("center robot has no axis");
    Vec3 u = axis / self_r;
    double inner = std::numeric_limits<double>::infinity();
    for (const auto& p : s.pos) inner = std::min(inner, dist(p, s.center));
    double scale = std::max(s.radius, 1e-300);

    // meridian candidates: off-axis points nearest to the innermost ball
    double best_d = std::numeric_limits<double>::infinity();
    std::vector<size_t> cands;
    for (size_t i = 0; i < s.pos.size(); ++i) {
        Vec3 r = s.pos[i] - s.center;
        if (r.cross(u).norm() <= s.eps) continue;  // on the earth axis
        double d = std::abs(r.norm() - inner);
        if (d < best_d - s.eps) {
            best_d = d;
            cands.assign(1, i);
        } else if (d <= best_d + s.eps) {
            cands.push_back(i);
        }
    }
    if (cands.empty()) throw std::invalid_argument("degenerate view: all points on the axis");

    LocalView best;
    for (size_t mi : cands) {
        Vec3 rm = s.pos[mi] - s.center;
        Vec3 v = (rm - u * rm.dot(u)).normalized();
        Vec3 w = u.cross(v);
        std::vector<std::array<double, 3>> rest;
        LocalView view;
        auto triple = [&](size_t i) -> std::array<double, 3> {
            Vec3 r = s.pos[i] - s.center;
            double amp = r.norm() / scale;
            double lat = std::acos(std::clamp(r.norm() > 1e-300 ? r.normalized().dot(u) : 1.0,
                                              -1.0, 1.0));
            Vec3 perp = r - u * r.dot(u);
            double lon = 0.0;
            if (perp.norm() > s.eps) {
                lon = std::atan2(perp.dot(w), perp.dot(v));
                if (lon < -1e-12) lon += 2 * M_PI;
                if (lon < 0) lon = 0;
            }
            return {amp, lon, lat};
        };
        view.insert(view.end(), {self_r / scale, 0.0, 0.0});
        auto mt = triple(mi);
        view.insert(view.end(), mt.begin(), mt.end());
        for (size_t i = 0; i < s.pos.size(); ++i) {
            auto t = triple(i);
            bool self_pt = dist(s.pos[i], self) <= s.eps;
            bool meri_pt = i == mi;
            int count = s.mult[i] - (self_pt ? 1 : 0) - (meri_pt ? 1 : 0);
            for (int c = 0; c < count; ++c) rest.push_back(t);
        }
        std::sort(rest.begin(), rest.end(), [](const auto& x, const auto& y) {
            for (int i = 0; i < 3; ++i) {
                int c = eps_cmp(x[i], y[i]);
                if (c) return c < 0;
            }
            return false;
        });
        for (const auto& t : rest) view.insert(view.end(), t.begin(), t.end());
        if (best.empty() || lex_cmp(view, best) < 0) best = std::move(view);
    }
    return best;
}

}  // namespace detail

// The local view of robot i in configuration P (a set).
inline LocalView local_view(const Configuration& P, size_t i, const Tolerance& tol = {}) {
    if (i >= P.size()) throw std::invalid_argument("robot index out of range");
    PointSet s = make_point_set(P, tol);
    if (s.has_multiplicity()) throw std::invalid_argument("local view requires a set");
    return detail::local_view_of(s, P[i]);
}

// ---------------------------------------------------------------------------
// Orbit decomposition

struct OrbitDecomposition {
    std::vector<std::vector<int>> orbits;  // point indices into the original P
    std::vector<int> foldings;             // per-orbit folding
    std::vector<LocalView> views;          // minimal view per orbit (empty for center orbit)
    std::vector<double> radii;             // distance of the orbit sphere from b(P)
    int orbit_of(int point) const {
        for (size_t i = 0; i < orbits.size(); ++i)
            for (int p : orbits[i])
                if (p == point) return int(i);
        return -1;
    }
};

namespace detail {

inline OrbitDecomposition decompose_impl(const Configuration& P, const Arrangement& arr,
                                         const Tolerance& tol, bool ordered) {
    PointSet s = make_point_set(P, tol);
    if (ordered && s.has_multiplicity())
        throw std::invalid_argument("ordered decomposition requires a set");
    if (arr.elements.empty())
        throw std::invalid_argument("arrangement carries no elements (infinite kind?)");
    PointGrid grid(s);
    for (const auto& m : arr.elements)
        if (!matrix_preserves(s, grid, m))
            throw std::invalid_argument("arrangement does not act on configuration");

    // orbits over unique positions
    std::vector<int> orbit_id(s.pos.size(), -1);
    std::vector<std::vector<int>> uorbits;
    for (size_t i = 0; i < s.pos.size(); ++i) {
        if (orbit_id[i] >= 0) continue;
        std::vector<int> orb;
        for (const auto& m : arr.elements) {
            Point3 q = apply_about(m, s.pos[i], arr.center);
            int j = grid.find(q, s.eps);
            if (j >= 0 && orbit_id[j] < 0) {
                orbit_id[j] = int(uorbits.size());
                orb.push_back(j);
            }
        }
        uorbits.push_back(orb);
    }

    OrbitDecomposition out;
    for (const auto& uorb : uorbits) {
        std::vector<int> pts;
        for (size_t oi = 0; oi < P.size(); ++oi)
            if (std::find(uorb.begin(), uorb.end(), s.owner[oi]) != uorb.end())
                pts.push_back(int(oi));
        int positions = int(uorb.size());
        int fold = int(arr.elements.size()) / positions;
        if (positions * fold != int(arr.elements.size()))
            throw std::runtime_error("orbit size does not divide the group order");
        out.orbits.push_back(pts);
        out.foldings.push_back(fold);
        out.radii.push_back(dist(s.pos[uorb[0]], s.center));
        if (ordered) {
            if (out.radii.back() <= s.eps) {
                out.views.push_back({});  // center orbit sorts first
            } else {
                out.views.push_back(local_view_of(s, s.pos[uorb[0]]));
            }
        } else {
            out.views.push_back({});
        }
    }

    if (ordered) {
        std::vector<int> idx(out.orbits.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) {
            bool ca = out.views[a].empty(), cb = out.views[b].empty();
            if (ca != cb) return ca;  // center orbit first
            if (!ca) {
                int c = lex_cmp(out.views[a], out.views[b]);
                if (c) return c < 0;
            }
            if (out.orbits[a].size() != out.orbits[b].size())
                return out.orbits[a].size() < out.orbits[b].size();
            return a < b;
        });
        OrbitDecomposition sorted;
        for (int i : idx) {
            sorted.orbits.push_back(std::move(out.orbits[i]));
            sorted.foldings.push_back(out.foldings[i]);
            sorted.views.push_back(std::move(out.views[i]));
            sorted.radii.push_back(out.radii[i]);
        }
        return sorted;
    }
    return out;
}

}  // namespace detail

// Ordered orbit decomposition of a set P under an arrangement acting on it.
// Orbit 0 lies on I(P), the last orbit on B(P), and each successive orbit is
// on or outside the ball of the previous one.
inline OrbitDecomposition decompose(const Configuration& P, const Arrangement& arr,
                                    const Tolerance& tol = {}) {
    return detail::decompose_impl(P, arr, tol, true);
}

// Unordered variant; also valid for multisets.
inline OrbitDecomposition decompose_unordered(const Configuration& P, const Arrangement& arr,
                                              const Tolerance& tol = {}) {
    return detail::decompose_impl(P, arr, tol, false);
}

}  // namespace swarm3d
