// Local coordinate systems of robots and the rotation group sigma(Q) of an
// arrangement of them: the symmetry the robots can never break.
#pragma once

#include "embeddings.hpp"

namespace swarm3d {

// Right-handed local coordinate system: global = origin + scale * basis * local.
struct LocalFrame {
    Point3 origin{0, 0, 0};
    Mat3 basis = Mat3::identity();  // columns: local x, y, z axes in global coords
    double scale = 1.0;

    void validate() const {
        if (!(scale > 0) || !std::isfinite(scale))
            throw std::invalid_argument("frame scale must be positive");
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double d = basis.col(i).dot(basis.col(j)) - (i == j ? 1.0 : 0.0);
                if (std::abs(d) > 1e-7)
                    throw std::invalid_argument("frame basis not orthonormal");
            }
        if (basis.det() < 0.5) throw std::invalid_argument("frame basis not right-handed");
    }
    Point3 to_local(const Point3& global) const {
        return basis.transposed() * (global - origin) / scale;
    }
    Point3 to_global(const Point3& local) const {
        return origin + basis * local * scale;
    }
};

// The local observation Z_i(P): all positions mapped through the inverse frame
// transform; the observing robot sits at its local origin.
inline Configuration look(const Configuration& P, const LocalFrame& frame) {
    frame.validate();
    Configuration out;
    out.reserve(P.size());
    for (const auto& p : P) out.push_back(frame.to_local(p));
    return out;
}

// ---------------------------------------------------------------------------
// sigma(Q)

namespace detail {

inline bool rotation_permutes_frames(const std::vector<LocalFrame>& q, const Mat3& R,
                                     const Point3& center, double eps) {
    std::vector<char> used(q.size(), 0);
    for (const auto& f : q) {
        Point3 img = apply_about(R, f.origin, center);
        Mat3 rb = R * f.basis;
        bool hit = false;
        for (size_t j = 0; j < q.size(); ++j) {
            if (used[j]) continue;
            if (dist(img, q[j].origin) > eps) continue;
            if (std::abs(f.scale - q[j].scale) > 1e-9 * (f.scale + q[j].scale)) continue;
            if (mat_dist(rb, q[j].basis) > 1e-6) continue;
            used[j] = 1;
            hit = true;
            break;
        }
        if (!hit) return false;
    }
    return true;
}

}  // namespace detail

// The rotation group of an arrangement of local coordinate systems: rotations
// mapping the frame multiset (origins, bases, and scales) onto itself.
// Always a subgroup of gamma(positions).
inline Arrangement frame_group(const std::vector<LocalFrame>& Q, const Tolerance& tol = {}) {
    if (Q.size() < 3) throw std::invalid_argument("need at least 3 frames");
    Configuration pos;
    for (const auto& f : Q) {
        f.validate();
        pos.push_back(f.origin);
    }
    PointSet s = make_point_set(pos, tol);

    std::vector<Mat3> kept{Mat3::identity()};
    if (!collinear(s)) {
        Arrangement gamma = detect_rotation_group(pos, tol);
        for (const auto& m : gamma.elements) {
            Rotation r = axis_angle_of(m);
            if (r.angle < 1e-9) continue;
            if (detail::rotation_permutes_frames(Q, m, s.center, s.eps)) kept.push_back(m);
        }
    } else {
        // collinear positions: candidates are the pi-rotations mapping the
        // basis of one frame onto another across the center
        for (size_t i = 0; i < Q.size(); ++i)
            for (size_t j = 0; j < Q.size(); ++j) {
                Point3 mirror = s.center * 2.0 - Q[i].origin;
                if (dist(mirror, Q[j].origin) > s.eps) continue;
                Mat3 R = Q[j].basis * Q[i].basis.transposed();
                Rotation rr = axis_angle_of(R);
                if (std::abs(rr.angle - M_PI) > 1e-7) continue;
                if (detail::rotation_permutes_frames(Q, R, s.center, s.eps)) {
                    bool dup = false;
                    for (const auto& k : kept) dup |= mat_dist(k, R) < 1e-7;
                    if (!dup) kept.push_back(R);
                }
            }
    }
    Arrangement arr = classify_rotation_set(kept, s.center);
    for (auto& ax : arr.axes) {
        for (const auto& p : s.pos)
            if ((p - s.center).cross(ax.direction).norm() <= s.eps) { ax.occupied = true; break; }
    }
    return arr;
}

// ---------------------------------------------------------------------------
// Symmetric frame arrangement (the adversary of the impossibility proofs)

// Frames realizing sigma(P) = g: one pseudo-random frame per G-orbit
// representative, propagated by the embedded rotations. Requires an embedding
// of g into the unoccupied axes of gamma(P).
inline std::vector<LocalFrame> symmetric_frame_assignment(const Configuration& P,
                                                          const GroupKind& g,
                                                          const Embedding& emb, uint64_t seed,
                                                          const Tolerance& tol = {}) {
    if (emb.kind != g) throw std::invalid_argument("embedding kind mismatch");
    PointSet s = make_point_set(P, tol);
    if (s.has_multiplicity()) throw std::invalid_argument("frame assignment requires a set");
    Arrangement gamma = detect_rotation_group(P, tol);
    if (g != GroupKind::C(1)) {
        if (!symmetricity(P, tol).contains(g)) throw std::invalid_argument("not realizable");
        for (int h : emb.host_axes)
            if (gamma.axes[h].occupied) throw std::invalid_argument("not realizable");
        for (const auto& p : s.pos)
            if (dist(p, s.center) <= s.eps) throw std::invalid_argument("not realizable");
        for (const auto& ax : emb.axes)
            for (const auto& p : s.pos)
                if ((p - s.center).cross(ax.direction).norm() <= s.eps)
                    throw std::invalid_argument("not realizable");
    }

    Arrangement acting;
    acting.kind = g;
    acting.center = s.center;
    acting.elements = emb.elements;
    OrbitDecomposition dec = decompose_unordered(P, acting, tol);

    std::vector<LocalFrame> frames(P.size());
    RngStream rng(hash_mix(seed, 0xf7a3e5ULL));
    for (size_t oi = 0; oi < dec.orbits.size(); ++oi) {
        const auto& orbit = dec.orbits[oi];
        int rep = *std::min_element(orbit.begin(), orbit.end());
        LocalFrame base;
        base.origin = P[rep];
        base.basis = rng.rotation();
        base.scale = rng.uniform(0.5, 2.0);
        for (int pi : orbit) {
            // the unique group element carrying the representative here
            for (const auto& m : emb.elements) {
                Point3 img = apply_about(m, P[rep], s.center);
                if (dist(img, P[pi]) <= s.eps) {
                    frames[pi].origin = P[pi];
                    frames[pi].basis = m * base.basis;
                    frames[pi].scale = base.scale;
                    break;
                }
            }
        }
    }
    return frames;
}

}  // namespace swarm3d
