// Basic 3D geometry for the swarm library: vectors, rotation matrices,
// smallest enclosing balls, and similarity testing between point multisets.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace swarm3d {

// ---------------------------------------------------------------------------
// Vectors and matrices

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }
    Vec3 normalized() const {
        double n = norm();
        if (n == 0.0) throw std::invalid_argument("cannot normalize zero vector");
        return *this / n;
    }
    bool finite() const {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }
inline double dist(const Vec3& a, const Vec3& b) { return (a - b).norm(); }

using Point3 = Vec3;
using Configuration = std::vector<Point3>;

// Column-major 3x3 matrix; columns are the images of the basis vectors.
struct Mat3 {
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};  // identity

    static Mat3 identity() { return Mat3{}; }
    static Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
        Mat3 r;
        r.m = {c0.x, c0.y, c0.z, c1.x, c1.y, c1.z, c2.x, c2.y, c2.z};
        return r;
    }
    double operator()(int r, int c) const { return m[3 * c + r]; }
    double& operator()(int r, int c) { return m[3 * c + r]; }
    Vec3 col(int c) const { return {m[3 * c], m[3 * c + 1], m[3 * c + 2]}; }

    Vec3 operator*(const Vec3& v) const {
        return {m[0] * v.x + m[3] * v.y + m[6] * v.z,
                m[1] * v.x + m[4] * v.y + m[7] * v.z,
                m[2] * v.x + m[5] * v.y + m[8] * v.z};
    }
    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int c = 0; c < 3; ++c)
            for (int rr = 0; rr < 3; ++rr) {
                double s = 0;
                for (int k = 0; k < 3; ++k) s += (*this)(rr, k) * o(k, c);
                r(rr, c) = s;
            }
        return r;
    }
    Mat3 transposed() const {
        Mat3 r;
        for (int c = 0; c < 3; ++c)
            for (int rr = 0; rr < 3; ++rr) r(rr, c) = (*this)(c, rr);
        return r;
    }
    double trace() const { return m[0] + m[4] + m[8]; }
    double det() const {
        return m[0] * (m[4] * m[8] - m[7] * m[5]) -
               m[3] * (m[1] * m[8] - m[7] * m[2]) +
               m[6] * (m[1] * m[5] - m[4] * m[2]);
    }
};

inline double mat_dist(const Mat3& a, const Mat3& b) {
    double s = 0;
    for (int i = 0; i < 9; ++i) s = std::max(s, std::abs(a.m[i] - b.m[i]));
    return s;
}

// ---------------------------------------------------------------------------
// Rotations

// Rotation by `angle` (radians, in (-pi, pi]) about a unit `axis`.
struct Rotation {
    Vec3 axis{0, 0, 1};
    double angle = 0.0;

    Mat3 matrix() const {
        Vec3 u = axis.normalized();
        double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
        Mat3 r;
        r.m = {t * u.x * u.x + c,       t * u.x * u.y + s * u.z, t * u.x * u.z - s * u.y,
               t * u.x * u.y - s * u.z, t * u.y * u.y + c,       t * u.y * u.z + s * u.x,
               t * u.x * u.z + s * u.y, t * u.y * u.z - s * u.x, t * u.z * u.z + c};
        return r;
    }
};

inline Mat3 rotation_about(const Vec3& axis, double angle) {
    return Rotation{axis, angle}.matrix();
}

// Axis/angle extraction from a proper rotation matrix. Angle in [0, pi];
// the axis sign is arbitrary when angle == pi.
inline Rotation axis_angle_of(const Mat3& R) {
    double c = std::clamp((R.trace() - 1.0) / 2.0, -1.0, 1.0);
    double angle = std::acos(c);
    Rotation out;
    out.angle = angle;
    if (angle < 1e-9) {
        out.axis = {0, 0, 1};
        return out;
    }
    if (angle > M_PI - 1e-6) {
        // R ~= 2 a a^T - I ; take the largest-diagonal column of R + I.
        Mat3 S = R;
        S(0, 0) += 1; S(1, 1) += 1; S(2, 2) += 1;
        int best = 0;
        for (int i = 1; i < 3; ++i)
            if (S(i, i) > S(best, best)) best = i;
        out.axis = S.col(best).normalized();
        out.angle = M_PI;
        return out;
    }
    Vec3 a{R(2, 1) - R(1, 2), R(0, 2) - R(2, 0), R(1, 0) - R(0, 1)};
    out.axis = a.normalized();
    return out;
}

// Rotation mapping unit vector a onto unit vector b (minimal angle).
inline Mat3 rotation_between(const Vec3& a, const Vec3& b) {
    Vec3 v = a.cross(b);
    double c = std::clamp(a.dot(b), -1.0, 1.0);
    double s = v.norm();
    if (s < 1e-12) {
        if (c > 0) return Mat3::identity();
        // opposite vectors: rotate pi about any perpendicular
        Vec3 p = std::abs(a.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
        Vec3 perp = (p - a * p.dot(a)).normalized();
        return rotation_about(perp, M_PI);
    }
    return rotation_about(v / s, std::atan2(s, c));
}

// Orientation-preserving similarity: x -> scale * rotation * x + translation.
struct SimilarityTransform {
    Mat3 rotation = Mat3::identity();
    Vec3 translation{0, 0, 0};
    double scale = 1.0;

    Vec3 apply(const Vec3& p) const { return rotation * p * scale + translation; }
    Configuration apply(const Configuration& pts) const {
        Configuration out;
        out.reserve(pts.size());
        for (const auto& p : pts) out.push_back(apply(p));
        return out;
    }
};

// ---------------------------------------------------------------------------
// Tolerances

// Two-level tolerance: relative to the configuration's enclosing-ball radius,
// with an absolute floor for near-degenerate scales.
struct Tolerance {
    double rel_eps = 1e-9;
    double abs_eps = 1e-12;

    double point(double scale) const { return std::max(abs_eps, rel_eps * scale); }
};

// ---------------------------------------------------------------------------
// Deterministic RNG (splitmix64): identical streams on every platform.

struct RngStream {
    uint64_t state;

    explicit RngStream(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() {  // in [0, 1)
        return double(next() >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    uint64_t below(uint64_t n) { return n ? next() % n : 0; }

    // Uniform random rotation via quaternion sampling.
    Mat3 rotation() {
        double u1 = uniform(), u2 = uniform(), u3 = uniform();
        double a = std::sqrt(1 - u1), b = std::sqrt(u1);
        double qw = a * std::sin(2 * M_PI * u2), qx = a * std::cos(2 * M_PI * u2);
        double qy = b * std::sin(2 * M_PI * u3), qz = b * std::cos(2 * M_PI * u3);
        Mat3 R;
        R.m = {1 - 2 * (qy * qy + qz * qz), 2 * (qx * qy + qw * qz),     2 * (qx * qz - qw * qy),
               2 * (qx * qy - qw * qz),     1 - 2 * (qx * qx + qz * qz), 2 * (qy * qz + qw * qx),
               2 * (qx * qz + qw * qy),     2 * (qy * qz - qw * qx),     1 - 2 * (qx * qx + qy * qy)};
        return R;
    }
};

inline uint64_t hash_mix(uint64_t h, uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

// ---------------------------------------------------------------------------
// Balls

struct Ball {
    Point3 center{0, 0, 0};
    double radius = 0.0;

    bool contains(const Point3& p, double eps) const {
        return dist(p, center) <= radius + eps;
    }
};

namespace detail {

inline Ball ball_from_2(const Point3& a, const Point3& b) {
    return {(a + b) * 0.5, dist(a, b) * 0.5};
}

inline Ball ball_from_3(const Point3& a, const Point3& b, const Point3& c) {
    Vec3 ab = b - a, ac = c - a;
    Vec3 n = ab.cross(ac);
    double n2 = n.norm2();
    if (n2 < 1e-30 * std::max(ab.norm2(), ac.norm2()) * std::max(ab.norm2(), ac.norm2())) {
        // collinear: the two farthest apart define the ball
        Ball best = ball_from_2(a, b);
        Ball t = ball_from_2(a, c);
        if (t.radius > best.radius) best = t;
        t = ball_from_2(b, c);
        if (t.radius > best.radius) best = t;
        return best;
    }
    Vec3 rel = (ab.cross(ac)).cross(ab) * ac.norm2() + ac.cross(ab.cross(ac)) * ab.norm2();
    rel = rel / (2.0 * n2);
    return {a + rel, rel.norm()};
}

inline Ball ball_from_4(const Point3& a, const Point3& b, const Point3& c, const Point3& d) {
    // Solve for the point equidistant to all four.
    Vec3 ab = b - a, ac = c - a, ad = d - a;
    double det = ab.dot(ac.cross(ad));
    double vol_scale = std::max({ab.norm2(), ac.norm2(), ad.norm2()});
    if (std::abs(det) < 1e-12 * vol_scale * std::sqrt(vol_scale)) {
        // coplanar: fall back to the best 3-point ball covering all four
        Ball best{{0, 0, 0}, std::numeric_limits<double>::infinity()};
        const Point3* pts[4] = {&a, &b, &c, &d};
        for (int skip = 0; skip < 4; ++skip) {
            const Point3* q[3];
            int k = 0;
            for (int i = 0; i < 4; ++i)
                if (i != skip) q[k++] = pts[i];
            Ball t = ball_from_3(*q[0], *q[1], *q[2]);
            if (t.contains(*pts[skip], 1e-9 * (t.radius + 1)) && t.radius < best.radius) best = t;
        }
        if (std::isfinite(best.radius)) return best;
        return ball_from_3(a, b, c);
    }
    Vec3 o = (ad.cross(ab) * ac.norm2() + ac.cross(ad) * ab.norm2() + ab.cross(ac) * ad.norm2())
             / (2.0 * det);
    return {a + o, o.norm()};
}

inline Ball ball_from_support(const std::vector<Point3>& s) {
    switch (s.size()) {
        case 0: return {{0, 0, 0}, -1.0};
        case 1: return {s[0], 0.0};
        case 2: return ball_from_2(s[0], s[1]);
        case 3: return ball_from_3(s[0], s[1], s[2]);
        default: return ball_from_4(s[0], s[1], s[2], s[3]);
    }
}

inline Ball welzl(std::vector<Point3>& pts, size_t n, std::vector<Point3>& support) {
    if (n == 0 || support.size() == 4) return ball_from_support(support);
    Ball d = welzl(pts, n - 1, support);
    const Point3& p = pts[n - 1];
    double slack = 1e-12 * (d.radius + 1.0);
    if (d.radius >= 0 && d.contains(p, slack)) return d;
    support.push_back(p);
    Ball r = welzl(pts, n - 1, support);
    support.pop_back();
    return r;
}

}  // namespace detail

// Smallest enclosing ball (Welzl, randomized with a fixed seed so results are
// reproducible for a given input ordering).
inline Ball smallest_enclosing_ball(const Configuration& points, uint64_t seed = 0x5eb0001ULL) {
    if (points.empty()) throw std::invalid_argument("empty point set");
    for (const auto& p : points)
        if (!p.finite()) throw std::invalid_argument("non-finite point");
    std::vector<Point3> pts = points;
    RngStream rng(seed);
    for (size_t i = pts.size(); i > 1; --i) std::swap(pts[i - 1], pts[rng.below(i)]);
    std::vector<Point3> support;
    support.reserve(4);
    Ball b = detail::welzl(pts, pts.size(), support);
    // Snap the radius to the true maximum distance from the computed center.
    double r = 0;
    for (const auto& p : points) r = std::max(r, dist(p, b.center));
    b.radius = r;
    return b;
}

// Ball centered at `center` whose interior is empty of points of P but with at
// least one point of P on its sphere.
inline Ball innermost_empty_ball(const Configuration& points, const Point3& center) {
    if (points.empty()) throw std::invalid_argument("empty point set");
    double r = std::numeric_limits<double>::infinity();
    for (const auto& p : points) r = std::min(r, dist(p, center));
    return {center, r};
}

// ---------------------------------------------------------------------------
// Multiset matching helpers

namespace detail {

// Maximum bipartite matching on the graph of pairs within eps. Greedy nearest
// first; augmenting paths when greedy is ambiguous near tolerance boundaries.
inline bool multiset_match(const std::vector<Point3>& a, const std::vector<Point3>& b,
                           double eps, std::vector<int>* out = nullptr) {
    size_t n = a.size();
    if (b.size() != n) return false;
    std::vector<std::vector<int>> adj(n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j)
            if (dist(a[i], b[j]) <= eps) adj[i].push_back(int(j));
        if (adj[i].empty()) return false;
        std::sort(adj[i].begin(), adj[i].end(), [&](int x, int y) {
            return dist(a[i], b[x]) < dist(a[i], b[y]);
        });
    }
    std::vector<int> match_a(n, -1), match_b(n, -1);
    // greedy pass
    for (size_t i = 0; i < n; ++i)
        for (int j : adj[i])
            if (match_b[j] < 0) { match_a[i] = j; match_b[j] = int(i); break; }
    // augment the rest
    std::vector<char> used;
    std::function<bool(int)> augment = [&](int i) -> bool {
        for (int j : adj[i]) {
            if (used[j]) continue;
            used[j] = 1;
            if (match_b[j] < 0 || augment(match_b[j])) {
                match_a[i] = j;
                match_b[j] = int(i);
                return true;
            }
        }
        return false;
    };
    for (size_t i = 0; i < n; ++i) {
        if (match_a[i] >= 0) continue;
        used.assign(n, 0);
        if (!augment(int(i))) return false;
    }
    if (out) *out = match_a;
    return true;
}

// Minimum-weight perfect matching (Jonker-Volgenant style O(n^3) Hungarian).
inline double hungarian_min_weight(const std::vector<std::vector<double>>& cost,
                                   std::vector<int>* assignment = nullptr) {
    int n = int(cost.size());
    if (n == 0) return 0.0;
    const double INF = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1), v(n + 1);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, INF);
        std::vector<char> used(n + 1, false);
        do {
            used[j0] = true;
            int i0 = p[j0], j1 = -1;
            double delta = INF;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) { minv[j] = cur; way[j] = j0; }
                if (minv[j] < delta) { delta = minv[j]; j1 = j; }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) { u[p[j]] += delta; v[j] -= delta; }
                else minv[j] -= delta;
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    double total = 0;
    if (assignment) assignment->assign(n, -1);
    for (int j = 1; j <= n; ++j) {
        if (p[j] == 0) continue;
        total += cost[p[j] - 1][j - 1];
        if (assignment) (*assignment)[p[j] - 1] = j - 1;
    }
    return total;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Similarity testing

// Finds an orientation-preserving similarity Z with Z(F) = P as multisets
// (within tolerance), or nullopt. Search: align enclosing-ball centers, scale
// by the radius ratio, then enumerate rotations from point correspondences on
// the outermost shell.
inline std::optional<SimilarityTransform> similar(const Configuration& P, const Configuration& F,
                                                  const Tolerance& tol = {}) {
    if (P.size() != F.size()) throw std::invalid_argument("size mismatch");
    if (P.size() < 3) throw std::invalid_argument("need at least 3 points");

    Ball bp = smallest_enclosing_ball(P);
    Ball bf = smallest_enclosing_ball(F);
    double eps = tol.point(bp.radius);

    if (bf.radius <= tol.abs_eps || bp.radius <= tol.abs_eps) {
        if (bf.radius <= tol.abs_eps && bp.radius <= tol.abs_eps) {
            SimilarityTransform z;
            z.translation = bp.center - bf.center;
            return z;
        }
        return std::nullopt;
    }
    double s = bp.radius / bf.radius;

    auto verify = [&](const Mat3& R) -> std::optional<SimilarityTransform> {
        SimilarityTransform z;
        z.rotation = R;
        z.scale = s;
        z.translation = bp.center - R * bf.center * s;
        Configuration img = z.apply(F);
        if (detail::multiset_match(img, P, eps)) return z;
        return std::nullopt;
    };

    // Identity first so that similar(P, P) reports the identity transform.
    if (auto z = verify(Mat3::identity())) return z;

    std::vector<Vec3> fc(F.size()), pc(P.size());
    for (size_t i = 0; i < F.size(); ++i) fc[i] = F[i] - bf.center;
    for (size_t i = 0; i < P.size(); ++i) pc[i] = P[i] - bp.center;

    double shell_eps = eps / s;  // in F units
    // anchor 1: first point on F's outer shell
    int f1 = -1;
    for (size_t i = 0; i < fc.size(); ++i)
        if (std::abs(fc[i].norm() - bf.radius) <= shell_eps) { f1 = int(i); break; }
    if (f1 < 0) return std::nullopt;
    // anchor 2: point least collinear with anchor 1
    int f2 = -1;
    double best_sin = 1e-6;
    for (size_t i = 0; i < fc.size(); ++i) {
        double n = fc[i].norm();
        if (n <= shell_eps) continue;
        double sinang = fc[f1].normalized().cross(fc[i] / n).norm();
        if (sinang > best_sin) { best_sin = sinang; f2 = int(i); }
    }

    if (f2 < 0) {
        // collinear configuration: only the line direction matters
        Vec3 u = fc[f1].normalized();
        for (size_t i = 0; i < pc.size(); ++i) {
            double n = pc[i].norm();
            if (n < eps) continue;
            for (int sign : {1, -1}) {
                Mat3 R = rotation_between(u, pc[i] / n * double(sign));
                if (auto z = verify(R)) return z;
            }
        }
        return std::nullopt;
    }

    Vec3 u1 = fc[f1].normalized();
    Vec3 u2 = (fc[f2] - u1 * fc[f2].dot(u1)).normalized();
    Mat3 U = Mat3::from_columns(u1, u2, u1.cross(u2));
    double r1 = fc[f1].norm(), r2 = fc[f2].norm();
    double cos12 = u1.dot(fc[f2].normalized());

    for (size_t i = 0; i < pc.size(); ++i) {
        if (std::abs(pc[i].norm() - s * r1) > eps) continue;
        Vec3 v1 = pc[i].normalized();
        for (size_t j = 0; j < pc.size(); ++j) {
            if (j == i) continue;
            if (std::abs(pc[j].norm() - s * r2) > eps) continue;
            Vec3 w = pc[j].normalized();
            if (std::abs(v1.dot(w) - cos12) > 4 * eps / std::max(s * r2, eps)) continue;
            Vec3 v2p = w - v1 * w.dot(v1);
            double n = v2p.norm();
            if (n < 1e-9) continue;
            Vec3 v2 = v2p / n;
            Mat3 V = Mat3::from_columns(v1, v2, v1.cross(v2));
            if (auto z = verify(V * U.transposed())) return z;
        }
    }
    return std::nullopt;
}

}  // namespace swarm3d
