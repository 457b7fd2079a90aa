// Catalog of generated configurations: the transitive polyhedra of the five
// rotation groups, pyramids, prisms, antiprisms, polygons, group orbits, and
// composites, all at a requested circumradius.
#pragma once

#include "formation.hpp"

namespace swarm3d {

namespace shapes {

inline Configuration scale_to_radius(Configuration pts, double radius) {
    for (auto& p : pts) {
        double n = p.norm();
        if (n > 1e-15) p = p * (radius / n);
    }
    return pts;
}

inline Configuration tetrahedron(double radius = 1.0) {
    Configuration v = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
    return scale_to_radius(std::move(v), radius);
}

inline Configuration cube(double radius = 1.0) {
    Configuration v;
    for (int sx : {-1, 1})
        for (int sy : {-1, 1})
            for (int sz : {-1, 1}) v.push_back({double(sx), double(sy), double(sz)});
    return scale_to_radius(std::move(v), radius);
}

inline Configuration octahedron(double radius = 1.0) {
    return {{radius, 0, 0}, {-radius, 0, 0}, {0, radius, 0},
            {0, -radius, 0}, {0, 0, radius}, {0, 0, -radius}};
}

inline Configuration cuboctahedron(double radius = 1.0) {
    Configuration v;
    for (int s1 : {-1, 1})
        for (int s2 : {-1, 1}) {
            v.push_back({double(s1), double(s2), 0});
            v.push_back({double(s1), 0, double(s2)});
            v.push_back({0, double(s1), double(s2)});
        }
    return scale_to_radius(std::move(v), radius);
}

inline Configuration icosahedron(double radius = 1.0) {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    Configuration v;
    for (int s1 : {-1, 1})
        for (int s2 : {-1, 1}) {
            v.push_back({0, s1 * 1.0, s2 * phi});
            v.push_back({s1 * 1.0, s2 * phi, 0});
            v.push_back({s2 * phi, 0, s1 * 1.0});
        }
    return scale_to_radius(std::move(v), radius);
}

inline Configuration dodecahedron(double radius = 1.0) {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    Configuration v = cube(std::sqrt(3.0));
    for (int s1 : {-1, 1})
        for (int s2 : {-1, 1}) {
            v.push_back({0, s1 / phi, s2 * phi});
            v.push_back({s1 / phi, s2 * phi, 0});
            v.push_back({s2 * phi, 0, s1 / phi});
        }
    return scale_to_radius(std::move(v), radius);
}

inline Configuration icosidodecahedron(double radius = 1.0) {
    // vertices at the edge midpoints of a regular icosahedron
    Configuration ico = icosahedron(1.0);
    double lmin = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < ico.size(); ++i)
        for (size_t j = i + 1; j < ico.size(); ++j) lmin = std::min(lmin, dist(ico[i], ico[j]));
    Configuration v;
    for (size_t i = 0; i < ico.size(); ++i)
        for (size_t j = i + 1; j < ico.size(); ++j)
            if (dist(ico[i], ico[j]) <= lmin * (1 + 1e-9)) v.push_back((ico[i] + ico[j]) * 0.5);
    return scale_to_radius(std::move(v), radius);
}

// Regular k-gon in the z = 0 plane.
inline Configuration ngon(int n, double radius = 1.0, double phase = 0.0) {
    if (n < 3) throw std::invalid_argument("ngon needs n >= 3");
    Configuration v;
    for (int i = 0; i < n; ++i) {
        double a = phase + 2 * M_PI * i / n;
        v.push_back({radius * std::cos(a), radius * std::sin(a), 0});
    }
    return v;
}

// Apex strictly inside the base ring's ball so the apex orbit is innermost.
inline Configuration pyramid(int k, double radius = 1.0, double apex_height = 0.5) {
    if (k < 2) throw std::invalid_argument("pyramid needs k >= 2");
    Configuration v;
    for (int i = 0; i < k; ++i) {
        double a = 2 * M_PI * i / k;
        v.push_back({radius * std::cos(a), radius * std::sin(a), 0});
    }
    v.push_back({0, 0, apex_height * radius});
    return v;
}

inline Configuration prism(int l, double radius = 1.0, double height_ratio = 0.75) {
    if (l < 2) throw std::invalid_argument("prism needs l >= 2");
    Configuration v;
    double r = radius / std::sqrt(1 + height_ratio * height_ratio);
    double h = r * height_ratio;
    for (int i = 0; i < l; ++i) {
        double a = 2 * M_PI * i / l;
        v.push_back({r * std::cos(a), r * std::sin(a), h});
        v.push_back({r * std::cos(a), r * std::sin(a), -h});
    }
    return v;
}

inline Configuration antiprism(int l, double radius = 1.0, double height_ratio = 0.75) {
    if (l < 2) throw std::invalid_argument("antiprism needs l >= 2");
    Configuration v;
    double r = radius / std::sqrt(1 + height_ratio * height_ratio);
    double h = r * height_ratio;
    for (int i = 0; i < l; ++i) {
        double a = 2 * M_PI * i / l;
        double b = a + M_PI / l;
        v.push_back({r * std::cos(a), r * std::sin(a), h});
        v.push_back({r * std::cos(b), r * std::sin(b), -h});
    }
    return v;
}

// Sphenoid: the free D2 orbit of a generic point (four congruent triangles).
inline Configuration sphenoid(double radius = 1.0) {
    Vec3 s{0.9, 0.5, 0.3};
    Configuration v = {{s.x, s.y, s.z}, {s.x, -s.y, -s.z}, {-s.x, s.y, -s.z}, {-s.x, -s.y, s.z}};
    return scale_to_radius(std::move(v), radius);
}

// The orbit of a seed point under a group kind's canonical arrangement.
inline Configuration orbit(const GroupKind& g, const Vec3& seed_point, double radius = 0.0) {
    Arrangement arr = make_arrangement(g);
    Configuration v;
    for (const auto& m : arr.elements) {
        Point3 q = m * seed_point;
        bool dup = false;
        for (const auto& p : v) dup |= dist(p, q) < 1e-9 * (seed_point.norm() + 1);
        if (!dup) v.push_back(q);
    }
    if (radius > 0) v = scale_to_radius(std::move(v), radius);
    return v;
}

// U_{G,mu}: the transitive set with the requested folding, on the canonical
// arrangement. Generic seeds give mu = 1.
inline Configuration transitive_set(const GroupKind& g, int mu, double radius = 1.0,
                                    uint64_t seed = 7) {
    Arrangement arr = make_arrangement(g);
    if (mu == 1) {
        RngStream rng(hash_mix(seed, 0x0f0f1ULL));
        Vec3 s{0.3 + rng.uniform(), 0.15 + rng.uniform(), 0.8 + rng.uniform()};
        return orbit(g, s.normalized() * radius, radius);
    }
    for (const auto& ax : arr.axes)
        if (ax.fold == mu) return orbit(g, ax.direction * radius, radius);
    if (g.is_cyclic() && mu == g.n)
        return orbit(g, Vec3{0, 0, 1} * radius, radius);
    throw std::invalid_argument("no axis with the requested folding");
}

inline Configuration merge(std::initializer_list<Configuration> parts) {
    Configuration v;
    for (const auto& p : parts) v.insert(v.end(), p.begin(), p.end());
    return v;
}

inline Configuration perturbed(Configuration base, double noise, uint64_t seed = 99) {
    RngStream rng(hash_mix(seed, 0xbadd1eULL));
    Ball b = smallest_enclosing_ball(base);
    for (auto& p : base) {
        p.x += noise * b.radius * (rng.uniform() - 0.5) * 2;
        p.y += noise * b.radius * (rng.uniform() - 0.5) * 2;
        p.z += noise * b.radius * (rng.uniform() - 0.5) * 2;
    }
    return base;
}

inline Configuration transformed(const Configuration& pts, const SimilarityTransform& z) {
    return z.apply(pts);
}

}  // namespace shapes

}  // namespace swarm3d
