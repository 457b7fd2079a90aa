// Finite rotation groups of 3D space: the cyclic and dihedral families plus
// the tetrahedral, octahedral, and icosahedral groups. Provides the subgroup
// lattice, canonical axis arrangements, group-element generation, and
// classification of a closed set of rotation matrices back into a kind.
#pragma once

#include "geom3.hpp"

#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace swarm3d {

// ---------------------------------------------------------------------------
// Group kinds

enum class GroupFamily { Cyclic, Dihedral, Tetrahedral, Octahedral, Icosahedral,
                         CyclicInf, DihedralInf };

struct GroupKind {
    GroupFamily family = GroupFamily::Cyclic;
    int n = 1;  // parameter for cyclic/dihedral families

    static GroupKind C(int k) { return {GroupFamily::Cyclic, k}; }
    static GroupKind D(int l) { return {GroupFamily::Dihedral, l}; }
    static GroupKind T() { return {GroupFamily::Tetrahedral, 0}; }
    static GroupKind O() { return {GroupFamily::Octahedral, 0}; }
    static GroupKind I() { return {GroupFamily::Icosahedral, 0}; }
    static GroupKind Cinf() { return {GroupFamily::CyclicInf, 0}; }
    static GroupKind Dinf() { return {GroupFamily::DihedralInf, 0}; }

    bool operator==(const GroupKind& o) const { return family == o.family && n == o.n; }
    bool operator!=(const GroupKind& o) const { return !(*this == o); }
    bool operator<(const GroupKind& o) const {
        if (family != o.family) return family < o.family;
        return n < o.n;
    }

    bool finite() const {
        return family != GroupFamily::CyclicInf && family != GroupFamily::DihedralInf;
    }
    bool is_polyhedral() const {
        return family == GroupFamily::Tetrahedral || family == GroupFamily::Octahedral ||
               family == GroupFamily::Icosahedral;
    }
    bool is_cyclic() const { return family == GroupFamily::Cyclic; }
    bool is_dihedral() const { return family == GroupFamily::Dihedral; }

    int order() const {
        switch (family) {
            case GroupFamily::Cyclic: return n;
            case GroupFamily::Dihedral: return 2 * n;
            case GroupFamily::Tetrahedral: return 12;
            case GroupFamily::Octahedral: return 24;
            case GroupFamily::Icosahedral: return 60;
            default: throw std::invalid_argument("unsupported: infinite group order");
        }
    }

    std::string str() const {
        switch (family) {
            case GroupFamily::Cyclic: return "C" + std::to_string(n);
            case GroupFamily::Dihedral: return "D" + std::to_string(n);
            case GroupFamily::Tetrahedral: return "T";
            case GroupFamily::Octahedral: return "O";
            case GroupFamily::Icosahedral: return "I";
            case GroupFamily::CyclicInf: return "Cinf";
            case GroupFamily::DihedralInf: return "Dinf";
        }
        return "?";
    }

    static GroupKind parse(const std::string& s) {
        if (s == "T") return T();
        if (s == "O") return O();
        if (s == "I") return I();
        if (s == "Cinf") return Cinf();
        if (s == "Dinf") return Dinf();
        if (s.size() >= 2 && (s[0] == 'C' || s[0] == 'D')) {
            int k = std::stoi(s.substr(1));
            if (s[0] == 'C' && k >= 1) return C(k);
            if (s[0] == 'D' && k >= 2) return D(k);
        }
        throw std::invalid_argument("unknown group kind: " + s);
    }
};

// Subgroup relation g <= h over the finite kinds.
inline bool is_subgroup(const GroupKind& g, const GroupKind& h) {
    if (!g.finite() || !h.finite()) throw std::invalid_argument("unsupported: infinite kinds");
    using F = GroupFamily;
    if (g.family == F::Cyclic && g.n == 1) return true;
    switch (h.family) {
        case F::Cyclic:
            return g.family == F::Cyclic && h.n % g.n == 0;
        case F::Dihedral:
            if (g.family == F::Cyclic) return h.n % g.n == 0 || g.n == 2;
            if (g.family == F::Dihedral) return h.n % g.n == 0;
            return false;
        case F::Tetrahedral:
            if (g.family == F::Cyclic) return g.n == 2 || g.n == 3;
            if (g.family == F::Dihedral) return g.n == 2;
            return g.family == F::Tetrahedral;
        case F::Octahedral:
            if (g.family == F::Cyclic) return g.n >= 2 && g.n <= 4;
            if (g.family == F::Dihedral) return g.n >= 2 && g.n <= 4;
            return g.family == F::Tetrahedral || g.family == F::Octahedral;
        case F::Icosahedral:
            if (g.family == F::Cyclic) return g.n == 2 || g.n == 3 || g.n == 5;
            if (g.family == F::Dihedral) return g.n == 2 || g.n == 3 || g.n == 5;
            return g.family == F::Tetrahedral || g.family == F::Icosahedral;
        default:
            return false;
    }
}

inline bool is_proper_subgroup(const GroupKind& g, const GroupKind& h) {
    return g != h && is_subgroup(g, h);
}

// ---------------------------------------------------------------------------
// Arrangements

struct Axis {
    Vec3 direction{0, 0, 1};  // unit; the positive direction when oriented
    int fold = 2;             // 0 encodes the infinite fold of Cinf/Dinf
    bool oriented = false;
    bool principal = false;
    bool occupied = false;
};

// A rotation group together with a concrete spatial embedding of its axes.
struct Arrangement {
    GroupKind kind = GroupKind::C(1);
    Point3 center{0, 0, 0};
    std::vector<Axis> axes;
    std::vector<Mat3> elements;  // all |kind| rotation matrices, identity first

    const Axis* principal_axis() const {
        for (const auto& a : axes)
            if (a.principal) return &a;
        return nullptr;
    }
    int axis_count(int fold) const {
        int c = 0;
        for (const auto& a : axes) c += (a.fold == fold);
        return c;
    }
    int max_fold() const {
        int f = 1;
        for (const auto& a : axes) f = std::max(f, a.fold);
        return f;
    }
};

namespace detail {

inline Vec3 canonical_line_dir(Vec3 u) {
    u = u.normalized();
    const double e = 1e-9;
    if (u.x > e) return u;
    if (u.x < -e) return -u;
    if (u.y > e) return u;
    if (u.y < -e) return -u;
    return u.z >= 0 ? u : -u;
}

inline uint64_t mat_key(const Mat3& m) {
    uint64_t h = 1469598103934665603ULL;
    for (double v : m.m) {
        auto q = int64_t(std::llround(v * 1e7));
        h = hash_mix(h, uint64_t(q));
    }
    return h;
}

// Closure of a generating set of rotation matrices under multiplication.
inline std::vector<Mat3> close_group(std::vector<Mat3> gens, size_t cap = 256) {
    std::vector<Mat3> elems{Mat3::identity()};
    std::set<uint64_t> seen{mat_key(Mat3::identity())};
    auto add = [&](const Mat3& m) {
        uint64_t k = mat_key(m);
        if (seen.count(k)) return false;
        seen.insert(k);
        elems.push_back(m);
        return true;
    };
    for (const auto& g : gens) add(g);
    bool grew = true;
    while (grew) {
        grew = false;
        size_t n = elems.size();
        for (size_t i = 0; i < n && elems.size() <= cap; ++i)
            for (size_t j = 1; j < n && elems.size() <= cap; ++j)
                grew |= add(elems[i] * elems[j]);
        if (elems.size() > cap)
            throw std::runtime_error("rotation set does not close into a finite group");
    }
    return elems;
}

}  // namespace detail

// Extract the axis/fold structure of a closed finite set of rotation matrices
// and classify it as one of the five kinds. Orientation flags follow the group
// rules: the C_k axis is oriented, secondary axes of odd dihedral groups are
// oriented, the 3-fold axes of T are oriented; nothing else is.
inline Arrangement classify_rotation_set(const std::vector<Mat3>& elements,
                                         const Point3& center = {0, 0, 0}) {
    Arrangement arr;
    arr.center = center;
    arr.elements = elements;

    // group the non-identity elements by axis line
    struct AxisAcc { Vec3 dir; int count = 0; };
    std::vector<AxisAcc> acc;
    for (const auto& m : elements) {
        Rotation r = axis_angle_of(m);
        if (r.angle < 1e-7) continue;
        Vec3 d = detail::canonical_line_dir(r.axis);
        bool found = false;
        for (auto& a : acc) {
            if (std::abs(a.dir.dot(d)) > 1.0 - 1e-7) { a.count++; found = true; break; }
        }
        if (!found) acc.push_back({d, 1});
    }

    for (const auto& a : acc) arr.axes.push_back({a.dir, a.count + 1, false, false, false});
    std::sort(arr.axes.begin(), arr.axes.end(), [](const Axis& a, const Axis& b) {
        if (a.fold != b.fold) return a.fold > b.fold;
        if (std::abs(a.direction.x - b.direction.x) > 1e-9) return a.direction.x < b.direction.x;
        if (std::abs(a.direction.y - b.direction.y) > 1e-9) return a.direction.y < b.direction.y;
        return a.direction.z < b.direction.z;
    });

    std::map<int, int> by_fold;
    for (const auto& a : arr.axes) by_fold[a.fold]++;
    size_t order = elements.size();

    auto folds_are = [&](std::initializer_list<std::pair<int, int>> spec) {
        if (by_fold.size() != spec.size()) return false;
        for (auto [f, c] : spec)
            if (by_fold.count(f) == 0 || by_fold[f] != c) return false;
        return true;
    };

    if (arr.axes.empty()) {
        arr.kind = GroupKind::C(1);
    } else if (arr.axes.size() == 1) {
        arr.kind = GroupKind::C(arr.axes[0].fold);
        arr.axes[0].oriented = true;
        arr.axes[0].principal = true;
    } else if (folds_are({{2, 3}}) && order == 4) {
        arr.kind = GroupKind::D(2);
        // principal selection is configuration-dependent; callers set it
    } else if (folds_are({{3, 4}, {2, 3}}) && order == 12) {
        arr.kind = GroupKind::T();
        for (auto& a : arr.axes) a.oriented = (a.fold == 3);
    } else if (folds_are({{4, 3}, {3, 4}, {2, 6}}) && order == 24) {
        arr.kind = GroupKind::O();
    } else if (folds_are({{5, 6}, {3, 10}, {2, 15}}) && order == 60) {
        arr.kind = GroupKind::I();
    } else {
        // dihedral: one l-fold principal plus l 2-fold secondaries
        int l = arr.axes[0].fold;
        if (l > 2 && by_fold.size() == 2 && by_fold[2] == l && order == size_t(2 * l)) {
            arr.kind = GroupKind::D(l);
            arr.axes[0].principal = true;
            if (l % 2 == 1)
                for (size_t i = 1; i < arr.axes.size(); ++i) arr.axes[i].oriented = true;
        } else {
            throw std::runtime_error("unrecognized rotation set (order " +
                                     std::to_string(order) + ")");
        }
    }

    // sanity: sum over axes of (fold - 1) plus identity equals the order
    size_t expect = 1;
    for (const auto& a : arr.axes) expect += size_t(a.fold - 1);
    if (expect != order)
        throw std::runtime_error("inconsistent rotation set: axis folds do not match order");
    return arr;
}

// ---------------------------------------------------------------------------
// Canonical arrangements

namespace detail {

inline std::vector<Mat3> canonical_generators(const GroupKind& kind) {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    switch (kind.family) {
        case GroupFamily::Cyclic:
            if (kind.n == 1) return {};
            return {rotation_about({0, 0, 1}, 2 * M_PI / kind.n)};
        case GroupFamily::Dihedral:
            return {rotation_about({0, 0, 1}, 2 * M_PI / kind.n),
                    rotation_about({1, 0, 0}, M_PI)};
        case GroupFamily::Tetrahedral:
            return {rotation_about({0, 0, 1}, M_PI),
                    rotation_about(Vec3{1, 1, 1}.normalized(), 2 * M_PI / 3)};
        case GroupFamily::Octahedral:
            return {rotation_about({0, 0, 1}, M_PI / 2),
                    rotation_about(Vec3{1, 1, 1}.normalized(), 2 * M_PI / 3)};
        case GroupFamily::Icosahedral:
            return {rotation_about(Vec3{0, 1, phi}.normalized(), 2 * M_PI / 5),
                    rotation_about(Vec3{1, 1, 1}.normalized(), 2 * M_PI / 3)};
        default:
            throw std::invalid_argument("unsupported: infinite kinds have no generators");
    }
}

}  // namespace detail

// Canonical arrangement of a finite kind at the origin. For the tetrahedral
// group the oriented 3-fold directions point at (1,1,1), (1,-1,-1), (-1,1,-1),
// (-1,-1,1).
inline Arrangement make_arrangement(const GroupKind& kind, const Point3& center = {0, 0, 0}) {
    auto elems = detail::close_group(detail::canonical_generators(kind));
    if (elems.size() != size_t(kind.order()))
        throw std::runtime_error("canonical generator closure has wrong order");
    Arrangement arr = classify_rotation_set(elems, center);
    if (arr.kind != kind) throw std::runtime_error("canonical arrangement misclassified");
    if (kind.family == GroupFamily::Tetrahedral) {
        // orient the 3-fold axes toward the reference tetrahedron
        const Vec3 tet[4] = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
        for (auto& a : arr.axes) {
            if (a.fold != 3) continue;
            for (const auto& t : tet)
                if (a.direction.dot(t.normalized()) > 0.9) { a.direction = t.normalized(); break; }
        }
    }
    return arr;
}

// All |G| rotations of an arrangement as matrices about its center are already
// carried in `elements`; apply one to a point about the center.
inline Point3 apply_about(const Mat3& R, const Point3& p, const Point3& center) {
    return center + R * (p - center);
}

}  // namespace swarm3d
