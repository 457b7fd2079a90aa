// Test-side oracles, independent of the library implementation paths they
// check: brute-force smallest enclosing ball over support subsets, a
// stand-alone Hungarian matcher, and subgroup enumeration by closing pairs of
// group elements.
#pragma once

#include <swarm3d/swarm3d.hpp>

#include <map>
#include <set>

namespace oracles {

using namespace swarm3d;

// Smallest ball covering all points, found by enumerating every support set
// of one to four points and taking the smallest covering candidate.
inline Ball brute_force_seb(const Configuration& pts) {
    size_t n = pts.size();
    Ball best{{0, 0, 0}, std::numeric_limits<double>::infinity()};
    auto consider = [&](const Ball& b) {
        if (b.radius >= best.radius) return;
        for (const auto& p : pts)
            if (dist(p, b.center) > b.radius * (1 + 1e-10) + 1e-12) return;
        best = b;
    };
    for (size_t i = 0; i < n; ++i) {
        consider({pts[i], 0});
        for (size_t j = i + 1; j < n; ++j) {
            consider(detail::ball_from_2(pts[i], pts[j]));
            for (size_t k = j + 1; k < n; ++k) {
                consider(detail::ball_from_3(pts[i], pts[j], pts[k]));
                for (size_t l = k + 1; l < n; ++l)
                    consider(detail::ball_from_4(pts[i], pts[j], pts[k], pts[l]));
            }
        }
    }
    return best;
}

// Minimum-weight perfect matching as a min-cost flow with Bellman-Ford
// shortest augmenting paths. Slow but transparently correct, and a different
// algorithm family than the library's assignment solver.
inline double hungarian(const std::vector<std::vector<double>>& cost,
                        std::vector<int>* match_out = nullptr) {
    int n = int(cost.size());
    // nodes: 0 = source, 1..n = rows, n+1..2n = cols, 2n+1 = sink
    int N = 2 * n + 2, src = 0, snk = 2 * n + 1;
    struct Edge { int to; double cap, cost; int rev; };
    std::vector<std::vector<Edge>> g(N);
    auto add_edge = [&](int a, int b, double cap, double c) {
        g[a].push_back({b, cap, c, int(g[b].size())});
        g[b].push_back({a, 0, -c, int(g[a].size()) - 1});
    };
    for (int i = 0; i < n; ++i) add_edge(src, 1 + i, 1, 0);
    for (int j = 0; j < n; ++j) add_edge(1 + n + j, snk, 1, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) add_edge(1 + i, 1 + n + j, 1, cost[i][j]);
    double total = 0;
    const double INF = std::numeric_limits<double>::infinity();
    for (int it = 0; it < n; ++it) {
        std::vector<double> d(N, INF);
        std::vector<int> pe(N, -1), pv(N, -1);
        d[src] = 0;
        for (int round = 0; round < N; ++round) {
            bool any = false;
            for (int v = 0; v < N; ++v) {
                if (d[v] == INF) continue;
                for (size_t e = 0; e < g[v].size(); ++e) {
                    const Edge& ed = g[v][e];
                    if (ed.cap > 0.5 && d[v] + ed.cost < d[ed.to] - 1e-15) {
                        d[ed.to] = d[v] + ed.cost;
                        pv[ed.to] = v;
                        pe[ed.to] = int(e);
                        any = true;
                    }
                }
            }
            if (!any) break;
        }
        if (d[snk] == INF) throw std::runtime_error("no augmenting path");
        total += d[snk];
        for (int v = snk; v != src; v = pv[v]) {
            Edge& ed = g[pv[v]][pe[v]];
            ed.cap -= 1;
            g[v][ed.rev].cap += 1;
        }
    }
    if (match_out) {
        match_out->assign(n, -1);
        for (int i = 0; i < n; ++i)
            for (const Edge& ed : g[1 + i])
                if (ed.to >= 1 + n && ed.to < 1 + 2 * n && ed.cap < 0.5 && ed.cost >= 0)
                    (*match_out)[i] = ed.to - 1 - n;
    }
    return total;
}

// All subgroup kinds of a finite rotation group, found by closing every pair
// of elements under multiplication and classifying the closure.
inline std::set<std::string> subgroup_kinds_by_closure(const GroupKind& g) {
    Arrangement arr = make_arrangement(g);
    std::set<uint64_t> seen;
    std::set<std::string> kinds;
    kinds.insert("C1");
    size_t n = arr.elements.size();
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a; b < n; ++b) {
            auto closure = detail::close_group({arr.elements[a], arr.elements[b]});
            uint64_t key = detail::element_set_key(closure);
            if (seen.count(key)) continue;
            seen.insert(key);
            kinds.insert(classify_rotation_set(closure).kind.str());
        }
    return kinds;
}

// Count of distinct subgroup copies of `g` inside `host` (as element sets).
inline int subgroup_copy_count(const GroupKind& g, const GroupKind& host) {
    Arrangement arr = make_arrangement(host);
    std::set<uint64_t> copies;
    size_t n = arr.elements.size();
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a; b < n; ++b) {
            auto closure = detail::close_group({arr.elements[a], arr.elements[b]});
            Arrangement c = classify_rotation_set(closure);
            if (c.kind == g) copies.insert(detail::element_set_key(closure));
        }
    return int(copies.size());
}

inline double max_point_residual(const Configuration& a, const Configuration& b) {
    // greedy multiset distance: max over a of distance to the nearest b
    double worst = 0;
    std::vector<char> used(b.size(), 0);
    for (const auto& p : a) {
        double best = std::numeric_limits<double>::infinity();
        int bj = -1;
        for (size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            double d = dist(p, b[j]);
            if (d < best) { best = d; bj = int(j); }
        }
        if (bj >= 0) used[bj] = 1;
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace oracles
