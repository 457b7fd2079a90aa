#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

#include <swarm3d/swarm3d.hpp>

using namespace swarm3d;

static Configuration random_cloud(int n, uint64_t seed, double lo = -1, double hi = 1) {
    RngStream rng(seed);
    Configuration pts;
    for (int i = 0; i < n; ++i)
        pts.push_back({rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi)});
    return pts;
}

TEST_CASE("smallest enclosing ball of symmetric solids") {
    Ball b = smallest_enclosing_ball(shapes::cube(std::sqrt(3.0)));
    CHECK(dist(b.center, {0, 0, 0}) < 1e-9);
    CHECK(b.radius == Catch::Approx(std::sqrt(3.0)).margin(1e-9));

    Ball t = smallest_enclosing_ball(shapes::tetrahedron(1.0));
    CHECK(dist(t.center, {0, 0, 0}) < 1e-9);
    CHECK(t.radius == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("smallest enclosing ball matches the brute-force support search") {
    for (uint64_t seed : {11ull, 22ull, 33ull}) {
        Configuration pts = random_cloud(50, seed);
        Ball fast = smallest_enclosing_ball(pts);
        Ball slow = oracles::brute_force_seb(pts);
        CHECK(fast.radius == Catch::Approx(slow.radius).margin(1e-9));
        CHECK(dist(fast.center, slow.center) < 1e-7);
    }
}

TEST_CASE("smallest enclosing ball rejects bad input") {
    CHECK_THROWS_WITH(smallest_enclosing_ball({}), "empty point set");
}

TEST_CASE("innermost empty ball") {
    Configuration cube = shapes::cube(std::sqrt(3.0));
    Ball inner = innermost_empty_ball(cube, {0, 0, 0});
    CHECK(inner.radius == Catch::Approx(std::sqrt(3.0)).margin(1e-9));

    Configuration both = shapes::merge({shapes::cube(1.0), shapes::octahedron(0.5)});
    Ball b = smallest_enclosing_ball(both);
    CHECK(innermost_empty_ball(both, b.center).radius == Catch::Approx(0.5).margin(1e-9));

    Configuration pts = random_cloud(30, 5);
    Ball sb = smallest_enclosing_ball(pts);
    double expect = std::numeric_limits<double>::infinity();
    for (const auto& p : pts) expect = std::min(expect, dist(p, sb.center));
    CHECK(innermost_empty_ball(pts, sb.center).radius == Catch::Approx(expect));
}

TEST_CASE("seb is similarity-equivariant") {
    Configuration pts = random_cloud(24, 77);
    SimilarityTransform z;
    z.rotation = rotation_about(Vec3{1, 2, 3}.normalized(), 0.9);
    z.scale = 2.25;
    z.translation = {4, -1, 7};
    Ball b0 = smallest_enclosing_ball(pts);
    Ball b1 = smallest_enclosing_ball(z.apply(pts));
    CHECK(dist(b1.center, z.apply(b0.center)) < 1e-8);
    CHECK(b1.radius == Catch::Approx(b0.radius * z.scale).margin(1e-8));
}

TEST_CASE("similar recovers a constructed transform") {
    Configuration P = random_cloud(15, 42);
    SimilarityTransform z;
    z.rotation = rotation_about(Vec3{1, 2, 3}.normalized(), 37.0 * M_PI / 180.0);
    z.translation = {5, 5, 5};
    z.scale = 2.5;
    Configuration F = P;            // F maps onto P under some transform
    Configuration Pimg = z.apply(P);
    auto rec = similar(Pimg, F);
    REQUIRE(rec.has_value());
    CHECK(oracles::max_point_residual(rec->apply(F), Pimg) < 1e-7);
}

TEST_CASE("similar distinguishes genuinely different shapes") {
    CHECK_FALSE(similar(shapes::cube(1.0), shapes::antiprism(4, 1.0)).has_value());

    // a displaced vertex far beyond tolerance breaks every correspondence
    Configuration cube = shapes::cube(1.0);
    Configuration bent = cube;
    Tolerance tol;
    bent[3] += Vec3{10 * tol.point(1.0), 0, 0};
    CHECK_FALSE(similar(cube, bent, tol).has_value());
}

TEST_CASE("similar on identical input returns the identity") {
    Configuration P = random_cloud(12, 9);
    auto z = similar(P, P);
    REQUIRE(z.has_value());
    CHECK(mat_dist(z->rotation, Mat3::identity()) < 1e-9);
    CHECK(z->scale == Catch::Approx(1.0).margin(1e-9));
    CHECK(z->translation.norm() < 1e-9);
}

TEST_CASE("similar is symmetric") {
    Configuration P = random_cloud(10, 3);
    SimilarityTransform z;
    z.rotation = rotation_about(Vec3{0, 1, 1}.normalized(), 1.234);
    z.scale = 0.4;
    z.translation = {-2, 1, 0};
    Configuration F = z.apply(P);
    CHECK(similar(P, F).has_value());
    CHECK(similar(F, P).has_value());
    Configuration other = random_cloud(10, 4);
    CHECK_FALSE(similar(P, other).has_value());
    CHECK_FALSE(similar(other, P).has_value());
}

TEST_CASE("similar never accepts a reflection") {
    // a chiral set and its mirror image are not similar under T
    Configuration P = {{1, 0, 0}, {0, 2, 0}, {0, 0, 3}, {1, 1, 0.5}, {0.2, 0.9, 2.2}};
    Configuration M = P;
    for (auto& p : M) p.z = -p.z;
    CHECK_FALSE(similar(P, M).has_value());
}

TEST_CASE("rotation axis-angle round trip") {
    RngStream rng(1234);
    for (int i = 0; i < 50; ++i) {
        Mat3 R = rng.rotation();
        Rotation aa = axis_angle_of(R);
        CHECK(mat_dist(rotation_about(aa.axis, aa.angle), R) < 1e-9);
        CHECK(R.det() == Catch::Approx(1.0).margin(1e-9));
    }
}

TEST_CASE("composing a k-fold generator k times gives the identity") {
    for (int k : {2, 3, 4, 5, 6}) {
        Mat3 g = rotation_about(Vec3{0.3, -0.2, 0.93}.normalized(), 2 * M_PI / k);
        Mat3 acc = Mat3::identity();
        for (int i = 0; i < k; ++i) acc = acc * g;
        CHECK(mat_dist(acc, Mat3::identity()) < 1e-9);
    }
}
