#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "onedens/geometry.hpp"
#include "onedens/random.hpp"

using namespace onedens;

namespace {

Tetrahedron random_tetra(RandomStream& rs) {
    for (;;) {
        Tetrahedron t;
        for (auto& v : t.v) v = {rs.uniform(-2, 2), rs.uniform(-2, 2), rs.uniform(-2, 2)};
        if (tetra_volume(t) > 1e-3) return t;
    }
}

ConvexPolygon2 unit_square() {
    return ConvexPolygon2{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
}

}  // namespace

TEST_CASE("tetra_volume on the unit corner simplex") {
    const Tetrahedron t{{Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}}};
    REQUIRE(tetra_volume(t) == Catch::Approx(1.0 / 6.0).margin(1e-15));
}

TEST_CASE("tetra_volume of coplanar points is zero") {
    const Tetrahedron t{{Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0.3, 0.4, 0}}};
    REQUIRE(tetra_volume(t) == 0.0);
}

TEST_CASE("tetra_volume is invariant under permutation and translation, scales cubically") {
    RandomStream rs(42, 0);
    for (int iter = 0; iter < 50; ++iter) {
        const Tetrahedron t = random_tetra(rs);
        const double vol = tetra_volume(t);

        Tetrahedron perm{{t.v[2], t.v[0], t.v[3], t.v[1]}};
        REQUIRE(tetra_volume(perm) == Catch::Approx(vol).epsilon(1e-12));

        const Vec3 shift{rs.uniform(-5, 5), rs.uniform(-5, 5), rs.uniform(-5, 5)};
        Tetrahedron moved = t;
        for (auto& v : moved.v) v = v + shift;
        REQUIRE(tetra_volume(moved) == Catch::Approx(vol).epsilon(1e-9));

        for (double s : {0.5, 2.0, 10.0}) {
            Tetrahedron scaled = t;
            for (auto& v : scaled.v) v = s * v;
            REQUIRE(tetra_volume(scaled) == Catch::Approx(vol * s * s * s).epsilon(1e-12));
        }
    }
}

TEST_CASE("clip_convex_polygon axis cut of the unit square") {
    const auto clipped = clip_convex_polygon(unit_square(), make_halfplane({1, 0}, 0.5));
    REQUIRE(clipped.area() == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("clip_convex_polygon keeps a fully contained polygon") {
    const auto clipped = clip_convex_polygon(unit_square(), make_halfplane({1, 0}, 10.0));
    REQUIRE(clipped.vertices.size() == 4);
    REQUIRE(clipped.area() == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("clip_convex_polygon against a disjoint half-plane empties it") {
    const auto clipped = clip_convex_polygon(unit_square(), make_halfplane({1, 0}, -1.0));
    REQUIRE(clipped.empty());
}

TEST_CASE("clipping is idempotent, never grows area, and respects the half-plane") {
    RandomStream rs(7, 0);
    for (int iter = 0; iter < 100; ++iter) {
        ConvexPolygon2 poly{{{-3, -3}, {3, -3}, {3, 3}, {-3, 3}}};
        for (int c = 0; c < 5; ++c) {
            const double ang = rs.uniform(0, 2 * 3.14159265358979);
            const HalfPlane h = make_halfplane({std::cos(ang), std::sin(ang)}, rs.uniform(-1, 2));
            const double before = poly.area();
            poly = clip_convex_polygon(poly, h);
            REQUIRE(poly.area() <= before + 1e-12);
            for (const Point2& v : poly.vertices) REQUIRE(dot(h.normal, v) <= h.offset + 1e-9);
            const ConvexPolygon2 again = clip_convex_polygon(poly, h);
            REQUIRE(again.area() == Catch::Approx(poly.area()).margin(1e-12));
            if (poly.empty()) break;
        }
    }
}

TEST_CASE("lens area endpoints are exact") {
    REQUIRE(lens_area_unit_circles(2.0) == Catch::Approx(0.0).margin(1e-12));
    REQUIRE(lens_area_unit_circles(0.0) == Catch::Approx(3.14159265358979323846).margin(1e-12));
}

TEST_CASE("lens area at sqrt(3) matches the frozen value and a sampling oracle") {
    const double got = lens_area_unit_circles(std::sqrt(3.0));
    REQUIRE(got == Catch::Approx(0.1811722).margin(1e-6));

    // Monte Carlo overlap of two unit disks at distance sqrt(3).
    const double d = std::sqrt(3.0);
    const Vec2 c1{-d / 2, 0}, c2{d / 2, 0};
    RandomStream rs(99, 0);
    const double half_w = 1.0 - d / 2;
    const std::int64_t n = 2000000;
    std::int64_t hits = 0;
    for (std::int64_t i = 0; i < n; ++i) {
        const Vec2 q{rs.uniform(-half_w, half_w), rs.uniform(-1, 1)};
        if (norm2(q - c1) <= 1.0 && norm2(q - c2) <= 1.0) ++hits;
    }
    const double box = 2 * half_w * 2.0;
    const double p = static_cast<double>(hits) / n;
    const double mc = box * p;
    const double se = box * std::sqrt(p * (1 - p) / n);
    REQUIRE(std::abs(mc - got) <= 3 * se);
}

TEST_CASE("lens area is strictly decreasing on [0, 2]") {
    double prev = lens_area_unit_circles(0.0);
    for (int k = 1; k <= 40; ++k) {
        const double cur = lens_area_unit_circles(2.0 * k / 40);
        REQUIRE(cur < prev);
        prev = cur;
    }
}

TEST_CASE("lens area rejects out-of-domain separation") {
    REQUIRE_THROWS_AS(lens_area_unit_circles(-0.1), std::domain_error);
    REQUIRE_THROWS_AS(lens_area_unit_circles(2.1), std::domain_error);
}

TEST_CASE("constructed half-planes and planes carry unit normals") {
    const HalfPlane h = make_halfplane({3, 4}, 10);
    REQUIRE(norm(h.normal) == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(h.contains({0, 0}));

    const Plane3 pl = plane_through({0, 0, 1}, {1, 2, 1}, {-1, 1, 4});
    REQUIRE(norm(pl.normal) == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(std::abs(pl.signed_distance({0, 0, 1})) <= 1e-12);
}

TEST_CASE("bisector half-plane keeps the site side and rejects coincident input") {
    const HalfPlane h = bisector_halfplane({0, 0}, {2, 0});
    REQUIRE(h.contains({0, 0}));
    REQUIRE_FALSE(h.contains({1.5, 0}));
    REQUIRE(std::abs(dot(h.normal, Vec2{1, 0}) - h.offset + 0.0) >= 0.0);
    REQUIRE_THROWS_AS(bisector_halfplane({1, 1}, {1, 1}), std::invalid_argument);
}

TEST_CASE("tetra face planes point outward") {
    const Tetrahedron t{{Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}}};
    const TetraFaces faces = make_tetra_faces(t);
    const Vec3 inside{0.2, 0.2, 0.2};
    REQUIRE(faces.contains(inside));
    REQUIRE(faces.max_signed_distance(inside) < 0.0);
    REQUIRE_FALSE(faces.contains({1, 1, 1}));
    REQUIRE_THROWS_AS(
        make_tetra_faces(Tetrahedron{{Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{1, 1, 0}}}),
        std::invalid_argument);
}
