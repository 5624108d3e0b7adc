// Core geometric value types and primitives shared by every module:
// 2D/3D vectors, half-planes, planes, tetrahedra, convex polygons, and
// the closed-form lens area of two overlapping unit circles.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace onedens {

// Absolute tolerance for closed containment predicates. Boundary
// configurations (circumradius exactly 1) must test as inside.
inline constexpr double kEps = 1e-9;

// Runtime numerical failure (as opposed to a precondition violation,
// which throws std::invalid_argument / std::domain_error).
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
constexpr double norm2(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::sqrt(norm2(a)); }

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
constexpr Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
constexpr double norm2(Vec3 a) { return dot(a, a); }
inline double norm(Vec3 a) { return std::sqrt(norm2(a)); }

using Point2 = Vec2;
using Point3 = Vec3;

// Closed half-plane {x : dot(normal, x) <= offset} with unit normal.
struct HalfPlane {
    Vec2 normal;
    double offset = 0.0;

    bool contains(Vec2 p, double eps = kEps) const { return dot(normal, p) <= offset + eps; }
};

inline HalfPlane make_halfplane(Vec2 normal, double offset) {
    const double n = norm(normal);
    if (n <= 0.0) throw std::invalid_argument("half-plane normal must be nonzero");
    return HalfPlane{{normal.x / n, normal.y / n}, offset / n};
}

// Half-plane of points at least as close to `site` as to `other`.
inline HalfPlane bisector_halfplane(Point2 site, Point2 other) {
    const Vec2 d = other - site;
    const double len = norm(d);
    if (len <= 1e-12) throw std::invalid_argument("bisector: neighbor coincides with site");
    const Vec2 n{d.x / len, d.y / len};
    const Vec2 mid = 0.5 * (site + other);
    return HalfPlane{n, dot(n, mid)};
}

// Oriented plane {x : dot(normal, x) = offset} with unit normal.
struct Plane3 {
    Vec3 normal;
    double offset = 0.0;

    double signed_distance(Vec3 p) const { return dot(normal, p) - offset; }
};

inline Plane3 plane_through(Point3 a, Point3 b, Point3 c) {
    const Vec3 n = cross(b - a, c - a);
    const double len = norm(n);
    if (len <= 0.0) throw std::invalid_argument("plane through collinear points");
    const Vec3 u{n.x / len, n.y / len, n.z / len};
    return Plane3{u, dot(u, a)};
}

struct Tetrahedron {
    std::array<Point3, 4> v;
};

inline double tetra_volume(const Tetrahedron& t) {
    const Vec3 a = t.v[1] - t.v[0];
    const Vec3 b = t.v[2] - t.v[0];
    const Vec3 c = t.v[3] - t.v[0];
    return std::abs(dot(a, cross(b, c))) / 6.0;
}

// Face planes of a tetrahedron, normals pointing outward.
struct TetraFaces {
    std::array<Plane3, 4> faces;

    // Largest outward signed distance; <= eps means inside (closed).
    double max_signed_distance(Point3 p) const {
        double worst = -std::numeric_limits<double>::infinity();
        for (const Plane3& f : faces) worst = std::max(worst, f.signed_distance(p));
        return worst;
    }
    bool contains(Point3 p, double eps = kEps) const { return max_signed_distance(p) <= eps; }
};

inline TetraFaces make_tetra_faces(const Tetrahedron& t) {
    if (tetra_volume(t) <= 0.0) throw std::invalid_argument("degenerate simplex");
    static constexpr int idx[4][3] = {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
    TetraFaces out;
    for (int i = 0; i < 4; ++i) {
        Plane3 pl = plane_through(t.v[idx[i][0]], t.v[idx[i][1]], t.v[idx[i][2]]);
        if (pl.signed_distance(t.v[i]) > 0.0) {
            pl.normal = -1.0 * pl.normal;
            pl.offset = -pl.offset;
        }
        out.faces[i] = pl;
    }
    return out;
}

// Convex polygon, vertices in counterclockwise order. May be empty.
struct ConvexPolygon2 {
    std::vector<Point2> vertices;

    bool empty() const { return vertices.empty(); }

    double area() const {
        double s = 0.0;
        const std::size_t n = vertices.size();
        for (std::size_t i = 0; i < n; ++i) s += cross(vertices[i], vertices[(i + 1) % n]);
        return 0.5 * s;
    }
};

// Clip a convex polygon against one half-plane (Sutherland-Hodgman step).
inline ConvexPolygon2 clip_convex_polygon(const ConvexPolygon2& poly, const HalfPlane& h) {
    ConvexPolygon2 out;
    const std::size_t n = poly.vertices.size();
    if (n == 0) return out;
    out.vertices.reserve(n + 1);
    double dcur = dot(h.normal, poly.vertices[n - 1]) - h.offset;
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 cur = poly.vertices[(i + n - 1) % n];
        const Point2 nxt = poly.vertices[i];
        const double dnxt = dot(h.normal, nxt) - h.offset;
        if (dcur <= 0.0) {
            out.vertices.push_back(cur);
            if (dnxt > 0.0) {
                const double t = dcur / (dcur - dnxt);
                out.vertices.push_back(cur + t * (nxt - cur));
            }
        } else if (dnxt <= 0.0) {
            const double t = dcur / (dcur - dnxt);
            out.vertices.push_back(cur + t * (nxt - cur));
        }
        dcur = dnxt;
    }
    return out;
}

// Area of the intersection of two unit circles whose centers are d apart:
// 2*acos(d/2) - (d/2)*sqrt(4 - d^2).
inline double lens_area_unit_circles(double d) {
    if (!(d >= 0.0 && d <= 2.0)) throw std::domain_error("lens_area_unit_circles: d outside [0, 2]");
    return 2.0 * std::acos(d / 2.0) - (d / 2.0) * std::sqrt(4.0 - d * d);
}

}  // namespace onedens
