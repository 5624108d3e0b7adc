// Dodecahedral cell geometry: the cell constants (edge a, face circumradius R,
// face distance H, circumradius 1), the reference frame o, p0..p4 with its
// three tetrahedra, and membership tests for the region S = T \ unit ball.
//
// Two parameter configurations are provided. "paper" takes a = 0.763934 as
// canonical and derives R = a/(2 sin 36deg) and H = sqrt(1 - R^2); "regular"
// starts from the edge of a regular dodecahedron with circumradius 1,
// a = 4/(sqrt(3)(1+sqrt(5))), and derives R and H the same way.
#pragma once

#include <cmath>

#include "onedens/geometry.hpp"

namespace onedens {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

enum class DodecaConfig { paper, regular };

struct DodecaParams {
    double edge = 0.0;              // pentagon edge a
    double face_circumradius = 0.0; // R, circumradius of a pentagonal face
    double face_distance = 0.0;     // H, distance from the cell center to a face
    double circumradius = 1.0;      // rho, distance from the center to a cell vertex
    double alpha1 = 0.0;            // cell volume / unit ball volume
};

inline DodecaParams dodeca_params(DodecaConfig config) {
    DodecaParams p;
    p.edge = config == DodecaConfig::paper ? 0.763934 : 4.0 / (std::sqrt(3.0) * (1.0 + std::sqrt(5.0)));
    p.face_circumradius = p.edge / (2.0 * std::sin(kPi / 5.0));
    p.face_distance = std::sqrt(1.0 - p.face_circumradius * p.face_circumradius);
    p.circumradius = 1.0;
    // 12 pentagonal pyramids: pentagon area = 5 * (a * R * sin 54deg) / 2.
    const double pentagon = 2.5 * p.edge * p.face_circumradius * std::sin(kPi * 54.0 / 180.0);
    p.alpha1 = (12.0 * pentagon * p.face_distance / 3.0) / (4.0 * kPi / 3.0);
    return p;
}

// Reference frame between the cell at the origin and the neighbor cell at
// p0 = (0, 0, 2H): p2 is the shared face center, p1 and p3 two of its
// vertices 72 degrees apart, p4 the point where the unit sphere cuts o-p0.
struct CellFrame {
    DodecaParams params;
    Point3 o, p0, p1, p2, p3, p4;
    Tetrahedron T;          // (p0, p1, p2, p3)
    Tetrahedron T_prime;    // T cut by z >= 1
    Tetrahedron big_tetra;  // (p0, p1, p3, p4)
    double vol_T = 0.0;
    double vol_T_prime = 0.0;
    double vol_big = 0.0;
    TetraFaces T_faces;     // outward normals
    TetraFaces big_faces;
};

inline CellFrame cell_frame(const DodecaParams& params) {
    const double R = params.face_circumradius;
    const double H = params.face_distance;
    CellFrame f;
    f.params = params;
    f.o = {0.0, 0.0, 0.0};
    f.p0 = {0.0, 0.0, 2.0 * H};
    f.p1 = {0.0, R, H};
    f.p2 = {0.0, 0.0, H};
    f.p3 = {R * std::sin(kPi * 72.0 / 180.0), R * std::cos(kPi * 72.0 / 180.0), H};
    f.p4 = {0.0, 0.0, 1.0};
    f.T = Tetrahedron{{f.p0, f.p1, f.p2, f.p3}};
    // The z >= 1 cut scales T toward the apex p0 by (2H-1)/H.
    const double t = (2.0 * H - 1.0) / H;
    const Point3 p1c = f.p0 + t * (f.p1 - f.p0);
    const Point3 p3c = f.p0 + t * (f.p3 - f.p0);
    f.T_prime = Tetrahedron{{f.p0, p1c, f.p4, p3c}};
    f.big_tetra = Tetrahedron{{f.p0, f.p1, f.p3, f.p4}};
    f.vol_T = tetra_volume(f.T);
    f.vol_T_prime = tetra_volume(f.T_prime);
    f.vol_big = tetra_volume(f.big_tetra);
    f.T_faces = make_tetra_faces(f.T);
    f.big_faces = make_tetra_faces(f.big_tetra);
    return f;
}

// S = closed T minus the open unit ball at the origin.
struct RegionS {
    CellFrame frame;
};

inline bool region_S_contains(const RegionS& r, Point3 q) {
    return r.frame.T_faces.contains(q) && norm2(q) >= (1.0 - kEps) * (1.0 - kEps);
}

// Analytic test that the closed ball B(center, radius) lies inside S: every
// face of T must clear the center by at least `radius`, and the center must
// be at least 1 + radius from the origin. No sampling involved.
inline bool ball_inside_S(const RegionS& r, Point3 center, double radius) {
    if (radius < 0.0) throw std::domain_error("ball_inside_S: negative radius");
    const double clearance = -r.frame.T_faces.max_signed_distance(center);
    return clearance >= radius - kEps && norm(center) >= 1.0 + radius - kEps;
}

}  // namespace onedens
