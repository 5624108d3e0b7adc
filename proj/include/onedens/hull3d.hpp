// Incremental 3D convex hull with conflict lists (quickhull insertion order):
// each pending point is attached to a face it sees; inserting a face's
// furthest point removes the visible region and retriangulates the horizon.
//
// The orientation predicate uses an absolute tolerance tau scaled by the
// bounding-box diagonal, so a point is treated as outside a face only if its
// signed distance exceeds tau; exactly coplanar insertions are therefore
// resolved the same way on every run.
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "onedens/geometry.hpp"

namespace onedens {

struct HullFace {
    std::array<int, 3> v;  // CCW seen from outside, indices into the input
    Vec3 normal;           // outward unit normal
    double offset = 0.0;   // dot(normal, x) = offset on the face plane
};

struct HullMesh {
    std::vector<Point3> points;     // the original input, in input order
    std::vector<HullFace> faces;
    std::vector<int> hull_vertices; // sorted unique input indices on the hull
    double tolerance = 0.0;         // tau used during construction

    int vertex_count() const { return static_cast<int>(hull_vertices.size()); }
    int face_count() const { return static_cast<int>(faces.size()); }
    int edge_count() const { return face_count() * 3 / 2; }  // each edge borders 2 faces
};

namespace detail {

struct BuildFace {
    std::array<int, 3> v;
    std::array<int, 3> nb;  // neighbor across edge (v[i], v[(i+1)%3])
    Vec3 normal;
    double offset;
    bool alive = true;
    std::vector<int> outside;
    int furthest = -1;
    double furthest_dist = 0.0;
};

class HullBuilder {
public:
    explicit HullBuilder(const std::vector<Point3>& pts) : pts_(pts) {}

    HullMesh build() {
        const int n = static_cast<int>(pts_.size());
        if (n < 4) throw std::invalid_argument("degenerate hull input");
        compute_tolerance();
        std::array<int, 4> simplex = initial_simplex();
        make_simplex_faces(simplex);
        assign_initial_points(simplex);

        while (!pending_.empty()) {
            const int fid = pending_.back();
            pending_.pop_back();
            if (!faces_[fid].alive || faces_[fid].outside.empty()) continue;
            insert_point(fid, faces_[fid].furthest);
        }
        return finish();
    }

private:
    struct Horizon {
        int u, v, hidden;
    };

    const std::vector<Point3>& pts_;
    std::vector<BuildFace> faces_;
    std::vector<int> pending_;
    std::vector<int> stamp_;   // visibility epoch per face
    int epoch_ = 0;
    // per-insertion scratch, reused across calls
    std::vector<int> visible_, stack_, fresh_;
    std::vector<char> used_;
    std::vector<Horizon> horizon_;
    Vec3 interior_{};
    double tau_ = 0.0;

    double dist(const BuildFace& f, int p) const { return dot(f.normal, pts_[p]) - f.offset; }

    void compute_tolerance() {
        Vec3 lo = pts_[0], hi = pts_[0];
        for (const Point3& p : pts_) {
            lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
            hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
        }
        tau_ = 1e-10 * std::max(norm(hi - lo), 1e-30);
    }

    std::array<int, 4> initial_simplex() {
        // Extreme points along the coordinate axes, best-volume quadruple.
        std::array<int, 6> ext = {0, 0, 0, 0, 0, 0};
        for (int i = 1; i < static_cast<int>(pts_.size()); ++i) {
            if (pts_[i].x < pts_[ext[0]].x) ext[0] = i;
            if (pts_[i].x > pts_[ext[1]].x) ext[1] = i;
            if (pts_[i].y < pts_[ext[2]].y) ext[2] = i;
            if (pts_[i].y > pts_[ext[3]].y) ext[3] = i;
            if (pts_[i].z < pts_[ext[4]].z) ext[4] = i;
            if (pts_[i].z > pts_[ext[5]].z) ext[5] = i;
        }
        std::vector<int> cand(ext.begin(), ext.end());
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

        const double diag = tau_ * 1e10;
        const double vol_tol = 1e-10 * diag * diag * diag;
        std::array<int, 4> best{-1, -1, -1, -1};
        double best_vol = 0.0;
        const int k = static_cast<int>(cand.size());
        for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b)
                for (int c = b + 1; c < k; ++c)
                    for (int d = c + 1; d < k; ++d) {
                        const double vol = std::abs(dot(pts_[cand[b]] - pts_[cand[a]],
                                                        cross(pts_[cand[c]] - pts_[cand[a]],
                                                              pts_[cand[d]] - pts_[cand[a]])));
                        if (vol > best_vol) {
                            best_vol = vol;
                            best = {cand[a], cand[b], cand[c], cand[d]};
                        }
                    }
        if (best_vol > vol_tol) return best;
        return greedy_simplex();
    }

    // Fallback when the axis extremes happen to be near-coplanar.
    std::array<int, 4> greedy_simplex() {
        const int n = static_cast<int>(pts_.size());
        const int a = 0;
        int b = -1;
        double bd = 0.0;
        for (int i = 1; i < n; ++i) {
            const double d = norm2(pts_[i] - pts_[a]);
            if (d > bd) { bd = d; b = i; }
        }
        if (b < 0 || !(bd > 0.0)) throw std::invalid_argument("degenerate hull input");
        int c = -1;
        double cd = 0.0;
        for (int i = 0; i < n; ++i) {
            const double d = norm2(cross(pts_[b] - pts_[a], pts_[i] - pts_[a]));
            if (d > cd) { cd = d; c = i; }
        }
        if (c < 0 || !(cd > 0.0)) throw std::invalid_argument("degenerate hull input");
        const Vec3 nrm = cross(pts_[b] - pts_[a], pts_[c] - pts_[a]);
        int d = -1;
        double dd = 0.0;
        for (int i = 0; i < n; ++i) {
            const double h = std::abs(dot(nrm, pts_[i] - pts_[a]));
            if (h > dd) { dd = h; d = i; }
        }
        if (d < 0 || dd <= tau_ * norm(nrm)) throw std::invalid_argument("degenerate hull input");
        return {a, b, c, d};
    }

    void make_face(std::array<int, 3> v, std::array<int, 3> nb) {
        BuildFace f;
        f.v = v;
        f.nb = nb;
        const Vec3 n = cross(pts_[v[1]] - pts_[v[0]], pts_[v[2]] - pts_[v[0]]);
        const double len = norm(n);
        f.normal = (1.0 / len) * n;
        f.offset = dot(f.normal, pts_[v[0]]);
        faces_.push_back(std::move(f));
        stamp_.push_back(0);
    }

    void make_simplex_faces(std::array<int, 4>& s) {
        // Orient so the standard face windings point outward.
        const double det = dot(pts_[s[1]] - pts_[s[0]],
                               cross(pts_[s[2]] - pts_[s[0]], pts_[s[3]] - pts_[s[0]]));
        if (det < 0.0) std::swap(s[2], s[3]);
        interior_ = 0.25 * (pts_[s[0]] + pts_[s[1]] + pts_[s[2]] + pts_[s[3]]);
        make_face({s[0], s[2], s[1]}, {1, 3, 2});
        make_face({s[0], s[3], s[2]}, {2, 3, 0});
        make_face({s[0], s[1], s[3]}, {0, 3, 1});
        make_face({s[1], s[2], s[3]}, {0, 1, 2});
    }

    void assign_initial_points(const std::array<int, 4>& s) {
        static constexpr std::array<int, 4> all{0, 1, 2, 3};
        for (int p = 0; p < static_cast<int>(pts_.size()); ++p) {
            if (p == s[0] || p == s[1] || p == s[2] || p == s[3]) continue;
            attach(p, all);
        }
        for (int f = 0; f < 4; ++f)
            if (!faces_[f].outside.empty()) pending_.push_back(f);
    }

    template <typename FaceIds>
    void attach(int p, const FaceIds& candidates) {
        int best = -1;
        double best_d = tau_;
        for (int fid : candidates) {
            const double d = dist(faces_[fid], p);
            if (d > best_d) { best_d = d; best = fid; }
        }
        if (best < 0) return;  // inside the current hull
        BuildFace& f = faces_[best];
        f.outside.push_back(p);
        if (best_d > f.furthest_dist) {
            f.furthest_dist = best_d;
            f.furthest = p;
        }
    }

    int neighbor_slot(const BuildFace& f, int from, int to) const {
        for (int k = 0; k < 3; ++k)
            if (f.v[k] == from && f.v[(k + 1) % 3] == to) return k;
        throw numeric_error("hull adjacency violated");
    }

    void insert_point(int start_face, int apex) {
        // Visible region (depth-first over face adjacency), horizon edges
        // taken as directed in the visible face that borders them.
        ++epoch_;
        visible_.clear();
        horizon_.clear();
        stack_.assign(1, start_face);
        stamp_[start_face] = epoch_;
        while (!stack_.empty()) {
            const int fid = stack_.back();
            stack_.pop_back();
            visible_.push_back(fid);
            for (int k = 0; k < 3; ++k) {
                const int g = faces_[fid].nb[k];
                if (stamp_[g] == epoch_) continue;
                if (dist(faces_[g], apex) > tau_) {
                    stamp_[g] = epoch_;
                    stack_.push_back(g);
                } else {
                    horizon_.push_back({faces_[fid].v[k], faces_[fid].v[(k + 1) % 3], g});
                }
            }
        }

        // Walk the horizon into a closed cycle (it is small; linear scans do).
        const int m = static_cast<int>(horizon_.size());
        fresh_.clear();
        used_.assign(m, 0);
        int cur = horizon_[0].u;
        for (int i = 0; i < m; ++i) {
            int slot = -1;
            for (int j = 0; j < m; ++j)
                if (!used_[j] && horizon_[j].u == cur) { slot = j; break; }
            if (slot < 0) throw numeric_error("hull horizon inconsistency");
            used_[slot] = 1;
            fresh_.push_back(slot);
            cur = horizon_[slot].v;
        }
        if (cur != horizon_[0].u) throw numeric_error("hull horizon inconsistency");

        // New cone faces (u, v, apex) in cycle order.
        const int base = static_cast<int>(faces_.size());
        for (int i = 0; i < m; ++i) {
            const Horizon& e = horizon_[fresh_[i]];
            make_face({e.u, e.v, apex}, {e.hidden, base + (i + 1) % m, base + (i + m - 1) % m});
            faces_[e.hidden].nb[neighbor_slot(faces_[e.hidden], e.v, e.u)] = base + i;
            if (dot(faces_.back().normal, interior_) - faces_.back().offset > 0.0)
                throw numeric_error("hull orientation violated");
        }

        // Retire the visible faces and re-home their pending points.
        fresh_.clear();
        for (int i = 0; i < m; ++i) fresh_.push_back(base + i);
        for (int fid : visible_) {
            faces_[fid].alive = false;
            for (int p : faces_[fid].outside)
                if (p != apex) attach(p, fresh_);
            faces_[fid].outside.clear();
            faces_[fid].outside.shrink_to_fit();
        }
        for (int i = 0; i < m; ++i)
            if (!faces_[base + i].outside.empty()) pending_.push_back(base + i);
    }

    HullMesh finish() {
        HullMesh mesh;
        mesh.points = pts_;
        mesh.tolerance = tau_;
        std::vector<int> verts;
        for (const BuildFace& f : faces_) {
            if (!f.alive) continue;
            mesh.faces.push_back(HullFace{f.v, f.normal, f.offset});
            verts.insert(verts.end(), f.v.begin(), f.v.end());
        }
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        mesh.hull_vertices = std::move(verts);
        if (mesh.face_count() % 2 != 0 ||
            mesh.vertex_count() - mesh.edge_count() + mesh.face_count() != 2)
            throw numeric_error("hull topology violated");
        return mesh;
    }
};

}  // namespace detail

inline HullMesh convex_hull(const std::vector<Point3>& points) {
    return detail::HullBuilder(points).build();
}

// Signed tetra fan from the interior centroid; positive for outward-oriented
// meshes.
inline double mesh_volume(const HullMesh& mesh) {
    Vec3 c{0.0, 0.0, 0.0};
    for (int i : mesh.hull_vertices) c = c + mesh.points[i];
    c = (1.0 / static_cast<double>(mesh.vertex_count())) * c;
    double vol = 0.0;
    for (const HullFace& f : mesh.faces) {
        const Vec3 a = mesh.points[f.v[0]] - c;
        const Vec3 b = mesh.points[f.v[1]] - c;
        const Vec3 d = mesh.points[f.v[2]] - c;
        vol += dot(a, cross(b, d));
    }
    return vol / 6.0;
}

}  // namespace onedens
