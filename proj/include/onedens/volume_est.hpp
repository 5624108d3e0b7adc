// Volume estimators for the region S = T \ unit ball, and the trial runner
// that aggregates per-try estimates into mean / sigma / max statistics.
//
// Three independent routes:
//   - generate_and_probe: point density inside small probing balls placed
//     fully inside S; vol(S) = n / density.
//   - hull_patch_volume: tetra fan from p0 over the convex hull of sphere
//     samples on the patch cut out by the big tetrahedron.
//   - rejection_volume: plain hit counting against vol(T).
#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "onedens/dodeca.hpp"
#include "onedens/geometry.hpp"
#include "onedens/hull3d.hpp"
#include "onedens/random.hpp"

namespace onedens {

struct GnPConfig {
    std::int64_t n = 80000;       // points generated in S
    int probes = 1024;            // probing balls per try
    int max_retries = 100;        // placement attempts per probe
    double radius_factor = 0.25;  // r_p = factor * ((ln n)/n)^(1/3)
    bool sanity_full_tetra = false;  // diagnostic: skip the sphere cut, estimate vol(T)

    double probe_radius() const {
        return radius_factor * std::cbrt(std::log(static_cast<double>(n)) / static_cast<double>(n));
    }
};

struct HullPatchConfig {
    int m = 2000;  // accepted patch samples
};

struct TryStats {
    std::vector<double> estimates;  // in try-index order
    double mean = 0.0;
    double sigma = 0.0;  // sample standard deviation of the per-try estimates
    double max = 0.0;
    int tries = 0;
};

inline TryStats summarize_tries(std::vector<double> estimates) {
    TryStats st;
    st.tries = static_cast<int>(estimates.size());
    st.estimates = std::move(estimates);
    if (st.tries == 0) return st;
    double sum = 0.0;
    st.max = -std::numeric_limits<double>::infinity();
    for (double e : st.estimates) {
        sum += e;
        st.max = std::max(st.max, e);
    }
    st.mean = sum / st.tries;
    if (st.tries > 1) {
        double ss = 0.0;
        for (double e : st.estimates) ss += (e - st.mean) * (e - st.mean);
        st.sigma = std::sqrt(ss / (st.tries - 1));
    }
    return st;
}

struct PointsInS {
    std::vector<Point3> points;
    double acceptance_ratio = 0.0;  // NaN when no candidates were drawn (n = 0)
};

// Rejection-sample n points uniformly in S: draw in T, keep norm >= 1.
inline PointsInS sample_points_in_S(const CellFrame& frame, std::int64_t n, RandomStream& rs) {
    if (n < 0) throw std::invalid_argument("sample_points_in_S: n must be >= 0");
    PointsInS out;
    if (n == 0) {
        out.acceptance_ratio = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    out.points.reserve(static_cast<std::size_t>(n));
    std::int64_t candidates = 0;
    while (static_cast<std::int64_t>(out.points.size()) < n) {
        const Point3 q = sample_uniform_tetra(frame.T, rs);
        ++candidates;
        if (norm2(q) >= 1.0) out.points.push_back(q);
        if (candidates == 10000 && out.points.size() < 100)
            throw numeric_error("degenerate region");
    }
    out.acceptance_ratio = static_cast<double>(n) / static_cast<double>(candidates);
    return out;
}

namespace detail {

// Uniform grid over the tetrahedron bounding box for fixed-radius counting.
// Per-axis cell sizes never drop below the query radius, so scanning the
// 3x3x3 cell neighborhood is always sufficient; dimensions are capped so a
// tiny radius cannot blow up the cell count.
class PointGrid {
public:
    PointGrid(const std::vector<Point3>& pts, Vec3 lo, Vec3 hi, double radius)
        : pts_(pts), lo_(lo) {
        static constexpr int kMaxDim = 192;
        const auto axis = [&](double extent, int& n, double& inv) {
            n = std::clamp(static_cast<int>(extent / std::max(radius, 1e-300)), 1, kMaxDim);
            inv = n / std::max(extent, 1e-300);
        };
        axis(hi.x - lo.x, nx_, ix_);
        axis(hi.y - lo.y, ny_, iy_);
        axis(hi.z - lo.z, nz_, iz_);
        const std::size_t ncells = static_cast<std::size_t>(nx_) * ny_ * nz_;
        start_.assign(ncells + 1, 0);
        for (const Point3& p : pts) ++start_[index_of(p) + 1];
        for (std::size_t c = 1; c < start_.size(); ++c) start_[c] += start_[c - 1];
        ids_.resize(pts.size());
        std::vector<std::int32_t> cursor(start_.begin(), start_.end() - 1);
        for (std::int32_t i = 0; i < static_cast<std::int32_t>(pts.size()); ++i)
            ids_[cursor[index_of(pts[i])]++] = i;
    }

    // Number of points with |p - c| < r (strict), including c itself if present.
    int count_within(Point3 c, double r) const {
        const double r2 = r * r;
        const int cx = clampi(static_cast<int>((c.x - lo_.x) * ix_), nx_);
        const int cy = clampi(static_cast<int>((c.y - lo_.y) * iy_), ny_);
        const int cz = clampi(static_cast<int>((c.z - lo_.z) * iz_), nz_);
        int count = 0;
        for (int x = std::max(cx - 1, 0); x <= std::min(cx + 1, nx_ - 1); ++x)
            for (int y = std::max(cy - 1, 0); y <= std::min(cy + 1, ny_ - 1); ++y)
                for (int z = std::max(cz - 1, 0); z <= std::min(cz + 1, nz_ - 1); ++z) {
                    const std::size_t cell = cell_index(x, y, z);
                    for (std::int32_t k = start_[cell]; k < start_[cell + 1]; ++k)
                        if (norm2(pts_[ids_[k]] - c) < r2) ++count;
                }
        return count;
    }

private:
    static int clampi(int v, int n) { return std::min(std::max(v, 0), n - 1); }
    std::size_t cell_index(int x, int y, int z) const {
        return (static_cast<std::size_t>(z) * ny_ + y) * nx_ + x;
    }
    std::size_t index_of(const Point3& p) const {
        return cell_index(clampi(static_cast<int>((p.x - lo_.x) * ix_), nx_),
                          clampi(static_cast<int>((p.y - lo_.y) * iy_), ny_),
                          clampi(static_cast<int>((p.z - lo_.z) * iz_), nz_));
    }

    const std::vector<Point3>& pts_;
    Vec3 lo_;
    double ix_ = 1, iy_ = 1, iz_ = 1;  // inverse cell sizes
    int nx_ = 1, ny_ = 1, nz_ = 1;
    std::vector<std::int32_t> start_;
    std::vector<std::int32_t> ids_;
};

inline void bounding_box(const Tetrahedron& t, Vec3& lo, Vec3& hi) {
    lo = hi = t.v[0];
    for (int i = 1; i < 4; ++i) {
        lo = {std::min(lo.x, t.v[i].x), std::min(lo.y, t.v[i].y), std::min(lo.z, t.v[i].z)};
        hi = {std::max(hi.x, t.v[i].x), std::max(hi.y, t.v[i].y), std::max(hi.z, t.v[i].z)};
    }
}

}  // namespace detail

// Generate n points in S, probe with balls of radius r_p centered at the
// generated points (validated analytically), and divide n by the measured
// point density. Each probe's own seed point is excluded from its count.
inline double generate_and_probe(const CellFrame& frame, const GnPConfig& cfg, RandomStream& rs) {
    if (cfg.n < 1000) throw std::invalid_argument("generate_and_probe: n must be >= 1000");
    if (cfg.probes < 1 || cfg.max_retries < 1 || !(cfg.radius_factor > 0.0))
        throw std::invalid_argument("generate_and_probe: invalid probe configuration");
    const double r_p = cfg.probe_radius();

    std::vector<Point3> pts;
    if (cfg.sanity_full_tetra) {
        pts.reserve(static_cast<std::size_t>(cfg.n));
        for (std::int64_t i = 0; i < cfg.n; ++i) pts.push_back(sample_uniform_tetra(frame.T, rs));
    } else {
        pts = sample_points_in_S(frame, cfg.n, rs).points;
    }

    Vec3 lo, hi;
    detail::bounding_box(frame.T, lo, hi);
    const detail::PointGrid grid(pts, lo, hi, r_p);
    const RegionS region{frame};

    std::int64_t total = 0;
    for (int probe = 0; probe < cfg.probes; ++probe) {
        bool placed = false;
        for (int attempt = 0; attempt < cfg.max_retries; ++attempt) {
            const Point3 c = pts[rs.uniform_index(pts.size())];
            const bool ok = cfg.sanity_full_tetra
                                ? -frame.T_faces.max_signed_distance(c) >= r_p - kEps
                                : ball_inside_S(region, c, r_p);
            if (!ok) continue;
            total += grid.count_within(c, r_p) - 1;  // the seed point itself is not evidence
            placed = true;
            break;
        }
        if (!placed) throw numeric_error("probe radius too large for region");
    }
    if (total == 0) throw numeric_error("probe radius too small");

    const double probe_volume = 4.0 / 3.0 * kPi * r_p * r_p * r_p;
    const double density = static_cast<double>(total) / (static_cast<double>(cfg.probes) * probe_volume);
    return static_cast<double>(cfg.n) / density;
}

// Faces of the patch hull whose supporting plane passes within this distance
// of the fan apex p0 span the patch boundary, not the patch: in the dense
// limit those planes contain p0 and their tetrahedra vanish, so at finite m
// they contribute only overshoot. They are skipped from the fan.
inline constexpr double kPatchFanApexClearance = 0.05;

// Sample m unit-sphere points inside the big tetrahedron (p0, p1, p3, p4),
// hull them together with the anchors p1, p3, p4, and fan tetrahedra from p0
// over the patch faces. The anchor triangle is the base face and must appear
// in the hull.
inline double hull_patch_volume(const CellFrame& frame, const HullPatchConfig& cfg,
                                RandomStream& rs) {
    if (cfg.m < 1) throw std::invalid_argument("hull_patch_volume: m must be >= 1");

    std::vector<Point3> pts;
    pts.reserve(static_cast<std::size_t>(cfg.m) + 3);
    pts.push_back(frame.p1);
    pts.push_back(frame.p3);
    pts.push_back(frame.p4);

    Plane3 anchor = plane_through(frame.p1, frame.p3, frame.p4);
    if (anchor.offset < 0.0) {  // orient away from the origin
        anchor.normal = -1.0 * anchor.normal;
        anchor.offset = -anchor.offset;
    }

    while (pts.size() < static_cast<std::size_t>(cfg.m) + 3) {
        const Vec3 dir = sample_uniform_sphere_direction(rs);
        if (!frame.big_faces.contains(dir)) continue;
        const double beyond = anchor.signed_distance(dir);
        if (beyond < -kEps) throw numeric_error("patch orientation violated");
        if (beyond <= 0.0) continue;  // grazing the anchor plane; redraw
        pts.push_back(dir);
    }

    const HullMesh hull = convex_hull(pts);
    int base_faces = 0;
    double volume = 0.0;
    for (const HullFace& f : hull.faces) {
        const bool is_base = f.v[0] < 3 && f.v[1] < 3 && f.v[2] < 3;
        if (is_base) {
            ++base_faces;
            continue;
        }
        if (std::abs(dot(f.normal, frame.p0) - f.offset) <= kPatchFanApexClearance) continue;
        volume += tetra_volume(
            Tetrahedron{{frame.p0, hull.points[f.v[0]], hull.points[f.v[1]], hull.points[f.v[2]]}});
    }
    if (base_faces != 1) throw numeric_error("patch orientation violated");
    return volume;
}

struct RejectionEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
};

// Brute-force oracle: vol(T) times the fraction of T-samples outside the ball.
inline RejectionEstimate rejection_volume(const CellFrame& frame, std::int64_t n, RandomStream& rs) {
    if (n < 1) throw std::invalid_argument("rejection_volume: n must be >= 1");
    std::int64_t hits = 0;
    for (std::int64_t i = 0; i < n; ++i)
        if (norm2(sample_uniform_tetra(frame.T, rs)) >= 1.0) ++hits;
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    RejectionEstimate out;
    out.estimate = frame.vol_T * p;
    out.std_error = frame.vol_T * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    return out;
}

enum class Estimator { gnp, hull, rejection };

struct EstimatorSpec {
    Estimator kind = Estimator::rejection;
    GnPConfig gnp{};
    HullPatchConfig hull{};
    std::int64_t rejection_n = 10000000;

    static EstimatorSpec for_gnp(GnPConfig cfg) { return {Estimator::gnp, cfg, {}, 0}; }
    static EstimatorSpec for_hull(HullPatchConfig cfg) { return {Estimator::hull, {}, cfg, 0}; }
    static EstimatorSpec for_rejection(std::int64_t n) { return {Estimator::rejection, {}, {}, n}; }
};

inline int worker_count(int tries) {
    int workers = 0;
    if (const char* env = std::getenv("ONEDENS_THREADS")) workers = std::atoi(env);
    if (workers < 1) workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    return std::min(workers, tries);
}

// Run `tries` independent tries of `one_try`; try i draws from
// RandomStream(seed, i), so the result is identical for any worker count.
template <typename Fn>
TryStats run_trials_with(Fn&& one_try, int tries, std::uint64_t seed) {
    if (tries < 1) throw std::invalid_argument("run_trials: tries must be >= 1");
    std::vector<double> estimates(static_cast<std::size_t>(tries));
    const int workers = worker_count(tries);
    if (workers == 1) {
        for (int i = 0; i < tries; ++i) {
            RandomStream rs(seed, static_cast<std::uint64_t>(i));
            estimates[i] = one_try(rs);
        }
        return summarize_tries(std::move(estimates));
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int wk = 0; wk < workers; ++wk)
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= tries) return;
                try {
                    RandomStream rs(seed, static_cast<std::uint64_t>(i));
                    estimates[i] = one_try(rs);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    for (std::thread& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return summarize_tries(std::move(estimates));
}

inline TryStats run_trials(const CellFrame& frame, const EstimatorSpec& spec, int tries,
                           std::uint64_t seed) {
    switch (spec.kind) {
        case Estimator::gnp:
            return run_trials_with([&](RandomStream& rs) { return generate_and_probe(frame, spec.gnp, rs); },
                                   tries, seed);
        case Estimator::hull:
            return run_trials_with([&](RandomStream& rs) { return hull_patch_volume(frame, spec.hull, rs); },
                                   tries, seed);
        case Estimator::rejection:
        default:
            return run_trials_with(
                [&](RandomStream& rs) { return rejection_volume(frame, spec.rejection_n, rs).estimate; },
                tries, seed);
    }
}

struct Delta3 {
    double alpha2 = 0.0;
    double delta = 0.0;
};

// delta3(dc) = alpha1 * alpha2 with alpha2 = vol(S) / vol(T).
inline Delta3 delta3_dc(const DodecaParams& params, double vol_S) {
    const double vol_T = cell_frame(params).vol_T;
    if (!(vol_S >= 0.0 && vol_S <= vol_T))
        throw std::domain_error("delta3_dc: vol_S outside [0, vol(T)]");
    const double alpha2 = vol_S / vol_T;
    return Delta3{alpha2, params.alpha1 * alpha2};
}

}  // namespace onedens
