// Planar 1-density machinery: the once-covered sector function and its
// maximizer, Voronoi cells by bisector clipping, the cover criterion
// (every cell's farthest vertex within its own unit disk), and empirical
// coverage-multiplicity statistics for periodic unit-disk covers.
#pragma once

#include <cstdint>
#include <vector>

#include "onedens/geometry.hpp"
#include "onedens/random.hpp"

namespace onedens {

// Periodic unit-disk cover: disks of radius 1 centered on the lattice
// {i*u + j*w}. The fundamental domain has area |det(u, w)|.
struct LatticeCover {
    Vec2 u;
    Vec2 w;

    double det() const { return cross(u, w); }
    double fundamental_area() const { return std::abs(det()); }
};

enum class LatticeFamily { hex, square };

inline LatticeCover make_lattice(LatticeFamily family, double spacing) {
    if (!(spacing > 0.0)) throw std::invalid_argument("lattice spacing must be positive");
    if (family == LatticeFamily::hex)
        return LatticeCover{{spacing, 0.0}, {0.5 * spacing, spacing * std::sqrt(3.0) / 2.0}};
    return LatticeCover{{spacing, 0.0}, {0.0, spacing}};
}

inline void validate(const LatticeCover& c) {
    if (!(c.fundamental_area() > 0.0)) throw std::invalid_argument("degenerate lattice basis");
}

struct CoverVerdict {
    bool is_cover = false;
    double r_max = 0.0;
    int witness_cell = 0;  // index of the checked cell (0 = central representative)
};

struct MultiplicityHistogram {
    std::vector<double> fraction;  // fraction[k] of samples covered by exactly k disks
    std::int64_t samples = 0;
    double average = 0.0;

    // Monte Carlo standard error of `average`.
    double average_std_error() const {
        double m2 = 0.0;
        for (std::size_t k = 0; k < fraction.size(); ++k)
            m2 += static_cast<double>(k) * static_cast<double>(k) * fraction[k];
        const double var = m2 - average * average;
        return samples > 0 ? std::sqrt(std::max(var, 0.0) / static_cast<double>(samples)) : 0.0;
    }
};

// Area of the disk sector (apex angle acos(x)) covered by no other disk when
// the neighboring unit disk sits at distance 2x: x*sqrt(1-x^2) - acos(x)/2.
inline double sector_once_area(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("sector_once_area: x outside [0, 1]");
    return x * std::sqrt(1.0 - x * x) - std::acos(x) / 2.0;
}

struct SectorMax {
    double x_star = 0.0;
    double f_star = 0.0;
    double ratio_star = 0.0;  // f_star / (sector area acos(x_star)/2)
};

// Maximize sector_once_area on (0, 1). The function is strictly concave, so we
// bracket the sign change of its derivative (3/2 - 2x^2)/sqrt(1 - x^2)
// starting from `init` and bisect; the result is independent of the
// initialization. Finite differences would cap the argmax accuracy near 1e-11,
// too coarse for the 1e-12 targets downstream.
inline SectorMax maximize_sector_once_area(double init = 0.5) {
    if (!(init > 0.0 && init < 1.0)) throw std::domain_error("maximize_sector_once_area: init outside (0, 1)");
    constexpr double bound = 1e-4;
    const auto deriv = [](double x) {
        return (1.5 - 2.0 * x * x) / std::sqrt(1.0 - x * x);
    };
    double lo = std::clamp(init, bound, 1.0 - bound);
    double hi = lo;
    double step = 0.01;
    if (deriv(lo) > 0.0) {
        do {
            hi = std::min(hi + step, 1.0 - bound);
            step *= 1.6;
        } while (deriv(hi) > 0.0 && hi < 1.0 - bound);
    } else {
        do {
            lo = std::max(lo - step, bound);
            step *= 1.6;
        } while (deriv(lo) < 0.0 && lo > bound);
    }
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        (deriv(mid) > 0.0 ? lo : hi) = mid;
    }
    SectorMax out;
    out.x_star = 0.5 * (lo + hi);
    out.f_star = sector_once_area(out.x_star);
    out.ratio_star = out.f_star / (std::acos(out.x_star) / 2.0);
    return out;
}

// Voronoi cell of `site` against `neighbors`, built by clipping a bounding box
// with bisector half-planes. A cell that still touches the box is unbounded.
inline ConvexPolygon2 voronoi_cell(Point2 site, const std::vector<Point2>& neighbors) {
    double max_dist = 0.0;
    for (const Point2& q : neighbors) max_dist = std::max(max_dist, norm(q - site));
    const double box = 4.0 * max_dist + 10.0;

    ConvexPolygon2 cell;
    cell.vertices = {site + Vec2{-box, -box}, site + Vec2{box, -box},
                     site + Vec2{box, box}, site + Vec2{-box, box}};
    if (neighbors.empty()) throw numeric_error("unbounded Voronoi cell");
    for (const Point2& q : neighbors) {
        cell = clip_convex_polygon(cell, bisector_halfplane(site, q));
        if (cell.empty()) return cell;
    }
    for (const Point2& v : cell.vertices) {
        const Vec2 d = v - site;
        if (std::max(std::abs(d.x), std::abs(d.y)) >= box * (1.0 - 1e-9))
            throw numeric_error("unbounded Voronoi cell");
    }
    // Weld vertices that coincide up to tolerance: bisectors meeting exactly
    // at a Voronoi vertex otherwise leave zero-length edges behind.
    ConvexPolygon2 welded;
    welded.vertices.reserve(cell.vertices.size());
    for (const Point2& v : cell.vertices) {
        if (!welded.vertices.empty() && norm(v - welded.vertices.back()) <= 1e-9) continue;
        welded.vertices.push_back(v);
    }
    while (welded.vertices.size() > 1 &&
           norm(welded.vertices.back() - welded.vertices.front()) <= 1e-9)
        welded.vertices.pop_back();
    return welded;
}

// Cover check for a lattice: a configuration covers the plane iff every
// cell's farthest Voronoi vertex lies within its own disk. By periodicity
// all cells are congruent, so only the central cell is examined, against
// `window` shells of lattice neighbors.
inline CoverVerdict check_cover(const LatticeCover& cover, int window = 3) {
    validate(cover);
    if (window < 2) throw std::invalid_argument("check_cover: window must be >= 2");
    std::vector<Point2> neighbors;
    neighbors.reserve((2 * window + 1) * (2 * window + 1) - 1);
    for (int i = -window; i <= window; ++i)
        for (int j = -window; j <= window; ++j) {
            if (i == 0 && j == 0) continue;
            neighbors.push_back(static_cast<double>(i) * cover.u + static_cast<double>(j) * cover.w);
        }
    const ConvexPolygon2 cell = voronoi_cell(Point2{0.0, 0.0}, neighbors);
    CoverVerdict verdict;
    for (const Point2& v : cell.vertices) verdict.r_max = std::max(verdict.r_max, norm(v));
    verdict.is_cover = verdict.r_max <= 1.0 + kEps;
    verdict.witness_cell = 0;
    return verdict;
}

// Sample the fundamental domain and histogram how many lattice disks cover
// each point. fraction[1] estimates the plane fraction covered exactly once.
inline MultiplicityHistogram coverage_multiplicity_histogram(const LatticeCover& cover,
                                                             std::int64_t n, RandomStream& rs) {
    validate(cover);
    if (n < 1) throw std::invalid_argument("coverage_multiplicity_histogram: n must be >= 1");
    // |i - a| <= |w|/|det| is necessary for |q - (i*u + j*w)| <= 1; pad by one.
    const double det = cover.fundamental_area();
    const int iext = static_cast<int>(std::ceil(norm(cover.w) / det)) + 1;
    const int jext = static_cast<int>(std::ceil(norm(cover.u) / det)) + 1;

    std::vector<std::int64_t> counts;
    double total = 0.0;
    for (std::int64_t s = 0; s < n; ++s) {
        const double a = rs.uniform01();
        const double b = rs.uniform01();
        const Point2 q = a * cover.u + b * cover.w;
        int mult = 0;
        for (int i = -iext; i <= 1 + iext; ++i)
            for (int j = -jext; j <= 1 + jext; ++j) {
                const Point2 c = static_cast<double>(i) * cover.u + static_cast<double>(j) * cover.w;
                if (norm2(q - c) <= 1.0) ++mult;
            }
        if (static_cast<std::size_t>(mult) >= counts.size()) counts.resize(mult + 1, 0);
        ++counts[mult];
        total += mult;
    }
    MultiplicityHistogram hist;
    hist.samples = n;
    hist.fraction.resize(counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k)
        hist.fraction[k] = static_cast<double>(counts[k]) / static_cast<double>(n);
    hist.average = total / static_cast<double>(n);
    return hist;
}

struct SweepRow {
    double spacing = 0.0;
    bool is_cover = false;
    double fraction1 = 0.0;
    double fraction1_std_error = 0.0;
    double r_max = 0.0;
};

inline std::vector<SweepRow> sweep_lattice(LatticeFamily family, double spacing_min,
                                           double spacing_max, int steps, std::int64_t n,
                                           RandomStream& rs, int window = 3) {
    if (!(spacing_min > 0.0 && spacing_min < spacing_max))
        throw std::invalid_argument("sweep_lattice: need 0 < spacing_min < spacing_max");
    if (steps < 2) throw std::invalid_argument("sweep_lattice: steps must be >= 2");
    std::vector<SweepRow> rows;
    rows.reserve(steps);
    for (int k = 0; k < steps; ++k) {
        const double s = spacing_min + (spacing_max - spacing_min) * k / (steps - 1);
        const LatticeCover cover = make_lattice(family, s);
        const CoverVerdict verdict = check_cover(cover, window);
        const MultiplicityHistogram hist = coverage_multiplicity_histogram(cover, n, rs);
        SweepRow row;
        row.spacing = s;
        row.is_cover = verdict.is_cover;
        row.r_max = verdict.r_max;
        row.fraction1 = hist.fraction.size() > 1 ? hist.fraction[1] : 0.0;
        row.fraction1_std_error =
            std::sqrt(std::max(row.fraction1 * (1.0 - row.fraction1), 0.0) / static_cast<double>(n));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace onedens
