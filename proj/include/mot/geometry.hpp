#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "mot/errors.hpp"
#include "mot/rng.hpp"

namespace mot {

struct Point {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point&) const = default;
};

inline bool is_finite(const Point& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

// Axis-aligned rectangle, closed on all sides. Degenerate extents are
// rejected at construction.
struct Rect {
    Point min_corner;
    Point max_corner;

    Rect(Point min_c, Point max_c) : min_corner(min_c), max_corner(max_c) {
        if (!is_finite(min_c) || !is_finite(max_c))
            throw DomainError("Rect: corners must be finite");
        if (!(min_corner.x < max_corner.x) || !(min_corner.y < max_corner.y))
            throw DomainError("Rect: min_corner must be strictly below max_corner on both axes");
    }

    double width() const { return max_corner.x - min_corner.x; }
    double height() const { return max_corner.y - min_corner.y; }

    bool operator==(const Rect&) const = default;
};

struct Segment {
    Point a;
    Point b;
};

inline double euclidean_distance(const Point& p, const Point& q) {
    const double dx = p.x - q.x;
    const double dy = p.y - q.y;
    return std::sqrt(dx * dx + dy * dy);
}

// Closed-rectangle containment: the boundary counts as inside.
inline bool point_in_rect(const Point& p, const Rect& r) {
    return r.min_corner.x <= p.x && p.x <= r.max_corner.x &&
           r.min_corner.y <= p.y && p.y <= r.max_corner.y;
}

namespace detail {

// Sign of the cross product (q - p) x (r - p): >0 left turn, <0 right turn,
// 0 collinear.
inline int orientation(const Point& p, const Point& q, const Point& r) {
    const double v = (q.y - p.y) * (r.x - q.x) - (q.x - p.x) * (r.y - q.y);
    if (v > 0.0) return 1;
    if (v < 0.0) return -1;
    return 0;
}

// For collinear p, q, r: is q inside the closed bounding box of [p, r]?
inline bool on_segment(const Point& p, const Point& q, const Point& r) {
    return std::min(p.x, r.x) <= q.x && q.x <= std::max(p.x, r.x) &&
           std::min(p.y, r.y) <= q.y && q.y <= std::max(p.y, r.y);
}

// Closed segment-segment intersection; shared endpoints and tangential
// touches count.
inline bool segments_intersect(const Point& p1, const Point& q1, const Point& p2,
                               const Point& q2) {
    const int o1 = orientation(p1, q1, p2);
    const int o2 = orientation(p1, q1, q2);
    const int o3 = orientation(p2, q2, p1);
    const int o4 = orientation(p2, q2, q1);

    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(p1, p2, q1)) return true;
    if (o2 == 0 && on_segment(p1, q2, q1)) return true;
    if (o3 == 0 && on_segment(p2, p1, q2)) return true;
    if (o4 == 0 && on_segment(p2, q1, q2)) return true;
    return false;
}

}  // namespace detail

// True iff the closed segment shares at least one point with the closed
// rectangle. Touching the boundary counts: a tour leg that grazes a
// restricted area is treated as crossing it.
inline bool segment_intersects_rect(const Segment& s, const Rect& r) {
    if (s.a == s.b) return point_in_rect(s.a, r);
    if (point_in_rect(s.a, r) || point_in_rect(s.b, r)) return true;

    const Point c00 = r.min_corner;
    const Point c10{r.max_corner.x, r.min_corner.y};
    const Point c11 = r.max_corner;
    const Point c01{r.min_corner.x, r.max_corner.y};
    return detail::segments_intersect(s.a, s.b, c00, c10) ||
           detail::segments_intersect(s.a, s.b, c10, c11) ||
           detail::segments_intersect(s.a, s.b, c11, c01) ||
           detail::segments_intersect(s.a, s.b, c01, c00);
}

// Fewer than max_points fit before the dart-throwing frontier died out.
// Carries whatever was placed so the caller can enlarge the region or relax
// d_min and retry.
struct SaturationShortfall : MotError {
    std::vector<Point> points;
    std::size_t requested;
    SaturationShortfall(std::vector<Point> pts, std::size_t req)
        : MotError("poisson_disk_sample: region saturated at " + std::to_string(pts.size()) +
                   " of " + std::to_string(req) + " points"),
          points(std::move(pts)),
          requested(req) {}
};

// Bridson dart throwing with k = 30 candidate attempts per active point.
// Candidates are drawn area-uniformly from the annulus [d_min, 2 d_min] by
// rejection from its bounding box, which keeps the sequence free of
// platform-dependent trigonometry. When the active frontier dies out short of
// max_points, a bounded global dart sweep hunts for a residual gap; a hit
// re-enters the frontier and the annulus phase resumes around it. Only after
// the sweep budget is spent dry is the region declared saturated.
// Deterministic in `seed`.
inline std::vector<Point> poisson_disk_sample(const Rect& region, double d_min,
                                              std::size_t max_points, std::uint64_t seed) {
    if (!(d_min > 0.0)) throw DomainError("poisson_disk_sample: d_min must be positive");
    if (max_points < 1) throw DomainError("poisson_disk_sample: max_points must be >= 1");

    constexpr int kAttempts = 30;
    const double r2 = d_min * d_min;
    const double cell = d_min / std::sqrt(2.0);
    const int cols = std::max(1, static_cast<int>(std::ceil(region.width() / cell)));
    const int rows = std::max(1, static_cast<int>(std::ceil(region.height() / cell)));

    std::vector<std::int32_t> grid(static_cast<std::size_t>(cols) * rows, -1);
    auto cell_of = [&](const Point& p) {
        int cx = static_cast<int>((p.x - region.min_corner.x) / cell);
        int cy = static_cast<int>((p.y - region.min_corner.y) / cell);
        cx = std::clamp(cx, 0, cols - 1);
        cy = std::clamp(cy, 0, rows - 1);
        return std::pair<int, int>{cx, cy};
    };

    std::vector<Point> points;
    std::vector<std::size_t> active;
    std::mt19937_64 rng(seed);

    auto too_close = [&](const Point& c) {
        const auto [cx, cy] = cell_of(c);
        for (int gy = std::max(0, cy - 2); gy <= std::min(rows - 1, cy + 2); ++gy) {
            for (int gx = std::max(0, cx - 2); gx <= std::min(cols - 1, cx + 2); ++gx) {
                const std::int32_t idx = grid[static_cast<std::size_t>(gy) * cols + gx];
                if (idx < 0) continue;
                const double dx = points[static_cast<std::size_t>(idx)].x - c.x;
                const double dy = points[static_cast<std::size_t>(idx)].y - c.y;
                if (dx * dx + dy * dy < r2) return true;
            }
        }
        return false;
    };
    auto accept = [&](const Point& c) {
        const auto [cx, cy] = cell_of(c);
        grid[static_cast<std::size_t>(cy) * cols + cx] = static_cast<std::int32_t>(points.size());
        points.push_back(c);
        active.push_back(points.size() - 1);
    };

    accept(Point{uniform_real(rng, region.min_corner.x, region.max_corner.x),
                 uniform_real(rng, region.min_corner.y, region.max_corner.y)});

    constexpr int kSweepAttempts = 20000;
    while (points.size() < max_points) {
        if (active.empty()) {
            bool revived = false;
            for (int t = 0; t < kSweepAttempts && !revived; ++t) {
                const Point c{uniform_real(rng, region.min_corner.x, region.max_corner.x),
                              uniform_real(rng, region.min_corner.y, region.max_corner.y)};
                if (too_close(c)) continue;
                accept(c);
                revived = true;
            }
            if (!revived) break;
            continue;
        }
        const std::size_t slot = uniform_index(rng, active.size());
        const Point base = points[active[slot]];
        bool placed = false;
        for (int attempt = 0; attempt < kAttempts && points.size() < max_points; ++attempt) {
            const double dx = uniform_real(rng, -2.0 * d_min, 2.0 * d_min);
            const double dy = uniform_real(rng, -2.0 * d_min, 2.0 * d_min);
            const double rr = dx * dx + dy * dy;
            if (rr < r2 || rr > 4.0 * r2) continue;
            const Point c{base.x + dx, base.y + dy};
            if (!point_in_rect(c, region)) continue;
            if (too_close(c)) continue;
            accept(c);
            placed = true;
        }
        if (!placed) {
            active[slot] = active.back();
            active.pop_back();
        }
    }

    if (points.size() < max_points) throw SaturationShortfall(std::move(points), max_points);
    return points;
}

}  // namespace mot
