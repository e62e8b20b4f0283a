#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mot/channel.hpp"
#include "mot/errors.hpp"
#include "mot/geometry.hpp"
#include "mot/numeric.hpp"
#include "mot/rng.hpp"

namespace mot {

struct Sensor {
    int id = 0;
    Point position;

    bool operator==(const Sensor&) const = default;
};

// Candidate hover location. Stop 0 is the charging station where every tour
// starts and ends.
struct Stop {
    int id = 0;
    Point position;
    bool is_charging_station = false;

    bool operator==(const Stop&) const = default;
};

enum class StopLayout { UniformRandom, Grid };

struct ScenarioConfig {
    Rect region{Point{0, 0}, Point{100, 100}};
    int n_sensors = 100;
    int n_stops = 30;  // candidate stops, excluding the charging station
    double d_min = 8.0;
    std::vector<Rect> restricted;
    ChannelParams channel;
    StopLayout stop_layout = StopLayout::UniformRandom;
    std::uint64_t seed = 0;
};

// The physical world a planning instance is derived from.
struct Scenario {
    std::vector<Sensor> sensors;
    std::vector<Stop> stops;  // stops[0] is the charging station
    std::vector<Rect> restricted;
    ChannelParams channel;
    Rect region{Point{0, 0}, Point{1, 1}};
    std::uint64_t seed = 0;

    bool operator==(const Scenario&) const = default;
};

// Some sensor can never be covered by any stop. Carries the offenders.
struct InfeasibleCoverage : MotError {
    std::vector<int> sensor_ids;
    explicit InfeasibleCoverage(std::vector<int> ids)
        : MotError("build_instance: " + std::to_string(ids.size()) +
                   " sensor(s) outside every stop's coverage (first id " +
                   (ids.empty() ? std::string("?") : std::to_string(ids.front())) + ")"),
          sensor_ids(std::move(ids)) {}
};

// The optimization problem: coverage, per-delivery energy, success rates,
// and the edge-cost matrix with forbidden legs at infinity.
struct MotInstance {
    std::vector<std::vector<std::uint8_t>> coverage;  // Z, n_sensors x n_stops
    std::vector<std::vector<double>> energy;          // tx_power * expected transmissions, gated by Z
    std::vector<std::vector<double>> success_rate;    // rho, n_sensors x n_stops
    std::vector<std::vector<double>> cost;            // leg lengths, inf on forbidden/diagonal
    double p_max = kInf;                              // sensor energy budget for a whole tour
    double rho_min = 0.0;

    int sensor_count() const { return static_cast<int>(coverage.size()); }
    int stop_count() const { return static_cast<int>(cost.size()); }
};

namespace detail {

inline Point boundary_point_farthest_from(const Rect& region, const Point& target,
                                          const std::vector<Rect>& restricted) {
    // Walk a dense boundary sampling (corners included); keep the admissible
    // point farthest from `target`.
    constexpr int kSamplesPerEdge = 256;
    Point best{region.min_corner.x, region.min_corner.y};
    double best_d = -1.0;
    auto consider = [&](Point p) {
        for (const Rect& r : restricted)
            if (point_in_rect(p, r)) return;
        const double d = euclidean_distance(p, target);
        if (d > best_d) {
            best_d = d;
            best = p;
        }
    };
    const double x0 = region.min_corner.x, x1 = region.max_corner.x;
    const double y0 = region.min_corner.y, y1 = region.max_corner.y;
    for (int i = 0; i <= kSamplesPerEdge; ++i) {
        const double t = static_cast<double>(i) / kSamplesPerEdge;
        consider({x0 + t * (x1 - x0), y0});
        consider({x0 + t * (x1 - x0), y1});
        consider({x0, y0 + t * (y1 - y0)});
        consider({x1, y0 + t * (y1 - y0)});
    }
    if (best_d < 0.0)
        throw GenerationFailure(
            "generate_scenario: no admissible charging-station position on the region boundary");
    return best;
}

inline bool inside_any(const Point& p, const std::vector<Rect>& rects) {
    for (const Rect& r : rects)
        if (point_in_rect(p, r)) return true;
    return false;
}

inline std::vector<Point> grid_stop_positions(const Rect& region, int n_stops,
                                              const std::vector<Rect>& restricted) {
    const double w = region.width(), h = region.height();
    int cols = std::max(1, static_cast<int>(std::ceil(std::sqrt(n_stops * w / h))));
    int rows = (n_stops + cols - 1) / cols;
    while (true) {
        std::vector<Point> admissible;
        for (int j = 0; j < rows; ++j) {
            for (int i = 0; i < cols; ++i) {
                const Point p{region.min_corner.x + (i + 0.5) * w / cols,
                              region.min_corner.y + (j + 0.5) * h / rows};
                if (!inside_any(p, restricted)) admissible.push_back(p);
            }
        }
        const int k = static_cast<int>(admissible.size());
        if (k >= n_stops) {
            // evenly strided subset keeps the spread when restricted rects
            // swallowed some cells
            std::vector<Point> out;
            out.reserve(n_stops);
            for (int i = 0; i < n_stops; ++i)
                out.push_back(admissible[static_cast<std::size_t>(i) * k / n_stops]);
            return out;
        }
        // densify once restricted rects swallow too many grid cells
        if (cols * rows > 64 * std::max(1, n_stops))
            throw GenerationFailure("generate_scenario: grid layout cannot avoid restricted areas");
        ++cols;
        ++rows;
    }
}

}  // namespace detail

// Deterministic world construction: sensors by Bridson dart throwing, stops
// by the requested layout outside every restricted rect, charging station on
// the region boundary farthest from the sensor centroid. Placement warnings
// (station disk not empty, Bridson saturation margin) land in `warnings` when
// provided.
inline Scenario generate_scenario(const ScenarioConfig& cfg,
                                  std::vector<std::string>* warnings = nullptr) {
    cfg.channel.validate();
    if (cfg.n_sensors < 0) throw DomainError("generate_scenario: n_sensors must be >= 0");
    if (cfg.n_stops < 2) throw DomainError("generate_scenario: n_stops must be >= 2");
    if (!(cfg.d_min > 0.0)) throw DomainError("generate_scenario: d_min must be positive");

    Scenario sc;
    sc.region = cfg.region;
    sc.restricted = cfg.restricted;
    sc.channel = cfg.channel;
    sc.seed = cfg.seed;

    std::mt19937_64 rng(cfg.seed);

    if (cfg.n_sensors > 0) {
        // consumes the same stream as poisson_disk_sample(region, d_min, n, seed)
        const std::vector<Point> pts =
            poisson_disk_sample(cfg.region, cfg.d_min, static_cast<std::size_t>(cfg.n_sensors),
                                cfg.seed);
        // skip the sampler's draws so stop placement is decoupled from its
        // internal rejection count
        rng.seed(cfg.seed + 0x9e3779b97f4a7c15ull);
        sc.sensors.reserve(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i)
            sc.sensors.push_back({static_cast<int>(i), pts[i]});
    } else {
        rng.seed(cfg.seed + 0x9e3779b97f4a7c15ull);
    }

    // charging station: boundary point farthest from the sensor centroid
    Point centroid{(cfg.region.min_corner.x + cfg.region.max_corner.x) / 2.0,
                   (cfg.region.min_corner.y + cfg.region.max_corner.y) / 2.0};
    if (!sc.sensors.empty()) {
        double sx = 0.0, sy = 0.0;
        for (const Sensor& s : sc.sensors) {
            sx += s.position.x;
            sy += s.position.y;
        }
        centroid = {sx / sc.sensors.size(), sy / sc.sensors.size()};
    }
    const Point station = detail::boundary_point_farthest_from(cfg.region, centroid, cfg.restricted);
    sc.stops.push_back({0, station, true});

    // candidate stops
    if (cfg.stop_layout == StopLayout::UniformRandom) {
        for (int i = 1; i <= cfg.n_stops; ++i) {
            bool placed = false;
            for (int attempt = 0; attempt < 10000; ++attempt) {
                const Point p{uniform_real(rng, cfg.region.min_corner.x, cfg.region.max_corner.x),
                              uniform_real(rng, cfg.region.min_corner.y, cfg.region.max_corner.y)};
                if (detail::inside_any(p, cfg.restricted)) continue;
                sc.stops.push_back({i, p, false});
                placed = true;
                break;
            }
            if (!placed)
                throw GenerationFailure(
                    "generate_scenario: could not place stop " + std::to_string(i) +
                    " outside restricted areas in 10000 attempts");
        }
    } else {
        const std::vector<Point> pts =
            detail::grid_stop_positions(cfg.region, cfg.n_stops, cfg.restricted);
        for (int i = 1; i <= cfg.n_stops; ++i) sc.stops.push_back({i, pts[i - 1], false});
    }

    // the station must cover nothing; warn if its disk is not empty (column 0
    // of the coverage matrix is forced to zero regardless)
    const double d_max = max_coverage_distance(cfg.channel);
    int station_hits = 0;
    for (const Sensor& s : sc.sensors) {
        const double ground = euclidean_distance(s.position, station);
        const double d = std::sqrt(ground * ground + cfg.channel.h_min_m * cfg.channel.h_min_m);
        if (d <= d_max) ++station_hits;
    }
    if (station_hits > 0 && warnings)
        warnings->push_back("charging station geometrically covers " +
                            std::to_string(station_hits) +
                            " sensor(s); its coverage column is forced to zero");
    return sc;
}

// Options for build_instance. Validation normally refuses instances with an
// uncoverable sensor; tour validation wants the instance anyway to report the
// failure properly.
struct BuildOptions {
    bool allow_uncoverable = false;
};

// Derive the planning instance: coverage gated on both the link budget
// (d <= d_max, with the hover altitude folded into the range) and delivery
// reliability (rho >= rho_min); per-delivery energy; edge costs with
// restricted legs and the diagonal at infinity.
inline MotInstance build_instance(const Scenario& sc, SuccessRateConvention conv, double p_max,
                                  const BuildOptions& opts = {}) {
    sc.channel.validate();
    if (!(p_max >= 0.0)) throw DomainError("build_instance: p_max must be >= 0");
    const int n = static_cast<int>(sc.sensors.size());
    const int m1 = static_cast<int>(sc.stops.size());
    if (m1 < 1 || !sc.stops[0].is_charging_station)
        throw DomainError("build_instance: stops[0] must be the charging station");

    const ChannelParams& ch = sc.channel;
    const PerCoefficients coeffs = per_coefficients(ch.modulation, ch.packet_bits);
    const double d_max = max_coverage_distance(ch);
    const double h2 = ch.h_min_m * ch.h_min_m;

    MotInstance inst;
    inst.p_max = p_max;
    inst.rho_min = ch.rho_min;
    inst.coverage.assign(n, std::vector<std::uint8_t>(m1, 0));
    inst.energy.assign(n, std::vector<double>(m1, 0.0));
    inst.success_rate.assign(n, std::vector<double>(m1, 0.0));

    for (int s = 0; s < n; ++s) {
        for (int t = 0; t < m1; ++t) {
            const double ground = euclidean_distance(sc.sensors[s].position, sc.stops[t].position);
            const double d = std::sqrt(ground * ground + h2);
            double per, rho;
            if (d == 0.0) {
                per = 0.0;  // co-located, treated as a perfect link
                rho = 1.0;
            } else {
                per = avg_packet_error_rate(avg_snr(ch, d), coeffs);
                rho = success_probability(per, ch.q_max, conv);
            }
            inst.success_rate[s][t] = rho;
            const bool covered = t != 0 && d <= d_max && rho >= ch.rho_min;
            inst.coverage[s][t] = covered ? 1 : 0;
            if (covered) {
                const double retx = per == 0.0 ? 1.0 : expected_retransmissions(rho, per);
                inst.energy[s][t] = ch.tx_power_w * retx;
            }
        }
    }

    inst.cost.assign(m1, std::vector<double>(m1, kInf));
    for (int u = 0; u < m1; ++u) {
        for (int v = u + 1; v < m1; ++v) {
            const Segment leg{sc.stops[u].position, sc.stops[v].position};
            bool blocked = false;
            for (const Rect& r : sc.restricted) {
                if (segment_intersects_rect(leg, r)) {
                    blocked = true;
                    break;
                }
            }
            const double c = blocked ? kInf
                                     : euclidean_distance(sc.stops[u].position, sc.stops[v].position);
            inst.cost[u][v] = c;
            inst.cost[v][u] = c;
        }
    }

    if (!opts.allow_uncoverable) {
        std::vector<int> uncovered;
        for (int s = 0; s < n; ++s) {
            bool any = false;
            for (int t = 1; t < m1 && !any; ++t) any = inst.coverage[s][t] != 0;
            if (!any) uncovered.push_back(sc.sensors[s].id);
        }
        if (!uncovered.empty()) throw InfeasibleCoverage(std::move(uncovered));
    }
    return inst;
}

// Library defaults for the reference benchmark world: 100 sensors at 8 m
// minimum spacing in a 100 x 100 m field, one 20 x 20 m keep-out square
// tucked into the far corner, 30 candidate stops. Channel defaults give a
// stop roughly a 62 m ground radius, which makes mid-teens stop tours
// typical at this density (see README for the calibration notes). The
// keep-out square sits flush against the corner so that no stop is ever
// walled off from the rest of the field; a square in the open interior can
// strand the nearest-next walk with no finite leg out.
inline ScenarioConfig default_scenario_config() {
    ScenarioConfig cfg;
    cfg.region = Rect{{0.0, 0.0}, {100.0, 100.0}};
    cfg.n_sensors = 100;
    cfg.n_stops = 30;
    cfg.d_min = 8.0;
    cfg.restricted = {Rect{{80.0, 80.0}, {100.0, 100.0}}};
    cfg.channel = ChannelParams{};
    cfg.stop_layout = StopLayout::UniformRandom;
    cfg.seed = 42;
    return cfg;
}

// A budget loose enough that energy never binds at reference scale.
inline constexpr double kDefaultEnergyBudget = 1e12;

}  // namespace mot
