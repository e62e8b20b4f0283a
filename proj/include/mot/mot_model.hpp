#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mot/errors.hpp"
#include "mot/numeric.hpp"
#include "mot/scenario.hpp"

namespace mot {

// Closed walk over stop indices. The first and last entries are the charging
// station (stop 0); interior entries are the visited stops in order.
struct Tour {
    std::vector<int> stops;

    int interior_count() const {
        return stops.size() >= 2 ? static_cast<int>(stops.size()) - 2 : 0;
    }

    bool operator==(const Tour&) const = default;
};

struct ConstraintVerdict {
    bool pass = false;
    std::string detail;
};

// Verdict keys, in display order: three structural checks, then the
// path/energy/coverage checks.
inline constexpr const char* kConstraintKeys[6] = {
    "endpoints",        // tour starts and ends at the charging station
    "uniqueness",       // interior stops pairwise distinct, none the station
    "length_domain",    // 1 <= T_o <= M (empty tour only for zero sensors)
    "restricted_avoidance",  // no infinite-cost leg used
    "energy_budget",    // cumulative sensor energy within p_max
    "coverage",         // every sensor delivered exactly once
};

struct TourReport {
    double total_cost = 0.0;
    double total_energy = 0.0;
    std::vector<int> covered;  // sorted sensor ids
    std::map<std::string, ConstraintVerdict> per_constraint;
    bool feasible = false;
};

// Who delivered at which visit, in tour order. Reconstructs the demand-flag
// dynamics: a sensor appears at most once across the whole trace.
struct Delivery {
    int sensor = 0;
    double energy = 0.0;
};

struct StopDeliveries {
    int stop = 0;
    std::vector<Delivery> deliveries;
};

struct DeliveryTrace {
    std::vector<StopDeliveries> visits;
};

struct Evaluation {
    TourReport report;
    DeliveryTrace trace;
};

namespace detail {

inline void check_stop_ids(const MotInstance& inst, const Tour& t) {
    const int m1 = inst.stop_count();
    for (int id : t.stops)
        if (id < 0 || id >= m1)
            throw IndexError("stop id " + std::to_string(id) + " out of range [0, " +
                             std::to_string(m1 - 1) + "]");
}

inline bool is_empty_tour(const Tour& t) {
    return t.stops.size() == 2 && t.stops[0] == 0 && t.stops[1] == 0;
}

}  // namespace detail

// Objective value: sum of leg costs including the return leg; infinity as
// soon as any leg is forbidden. The empty tour [0, 0] costs 0 by convention.
inline double tour_cost(const MotInstance& inst, const Tour& t) {
    detail::check_stop_ids(inst, t);
    if (detail::is_empty_tour(t)) return 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < t.stops.size(); ++i)
        total += inst.cost[t.stops[i]][t.stops[i + 1]];
    return total;
}

// Order-faithful evaluation: walk the tour maintaining demand flags (every
// sensor starts with data pending); at each interior stop every covered,
// still-pending sensor delivers once and is switched off. Produces all six
// constraint verdicts; feasible is their conjunction.
inline Evaluation evaluate_tour(const MotInstance& inst, const Tour& t) {
    detail::check_stop_ids(inst, t);
    const int n = inst.sensor_count();
    const int m = inst.stop_count() - 1;  // candidate stops, station excluded

    Evaluation ev;
    TourReport& rep = ev.report;

    const bool endpoints_ok =
        t.stops.size() >= 2 && t.stops.front() == 0 && t.stops.back() == 0;
    rep.per_constraint["endpoints"] = {
        endpoints_ok,
        endpoints_ok ? "starts and ends at stop 0"
                     : "tour must start and end at stop 0 with at least two entries"};

    bool unique_ok = true;
    std::string unique_detail = "interior stops distinct and nonzero";
    if (t.stops.size() >= 2) {
        std::vector<std::uint8_t> seen(inst.stop_count(), 0);
        for (std::size_t i = 1; i + 1 < t.stops.size(); ++i) {
            const int id = t.stops[i];
            if (id == 0) {
                unique_ok = false;
                unique_detail = "interior entry revisits the charging station";
                break;
            }
            if (seen[id]) {
                unique_ok = false;
                unique_detail = "stop " + std::to_string(id) + " visited more than once";
                break;
            }
            seen[id] = 1;
        }
    }
    rep.per_constraint["uniqueness"] = {unique_ok, unique_detail};

    const int t_o = t.interior_count();
    const bool length_ok =
        t.stops.size() >= 2 && ((t_o >= 1 && t_o <= m) || (t_o == 0 && n == 0));
    rep.per_constraint["length_domain"] = {
        length_ok, length_ok ? std::to_string(t_o) + " interior stop(s)"
                             : "interior length " + std::to_string(t_o) +
                                   " outside [1, " + std::to_string(m) +
                                   "] (empty tour allowed only with zero sensors)"};

    // walk edges
    bool restricted_ok = true;
    std::string restricted_detail = "no forbidden leg used";
    if (detail::is_empty_tour(t)) {
        rep.total_cost = 0.0;
    } else {
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < t.stops.size(); ++i) {
            const double c = inst.cost[t.stops[i]][t.stops[i + 1]];
            if (c == kInf && restricted_ok) {
                restricted_ok = false;
                restricted_detail = "leg " + std::to_string(t.stops[i]) + " -> " +
                                    std::to_string(t.stops[i + 1]) + " has infinite cost";
            }
            total += c;
        }
        rep.total_cost = total;
    }
    rep.per_constraint["restricted_avoidance"] = {restricted_ok, restricted_detail};

    // walk deliveries
    std::vector<std::uint8_t> pending(n, 1);
    for (std::size_t i = 1; i + 1 < t.stops.size(); ++i) {
        const int stop = t.stops[i];
        StopDeliveries visit{stop, {}};
        for (int s = 0; s < n; ++s) {
            if (inst.coverage[s][stop] && pending[s]) {
                pending[s] = 0;
                const double e = inst.energy[s][stop];
                rep.total_energy += e;
                rep.covered.push_back(s);
                visit.deliveries.push_back({s, e});
            }
        }
        ev.trace.visits.push_back(std::move(visit));
    }
    std::sort(rep.covered.begin(), rep.covered.end());

    const bool energy_ok = rep.total_energy <= inst.p_max;
    rep.per_constraint["energy_budget"] = {
        energy_ok, "used " + std::to_string(rep.total_energy) + " of budget " +
                       std::to_string(inst.p_max)};

    const bool coverage_ok = static_cast<int>(rep.covered.size()) == n;
    std::string coverage_detail;
    if (coverage_ok) {
        coverage_detail = "all " + std::to_string(n) + " sensor(s) delivered";
    } else {
        coverage_detail = std::to_string(rep.covered.size()) + " of " + std::to_string(n) +
                          " sensors delivered; missing:";
        int listed = 0;
        for (int s = 0; s < n && listed < 8; ++s) {
            if (!std::binary_search(rep.covered.begin(), rep.covered.end(), s)) {
                coverage_detail += " " + std::to_string(s);
                ++listed;
            }
        }
        const int missing = n - static_cast<int>(rep.covered.size());
        if (missing > listed) coverage_detail += " (and " + std::to_string(missing - listed) + " more)";
    }
    rep.per_constraint["coverage"] = {coverage_ok, coverage_detail};

    rep.feasible = true;
    for (const char* key : kConstraintKeys)
        if (!rep.per_constraint[key].pass) rep.feasible = false;
    return ev;
}

// Pre-solve sanity: three necessary conditions with certificates. A false
// verdict is a proof of infeasibility; a true verdict is advisory only.
struct FeasibilityCheck {
    bool ok = false;
    std::string reason;
    std::vector<int> uncoverable_sensors;
    double energy_lower_bound = 0.0;
};

inline FeasibilityCheck feasible_exists(const MotInstance& inst) {
    const int n = inst.sensor_count();
    const int m1 = inst.stop_count();
    FeasibilityCheck out;

    for (int s = 0; s < n; ++s) {
        bool any = false;
        for (int t = 1; t < m1 && !any; ++t) any = inst.coverage[s][t] != 0;
        if (!any) out.uncoverable_sensors.push_back(s);
    }
    if (!out.uncoverable_sensors.empty()) {
        out.reason = "uncoverable sensor(s), no stop reaches: first id " +
                     std::to_string(out.uncoverable_sensors.front());
        return out;
    }

    // stops reachable from the station over finite legs
    std::vector<std::uint8_t> reachable(m1, 0);
    std::vector<int> queue{0};
    reachable[0] = 1;
    while (!queue.empty()) {
        const int u = queue.back();
        queue.pop_back();
        for (int v = 0; v < m1; ++v) {
            if (!reachable[v] && inst.cost[u][v] < kInf) {
                reachable[v] = 1;
                queue.push_back(v);
            }
        }
    }
    for (int s = 0; s < n; ++s) {
        bool ok = false;
        for (int t = 1; t < m1 && !ok; ++t) ok = inst.coverage[s][t] && reachable[t];
        if (!ok) {
            out.reason = "sensor " + std::to_string(s) +
                         " covered only by stops unreachable from the charging station";
            return out;
        }
    }

    double lb = 0.0;
    for (int s = 0; s < n; ++s) {
        double best = kInf;
        for (int t = 1; t < m1; ++t)
            if (inst.coverage[s][t]) best = std::min(best, inst.energy[s][t]);
        lb += best;
    }
    out.energy_lower_bound = lb;
    if (lb > inst.p_max) {
        out.reason = "energy lower bound " + std::to_string(lb) + " exceeds budget " +
                     std::to_string(inst.p_max);
        return out;
    }

    out.ok = true;
    out.reason = "necessary conditions hold (advisory, not a feasibility proof)";
    return out;
}

}  // namespace mot
