#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mot/errors.hpp"
#include "mot/mot_model.hpp"
#include "mot/numeric.hpp"

namespace mot {

enum class Strategy { GreedyMinCost, GreedyMaxCoverage, ExactBruteForce };

inline std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::GreedyMinCost: return "greedy-min-cost";
        case Strategy::GreedyMaxCoverage: return "greedy-max-coverage";
        case Strategy::ExactBruteForce: return "exact-brute-force";
    }
    return "?";
}

enum class TieBreak { LowestStopId, NearestToChargingStation };

struct GreedyConfig {
    Strategy strategy = Strategy::GreedyMaxCoverage;
    TieBreak tie_break = TieBreak::LowestStopId;
    bool skip_forbidden = true;  // always honored; exists for ablation only
};

struct SolveResult {
    Tour tour;
    TourReport report;  // always evaluate_tour recomputed, never solver bookkeeping
    DeliveryTrace trace;
    double wall_time_s = 0.0;
    int stops_visited = 0;  // T_o, interior stops only
    Strategy strategy = Strategy::GreedyMinCost;
    std::vector<double> zeta_prefix;  // cumulative sensor energy after each visit
};

// Instance fails a necessary feasibility condition; carries the certificate.
struct InfeasibleInstance : MotError {
    FeasibilityCheck certificate;
    explicit InfeasibleInstance(FeasibilityCheck fc)
        : MotError("infeasible: " + fc.reason), certificate(std::move(fc)) {}
    explicit InfeasibleInstance(std::string reason)
        : MotError("infeasible: " + reason) {
        certificate.ok = false;
        certificate.reason = std::move(reason);
    }
};

// Every remaining leg out of the current stop is forbidden; the walk cannot
// continue or return.
struct StuckError : MotError {
    int at_stop;
    explicit StuckError(int stop, const std::string& what)
        : MotError("stuck at stop " + std::to_string(stop) + ": " + what), at_stop(stop) {}
};

// Max-coverage rule has reachable stops left but none covers a new sensor.
struct StalledZeroGain : MotError {
    int at_stop;
    int uncovered;
    StalledZeroGain(int stop, int remaining)
        : MotError("stalled at stop " + std::to_string(stop) + ": " + std::to_string(remaining) +
                   " sensor(s) uncovered but every reachable unvisited stop has zero gain"),
          at_stop(stop),
          uncovered(remaining) {}
};

struct TimeBudgetExceeded : MotError {
    std::optional<SolveResult> best_so_far;  // non-optimal incumbent, if any
    explicit TimeBudgetExceeded(double budget_s, std::optional<SolveResult> best)
        : MotError("time budget of " + std::to_string(budget_s) + " s exceeded"),
          best_so_far(std::move(best)) {}
};

namespace detail {

struct GreedyState {
    std::vector<int> order{0};
    std::vector<std::uint8_t> visited;
    std::vector<std::uint8_t> pending;
    std::vector<double> zeta_prefix;
    double zeta = 0.0;
    int covered = 0;
    int current = 0;
};

inline GreedyState greedy_init(const MotInstance& inst) {
    GreedyState st;
    st.visited.assign(inst.stop_count(), 0);
    st.visited[0] = 1;
    st.pending.assign(inst.sensor_count(), 1);
    return st;
}

inline void greedy_visit(const MotInstance& inst, GreedyState& st, int stop) {
    st.order.push_back(stop);
    st.visited[stop] = 1;
    for (int s = 0; s < inst.sensor_count(); ++s) {
        if (inst.coverage[s][stop] && st.pending[s]) {
            st.pending[s] = 0;
            st.zeta += inst.energy[s][stop];
            ++st.covered;
        }
    }
    st.zeta_prefix.push_back(st.zeta);
    st.current = stop;
}

inline SolveResult greedy_finish(const MotInstance& inst, GreedyState& st, Strategy strategy,
                                 std::chrono::steady_clock::time_point t0) {
    if (st.current != 0 && inst.cost[st.current][0] == kInf)
        throw StuckError(st.current, "return leg to the charging station is forbidden");
    st.order.push_back(0);
    SolveResult res;
    res.tour = Tour{std::move(st.order)};
    res.strategy = strategy;
    res.stops_visited = res.tour.interior_count();
    res.zeta_prefix = std::move(st.zeta_prefix);
    Evaluation ev = evaluate_tour(inst, res.tour);
    res.report = std::move(ev.report);
    res.trace = std::move(ev.trace);
    res.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

inline bool tie_prefer(const MotInstance& inst, TieBreak tb, int challenger, int incumbent) {
    if (tb == TieBreak::NearestToChargingStation) {
        const double a = inst.cost[0][challenger], b = inst.cost[0][incumbent];
        if (a != b) return a < b;
    }
    return challenger < incumbent;
}

}  // namespace detail

// Nearest-next-stop walk: repeatedly hop to the cheapest reachable unvisited
// stop (coverage gain does not influence the choice), absorbing each stop's
// newly covered sensors. The energy guard runs before each choice, so the
// visit that crosses the budget is still completed; the walk then returns to
// the station and the report carries the budget failure.
inline SolveResult solve_greedy_min_cost(const MotInstance& inst, const GreedyConfig& cfg = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    {
        FeasibilityCheck fc = feasible_exists(inst);
        if (!fc.ok) throw InfeasibleInstance(std::move(fc));
    }
    const int n = inst.sensor_count();
    const int m1 = inst.stop_count();
    detail::GreedyState st = detail::greedy_init(inst);

    int unvisited = m1 - 1;
    while (st.covered < n && st.zeta <= inst.p_max) {
        if (unvisited == 0) break;
        int pick = -1;
        double pick_cost = kInf;
        for (int t = 1; t < m1; ++t) {
            if (st.visited[t]) continue;
            const double c = inst.cost[st.current][t];
            if (c == kInf) continue;
            if (pick == -1 || c < pick_cost ||
                (c == pick_cost && detail::tie_prefer(inst, cfg.tie_break, t, pick))) {
                pick = t;
                pick_cost = c;
            }
        }
        if (pick == -1)
            throw StuckError(st.current, "every leg to an unvisited stop is forbidden");
        detail::greedy_visit(inst, st, pick);
        --unvisited;
    }
    return detail::greedy_finish(inst, st, Strategy::GreedyMinCost, t0);
}

// Max-gain walk: hop to the reachable unvisited stop covering the most
// still-pending sensors; zero-gain stops are never visited. Same energy-guard
// timing and return-leg handling as the min-cost walk.
inline SolveResult solve_greedy_max_coverage(const MotInstance& inst,
                                             const GreedyConfig& cfg = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    {
        FeasibilityCheck fc = feasible_exists(inst);
        if (!fc.ok) throw InfeasibleInstance(std::move(fc));
    }
    const int n = inst.sensor_count();
    const int m1 = inst.stop_count();
    detail::GreedyState st = detail::greedy_init(inst);

    int unvisited = m1 - 1;
    while (st.covered < n && st.zeta <= inst.p_max) {
        if (unvisited == 0) break;
        int pick = -1;
        int pick_gain = 0;
        bool any_reachable = false;
        for (int t = 1; t < m1; ++t) {
            if (st.visited[t]) continue;
            if (inst.cost[st.current][t] == kInf) continue;
            any_reachable = true;
            int gain = 0;
            for (int s = 0; s < n; ++s)
                if (inst.coverage[s][t] && st.pending[s]) ++gain;
            if (gain > pick_gain ||
                (gain == pick_gain && gain > 0 &&
                 detail::tie_prefer(inst, cfg.tie_break, t, pick))) {
                pick = t;
                pick_gain = gain;
            }
        }
        if (!any_reachable)
            throw StuckError(st.current, "every leg to an unvisited stop is forbidden");
        if (pick == -1) throw StalledZeroGain(st.current, n - st.covered);
        detail::greedy_visit(inst, st, pick);
        --unvisited;
    }
    return detail::greedy_finish(inst, st, Strategy::GreedyMaxCoverage, t0);
}

struct ExactLimits {
    int max_stops = 10;
    double time_budget_s = 0.0;  // 0 disables the budget
    bool prune = true;           // cost-only branch-and-bound; off for oracle runs
};

// Exhaustive search over every ordered subset of candidate stops, every
// prefix evaluated as a closed tour. Depth-first in ascending-id order, so
// the first tour at any given cost is the lexicographically smallest; strict
// improvement keeps it. Pruning drops branches whose partial cost already
// exceeds the incumbent, which cannot discard a better or equal-cost tour
// because leg costs are non-negative.
inline SolveResult solve_exact(const MotInstance& inst, const ExactLimits& limits = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    const int m1 = inst.stop_count();
    const int m = m1 - 1;
    if (m > limits.max_stops)
        throw LimitExceeded("exact solver limited to " + std::to_string(limits.max_stops) +
                            " candidate stops, instance has " + std::to_string(m));

    const int n = inst.sensor_count();
    Tour best_tour;
    double best_cost = kInf;
    bool found = false;
    long long ticks = 0;

    std::vector<int> prefix;
    std::vector<std::uint8_t> used(m1, 0);
    Tour scratch;

    auto consider_closed = [&](double running, int current) {
        const double back = inst.cost[current][0];
        if (back == kInf) return;
        const double total = running + back;
        if (found && !(total < best_cost)) return;
        scratch.stops.clear();
        scratch.stops.push_back(0);
        scratch.stops.insert(scratch.stops.end(), prefix.begin(), prefix.end());
        scratch.stops.push_back(0);
        Evaluation ev = evaluate_tour(inst, scratch);
        if (!ev.report.feasible) return;
        best_tour = scratch;
        best_cost = total;
        found = true;
    };

    auto budget_check = [&] {
        if (limits.time_budget_s <= 0.0) return;
        if (++ticks % 1024 != 0) return;
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (elapsed > limits.time_budget_s) {
            std::optional<SolveResult> best;
            if (found) {
                SolveResult partial;
                partial.tour = best_tour;
                partial.strategy = Strategy::ExactBruteForce;
                partial.stops_visited = best_tour.interior_count();
                Evaluation ev = evaluate_tour(inst, best_tour);
                partial.report = std::move(ev.report);
                partial.trace = std::move(ev.trace);
                partial.wall_time_s = elapsed;
                best = std::move(partial);
            }
            throw TimeBudgetExceeded(limits.time_budget_s, std::move(best));
        }
    };

    auto dfs = [&](auto&& self, int current, double running) -> void {
        budget_check();
        for (int t = 1; t < m1; ++t) {
            if (used[t]) continue;
            const double edge = inst.cost[current][t];
            if (edge == kInf) continue;
            const double next_running = running + edge;
            if (limits.prune && found && next_running > best_cost) continue;
            used[t] = 1;
            prefix.push_back(t);
            consider_closed(next_running, t);
            self(self, t, next_running);
            prefix.pop_back();
            used[t] = 0;
        }
    };

    if (n == 0) {
        // the empty closed tour costs 0 by convention and beats any real walk
        best_tour = Tour{{0, 0}};
        best_cost = 0.0;
        found = true;
    }
    dfs(dfs, 0, 0.0);

    if (!found) {
        FeasibilityCheck fc = feasible_exists(inst);
        if (fc.ok) {
            fc.ok = false;
            fc.reason = "exhaustive enumeration found no feasible tour";
        }
        throw InfeasibleInstance(std::move(fc));
    }

    SolveResult res;
    res.tour = std::move(best_tour);
    res.strategy = Strategy::ExactBruteForce;
    res.stops_visited = res.tour.interior_count();
    Evaluation ev = evaluate_tour(inst, res.tour);
    res.report = std::move(ev.report);
    res.trace = std::move(ev.trace);
    res.zeta_prefix.reserve(res.trace.visits.size());
    double zeta = 0.0;
    for (const StopDeliveries& v : res.trace.visits) {
        for (const Delivery& d : v.deliveries) zeta += d.energy;
        res.zeta_prefix.push_back(zeta);
    }
    res.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

// Tour length times solver wall time; lower is better.
inline double performance_indicator(double tour_length_m, double wall_time_s) {
    if (!(tour_length_m >= 0.0) || !std::isfinite(tour_length_m))
        throw DomainError("performance_indicator: tour length must be finite and >= 0");
    if (!(wall_time_s >= 0.0) || !std::isfinite(wall_time_s))
        throw DomainError("performance_indicator: wall time must be finite and >= 0");
    return tour_length_m * wall_time_s;
}

}  // namespace mot
