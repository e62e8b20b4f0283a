#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mot/mot.hpp"

namespace {

// exit codes: 0 ok, 1 generic failure, 2 generation, 3 infeasible,
// 4 stuck/stalled/limit, 5 parse
constexpr int kExitOk = 0;
constexpr int kExitGeneric = 1;
constexpr int kExitGeneration = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitStuck = 4;
constexpr int kExitParse = 5;

std::vector<mot::Rect> rects_from_flat(const std::vector<double>& flat) {
    std::vector<mot::Rect> out;
    for (std::size_t i = 0; i + 3 < flat.size(); i += 4)
        out.push_back(mot::Rect{{flat[i], flat[i + 1]}, {flat[i + 2], flat[i + 3]}});
    return out;
}

mot::Strategy parse_strategy(const std::string& name) {
    if (name == "min-cost" || name == "greedy-min-cost") return mot::Strategy::GreedyMinCost;
    if (name == "max-coverage" || name == "greedy-max-coverage")
        return mot::Strategy::GreedyMaxCoverage;
    if (name == "exact" || name == "exact-brute-force") return mot::Strategy::ExactBruteForce;
    throw CLI::ValidationError("--strategy", "unknown strategy '" + name + "'");
}

mot::SuccessRateConvention parse_convention(const std::string& name) {
    if (name == "corrected") return mot::SuccessRateConvention::Corrected;
    if (name == "literal") return mot::SuccessRateConvention::Literal;
    throw CLI::ValidationError("--convention", "unknown convention '" + name + "'");
}

mot::Tour parse_tour_string(const std::string& text, int stop_count) {
    mot::Tour tour;
    std::size_t i = 0;
    while (i <= text.size()) {
        std::size_t j = text.find(',', i);
        if (j == std::string::npos) j = text.size();
        const std::string tok = text.substr(i, j - i);
        if (tok.empty()) throw mot::SchemaError(1, "empty entry in tour list");
        int id = 0;
        auto res = std::from_chars(tok.data(), tok.data() + tok.size(), id);
        if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
            throw mot::SchemaError(1, "tour entry '" + tok + "' is not an integer");
        if (id < 0 || id >= stop_count)
            throw mot::SchemaError(1, "tour entry " + std::to_string(id) +
                                          " outside stop range [0, " +
                                          std::to_string(stop_count - 1) + "]");
        tour.stops.push_back(id);
        if (j == text.size()) break;
        i = j + 1;
    }
    return tour;
}

std::string tour_to_arrows(const mot::Tour& t) {
    std::string out;
    for (std::size_t i = 0; i < t.stops.size(); ++i) {
        if (i) out += " -> ";
        out += std::to_string(t.stops[i]);
    }
    return out;
}

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

void print_report(const mot::TourReport& rep, int n_sensors) {
    for (const char* key : mot::kConstraintKeys) {
        const mot::ConstraintVerdict& v = rep.per_constraint.at(key);
        std::printf("  %-21s %s  (%s)\n", key, v.pass ? "PASS" : "FAIL", v.detail.c_str());
    }
    std::printf("total cost: %.6g m\n", rep.total_cost);
    std::printf("total energy: %.6g\n", rep.total_energy);
    std::printf("coverage: %d/%d\n", static_cast<int>(rep.covered.size()), n_sensors);
    std::printf("feasible: %s\n", rep.feasible ? "yes" : "no");
}

struct GenerateArgs {
    std::string out_path;
    std::uint64_t seed = 42;
    int n_sensors = 100;
    int n_stops = 30;
    double d_min = 8.0;
    std::vector<double> region{0, 0, 100, 100};
    std::vector<double> restricted_flat;
    bool no_restricted = false;
    std::string layout = "uniform";
    std::string modulation = "bpsk";
    std::vector<double> custom_modulation;
    mot::ChannelParams ch;
};

int cmd_generate(const GenerateArgs& a) {
    mot::ScenarioConfig cfg;
    cfg.region = mot::Rect{{a.region[0], a.region[1]}, {a.region[2], a.region[3]}};
    cfg.n_sensors = a.n_sensors;
    cfg.n_stops = a.n_stops;
    cfg.d_min = a.d_min;
    cfg.seed = a.seed;
    cfg.stop_layout =
        a.layout == "grid" ? mot::StopLayout::Grid : mot::StopLayout::UniformRandom;
    if (a.no_restricted)
        cfg.restricted.clear();
    else if (!a.restricted_flat.empty())
        cfg.restricted = rects_from_flat(a.restricted_flat);
    else
        cfg.restricted = mot::default_scenario_config().restricted;
    cfg.channel = a.ch;
    if (!a.custom_modulation.empty())
        cfg.channel.modulation =
            mot::Modulation::custom(a.custom_modulation[0], a.custom_modulation[1]);
    else if (a.modulation == "fsk")
        cfg.channel.modulation = mot::Modulation::fsk();
    else if (a.modulation == "bpsk")
        cfg.channel.modulation = mot::Modulation::bpsk();
    else
        throw CLI::ValidationError("--modulation", "unknown scheme '" + a.modulation + "'");

    std::vector<std::string> warnings;
    const mot::Scenario sc = mot::generate_scenario(cfg, &warnings);
    mot::save_scenario(sc, a.out_path);
    std::printf("wrote %s: %zu sensors, %zu stops (incl. station), %zu restricted zone(s), seed %llu\n",
                a.out_path.c_str(), sc.sensors.size(), sc.stops.size(), sc.restricted.size(),
                static_cast<unsigned long long>(sc.seed));
    for (const std::string& w : warnings) std::printf("warning: %s\n", w.c_str());
    return kExitOk;
}

struct SolveArgs {
    std::string scenario_path;
    std::string strategy = "max-coverage";
    std::string tie_break = "lowest-id";
    std::string convention = "corrected";
    double p_max = mot::kDefaultEnergyBudget;
    std::string record_path;
    std::string plot_path;
    int max_stops = 10;
    double time_budget_s = 0.0;
    bool no_prune = false;
};

int cmd_solve(const SolveArgs& a) {
    const mot::Scenario sc = mot::load_scenario(a.scenario_path);
    const mot::Strategy strategy = parse_strategy(a.strategy);
    const mot::MotInstance inst =
        mot::build_instance(sc, parse_convention(a.convention), a.p_max);

    mot::GreedyConfig gcfg;
    gcfg.strategy = strategy;
    gcfg.tie_break = a.tie_break == "nearest-station" ? mot::TieBreak::NearestToChargingStation
                                                      : mot::TieBreak::LowestStopId;
    mot::SolveResult res;
    switch (strategy) {
        case mot::Strategy::GreedyMinCost: res = mot::solve_greedy_min_cost(inst, gcfg); break;
        case mot::Strategy::GreedyMaxCoverage:
            res = mot::solve_greedy_max_coverage(inst, gcfg);
            break;
        case mot::Strategy::ExactBruteForce: {
            mot::ExactLimits limits;
            limits.max_stops = a.max_stops;
            limits.time_budget_s = a.time_budget_s;
            limits.prune = !a.no_prune;
            res = mot::solve_exact(inst, limits);
            break;
        }
    }

    const double alpha = mot::performance_indicator(res.report.total_cost, res.wall_time_s);
    std::printf("strategy: %s\n", mot::to_string(res.strategy).c_str());
    std::printf("tour: %s\n", tour_to_arrows(res.tour).c_str());
    std::printf("stops visited: %d\n", res.stops_visited);
    std::printf("wall time: %.6g s\n", res.wall_time_s);
    std::printf("alpha: %.6g\n", alpha);
    print_report(res.report, inst.sensor_count());

    if (!a.plot_path.empty()) {
        mot::write_tour_svg(sc, res.tour, a.plot_path);
        std::printf("wrote plot %s\n", a.plot_path.c_str());
    }
    if (!a.record_path.empty()) {
        mot::RunRecord rec;
        rec.scenario_path = a.scenario_path;
        rec.scenario_hash = mot::hash_file(a.scenario_path);
        rec.strategy = mot::to_string(res.strategy);
        rec.seed = sc.seed;
        rec.tour = res.tour.stops;
        rec.cost = res.report.total_cost;
        rec.energy = res.report.total_energy;
        rec.coverage_fraction =
            inst.sensor_count() == 0
                ? 1.0
                : static_cast<double>(res.report.covered.size()) / inst.sensor_count();
        rec.wall_time_s = res.wall_time_s;
        rec.alpha = alpha;
        rec.feasible = res.report.feasible;
        std::ofstream out(a.record_path, std::ios::binary);
        if (!out) throw mot::IoError("cannot open '" + a.record_path + "' for writing");
        mot::write_run_records({rec}, out);
        std::printf("wrote record %s\n", a.record_path.c_str());
    }
    return res.report.feasible ? kExitOk : kExitInfeasible;
}

struct BenchArgs {
    std::vector<int> m_list{30};
    std::vector<int> n_list{100};
    std::vector<std::uint64_t> seeds;
    int num_seeds = 0;
    std::vector<std::string> strategies{"max-coverage"};
    double d_min = 8.0;
    bool no_restricted = false;
    double p_max = mot::kDefaultEnergyBudget;
    std::string convention = "corrected";
    std::string out_path;
};

int cmd_bench(const BenchArgs& a) {
    std::vector<std::uint64_t> seeds = a.seeds;
    if (seeds.empty())
        for (int i = 0; i < a.num_seeds; ++i) seeds.push_back(static_cast<std::uint64_t>(i));

    std::vector<mot::RunRecord> records;
    struct Agg {
        std::vector<double> lengths, times;
        int ok = 0, failed = 0;
    };
    std::map<std::string, Agg> agg;

    for (int m : a.m_list) {
        for (int n : a.n_list) {
            for (std::uint64_t seed : seeds) {
                for (const std::string& sname : a.strategies) {
                    const mot::Strategy strategy = parse_strategy(sname);
                    mot::RunRecord rec;
                    rec.scenario_path = "bench://m" + std::to_string(m) + "/n" +
                                        std::to_string(n) + "/seed" + std::to_string(seed);
                    rec.strategy = mot::to_string(strategy);
                    rec.seed = seed;
                    Agg& bucket = agg[rec.strategy];
                    try {
                        mot::ScenarioConfig cfg = mot::default_scenario_config();
                        cfg.n_stops = m;
                        cfg.n_sensors = n;
                        cfg.d_min = a.d_min;
                        cfg.seed = seed;
                        if (a.no_restricted) cfg.restricted.clear();
                        const mot::Scenario sc = mot::generate_scenario(cfg);
                        const std::string body = mot::scenario_to_string(sc);
                        rec.scenario_hash = mot::fnv1a64_hex(body.data(), body.size());
                        const mot::MotInstance inst =
                            mot::build_instance(sc, parse_convention(a.convention), a.p_max);
                        mot::SolveResult res;
                        switch (strategy) {
                            case mot::Strategy::GreedyMinCost:
                                res = mot::solve_greedy_min_cost(inst);
                                break;
                            case mot::Strategy::GreedyMaxCoverage:
                                res = mot::solve_greedy_max_coverage(inst);
                                break;
                            case mot::Strategy::ExactBruteForce:
                                res = mot::solve_exact(inst);
                                break;
                        }
                        rec.tour = res.tour.stops;
                        rec.cost = res.report.total_cost;
                        rec.energy = res.report.total_energy;
                        rec.coverage_fraction =
                            inst.sensor_count() == 0
                                ? 1.0
                                : static_cast<double>(res.report.covered.size()) /
                                      inst.sensor_count();
                        rec.wall_time_s = res.wall_time_s;
                        rec.alpha =
                            mot::performance_indicator(rec.cost, rec.wall_time_s);
                        rec.feasible = res.report.feasible;
                        if (rec.feasible) {
                            bucket.lengths.push_back(rec.cost);
                            bucket.times.push_back(rec.wall_time_s);
                            ++bucket.ok;
                        } else {
                            ++bucket.failed;
                        }
                    } catch (const mot::MotError& e) {
                        rec.status = "error";
                        rec.error = e.what();
                        ++bucket.failed;
                    }
                    records.push_back(std::move(rec));
                }
            }
        }
    }

    if (!a.out_path.empty()) {
        std::ofstream out(a.out_path, std::ios::binary);
        if (!out) throw mot::IoError("cannot open '" + a.out_path + "' for writing");
        mot::write_run_records(records, out);
    }

    std::printf("%-22s %6s %6s %18s %16s %14s\n", "strategy", "ok", "fail", "median length (m)",
                "median time (s)", "alpha");
    for (const auto& [name, bucket] : agg) {
        const double len = median(bucket.lengths);
        const double tm = median(bucket.times);
        std::printf("%-22s %6d %6d %18.4f %16.6f %14.6f\n", name.c_str(), bucket.ok,
                    bucket.failed, len, tm, len * tm);
    }
    std::printf("%zu run(s) recorded\n", records.size());
    return kExitOk;
}

struct ValidateArgs {
    std::string scenario_path;
    std::string tour_text;
    double p_max = mot::kDefaultEnergyBudget;
    std::string convention = "corrected";
};

int cmd_validate(const ValidateArgs& a) {
    const mot::Scenario sc = mot::load_scenario(a.scenario_path);
    mot::BuildOptions opts;
    opts.allow_uncoverable = true;  // report the coverage failure, don't refuse the instance
    const mot::MotInstance inst =
        mot::build_instance(sc, parse_convention(a.convention), a.p_max, opts);
    mot::Tour tour;
    try {
        tour = parse_tour_string(a.tour_text, inst.stop_count());
    } catch (const mot::SchemaError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitParse;
    }
    const mot::Evaluation ev = mot::evaluate_tour(inst, tour);
    std::printf("tour: %s\n", tour_to_arrows(tour).c_str());
    print_report(ev.report, inst.sensor_count());
    return ev.report.feasible ? kExitOk : kExitInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mobile collector tour planner"};
    app.require_subcommand(1);

    GenerateArgs ga;
    CLI::App* gen = app.add_subcommand("generate", "generate a scenario file");
    gen->add_option("--out", ga.out_path, "output scenario path")->required();
    gen->add_option("--seed", ga.seed, "generation seed");
    gen->add_option("--n-sensors", ga.n_sensors, "number of sensors");
    gen->add_option("--n-stops", ga.n_stops, "candidate stops (station excluded)");
    gen->add_option("--d-min", ga.d_min, "minimum sensor separation (m)");
    gen->add_option("--region", ga.region, "region as minx miny maxx maxy")->expected(4);
    gen->add_option("--restricted", ga.restricted_flat,
                    "restricted rect as minx miny maxx maxy (repeatable); default one 20x20 zone "
                    "in the far corner")
        ->type_size(4);
    gen->add_flag("--no-restricted", ga.no_restricted, "generate without restricted zones");
    gen->add_option("--stop-layout", ga.layout, "uniform or grid")
        ->check(CLI::IsMember({"uniform", "grid"}));
    gen->add_option("--modulation", ga.modulation, "bpsk or fsk")
        ->check(CLI::IsMember({"bpsk", "fsk"}));
    gen->add_option("--custom-modulation", ga.custom_modulation, "custom scheme as c_m k_m")
        ->expected(2);
    gen->add_option("--packet-bits", ga.ch.packet_bits, "packet size in bits");
    gen->add_option("--q-max", ga.ch.q_max, "max transmission attempts");
    gen->add_option("--tx-power", ga.ch.tx_power_w, "sensor transmit power (W)");
    gen->add_option("--gain-tx", ga.ch.gain_tx, "transmit antenna gain");
    gen->add_option("--gain-rx", ga.ch.gain_rx, "receive antenna gain");
    gen->add_option("--wavelength", ga.ch.wavelength_m, "carrier wavelength (m)");
    gen->add_option("--rx-sensitivity", ga.ch.rx_sensitivity_w, "receiver sensitivity (W)");
    gen->add_option("--noise-power", ga.ch.noise_power_w, "noise power (W)");
    gen->add_option("--rho-min", ga.ch.rho_min, "delivery probability needed for coverage");
    gen->add_option("--h-min", ga.ch.h_min_m, "hover altitude (m)");

    SolveArgs sa;
    CLI::App* solve = app.add_subcommand("solve", "plan a tour for a scenario");
    solve->add_option("--scenario", sa.scenario_path, "scenario file")->required();
    solve->add_option("--strategy", sa.strategy, "min-cost, max-coverage, or exact");
    solve->add_option("--tie-break", sa.tie_break, "lowest-id or nearest-station")
        ->check(CLI::IsMember({"lowest-id", "nearest-station"}));
    solve->add_option("--convention", sa.convention, "corrected or literal success-rate formula");
    solve->add_option("--p-max", sa.p_max, "sensor energy budget");
    solve->add_option("--record", sa.record_path, "write an ndjson run record here");
    solve->add_option("--plot", sa.plot_path, "write an SVG tour diagram here");
    solve->add_option("--max-stops", sa.max_stops, "exact solver size guard");
    solve->add_option("--time-budget", sa.time_budget_s, "exact solver time budget (s), 0 = off");
    solve->add_flag("--no-prune", sa.no_prune, "exact solver: disable cost pruning");

    BenchArgs ba;
    CLI::App* bench = app.add_subcommand("bench", "sweep a config grid and tabulate results");
    bench->add_option("--m", ba.m_list, "candidate stop counts (repeatable)");
    bench->add_option("--n", ba.n_list, "sensor counts (repeatable)");
    bench->add_option("--seed", ba.seeds, "explicit seeds (repeatable)");
    bench->add_option("--num-seeds", ba.num_seeds, "use seeds 0..K-1 when --seed is absent");
    bench->add_option("--strategy", ba.strategies, "strategies to run (repeatable)");
    bench->add_option("--d-min", ba.d_min, "minimum sensor separation (m)");
    bench->add_flag("--no-restricted", ba.no_restricted, "drop the default restricted zone");
    bench->add_option("--p-max", ba.p_max, "sensor energy budget");
    bench->add_option("--convention", ba.convention, "corrected or literal");
    bench->add_option("--out", ba.out_path, "write ndjson records here");

    ValidateArgs va;
    CLI::App* validate = app.add_subcommand("validate", "evaluate a tour against a scenario");
    validate->add_option("--scenario", va.scenario_path, "scenario file")->required();
    validate->add_option("--tour", va.tour_text, "comma-separated stop ids")->required();
    validate->add_option("--p-max", va.p_max, "sensor energy budget");
    validate->add_option("--convention", va.convention, "corrected or literal");

    try {
        app.parse(argc, argv);
        if (gen->parsed()) return cmd_generate(ga);
        if (solve->parsed()) return cmd_solve(sa);
        if (bench->parsed()) return cmd_bench(ba);
        if (validate->parsed()) return cmd_validate(va);
        return kExitGeneric;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const mot::SaturationShortfall& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitGeneration;
    } catch (const mot::GenerationFailure& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitGeneration;
    } catch (const mot::InfeasibleInstance& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInfeasible;
    } catch (const mot::InfeasibleCoverage& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInfeasible;
    } catch (const mot::StuckError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitStuck;
    } catch (const mot::StalledZeroGain& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitStuck;
    } catch (const mot::LimitExceeded& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitStuck;
    } catch (const mot::TimeBudgetExceeded& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitStuck;
    } catch (const mot::SchemaError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitParse;
    } catch (const mot::MotError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitGeneric;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitGeneric;
    }
}
