#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "mot/mot.hpp"
#include "test_util.hpp"

using namespace mot;

namespace {

// 3 sensors, station + 3 candidate stops. Sensor 0 is covered by stops 1 and
// 2 (cheaper at 1), sensor 1 only by stop 2, sensor 2 only by stop 3.
MotInstance fixture(double p_max = kDefaultEnergyBudget) {
    const std::vector<std::vector<std::uint8_t>> z = {
        {0, 1, 1, 0},
        {0, 0, 1, 0},
        {0, 0, 0, 1},
    };
    const std::vector<std::vector<double>> e = {
        {0, 1, 2, 0},
        {0, 0, 4, 0},
        {0, 0, 0, 8},
    };
    const std::vector<std::vector<double>> c = {
        {0, 10, 12, 8},
        {10, 0, 5, 6},
        {12, 5, 0, 4},
        {8, 6, 4, 0},
    };
    return testutil::make_instance(z, e, c, p_max);
}

}  // namespace

TEST_CASE("tour_cost sums legs and absorbs infinity", "[mot_model]") {
    const MotInstance inst = fixture();
    CHECK(tour_cost(inst, Tour{{0, 0}}) == 0.0);
    CHECK(tour_cost(inst, Tour{{0, 1, 0}}) == 20.0);
    CHECK(tour_cost(inst, Tour{{0, 1, 2, 3, 0}}) == 27.0);

    MotInstance blocked = fixture();
    blocked.cost[1][2] = blocked.cost[2][1] = kInf;
    CHECK(tour_cost(blocked, Tour{{0, 1, 2, 3, 0}}) == kInf);

    CHECK_THROWS_AS(tour_cost(inst, Tour{{0, 4, 0}}), IndexError);
    CHECK_THROWS_AS(tour_cost(inst, Tour{{0, -1, 0}}), IndexError);
}

TEST_CASE("evaluation walks deliveries with demand flags", "[mot_model]") {
    const MotInstance inst = fixture();
    const Evaluation ev = evaluate_tour(inst, Tour{{0, 1, 2, 3, 0}});
    const TourReport& rep = ev.report;

    CHECK(rep.feasible);
    CHECK(rep.total_cost == 27.0);
    // sensor 0 delivers at stop 1 for 1 and is switched off; without the
    // demand flag stop 2 would charge it again for 2
    CHECK(rep.total_energy == 13.0);
    CHECK(rep.covered == std::vector<int>{0, 1, 2});

    REQUIRE(ev.trace.visits.size() == 3);
    CHECK(ev.trace.visits[0].stop == 1);
    REQUIRE(ev.trace.visits[0].deliveries.size() == 1);
    CHECK(ev.trace.visits[0].deliveries[0].sensor == 0);
    CHECK(ev.trace.visits[0].deliveries[0].energy == 1.0);
    CHECK(ev.trace.visits[1].stop == 2);
    REQUIRE(ev.trace.visits[1].deliveries.size() == 1);
    CHECK(ev.trace.visits[1].deliveries[0].sensor == 1);
    CHECK(ev.trace.visits[2].stop == 3);
    REQUIRE(ev.trace.visits[2].deliveries.size() == 1);
    CHECK(ev.trace.visits[2].deliveries[0].sensor == 2);

    double traced = 0.0;
    for (const StopDeliveries& v : ev.trace.visits)
        for (const Delivery& d : v.deliveries) traced += d.energy;
    CHECK(traced == rep.total_energy);

    REQUIRE(rep.per_constraint.size() == 6);
    for (const char* key : kConstraintKeys) {
        CAPTURE(key);
        REQUIRE(rep.per_constraint.count(key) == 1);
        CHECK(rep.per_constraint.at(key).pass);
    }
}

TEST_CASE("delivery energy depends on visit order", "[mot_model]") {
    const MotInstance inst = fixture();
    const Evaluation fwd = evaluate_tour(inst, Tour{{0, 1, 2, 3, 0}});
    const Evaluation rev = evaluate_tour(inst, Tour{{0, 3, 2, 1, 0}});

    CHECK(rev.report.total_cost == fwd.report.total_cost);
    CHECK(rev.report.covered == fwd.report.covered);
    // reversed, sensor 0 meets stop 2 first and pays 2 instead of 1
    CHECK(rev.report.total_energy == 14.0);
    REQUIRE(rev.trace.visits.size() == 3);
    CHECK(rev.trace.visits[1].stop == 2);
    REQUIRE(rev.trace.visits[1].deliveries.size() == 2);
    CHECK(rev.trace.visits[1].deliveries[0].sensor == 0);
    CHECK(rev.trace.visits[1].deliveries[1].sensor == 1);
    CHECK(rev.trace.visits[2].deliveries.empty());
}

TEST_CASE("structural constraint verdicts", "[mot_model]") {
    const MotInstance inst = fixture();

    SECTION("wrong endpoints") {
        for (const Tour& bad : {Tour{{1, 2, 0}}, Tour{{0}}, Tour{{}}, Tour{{2, 1, 3}}}) {
            const TourReport rep = evaluate_tour(inst, bad).report;
            CHECK_FALSE(rep.per_constraint.at("endpoints").pass);
            CHECK_THAT(rep.per_constraint.at("endpoints").detail,
                       Catch::Matchers::ContainsSubstring("start and end at stop 0"));
            CHECK_FALSE(rep.feasible);
        }
    }
    SECTION("revisit") {
        const TourReport rep = evaluate_tour(inst, Tour{{0, 1, 1, 0}}).report;
        CHECK_FALSE(rep.per_constraint.at("uniqueness").pass);
        CHECK_THAT(rep.per_constraint.at("uniqueness").detail,
                   Catch::Matchers::ContainsSubstring("stop 1 visited more than once"));
    }
    SECTION("station in the interior") {
        const TourReport rep = evaluate_tour(inst, Tour{{0, 1, 0, 2, 0}}).report;
        CHECK_FALSE(rep.per_constraint.at("uniqueness").pass);
        CHECK_THAT(rep.per_constraint.at("uniqueness").detail,
                   Catch::Matchers::ContainsSubstring("revisits the charging station"));
    }
    SECTION("empty tour with pending sensors") {
        const TourReport rep = evaluate_tour(inst, Tour{{0, 0}}).report;
        CHECK(rep.per_constraint.at("endpoints").pass);
        CHECK(rep.per_constraint.at("uniqueness").pass);
        CHECK_FALSE(rep.per_constraint.at("length_domain").pass);
        CHECK_THAT(rep.per_constraint.at("length_domain").detail,
                   Catch::Matchers::ContainsSubstring(
                       "interior length 0 outside [1, 3] (empty tour allowed only with zero sensors)"));
        CHECK(rep.total_cost == 0.0);
        CHECK_FALSE(rep.feasible);
    }
    SECTION("too long and repeating at once") {
        const TourReport rep = evaluate_tour(inst, Tour{{0, 1, 2, 3, 1, 0}}).report;
        CHECK_FALSE(rep.per_constraint.at("uniqueness").pass);
        CHECK_FALSE(rep.per_constraint.at("length_domain").pass);
        CHECK_THAT(rep.per_constraint.at("length_domain").detail,
                   Catch::Matchers::ContainsSubstring("interior length 4 outside [1, 3]"));
    }
}

TEST_CASE("operational constraint verdicts", "[mot_model]") {
    SECTION("energy budget") {
        const MotInstance tight = fixture(12.0);
        const TourReport rep = evaluate_tour(tight, Tour{{0, 1, 2, 3, 0}}).report;
        CHECK_FALSE(rep.per_constraint.at("energy_budget").pass);
        CHECK_THAT(rep.per_constraint.at("energy_budget").detail,
                   Catch::Matchers::ContainsSubstring("used 13.000000 of budget 12.000000"));
        CHECK(rep.per_constraint.at("coverage").pass);
        CHECK_FALSE(rep.feasible);
    }
    SECTION("partial coverage") {
        const MotInstance inst = fixture();
        const TourReport rep = evaluate_tour(inst, Tour{{0, 1, 0}}).report;
        CHECK_FALSE(rep.per_constraint.at("coverage").pass);
        CHECK_THAT(rep.per_constraint.at("coverage").detail,
                   Catch::Matchers::ContainsSubstring("1 of 3 sensors delivered; missing: 1 2"));
        CHECK(rep.covered == std::vector<int>{0});
        CHECK_FALSE(rep.feasible);
    }
    SECTION("missing list is capped") {
        const std::size_t n = 12;
        const MotInstance lonely = testutil::make_instance(
            std::vector<std::vector<std::uint8_t>>(n, {0, 0}),
            std::vector<std::vector<double>>(n, {0.0, 0.0}),
            {{0.0, 1.0}, {1.0, 0.0}});
        const TourReport rep = evaluate_tour(lonely, Tour{{0, 1, 0}}).report;
        CHECK_THAT(rep.per_constraint.at("coverage").detail,
                   Catch::Matchers::ContainsSubstring("missing: 0 1 2 3 4 5 6 7 (and 4 more)"));
    }
    SECTION("forbidden leg") {
        MotInstance blocked = fixture();
        blocked.cost[1][2] = blocked.cost[2][1] = kInf;
        const TourReport rep = evaluate_tour(blocked, Tour{{0, 1, 2, 3, 0}}).report;
        CHECK_FALSE(rep.per_constraint.at("restricted_avoidance").pass);
        CHECK_THAT(rep.per_constraint.at("restricted_avoidance").detail,
                   Catch::Matchers::ContainsSubstring("leg 1 -> 2 has infinite cost"));
        CHECK(rep.total_cost == kInf);
        CHECK(rep.per_constraint.at("coverage").pass);
        CHECK_FALSE(rep.feasible);
    }
    SECTION("empty tour with zero sensors is the feasible optimum") {
        const MotInstance none = testutil::make_instance({}, {}, {{0.0, 1.0}, {1.0, 0.0}});
        const TourReport rep = evaluate_tour(none, Tour{{0, 0}}).report;
        CHECK(rep.feasible);
        CHECK(rep.total_cost == 0.0);
        CHECK(rep.total_energy == 0.0);
        CHECK_THAT(rep.per_constraint.at("coverage").detail,
                   Catch::Matchers::ContainsSubstring("all 0 sensor(s) delivered"));
    }
}

TEST_CASE("evaluation ignores unvisited stops", "[mot_model]") {
    const MotInstance inst = fixture();
    // same world with stops 2 and 3 relabeled; a tour visiting only stop 1
    // cannot tell the difference
    const std::vector<std::vector<std::uint8_t>> z = {
        {0, 1, 0, 1},
        {0, 0, 0, 1},
        {0, 0, 1, 0},
    };
    const std::vector<std::vector<double>> e = {
        {0, 1, 0, 2},
        {0, 0, 0, 4},
        {0, 0, 8, 0},
    };
    const std::vector<std::vector<double>> c = {
        {0, 10, 8, 12},
        {10, 0, 6, 5},
        {8, 6, 0, 4},
        {12, 5, 4, 0},
    };
    const MotInstance swapped = testutil::make_instance(z, e, c);

    const TourReport a = evaluate_tour(inst, Tour{{0, 1, 0}}).report;
    const TourReport b = evaluate_tour(swapped, Tour{{0, 1, 0}}).report;
    CHECK(a.total_cost == b.total_cost);
    CHECK(a.total_energy == b.total_energy);
    CHECK(a.covered == b.covered);
    CHECK(a.feasible == b.feasible);
    for (const char* key : kConstraintKeys)
        CHECK(a.per_constraint.at(key).pass == b.per_constraint.at(key).pass);
}

TEST_CASE("feasibility screening produces certificates", "[mot_model]") {
    SECTION("advisory pass") {
        const FeasibilityCheck fc = feasible_exists(fixture());
        CHECK(fc.ok);
        CHECK_THAT(fc.reason, Catch::Matchers::ContainsSubstring("advisory"));
        CHECK(fc.uncoverable_sensors.empty());
        CHECK(fc.energy_lower_bound == 13.0);
    }
    SECTION("uncoverable sensor") {
        MotInstance inst = fixture();
        inst.coverage.push_back({0, 0, 0, 0});
        inst.energy.push_back({0, 0, 0, 0});
        inst.success_rate.push_back({0, 0, 0, 0});
        const FeasibilityCheck fc = feasible_exists(inst);
        CHECK_FALSE(fc.ok);
        CHECK(fc.uncoverable_sensors == std::vector<int>{3});
        CHECK_THAT(fc.reason, Catch::Matchers::ContainsSubstring("first id 3"));
    }
    SECTION("covering stop unreachable") {
        MotInstance inst = fixture();
        for (int u = 0; u < 4; ++u) inst.cost[u][3] = inst.cost[3][u] = kInf;
        const FeasibilityCheck fc = feasible_exists(inst);
        CHECK_FALSE(fc.ok);
        CHECK_THAT(fc.reason,
                   Catch::Matchers::ContainsSubstring(
                       "sensor 2 covered only by stops unreachable from the charging station"));
    }
    SECTION("energy lower bound exceeds the budget") {
        const FeasibilityCheck fc = feasible_exists(fixture(12.9));
        CHECK_FALSE(fc.ok);
        CHECK(fc.energy_lower_bound == 13.0);
        CHECK_THAT(fc.reason, Catch::Matchers::ContainsSubstring("energy lower bound"));
        CHECK_THAT(fc.reason, Catch::Matchers::ContainsSubstring("exceeds budget"));
    }
}

TEST_CASE("evaluation rejects out-of-range stop ids", "[mot_model]") {
    const MotInstance inst = fixture();
    CHECK_THROWS_AS(evaluate_tour(inst, Tour{{0, 9, 0}}), IndexError);
    CHECK_THROWS_AS(evaluate_tour(inst, Tour{{0, -2, 0}}), IndexError);
}
