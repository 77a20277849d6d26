#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>
#include <vector>

#include <manetsim/manetsim.hpp>

using namespace manetsim;

namespace {

ConfigError capture_error(const std::string& text) {
    try {
        parse_scenario_text(text);
    } catch (const ConfigError& e) {
        return e;
    }
    FAIL("expected the scenario text to be rejected");
    return ConfigError("", "");
}

const std::string kFullText = R"(# exercise every section
[scenario]
name = demo
seed = 7
duration_s = 120
protocol = dsr

[radio]
range_m = 900
data_rate_bps = 2000000
refresh_interval_s = 2.5

[nodes]
placement = explicit
positions = (0,0); (500,0); (900,250)

[core]
hop_limit = 16
buffer_capacity = 10
buffer_timeout_s = 5

[dsr]
cache_capacity = 4
request_retries = 1

[trajectories]
2: (0,900,250);(10,1200,250)

[sessions]
cbr = 0, 2, 1.0, 100.0, 1024, 0.5
file = 1, 2, 5.0, 80000, 8000
)";

}  // namespace

TEST_CASE("a scenario file round-trips every section into the config") {
    const Scenario sc = parse_scenario_text(kFullText);
    CHECK(sc.name == "demo");
    CHECK(sc.seed == 7);
    CHECK(sc.duration_s == 120.0);
    CHECK(sc.protocol == "dsr");
    CHECK(sc.radio.range_m == 900.0);
    CHECK(sc.radio.data_rate_bps == 2'000'000);
    CHECK(sc.radio.refresh_interval_s == 2.5);
    CHECK(sc.node_count == 3);  // inferred from the position list
    REQUIRE(sc.placement.coords.size() == 3);
    CHECK(sc.placement.coords[2] == Vec2{900, 250});
    CHECK(sc.core.hop_limit == 16);
    CHECK(sc.core.buffer_capacity == 10);
    CHECK(sc.core.buffer_timeout_s == 5.0);
    CHECK(sc.dsr.cache_capacity == 4);
    CHECK(sc.dsr.request_retries == 1);
    REQUIRE(sc.explicit_trajectories.count(2) == 1);
    CHECK(sc.explicit_trajectories.at(2).size() == 2);
    REQUIRE(sc.sessions.size() == 2);
    CHECK(sc.sessions[0].kind == SessionSpec::Kind::Cbr);
    CHECK(sc.sessions[0].interval_s == 0.5);
    CHECK(sc.sessions[1].kind == SessionSpec::Kind::FileTransfer);
    CHECK(sc.sessions[1].file_bits == 80000);
    CHECK(sc.sessions[1].packet_bits == 8000);

    // Windows line endings parse identically.
    std::string crlf = kFullText;
    std::string with_cr;
    for (char c : crlf) {
        if (c == '\n') {
            with_cr += '\r';
        }
        with_cr += c;
    }
    CHECK(parse_scenario_text(with_cr).node_count == 3);
}

TEST_CASE("rejected configs name the key and the line") {
    SECTION("non-numeric duration") {
        const ConfigError e = capture_error("[scenario]\nduration_s = soon\nprotocol = aodv\n");
        CHECK(e.key_path() == "scenario.duration_s");
        CHECK(e.line() == 2);
    }
    SECTION("unknown section") {
        const ConfigError e = capture_error("[olsr]\nhello = 1\n");
        CHECK(e.key_path() == "olsr");
        CHECK(e.line() == 1);
    }
    SECTION("unknown key") {
        const ConfigError e =
            capture_error("[scenario]\nprotocol = aodv\n[radio]\nfrequency = 2400\n");
        CHECK(e.key_path() == "radio.frequency");
        CHECK(e.line() == 4);
    }
    SECTION("unterminated section header") {
        CHECK(capture_error("[radio\n").line() == 1);
    }
    SECTION("missing protocol") {
        CHECK(capture_error("[scenario]\nduration_s = 10\n").key_path() == "scenario.protocol");
    }
    SECTION("position count contradicts node count") {
        const ConfigError e = capture_error(
            "[scenario]\nprotocol = aodv\nduration_s = 10\n"
            "[nodes]\ncount = 4\npositions = (0,0);(1,1)\n");
        CHECK(e.key_path() == "nodes.positions");
    }
    SECTION("constant-rate session must stop after it starts") {
        const ConfigError e = capture_error(
            "[scenario]\nprotocol = aodv\nduration_s = 10\n"
            "[nodes]\npositions = (0,0);(1,1)\n"
            "[sessions]\ncbr = 0, 1, 5.0, 5.0, 1024, 1.0\n");
        CHECK(e.key_path() == "sessions[0]");
    }
    SECTION("packets must exceed the data header") {
        const ConfigError e = capture_error(
            "[scenario]\nprotocol = aodv\nduration_s = 10\n"
            "[nodes]\npositions = (0,0);(1,1)\n"
            "[sessions]\ncbr = 0, 1, 0.0, 5.0, 160, 1.0\n");
        CHECK(e.key_path() == "sessions[0]");
    }
    SECTION("a final transfer fragment must fit its header") {
        const ConfigError e = capture_error(
            "[scenario]\nprotocol = aodv\nduration_s = 10\n"
            "[nodes]\npositions = (0,0);(1,1)\n"
            "[sessions]\nfile = 0, 1, 0.0, 8100, 8000\n");
        CHECK(e.key_path() == "sessions[0]");
    }
    SECTION("trajectory waypoints must be time-ordered") {
        const ConfigError e = capture_error(
            "[scenario]\nprotocol = aodv\nduration_s = 10\n"
            "[nodes]\npositions = (0,0);(1,1)\n"
            "[trajectories]\n0: (5,0,0);(1,9,9)\n");
        CHECK(e.key_path() == "trajectories.0");
        CHECK(e.line() == 7);
    }
}

TEST_CASE("the preset catalog is complete and self-consistent") {
    REQUIRE(preset_catalog().size() == 11);
    for (const auto& [name, blurb] : preset_catalog()) {
        CHECK(is_preset(name));
        CHECK_FALSE(blurb.empty());
        const Scenario sc = make_preset(name);
        CHECK(sc.name == name);
        CHECK(sc.duration_s == 1800.0);
    }
    CHECK_FALSE(is_preset("dsr401"));
    CHECK_THROWS_AS(make_preset("dsr401"), ConfigError);

    const Scenario big = make_preset("dsr80");
    CHECK(big.protocol == "dsr");
    CHECK(big.node_count == 81);
    CHECK(big.placement.per_side == 40);
    CHECK(big.radio.range_m == 1500.0);
    CHECK(big.auto_perf_traffic);

    const Scenario lt = make_preset("aodv40_lt");
    CHECK(lt.aodv.active_route_timeout_s == 30.0);
    CHECK(lt.aodv.gratuitous_reply);
    CHECK_FALSE(lt.auto_perf_server_flow);
    const Scenario dflt = make_preset("aodv40_default");
    CHECK(dflt.aodv.active_route_timeout_s == 3.0);
    CHECK_FALSE(dflt.aodv.gratuitous_reply);

    const Scenario roam = make_preset("mob_aodv_500");
    CHECK(roam.node_count == 20);
    CHECK(roam.placement.kind == PlacementSpec::Kind::RandomBox);
    CHECK(roam.mobility.kind == MobilitySpec::Kind::Bounce);
    CHECK(roam.radio.range_m == 500.0);
    CHECK(roam.radio.refresh_interval_s == 5.0);
    CHECK(roam.auto_pair_traffic);
}

TEST_CASE("two-cloud placement is seeded, split by side, and bounded") {
    const Scenario sc = make_preset("dsr40");
    const std::vector<Vec2> a = place_nodes(sc, 5);
    const std::vector<Vec2> b = place_nodes(sc, 5);
    const std::vector<Vec2> c = place_nodes(sc, 6);
    REQUIRE(a.size() == 41);
    REQUIRE(a == b);
    REQUIRE(a != c);

    CHECK(a[0] == Vec2{0, 0});
    for (std::size_t i = 1; i <= 20; ++i) {
        CHECK(a[i].x < 0);
        CHECK(std::abs(a[i].x + 1000.0) <= 400.0);
        CHECK(std::abs(a[i].y) <= 400.0);
    }
    for (std::size_t i = 21; i <= 40; ++i) {
        CHECK(a[i].x > 0);
        CHECK(std::abs(a[i].x - 1000.0) <= 400.0);
    }
}

TEST_CASE("an overcrowded cloud is rejected rather than stacked") {
    Scenario sc = make_preset("dsr40");
    sc.placement.per_side = 1'000'000;
    CHECK_THROWS_AS(place_nodes(sc, 1), ConfigError);
}

TEST_CASE("materializing a workload preset wires sweeps and paired sessions") {
    const Scenario sc = make_preset("dsr40");
    const WorldPlan plan = materialize(sc, 3);
    REQUIRE(plan.trajectories.size() == 41);
    CHECK_FALSE(plan.static_topology);
    CHECK(plan.trajectories[0].size() == 1);  // the server holds still

    for (std::size_t id = 1; id < plan.trajectories.size(); ++id) {
        const Trajectory& tr = plan.trajectories[id];
        CHECK(tr.size() > 1);
        const Vec2 at0 = tr.position_at(SimTime::zero());
        double min_x = at0.x;
        double max_x = at0.x;
        for (double t : {13.7, 250.0, 777.7, 1500.0, 1800.0}) {
            const Vec2 p = tr.position_at(seconds(t));
            CHECK(p.y == at0.y);  // oscillation is horizontal only
            min_x = std::min(min_x, p.x);
            max_x = std::max(max_x, p.x);
        }
        CHECK(max_x - min_x <= 2.0 * sc.mobility.amplitude_m + 1e-6);
    }

    // One session toward the opposite cloud and one toward the server, per
    // workstation, all inside the jitter window.
    REQUIRE(plan.sessions.size() == 80);
    CHECK(plan.sessions[0].src == 1);
    CHECK(plan.sessions[0].dst == 21);
    CHECK(plan.sessions[1].src == 1);
    CHECK(plan.sessions[1].dst == 0);
    for (const SessionSpec& s : plan.sessions) {
        CHECK(s.stop_s == 1800.0);
        CHECK(s.start_s >= 1.0);
        CHECK(s.start_s < 11.0);
        CHECK(s.packet_bits == 1024);
    }

    const Scenario lt = make_preset("aodv40_lt");
    CHECK(materialize(lt, 3).sessions.size() == 40);

    // Same seed, same plan; the sweep phases are part of the seed's output.
    const WorldPlan again = materialize(sc, 3);
    CHECK(again.trajectories[7].position_at(seconds(500.0)) ==
          plan.trajectories[7].position_at(seconds(500.0)));
    const WorldPlan other = materialize(sc, 4);
    bool any_differs = false;
    for (std::size_t id = 1; id < plan.trajectories.size(); ++id) {
        if (!(other.trajectories[id].position_at(seconds(500.0)) ==
              plan.trajectories[id].position_at(seconds(500.0)))) {
            any_differs = true;
        }
    }
    CHECK(any_differs);
}

TEST_CASE("roaming nodes reflect off the arena walls and stay inside") {
    const Scenario sc = make_preset("mob_aodv_1000");
    const WorldPlan plan = materialize(sc, 11);
    REQUIRE(plan.trajectories.size() == 20);
    CHECK_FALSE(plan.static_topology);
    REQUIRE(plan.sessions.size() == 10);
    CHECK(plan.sessions[3].src == 3);
    CHECK(plan.sessions[3].dst == 13);

    for (const Trajectory& tr : plan.trajectories) {
        CHECK(tr.size() > 1);
        for (double t = 0.0; t <= 1800.0; t += 37.0) {
            const Vec2 p = tr.position_at(seconds(t));
            CHECK(std::abs(p.x) <= 1000.0 + 1e-6);
            CHECK(std::abs(p.y) <= 1000.0 + 1e-6);
        }
    }
}

TEST_CASE("explicit trajectories shadow generated motion and static mobility") {
    Scenario sc = parse_scenario_text(kFullText);
    const WorldPlan plan = materialize(sc, 1);
    REQUIRE(plan.trajectories.size() == 3);
    CHECK(plan.trajectories[0].size() == 1);
    CHECK(plan.trajectories[1].size() == 1);
    CHECK(plan.trajectories[2].size() == 2);  // the override from the file
    CHECK_FALSE(plan.static_topology);
    CHECK(plan.trajectories[2].position_at(seconds(5.0)) == Vec2{1050, 250});

    sc.explicit_trajectories.clear();
    const WorldPlan still = materialize(sc, 1);
    CHECK(still.static_topology);
    REQUIRE(still.sessions.size() == 2);  // file sessions pass through untouched
}
