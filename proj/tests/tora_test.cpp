#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "support/micro.hpp"

using namespace manetsim;
using micro::Bench;

namespace {
const RadioConfig kChainRadio{1000.0, 1'000'000, 10.0};
const RadioConfig kDiamondRadio{1170.0, 1'000'000, 10.0};

int upd_count_from(const Bench& b, NodeId from, int sender_height) {
    int n = 0;
    for (const auto& rec : b.control_log) {
        const auto* upd = std::get_if<Upd>(&rec.body);
        if (rec.from == from && upd != nullptr && upd->sender_height == sender_height) {
            ++n;
        }
    }
    return n;
}
}  // namespace

TEST_CASE("a query wave builds monotone heights back from the destination") {
    Bench b(micro::still(micro::chain3()), "tora", 10, kChainRadio);
    b.run_to(0.1);
    b.originate(0, 2);
    b.run_to(1.0);

    REQUIRE(b.delivered.size() == 1);
    REQUIRE(b.delivered[0].visited == std::vector<NodeId>{0, 1, 2});
    REQUIRE(b.tora(0).height(2) == 2);
    REQUIRE(b.tora(1).height(2) == 1);
    REQUIRE(b.tora(2).height(2) == 0);  // a destination is its own floor
    REQUIRE(b.tora(0).height(0) == 0);

    // The wave announced each level exactly once within earshot.
    REQUIRE(upd_count_from(b, 2, 0) == 1);
    REQUIRE(upd_count_from(b, 1, 1) == 2);
    REQUIRE(upd_count_from(b, 0, 2) == 1);
    const auto* known = b.tora(0).known_neighbor_heights(2);
    REQUIRE(known != nullptr);
    REQUIRE(*known == std::map<NodeId, int>{{1, 1}});

    REQUIRE(b.metrics.total_routing_bits_sent() == 2 * 192 + 3 * 160);
    REQUIRE(b.metrics.total_routing_bits_received() == 3 * 192 + 4 * 160);

    // A second packet rides the established ordering without new control.
    const auto log_size = b.control_log.size();
    b.originate(0, 2);
    b.run_to(1.1);
    REQUIRE(b.delivered.size() == 2);
    REQUIRE(b.control_log.size() == log_size);
}

TEST_CASE("a node with a set height answers a query instead of re-flooding it") {
    Bench b(micro::still(micro::chain5()), "tora", 10, kChainRadio);
    b.run_to(0.1);
    b.originate(0, 4);
    b.run_to(1.0);
    REQUIRE(b.delivered.size() == 1);
    REQUIRE(b.tora(0).height(4) == 4);
    REQUIRE(b.tora(1).height(4) == 3);
    REQUIRE(b.tora(2).height(4) == 2);
    REQUIRE(b.tora(3).height(4) == 1);
    REQUIRE(b.tora(4).height(4) == 0);

    // A stranger's query lands on node 1, which already sits at height 3:
    // the answer is its own height, not another flood.
    const int qry_before = b.control_count<Qry>();
    const int answers_before = upd_count_from(b, 1, 3);
    b.inject(1, kNoNode, Qry{4, 77, 5});
    b.run_to(1.5);
    REQUIRE(b.control_count<Qry>() == qry_before);
    // One fresh announcement, heard by both chain neighbours.
    REQUIRE(upd_count_from(b, 1, 3) == answers_before + 2);

    // The same query again is recognised and ignored outright.
    const auto log_size = b.control_log.size();
    b.inject(1, kNoNode, Qry{4, 77, 5});
    b.run_to(2.0);
    REQUIRE(b.control_log.size() == log_size);
}

TEST_CASE("equal downstream heights break toward the smaller node id") {
    Bench b(micro::still(micro::diamond4()), "tora", 10, kDiamondRadio);
    b.run_to(0.1);
    b.originate(0, 3);
    b.run_to(1.0);

    REQUIRE(b.delivered.size() == 1);
    REQUIRE(b.delivered[0].visited == std::vector<NodeId>{0, 1, 3});
    REQUIRE(b.tora(0).height(3) == 2);
    REQUIRE(b.tora(1).height(3) == 1);
    REQUIRE(b.tora(2).height(3) == 1);
    const auto* known = b.tora(0).known_neighbor_heights(3);
    REQUIRE(known != nullptr);
    REQUIRE(*known == std::map<NodeId, int>{{1, 1}, {2, 1}});
}

TEST_CASE("losing one of two downstream links reroutes without any reversal") {
    std::vector<Trajectory> paths = micro::still(micro::diamond4());
    paths[1].add(seconds(0.5), {1000, 600});
    paths[1].add(seconds(0.6), {100000, 100000});
    Bench b(std::move(paths), "tora", 5, kDiamondRadio);
    b.run_to(0.1);
    b.originate(0, 3);
    b.run_to(0.4);
    REQUIRE(b.delivered.size() == 1);
    REQUIRE(b.tora(0).height(3) == 2);

    b.run_to(1.0);
    b.originate(0, 3);  // first choice is the departed arm; failover is silent
    b.run_to(1.5);
    REQUIRE(b.delivered.size() == 2);
    REQUIRE(b.delivered[1].visited == std::vector<NodeId>{0, 2, 3});
    REQUIRE(b.tora(0).height(3) == 2);
    REQUIRE(b.dropped.empty());
    // Still only the single convergence announcement, heard by both arms.
    REQUIRE(upd_count_from(b, 0, 2) == 2);
}

TEST_CASE("losing the last downstream link reverses, then a partition bounces the packet out") {
    std::vector<Trajectory> paths = micro::still(micro::chain3());
    paths[2].add(seconds(1.2), {2000, 0});
    paths[2].add(seconds(1.3), {100000, 0});
    Bench b(std::move(paths), "tora", 10, {1000.0, 1'000'000, 1.0});
    b.run_to(0.1);
    b.originate(0, 2);
    b.run_to(1.0);
    REQUIRE(b.delivered.size() == 1);

    // The t=2 neighbour sweep shows the relay its only downstream is gone;
    // it rises above its remaining neighbour (height 2) and says so.
    b.run_to(2.5);
    REQUIRE(b.tora(1).height(2) == 3);
    REQUIRE(b.tora(0).height(2) == 2);
    REQUIRE(upd_count_from(b, 1, 3) == 1);

    // With the destination unreachable, each forward attempt reverses the
    // sender; the packet ping-pongs until its hop budget runs out.
    b.originate(0, 2);
    b.run_to(4.0);
    REQUIRE(b.delivered.size() == 1);
    REQUIRE(b.drop_count(DropReason::hop_limit_exceeded) == 1);
    REQUIRE(b.tora(0).height(2) > 10);
    REQUIRE(b.tora(1).height(2) > 10);
}

TEST_CASE("an isolated node's exhausted query reports the break, not a missing route") {
    Bench b(micro::still({{0, 0}, {50000, 0}}), "tora", 10, kChainRadio);
    b.run_to(0.1);
    b.originate(0, 1);
    b.run_to(10);
    REQUIRE(b.dropped.size() == 1);
    REQUIRE(b.dropped[0].reason == DropReason::link_failure_unrecoverable);
    REQUIRE(b.dropped[0].at == seconds(7.1));  // waits 1, 2, 4 between the three floods
    REQUIRE(b.tora(0).height(1) == ToraRouter::kUnset);
}

TEST_CASE("an unanswered query with live neighbours is a routing failure instead") {
    Bench b(micro::still({{0, 0}, {500, 0}, {50000, 0}}), "tora", 10, kChainRadio);
    b.run_to(0.1);
    b.originate(0, 2);
    b.run_to(10);
    REQUIRE(b.dropped.size() == 1);
    REQUIRE(b.dropped[0].reason == DropReason::no_route);
    REQUIRE(b.tora(0).height(2) == ToraRouter::kUnset);
    REQUIRE(b.tora(1).height(2) == ToraRouter::kUnset);
}
