#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "support/micro.hpp"

using namespace manetsim;
using micro::Bench;

namespace {
// Two nodes far beyond radio range.
std::vector<Vec2> isolated_pair() { return {{0, 0}, {50000, 0}}; }
const RadioConfig kShortRange{1000.0, 1'000'000, 10.0};
}  // namespace

TEST_CASE("a packet addressed to its own node delivers locally") {
    Bench b(micro::still(micro::chain3()), "aodv", 10, kShortRange);
    b.originate(0, 0);
    b.run_to(0.5);
    REQUIRE(b.delivered.size() == 1);
    REQUIRE(b.delivered[0].visited == std::vector<NodeId>{0});
    REQUIRE(b.metrics.data_frames_sent() == 0);
    REQUIRE(b.acct.delivered_packets == 1);
}

TEST_CASE("a spent hop budget drops the packet before any routing") {
    Bench b(micro::still(micro::chain3()), "aodv", 10, kShortRange);
    Packet p = b.make_packet(0, 2);
    p.hop_limit = 0;
    b.nodes[0]->originate(std::move(p));
    b.run_to(0.5);
    REQUIRE(b.delivered.empty());
    REQUIRE(b.drop_count(DropReason::hop_limit_exceeded) == 1);
    // No discovery was started for it.
    REQUIRE(b.control_count<Rreq>() == 0);
}

TEST_CASE("data crosses a two-hop chain with exactly two transmissions") {
    Bench b(micro::still(micro::chain3()), "aodv", 10, kShortRange);
    b.originate(0, 2);
    b.run_to(1.0);
    REQUIRE(b.delivered.size() == 1);
    REQUIRE(b.delivered[0].visited == std::vector<NodeId>{0, 1, 2});
    REQUIRE(b.metrics.data_frames_sent() == 2);
    // Hop budget shrank once per forward.
    REQUIRE(b.delivered[0].hop_limit == b.core.hop_limit - 2);
}

TEST_CASE("the 65th packet queued behind one discovery overflows the buffer") {
    Bench b(micro::still(isolated_pair()), "aodv", 60, kShortRange);
    b.run_to(0.1);
    for (int i = 0; i < 65; ++i) {
        b.originate(0, 1);
    }
    REQUIRE(b.drop_count(DropReason::buffer_overflow) == 1);
    REQUIRE(b.nodes[0]->buffered_count() == 64);

    // Discovery exhausts its retries; everything buffered drops unrouted.
    b.run_to(60);
    REQUIRE(b.drop_count(DropReason::no_route) == 64);
    REQUIRE(b.acct.originated_packets == 65);
    REQUIRE(b.acct.dropped_packets == 65);
    REQUIRE(b.acct.delivered_packets == 0);
}

TEST_CASE("a buffered packet expires after the buffer timeout") {
    AodvParams persistent;
    persistent.rreq_retries = 100;  // keep discovery alive past the timeout
    Bench b(micro::still(isolated_pair()), "aodv", 60, kShortRange, {}, persistent);
    b.run_to(0.1);
    b.originate(0, 1);
    b.run_to(40);
    REQUIRE(b.dropped.size() == 1);
    REQUIRE(b.dropped[0].reason == DropReason::buffer_timeout);
    REQUIRE(b.dropped[0].at == seconds(30.1));
    REQUIRE(b.nodes[0]->buffered_count() == 0);
}

TEST_CASE("buffered packets flush in arrival order when a route appears") {
    Bench b(micro::still(micro::chain3()), "aodv", 10, kShortRange);
    b.run_to(0.1);
    b.originate(0, 2);
    b.originate(0, 2);
    b.originate(0, 2);
    // One discovery covers all three.
    REQUIRE(b.nodes[0]->buffered_count() == 3);
    b.run_to(5);
    REQUIRE(b.delivered.size() == 3);
    REQUIRE(b.delivered[0].id < b.delivered[1].id);
    REQUIRE(b.delivered[1].id < b.delivered[2].id);
    REQUIRE(b.control_count_from<Rreq>(0) == 1);  // the single flood, heard once by node 1
}

TEST_CASE("every dropped packet carries exactly one reason and is counted once") {
    Bench b(micro::still(isolated_pair()), "aodv", 30, kShortRange);
    b.run_to(0.1);
    for (int i = 0; i < 5; ++i) {
        b.originate(0, 1);
    }
    b.run_to(30);
    REQUIRE(b.dropped.size() == 5);
    REQUIRE(b.acct.dropped_packets == 5);
    REQUIRE(b.metrics.total_data_packets_dropped() == 5);
    std::int64_t histogram_total = 0;
    for (std::int64_t n : b.metrics.drop_histogram()) {
        histogram_total += n;
    }
    REQUIRE(histogram_total == 5);
}
