#include <catch2/catch_amalgamated.hpp>

#include <string>

#include <manetsim/metrics.hpp>

using namespace manetsim;

TEST_CASE("events land in the bucket containing their timestamp") {
    MetricsCollector m(seconds(120));
    REQUIRE(m.bucket_count() == 2);
    m.on_app_received(1000, seconds(65));
    const std::string csv = m.csv();
    REQUIRE(csv == std::string(MetricsCollector::kCsvHeader) +
                       "\n0,0,0,0,0,0,0\n60,0,1000,0,0,0,0\n");
}

TEST_CASE("an empty run renders all-zero rows for the whole duration") {
    MetricsCollector m(seconds(180));
    REQUIRE(m.csv() == std::string(MetricsCollector::kCsvHeader) +
                           "\n0,0,0,0,0,0,0\n60,0,0,0,0,0,0\n120,0,0,0,0,0,0\n");
}

TEST_CASE("events at the end boundary fold into the final bucket") {
    MetricsCollector m(seconds(120));
    m.on_app_sent(500, seconds(120));
    REQUIRE(m.total_app_bits_sent() == 500);
    const std::string csv = m.csv();
    REQUIRE(csv.find("60,500,0,0,0,0,0") != std::string::npos);
}

TEST_CASE("a partial final bucket still gets a row") {
    MetricsCollector m(seconds(90));
    REQUIRE(m.bucket_count() == 2);
    m.on_routing_sent(192, seconds(89));
    REQUIRE(m.csv().find("60,0,0,0,0,192,0") != std::string::npos);
}

TEST_CASE("totals sum across buckets and the drop histogram counts by reason") {
    MetricsCollector m(seconds(180));
    m.on_app_sent(1000, seconds(5));
    m.on_app_sent(1000, seconds(65));
    m.on_app_received(800, seconds(130));
    m.on_data_dropped(200, DropReason::no_route, seconds(10));
    m.on_data_dropped(300, DropReason::buffer_overflow, seconds(70));
    m.on_data_dropped(100, DropReason::no_route, seconds(170));
    m.on_routing_sent(192, seconds(0));
    m.on_routing_received(384, seconds(0));

    REQUIRE(m.total_app_bits_sent() == 2000);
    REQUIRE(m.total_app_bits_received() == 800);
    REQUIRE(m.total_data_bits_dropped() == 600);
    REQUIRE(m.total_data_packets_dropped() == 3);
    REQUIRE(m.total_routing_bits_sent() == 192);
    REQUIRE(m.total_routing_bits_received() == 384);
    REQUIRE(m.drop_histogram()[static_cast<std::size_t>(DropReason::no_route)] == 2);
    REQUIRE(m.drop_histogram()[static_cast<std::size_t>(DropReason::buffer_overflow)] == 1);
    REQUIRE(m.drop_histogram()[static_cast<std::size_t>(DropReason::buffer_timeout)] == 0);
}

TEST_CASE("data frame bookkeeping separates headers from payload") {
    MetricsCollector m(seconds(60));
    m.on_data_frame_sent(1024, 864);  // flat header only
    m.on_data_frame_sent(1120, 864);  // plus three address slots
    REQUIRE(m.data_frames_sent() == 2);
    REQUIRE(m.data_header_bits_sent() == (1024 - 864) + (1120 - 864));
}

TEST_CASE("bucket width must be positive") {
    REQUIRE_THROWS_AS(MetricsCollector(seconds(60), 0), InvariantViolation);
    REQUIRE_NOTHROW(MetricsCollector(seconds(60), 1));
}

TEST_CASE("a custom bucket width changes row granularity") {
    MetricsCollector m(seconds(30), 10);
    REQUIRE(m.bucket_count() == 3);
    m.on_app_sent(100, seconds(25));
    REQUIRE(m.csv().find("20,100,0,0,0,0,0") != std::string::npos);
    REQUIRE(m.bucket_width_s() == 10);
}
