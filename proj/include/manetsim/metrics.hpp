#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"
#include "packet.hpp"
#include "sim_time.hpp"

namespace manetsim {

// Live packet accounting for the end-of-run conservation audit. Counters are
// maintained by the node shells; buffered totals are summed at audit time.
struct RunAccounting {
    std::int64_t originated_packets = 0;
    std::int64_t delivered_packets = 0;
    std::int64_t dropped_packets = 0;
    std::int64_t originated_bits = 0;
    std::int64_t delivered_bits = 0;
    std::int64_t dropped_bits = 0;
    std::int64_t in_flight_packets = 0;
    std::int64_t in_flight_bits = 0;
    // Packets whose visit trace contained a repeated node, scanned when the
    // packet leaves the system. Must stay 0 whenever topology is static.
    std::int64_t looped_packets = 0;
};

// Bucketed time series of the measurement categories plus run totals.
class MetricsCollector {
public:
    MetricsCollector(SimTime duration, std::int64_t bucket_width_s = 60)
        : bucket_width_s_(bucket_width_s) {
        if (bucket_width_s <= 0) {
            throw InvariantViolation("bucket width must be positive");
        }
        const std::int64_t width_ns = bucket_width_s * 1'000'000'000;
        std::int64_t rows = (duration.ns() + width_ns - 1) / width_ns;
        if (rows < 1) {
            rows = 1;
        }
        buckets_.assign(static_cast<std::size_t>(rows), Bucket{});
    }

    void on_app_sent(std::int64_t bits, SimTime t) { bucket(t).app_bits_sent += bits; }
    void on_app_received(std::int64_t bits, SimTime t) { bucket(t).app_bits_received += bits; }
    void on_data_dropped(std::int64_t bits, DropReason reason, SimTime t) {
        Bucket& b = bucket(t);
        b.data_bits_dropped += bits;
        b.data_packets_dropped += 1;
        drop_histogram_[static_cast<std::size_t>(reason)] += 1;
    }
    void on_routing_sent(std::int64_t bits, SimTime t) { bucket(t).routing_bits_sent += bits; }
    void on_routing_received(std::int64_t bits, SimTime t) {
        bucket(t).routing_bits_received += bits;
    }

    // Header-overhead bookkeeping per data-frame transmission. Not part of
    // the CSV; used by run summaries and overhead comparisons.
    void on_data_frame_sent(std::int64_t wire_bits, std::int64_t app_bits) {
        data_wire_bits_sent_ += wire_bits;
        data_app_bits_forwarded_ += app_bits;
        ++data_frames_sent_;
    }

    std::int64_t total_app_bits_sent() const { return total(&Bucket::app_bits_sent); }
    std::int64_t total_app_bits_received() const { return total(&Bucket::app_bits_received); }
    std::int64_t total_data_bits_dropped() const { return total(&Bucket::data_bits_dropped); }
    std::int64_t total_data_packets_dropped() const {
        return total(&Bucket::data_packets_dropped);
    }
    std::int64_t total_routing_bits_sent() const { return total(&Bucket::routing_bits_sent); }
    std::int64_t total_routing_bits_received() const {
        return total(&Bucket::routing_bits_received);
    }

    // Data-frame bits on the wire beyond application payload.
    std::int64_t data_header_bits_sent() const {
        return data_wire_bits_sent_ - data_app_bits_forwarded_;
    }
    std::int64_t data_frames_sent() const { return data_frames_sent_; }

    const std::array<std::int64_t, kDropReasonCount>& drop_histogram() const {
        return drop_histogram_;
    }

    static constexpr const char* kCsvHeader =
        "time_s,app_bits_sent,app_bits_received,data_bits_dropped,"
        "data_packets_dropped,routing_bits_sent,routing_bits_received";

    std::string csv() const {
        std::string out = kCsvHeader;
        out += '\n';
        for (std::size_t i = 0; i < buckets_.size(); ++i) {
            const Bucket& b = buckets_[i];
            out += std::to_string(static_cast<std::int64_t>(i) * bucket_width_s_);
            out += ',';
            out += std::to_string(b.app_bits_sent);
            out += ',';
            out += std::to_string(b.app_bits_received);
            out += ',';
            out += std::to_string(b.data_bits_dropped);
            out += ',';
            out += std::to_string(b.data_packets_dropped);
            out += ',';
            out += std::to_string(b.routing_bits_sent);
            out += ',';
            out += std::to_string(b.routing_bits_received);
            out += '\n';
        }
        return out;
    }

    std::int64_t bucket_width_s() const { return bucket_width_s_; }
    std::size_t bucket_count() const { return buckets_.size(); }

private:
    struct Bucket {
        std::int64_t app_bits_sent = 0;
        std::int64_t app_bits_received = 0;
        std::int64_t data_bits_dropped = 0;
        std::int64_t data_packets_dropped = 0;
        std::int64_t routing_bits_sent = 0;
        std::int64_t routing_bits_received = 0;
    };

    // Events landing exactly on the end-of-run boundary fold into the final
    // bucket so run totals stay conserved.
    Bucket& bucket(SimTime t) {
        std::int64_t idx = t.ns() / (bucket_width_s_ * 1'000'000'000);
        if (idx < 0) {
            idx = 0;
        }
        if (idx >= static_cast<std::int64_t>(buckets_.size())) {
            idx = static_cast<std::int64_t>(buckets_.size()) - 1;
        }
        return buckets_[static_cast<std::size_t>(idx)];
    }

    std::int64_t total(std::int64_t Bucket::* field) const {
        std::int64_t sum = 0;
        for (const Bucket& b : buckets_) {
            sum += b.*field;
        }
        return sum;
    }

    std::int64_t bucket_width_s_;
    std::vector<Bucket> buckets_;
    std::array<std::int64_t, kDropReasonCount> drop_histogram_{};
    std::int64_t data_wire_bits_sent_ = 0;
    std::int64_t data_app_bits_forwarded_ = 0;
    std::int64_t data_frames_sent_ = 0;
};

}  // namespace manetsim
