#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "sim_time.hpp"

namespace manetsim {

using NodeId = int;
inline constexpr NodeId kNoNode = -1;

// Fixed control-frame sizes in bits. The comparisons under test need the
// routing-traffic series to be a deterministic function of protocol events,
// so every message kind has a pinned size.
inline constexpr std::int64_t kRouteRequestBits = 192;     // flooded request (also TORA query)
inline constexpr std::int64_t kRouteReplyBits = 160;       // unicast reply (also TORA update)
inline constexpr std::int64_t kSourceRouteBaseBits = 128;  // DSR request/reply before addresses
inline constexpr std::int64_t kPerAddressBits = 32;        // each accumulated/carried address
inline constexpr std::int64_t kRouteErrorBits = 128;
inline constexpr std::int64_t kHelloBits = 96;
inline constexpr std::int64_t kDataHeaderBits = 160;  // flat per data packet; DSR adds addresses

enum class DropReason {
    no_route,
    buffer_overflow,
    hop_limit_exceeded,
    buffer_timeout,
    link_failure_unrecoverable,
};

inline const char* to_string(DropReason r) {
    switch (r) {
        case DropReason::no_route: return "no_route";
        case DropReason::buffer_overflow: return "buffer_overflow";
        case DropReason::hop_limit_exceeded: return "hop_limit_exceeded";
        case DropReason::buffer_timeout: return "buffer_timeout";
        case DropReason::link_failure_unrecoverable: return "link_failure_unrecoverable";
    }
    return "?";
}
inline constexpr int kDropReasonCount = 5;

// Application data packet. `visited` records every node the packet has been
// processed at, in order; loop audits scan it for repeats.
struct Packet {
    std::uint64_t id = 0;
    NodeId src = kNoNode;
    NodeId dst = kNoNode;
    std::int64_t app_bits = 0;
    int hop_limit = 0;
    SimTime created_at;
    std::uint64_t session = 0;
    std::uint64_t seq = 0;
    std::vector<NodeId> visited;
    // Source-routing state, empty for table-driven protocols.
    std::vector<NodeId> source_route;
    std::size_t route_index = 0;
};

// On-wire size of a data frame: payload, flat header, and one address slot
// per carried source-route entry.
inline std::int64_t data_wire_bits(const Packet& p) {
    return p.app_bits + kDataHeaderBits +
           kPerAddressBits * static_cast<std::int64_t>(p.source_route.size());
}

// ---- AODV control messages ----

struct Rreq {
    NodeId orig = kNoNode;
    std::uint32_t orig_seq = 0;
    std::uint32_t rreq_id = 0;
    NodeId dest = kNoNode;
    std::uint32_t dest_seq_known = 0;
    int hop_count = 0;
};

struct Rrep {
    NodeId orig = kNoNode;  // requester the reply travels toward
    NodeId dest = kNoNode;
    std::uint32_t dest_seq = 0;
    int hop_count = 0;
    SimTime lifetime;
};

// Unreachable-destination notice, relayed hop by hop toward one recorded
// source of the broken route's traffic.
struct Rerr {
    NodeId unreachable = kNoNode;
    std::uint32_t unreachable_seq = 0;
    NodeId toward = kNoNode;
};

struct Hello {
    std::uint32_t origin_seq = 0;
};

// ---- DSR control messages ----

struct DsrRequest {
    NodeId initiator = kNoNode;
    std::uint32_t request_id = 0;
    NodeId target = kNoNode;
    std::vector<NodeId> accumulated;
};

struct DsrReply {
    std::vector<NodeId> route;  // full path, source first, target last
};

// Travels back along the reversed route prefix that preceded the break.
struct DsrError {
    NodeId broken_from = kNoNode;
    NodeId broken_to = kNoNode;
    NodeId dest = kNoNode;              // destination of the failed packet
    std::vector<NodeId> return_path;    // detecting node first, source last
    std::size_t path_index = 0;
};

// ---- TORA control messages ----

struct Qry {
    NodeId dest = kNoNode;
    NodeId originator = kNoNode;
    std::uint32_t epoch = 0;  // originator's discovery counter, for dedupe
};

struct Upd {
    NodeId dest = kNoNode;
    int sender_height = 0;
};

using ControlBody =
    std::variant<Rreq, Rrep, Rerr, Hello, DsrRequest, DsrReply, DsrError, Qry, Upd>;

inline std::int64_t control_wire_bits(const ControlBody& body) {
    struct Sizer {
        std::int64_t operator()(const Rreq&) const { return kRouteRequestBits; }
        std::int64_t operator()(const Rrep&) const { return kRouteReplyBits; }
        std::int64_t operator()(const Rerr&) const { return kRouteErrorBits; }
        std::int64_t operator()(const Hello&) const { return kHelloBits; }
        std::int64_t operator()(const DsrRequest& m) const {
            return kSourceRouteBaseBits +
                   kPerAddressBits * static_cast<std::int64_t>(m.accumulated.size());
        }
        std::int64_t operator()(const DsrReply& m) const {
            return kSourceRouteBaseBits +
                   kPerAddressBits * static_cast<std::int64_t>(m.route.size());
        }
        std::int64_t operator()(const DsrError&) const { return kRouteErrorBits; }
        std::int64_t operator()(const Qry&) const { return kRouteRequestBits; }
        std::int64_t operator()(const Upd&) const { return kRouteReplyBits; }
    };
    return std::visit(Sizer{}, body);
}

}  // namespace manetsim
