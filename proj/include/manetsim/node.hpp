#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "engine.hpp"
#include "metrics.hpp"
#include "packet.hpp"
#include "radio.hpp"
#include "router.hpp"

namespace manetsim {

struct CoreParams {
    int hop_limit = 32;
    int buffer_capacity = 64;
    double buffer_timeout_s = 30.0;
    // Bound on repeated next-hop attempts for one packet after unicast
    // failures, so reversal-style repair cannot spin forever at one node.
    int forward_retry_cap = 16;
};

// Per-packet lifecycle notifications, used by traffic generation for
// retransmission budgets and transfer completion times.
struct PacketHooks {
    std::function<void(const Packet&)> on_delivered;
    std::function<void(const Packet&, DropReason)> on_dropped;
};

// Protocol-agnostic node shell: owns the packet buffer, the forwarding loop
// with hop-limit enforcement, and every drop decision's accounting. Exactly
// one of delivered/dropped/buffered/in-flight holds for any originated
// packet at any time, which is what the conservation audit checks.
class Node final : public NodeServices {
public:
    Node(NodeId id, Engine& engine, World& world, MetricsCollector& metrics,
         RunAccounting& acct, PacketHooks& hooks, std::unique_ptr<Router> router,
         const CoreParams& params)
        : id_(id),
          engine_(engine),
          world_(world),
          metrics_(metrics),
          acct_(acct),
          hooks_(hooks),
          router_(std::move(router)),
          params_(params) {
        router_->attach(*this);
    }

    void start() { router_->start(); }

    Router& router() { return *router_; }
    const Router& router() const { return *router_; }

    std::size_t buffered_count() const { return buffer_.size(); }
    std::int64_t buffered_bits() const {
        std::int64_t sum = 0;
        for (const Packet& p : buffer_) {
            sum += p.app_bits;
        }
        return sum;
    }

    // Entry point for application traffic originated at this node.
    void originate(Packet pkt) {
        acct_.originated_packets += 1;
        acct_.originated_bits += pkt.app_bits;
        metrics_.on_app_sent(pkt.app_bits, engine_.now());
        pkt.visited.push_back(id_);
        dispatch(std::move(pkt), kNoNode);
    }

    // Frame sink: every arrival funnels through here.
    void on_frame(NodeId from, FrameBody body) {
        router_->on_frame_heard(from);
        if (std::holds_alternative<Packet>(body)) {
            Packet pkt = std::get<Packet>(std::move(body));
            pkt.visited.push_back(id_);
            dispatch(std::move(pkt), from);
        } else {
            router_->on_control(std::get<ControlBody>(std::move(body)), from);
        }
    }

    void on_link_event(NodeId neighbor, bool gained) {
        if (gained) {
            router_->on_link_gain(neighbor);
        } else {
            router_->on_link_loss(neighbor);
        }
    }

    // NodeServices
    NodeId self() const override { return id_; }
    SimTime now() const override { return engine_.now(); }
    void broadcast(ControlBody body) override { world_.broadcast_control(id_, std::move(body)); }
    bool unicast(NodeId to, ControlBody body) override {
        return world_.unicast_control(id_, to, std::move(body));
    }
    void timer_in(SimTime delay, std::function<void()> fn) override {
        engine_.schedule_in(delay, std::move(fn));
    }
    const std::vector<NodeId>& neighbors() const override { return world_.neighbors(id_); }

    void route_available(NodeId dest) override {
        std::deque<Packet> keep;
        std::deque<Packet> flush;
        for (Packet& p : buffer_) {
            (p.dst == dest ? flush : keep).push_back(std::move(p));
        }
        buffer_ = std::move(keep);
        for (Packet& p : flush) {
            dispatch(std::move(p), kNoNode);
        }
    }

    void drop_buffered(NodeId dest, DropReason reason) override {
        // Drop hooks may originate replacement traffic that buffers right
        // back here, so the buffer must be rebuilt before any hook runs.
        std::deque<Packet> keep;
        std::deque<Packet> doomed;
        for (Packet& p : buffer_) {
            (p.dst == dest ? doomed : keep).push_back(std::move(p));
        }
        buffer_ = std::move(keep);
        for (Packet& p : doomed) {
            drop(std::move(p), reason);
        }
    }

    bool has_buffered(NodeId dest) const override {
        return std::any_of(buffer_.begin(), buffer_.end(),
                           [dest](const Packet& p) { return p.dst == dest; });
    }

private:
    // Route-or-deliver for a packet now present at this node. The visit
    // trace was already extended by the caller; buffered packets re-enter
    // here without growing it again.
    void dispatch(Packet pkt, NodeId prev_hop) {
        if (pkt.dst == id_) {
            deliver(std::move(pkt));
            return;
        }
        if (pkt.hop_limit <= 0) {
            drop(std::move(pkt), DropReason::hop_limit_exceeded);
            return;
        }
        RouteDecision decision = router_->route(pkt);
        int attempts = 0;
        while (true) {
            switch (decision.kind) {
                case RouteDecision::Kind::Forward: {
                    Packet copy = pkt;
                    copy.hop_limit -= 1;
                    if (world_.unicast_data(id_, decision.next_hop, std::move(copy))) {
                        router_->on_data_forwarded(pkt, prev_hop, decision.next_hop);
                        return;
                    }
                    if (++attempts > params_.forward_retry_cap) {
                        drop(std::move(pkt), DropReason::link_failure_unrecoverable);
                        return;
                    }
                    decision = router_->on_forward_failure(pkt, decision.next_hop);
                    break;
                }
                case RouteDecision::Kind::Buffer:
                    buffer_packet(std::move(pkt));
                    return;
                case RouteDecision::Kind::Drop:
                    drop(std::move(pkt), decision.reason);
                    return;
            }
        }
    }

    void buffer_packet(Packet pkt) {
        if (static_cast<int>(buffer_.size()) >= params_.buffer_capacity) {
            drop(std::move(pkt), DropReason::buffer_overflow);
            return;
        }
        const std::uint64_t pkt_id = pkt.id;
        buffer_.push_back(std::move(pkt));
        timer_in(SimTime::from_seconds(params_.buffer_timeout_s), [this, pkt_id] {
            auto it = std::find_if(buffer_.begin(), buffer_.end(),
                                   [pkt_id](const Packet& p) { return p.id == pkt_id; });
            if (it != buffer_.end()) {
                Packet expired = std::move(*it);
                buffer_.erase(it);
                drop(std::move(expired), DropReason::buffer_timeout);
            }
        });
    }

    void deliver(Packet pkt) {
        audit_visits(pkt);
        acct_.delivered_packets += 1;
        acct_.delivered_bits += pkt.app_bits;
        metrics_.on_app_received(pkt.app_bits, engine_.now());
        if (hooks_.on_delivered) {
            hooks_.on_delivered(pkt);
        }
    }

    void drop(Packet pkt, DropReason reason) {
        audit_visits(pkt);
        acct_.dropped_packets += 1;
        acct_.dropped_bits += pkt.app_bits;
        metrics_.on_data_dropped(pkt.app_bits, reason, engine_.now());
        if (hooks_.on_dropped) {
            hooks_.on_dropped(pkt, reason);
        }
    }

    void audit_visits(const Packet& pkt) {
        std::vector<NodeId> seen(pkt.visited);
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
            acct_.looped_packets += 1;
        }
    }

    NodeId id_;
    Engine& engine_;
    World& world_;
    MetricsCollector& metrics_;
    RunAccounting& acct_;
    PacketHooks& hooks_;
    std::unique_ptr<Router> router_;
    CoreParams params_;
    std::deque<Packet> buffer_;
};

}  // namespace manetsim
