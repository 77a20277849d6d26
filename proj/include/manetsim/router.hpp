#pragma once

#include <functional>
#include <vector>

#include "packet.hpp"
#include "sim_time.hpp"

namespace manetsim {

// A protocol answers every next-hop query with exactly one of these.
struct RouteDecision {
    enum class Kind { Forward, Buffer, Drop };

    Kind kind = Kind::Drop;
    NodeId next_hop = kNoNode;
    DropReason reason = DropReason::no_route;

    static RouteDecision forward(NodeId nh) { return {Kind::Forward, nh, DropReason::no_route}; }
    static RouteDecision buffer() { return {Kind::Buffer, kNoNode, DropReason::no_route}; }
    static RouteDecision drop(DropReason r) { return {Kind::Drop, kNoNode, r}; }
};

// Facilities the node shell grants its protocol: identity, clock, radio
// primitives, timers, the sampled neighbor view, and buffer control.
class NodeServices {
public:
    virtual ~NodeServices() = default;

    virtual NodeId self() const = 0;
    virtual SimTime now() const = 0;

    virtual void broadcast(ControlBody body) = 0;
    // False when the receiver is out of range at send time; nothing emitted.
    virtual bool unicast(NodeId to, ControlBody body) = 0;

    virtual void timer_in(SimTime delay, std::function<void()> fn) = 0;
    virtual const std::vector<NodeId>& neighbors() const = 0;

    // Buffer control: flush toward dest in arrival order, or give up and
    // drop everything buffered for dest with the stated reason.
    virtual void route_available(NodeId dest) = 0;
    virtual void drop_buffered(NodeId dest, DropReason reason) = 0;
    virtual bool has_buffered(NodeId dest) const = 0;
};

// Uniform protocol contract. The shell owns packet movement and drop
// accounting; the protocol owns route state and control messaging.
class Router {
public:
    virtual ~Router() = default;

    virtual void attach(NodeServices& node) { node_ = &node; }
    // Kick off periodic behavior (hello timers and the like).
    virtual void start() {}

    // Next-hop decision for a data packet present at this node. The packet
    // is mutable so source-routing state can be attached at origination.
    virtual RouteDecision route(Packet& pkt) = 0;

    // The unicast toward failed_hop found it out of range. Decide what
    // happens to this packet; the shell caps Forward retries.
    virtual RouteDecision on_forward_failure(Packet& pkt, NodeId failed_hop) = 0;

    virtual void on_control(ControlBody body, NodeId from) = 0;

    virtual void on_link_loss(NodeId /*neighbor*/) {}
    virtual void on_link_gain(NodeId /*neighbor*/) {}

    // Any frame arrival from a neighbor counts as evidence it is alive.
    virtual void on_frame_heard(NodeId /*from*/) {}

    // Fires after a successful data unicast. prev_hop is where the packet
    // arrived from, kNoNode when it originated here.
    virtual void on_data_forwarded(const Packet& /*pkt*/, NodeId /*prev_hop*/,
                                   NodeId /*next_hop*/) {}

protected:
    NodeServices* node_ = nullptr;
};

}  // namespace manetsim
