#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <utility>
#include <variant>
#include <vector>

#include "engine.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "metrics.hpp"
#include "packet.hpp"
#include "sim_time.hpp"

namespace manetsim {

struct RadioConfig {
    double range_m = 1500.0;
    std::int64_t data_rate_bps = 1'000'000;
    double refresh_interval_s = 10.0;
};

using FrameBody = std::variant<Packet, ControlBody>;

// Unit-disk radio over trajectory-driven positions. Reception is boundary
// inclusive (distance exactly range_m still receives). The only delay is
// serialization; range is evaluated at send time and never re-checked at
// arrival. Nodes learn topology through sampled neighbor tables refreshed on
// a fixed period, so a link change becomes visible only at the next refresh
// tick or through a unicast failure.
class World {
public:
    using FrameSink = std::function<void(NodeId to, NodeId from, FrameBody body)>;
    using LinkEvent = std::function<void(NodeId node, NodeId neighbor, bool gained)>;

    World(Engine& engine, RadioConfig cfg, std::vector<Trajectory> paths,
          MetricsCollector& metrics, RunAccounting& acct)
        : engine_(engine),
          cfg_(cfg),
          paths_(std::move(paths)),
          metrics_(metrics),
          acct_(acct) {
        if (cfg_.range_m <= 0 || cfg_.data_rate_bps <= 0 || cfg_.refresh_interval_s <= 0) {
            throw InvariantViolation("radio parameters must be positive");
        }
        sampled_.resize(paths_.size());
    }

    int node_count() const { return static_cast<int>(paths_.size()); }
    const RadioConfig& config() const { return cfg_; }

    void set_frame_sink(FrameSink sink) { sink_ = std::move(sink); }
    void set_link_event(LinkEvent ev) { link_event_ = std::move(ev); }

    Vec2 position(NodeId n, SimTime t) const { return paths_[static_cast<std::size_t>(n)].position_at(t); }

    bool in_range(NodeId a, NodeId b, SimTime t) const {
        const Vec2 pa = position(a, t);
        const Vec2 pb = position(b, t);
        const double dx = pa.x - pb.x;
        const double dy = pa.y - pb.y;
        return dx * dx + dy * dy <= cfg_.range_m * cfg_.range_m;
    }

    // Sampled neighbor table as of the last refresh tick.
    const std::vector<NodeId>& neighbors(NodeId n) const {
        return sampled_[static_cast<std::size_t>(n)];
    }

    // Computes the baseline neighbor tables silently and starts the refresh
    // cadence. The baseline itself produces no link notifications.
    void start(SimTime duration) {
        duration_ = duration;
        for (NodeId n = 0; n < node_count(); ++n) {
            sampled_[static_cast<std::size_t>(n)] = compute_neighbors(n, engine_.now());
        }
        const SimTime step = SimTime::from_seconds(cfg_.refresh_interval_s);
        if (engine_.now() + step <= duration_) {
            engine_.schedule(engine_.now() + step, [this, step] { refresh_tick(step); });
        }
    }

    void broadcast_control(NodeId sender, ControlBody body) {
        const SimTime now = engine_.now();
        const std::int64_t bits = control_wire_bits(body);
        metrics_.on_routing_sent(bits, now);
        const SimTime arrival = now + serialization_delay(bits, cfg_.data_rate_bps);
        for (NodeId r = 0; r < node_count(); ++r) {
            if (r == sender || !in_range(sender, r, now)) {
                continue;
            }
            engine_.schedule(arrival, [this, r, sender, bits, copy = body]() mutable {
                metrics_.on_routing_received(bits, engine_.now());
                sink_(r, sender, FrameBody(std::move(copy)));
            });
        }
    }

    // Returns false without emitting anything when the receiver is out of
    // range at send time; the caller runs its route re-configuration path.
    bool unicast_control(NodeId sender, NodeId to, ControlBody body) {
        const SimTime now = engine_.now();
        if (!in_range(sender, to, now)) {
            return false;
        }
        const std::int64_t bits = control_wire_bits(body);
        metrics_.on_routing_sent(bits, now);
        const SimTime arrival = now + serialization_delay(bits, cfg_.data_rate_bps);
        engine_.schedule(arrival, [this, to, sender, bits, copy = std::move(body)]() mutable {
            metrics_.on_routing_received(bits, engine_.now());
            sink_(to, sender, FrameBody(std::move(copy)));
        });
        return true;
    }

    bool unicast_data(NodeId sender, NodeId to, Packet pkt) {
        const SimTime now = engine_.now();
        if (!in_range(sender, to, now)) {
            return false;
        }
        const std::int64_t bits = data_wire_bits(pkt);
        metrics_.on_data_frame_sent(bits, pkt.app_bits);
        acct_.in_flight_packets += 1;
        acct_.in_flight_bits += pkt.app_bits;
        const SimTime arrival = now + serialization_delay(bits, cfg_.data_rate_bps);
        engine_.schedule(arrival, [this, to, sender, moved = std::move(pkt)]() mutable {
            acct_.in_flight_packets -= 1;
            acct_.in_flight_bits -= moved.app_bits;
            sink_(to, sender, FrameBody(std::move(moved)));
        });
        return true;
    }

private:
    std::vector<NodeId> compute_neighbors(NodeId n, SimTime t) const {
        std::vector<NodeId> out;
        for (NodeId m = 0; m < node_count(); ++m) {
            if (m != n && in_range(n, m, t)) {
                out.push_back(m);
            }
        }
        return out;
    }

    void refresh_tick(SimTime step) {
        const SimTime now = engine_.now();
        std::vector<std::vector<NodeId>> fresh(sampled_.size());
        for (NodeId n = 0; n < node_count(); ++n) {
            fresh[static_cast<std::size_t>(n)] = compute_neighbors(n, now);
        }
        std::vector<std::vector<NodeId>> old = std::exchange(sampled_, std::move(fresh));
        // All tables swap in before any notification fires, so handlers that
        // transmit in response observe the new topology sample.
        if (link_event_) {
            for (NodeId n = 0; n < node_count(); ++n) {
                const auto& before = old[static_cast<std::size_t>(n)];
                const auto& after = sampled_[static_cast<std::size_t>(n)];
                for (NodeId lost : before) {
                    if (!std::binary_search(after.begin(), after.end(), lost)) {
                        link_event_(n, lost, false);
                    }
                }
                for (NodeId gained : after) {
                    if (!std::binary_search(before.begin(), before.end(), gained)) {
                        link_event_(n, gained, true);
                    }
                }
            }
        }
        if (now + step <= duration_) {
            engine_.schedule(now + step, [this, step] { refresh_tick(step); });
        }
    }

    Engine& engine_;
    RadioConfig cfg_;
    std::vector<Trajectory> paths_;
    MetricsCollector& metrics_;
    RunAccounting& acct_;
    FrameSink sink_;
    LinkEvent link_event_;
    SimTime duration_;
    std::vector<std::vector<NodeId>> sampled_;
};

}  // namespace manetsim
