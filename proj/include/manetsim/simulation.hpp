#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <iomanip>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "engine.hpp"
#include "errors.hpp"
#include "metrics.hpp"
#include "node.hpp"
#include "radio.hpp"
#include "scenario.hpp"
#include "tora.hpp"
#include "traffic.hpp"

namespace manetsim {

struct RunResult {
    std::string scenario_name;
    std::string protocol;
    std::uint64_t seed = 0;
    double duration_s = 0.0;
    int node_count = 0;
    bool static_topology = true;

    std::string csv;
    std::int64_t app_bits_sent = 0;
    std::int64_t app_bits_received = 0;
    std::int64_t data_bits_dropped = 0;
    std::int64_t data_packets_dropped = 0;
    std::int64_t routing_bits_sent = 0;
    std::int64_t routing_bits_received = 0;
    std::int64_t data_header_bits_sent = 0;
    std::int64_t data_frames_sent = 0;
    std::array<std::int64_t, kDropReasonCount> drops_by_reason{};
    std::vector<TransferReport> transfers;
    RunAccounting accounting;
    std::int64_t buffered_packets_at_end = 0;
    std::int64_t buffered_bits_at_end = 0;
    double wall_clock_s = 0.0;
    std::string summary;

    double delivery_ratio() const {
        return app_bits_sent == 0 ? 1.0
                                  : static_cast<double>(app_bits_received) /
                                        static_cast<double>(app_bits_sent);
    }
};

namespace detail {

inline std::unique_ptr<Router> make_router(const Scenario& sc) {
    if (sc.protocol == "aodv") {
        return std::make_unique<AodvRouter>(sc.aodv);
    }
    if (sc.protocol == "dsr") {
        return std::make_unique<DsrRouter>(sc.dsr);
    }
    if (sc.protocol == "tora") {
        return std::make_unique<ToraRouter>(sc.tora);
    }
    throw ConfigError("scenario.protocol", "unknown protocol '" + sc.protocol + "'");
}

inline std::string run_summary(const RunResult& r, const Scenario& sc) {
    std::ostringstream out;
    out << "scenario " << r.scenario_name << ": protocol " << r.protocol << ", seed " << r.seed
        << ", " << r.node_count << " nodes, duration " << r.duration_s << " s, "
        << (r.static_topology ? "static" : "mobile") << " topology\n";
    out << "radio: range " << sc.radio.range_m << " m, rate " << sc.radio.data_rate_bps
        << " bps, neighbor refresh " << sc.radio.refresh_interval_s << " s\n";
    out << "limits: hop limit " << sc.core.hop_limit << ", buffer " << sc.core.buffer_capacity
        << " packets / " << sc.core.buffer_timeout_s << " s\n";
    if (r.protocol == "aodv") {
        out << "aodv: active route timeout " << sc.aodv.active_route_timeout_s
            << " s, hello interval " << sc.aodv.hello_interval_s << " s, gratuitous replies "
            << (sc.aodv.gratuitous_reply ? "on" : "off") << "\n";
    } else if (r.protocol == "dsr") {
        out << "dsr: cache capacity " << sc.dsr.cache_capacity << ", request retries "
            << sc.dsr.request_retries << "\n";
    } else if (r.protocol == "tora") {
        out << "tora: query retries " << sc.tora.query_retries << "\n";
    }
    out << std::fixed << std::setprecision(2);
    out << "app bits sent " << r.app_bits_sent << ", received " << r.app_bits_received << " ("
        << 100.0 * r.delivery_ratio() << "% delivered)\n";
    out << "data dropped: " << r.data_packets_dropped << " packets, " << r.data_bits_dropped
        << " bits\n";
    for (std::size_t i = 0; i < kDropReasonCount; ++i) {
        out << "  " << to_string(static_cast<DropReason>(i)) << ": " << r.drops_by_reason[i]
            << "\n";
    }
    out << "routing bits sent " << r.routing_bits_sent << ", received " << r.routing_bits_received
        << "\n";
    out << "data header bits on wire " << r.data_header_bits_sent << " over "
        << r.data_frames_sent << " frames\n";
    if (!r.transfers.empty()) {
        out << "transfers:\n" << std::setprecision(6);
        for (const TransferReport& t : r.transfers) {
            out << "  session " << t.session << ": ";
            if (t.finished) {
                out << "finished in " << t.completion_s << " s\n";
            } else {
                out << "unfinished\n";
            }
        }
        out << std::setprecision(2);
    }
    out << "end of run: " << r.buffered_packets_at_end << " packets buffered, "
        << r.accounting.in_flight_packets << " in flight\n";
    out << "wall clock " << std::setprecision(3) << r.wall_clock_s << " s\n";
    return out.str();
}

}  // namespace detail

// One complete, self-contained run: seed-derived placement and motion, one
// engine, one node per id, traffic, and the end-of-run audits. Instances
// share nothing, so independent runs can execute on parallel threads.
class Simulation {
public:
    explicit Simulation(Scenario sc) : sc_(std::move(sc)) {}

    const Scenario& scenario() const { return sc_; }

    RunResult run() { return run_with_seed(sc_.seed); }

    RunResult run_with_seed(std::uint64_t seed) {
        const auto wall_start = std::chrono::steady_clock::now();
        const WorldPlan plan = materialize(sc_, seed);
        const SimTime duration = SimTime::from_seconds(sc_.duration_s);

        Engine engine(seed);
        MetricsCollector metrics(duration);
        RunAccounting acct;
        World world(engine, sc_.radio, plan.trajectories, metrics, acct);
        PacketHooks hooks;

        std::vector<std::unique_ptr<Node>> nodes;
        std::vector<ToraRouter*> tora_routers;
        nodes.reserve(static_cast<std::size_t>(sc_.node_count));
        for (NodeId id = 0; id < sc_.node_count; ++id) {
            std::unique_ptr<Router> router = detail::make_router(sc_);
            if (sc_.protocol == "tora") {
                tora_routers.push_back(static_cast<ToraRouter*>(router.get()));
            }
            nodes.push_back(std::make_unique<Node>(id, engine, world, metrics, acct, hooks,
                                                   std::move(router), sc_.core));
        }
        world.set_frame_sink([&nodes](NodeId to, NodeId from, FrameBody body) {
            nodes[static_cast<std::size_t>(to)]->on_frame(from, std::move(body));
        });
        world.set_link_event([&nodes](NodeId n, NodeId neighbor, bool gained) {
            nodes[static_cast<std::size_t>(n)]->on_link_event(neighbor, gained);
        });

        TrafficManager traffic(engine, nodes, plan.sessions, sc_.radio.data_rate_bps,
                               sc_.core.hop_limit);
        hooks.on_delivered = [&traffic](const Packet& p) { traffic.on_delivered(p); };
        hooks.on_dropped = [&traffic](const Packet& p, DropReason r) { traffic.on_dropped(p, r); };

        // Height-order assertion: whenever some node's height for a
        // destination changes, descend the strictly-lower-height relation
        // over currently in-range links from that node. Strict descent over
        // integers must terminate without revisiting; a revisit means the
        // order broke.
        for (std::size_t i = 0; i < tora_routers.size(); ++i) {
            const NodeId start = static_cast<NodeId>(i);
            tora_routers[i]->set_height_observer([&engine, &world, &tora_routers,
                                                  start](NodeId dest) {
                const SimTime now = engine.now();
                const int count = static_cast<int>(tora_routers.size());
                std::set<NodeId> visited;
                NodeId cur = start;
                while (tora_routers[static_cast<std::size_t>(cur)]->height(dest) !=
                       ToraRouter::kUnset) {
                    if (!visited.insert(cur).second) {
                        throw InvariantViolation(
                            "height order cycle while descending toward node " +
                            std::to_string(dest));
                    }
                    const int cur_h = tora_routers[static_cast<std::size_t>(cur)]->height(dest);
                    NodeId next = kNoNode;
                    int next_h = cur_h;
                    for (NodeId m = 0; m < count; ++m) {
                        if (m == cur || !world.in_range(cur, m, now)) {
                            continue;
                        }
                        const int mh = tora_routers[static_cast<std::size_t>(m)]->height(dest);
                        if (mh == ToraRouter::kUnset || mh >= cur_h) {
                            continue;
                        }
                        if (next == kNoNode || mh < next_h) {
                            next = m;
                            next_h = mh;
                        }
                    }
                    if (next == kNoNode) {
                        break;
                    }
                    cur = next;
                }
            });
        }

        world.start(duration);
        for (std::unique_ptr<Node>& n : nodes) {
            n->start();
        }
        traffic.start();
        engine.run_until(duration);

        RunResult r;
        r.scenario_name = sc_.name;
        r.protocol = sc_.protocol;
        r.seed = seed;
        r.duration_s = sc_.duration_s;
        r.node_count = sc_.node_count;
        r.static_topology = plan.static_topology;
        r.csv = metrics.csv();
        r.app_bits_sent = metrics.total_app_bits_sent();
        r.app_bits_received = metrics.total_app_bits_received();
        r.data_bits_dropped = metrics.total_data_bits_dropped();
        r.data_packets_dropped = metrics.total_data_packets_dropped();
        r.routing_bits_sent = metrics.total_routing_bits_sent();
        r.routing_bits_received = metrics.total_routing_bits_received();
        r.data_header_bits_sent = metrics.data_header_bits_sent();
        r.data_frames_sent = metrics.data_frames_sent();
        r.drops_by_reason = metrics.drop_histogram();
        r.transfers = traffic.transfer_reports();
        r.accounting = acct;
        for (const std::unique_ptr<Node>& n : nodes) {
            r.buffered_packets_at_end += static_cast<std::int64_t>(n->buffered_count());
            r.buffered_bits_at_end += n->buffered_bits();
        }

        audit(r, acct, metrics);

        r.wall_clock_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
        r.summary = detail::run_summary(r, sc_);
        return r;
    }

private:
    // Exact end-of-run checks; any failure is a defect, never a tolerance.
    static void audit(const RunResult& r, const RunAccounting& acct,
                      const MetricsCollector& metrics) {
        const std::int64_t accounted_packets = acct.delivered_packets + acct.dropped_packets +
                                               r.buffered_packets_at_end +
                                               acct.in_flight_packets;
        if (acct.originated_packets != accounted_packets) {
            throw InvariantViolation(
                "packet conservation violated: originated " +
                std::to_string(acct.originated_packets) + " vs accounted " +
                std::to_string(accounted_packets));
        }
        const std::int64_t accounted_bits = acct.delivered_bits + acct.dropped_bits +
                                            r.buffered_bits_at_end + acct.in_flight_bits;
        if (acct.originated_bits != accounted_bits) {
            throw InvariantViolation("bit conservation violated: originated " +
                                     std::to_string(acct.originated_bits) + " vs accounted " +
                                     std::to_string(accounted_bits));
        }
        if (metrics.total_app_bits_sent() != acct.originated_bits ||
            metrics.total_app_bits_received() != acct.delivered_bits ||
            metrics.total_data_bits_dropped() != acct.dropped_bits) {
            throw InvariantViolation("metric series diverged from packet accounting");
        }
        if (r.static_topology && acct.looped_packets != 0) {
            throw InvariantViolation("visit trace revisited a node on a static topology (" +
                                     std::to_string(acct.looped_packets) + " packets)");
        }
    }

    Scenario sc_;
};

}  // namespace manetsim
