#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "packet.hpp"
#include "router.hpp"
#include "sim_time.hpp"

namespace manetsim {

struct DsrParams {
    int cache_capacity = 8;  // routes kept per destination
    int request_retries = 2;
    double request_base_wait_s = 1.0;
};

// Source routing: requests accumulate the addresses they traverse, replies
// carry the whole path back, and every data packet ships its full route.
// Caches hold several routes per destination so a route error can fail over
// without a fresh discovery.
class DsrRouter final : public Router {
public:
    struct CachedRoute {
        std::vector<NodeId> hops;  // self first, destination last
        SimTime discovered_at;
    };

    explicit DsrRouter(DsrParams params = {}) : params_(params) {}

    RouteDecision route(Packet& pkt) override {
        if (!pkt.source_route.empty()) {
            return forward_on_route(pkt);
        }
        const std::vector<NodeId>* best = lookup(pkt.dst);
        if (best != nullptr) {
            pkt.source_route = *best;
            pkt.route_index = 1;
            return RouteDecision::forward(pkt.source_route[1]);
        }
        if (pkt.src == node_->self()) {
            start_discovery(pkt.dst);
            return RouteDecision::buffer();
        }
        return RouteDecision::drop(DropReason::no_route);
    }

    RouteDecision on_forward_failure(Packet& pkt, NodeId failed_hop) override {
        purge_link(node_->self(), failed_hop);
        if (pkt.src == node_->self()) {
            // Failover at the source: swap in a surviving cached route, or
            // strip the dead one and rediscover.
            const std::vector<NodeId>* alt = lookup(pkt.dst);
            if (alt != nullptr) {
                pkt.source_route = *alt;
                pkt.route_index = 1;
                return RouteDecision::forward(pkt.source_route[1]);
            }
            pkt.source_route.clear();
            pkt.route_index = 0;
            start_discovery(pkt.dst);
            return RouteDecision::buffer();
        }
        send_error_toward_source(pkt, failed_hop);
        return RouteDecision::drop(DropReason::link_failure_unrecoverable);
    }

    void on_control(ControlBody body, NodeId from) override {
        if (auto* req = std::get_if<DsrRequest>(&body)) {
            handle_request(*req);
        } else if (auto* rep = std::get_if<DsrReply>(&body)) {
            handle_reply(*rep);
        } else if (auto* err = std::get_if<DsrError>(&body)) {
            handle_error(*err);
        }
        (void)from;
    }

    void on_link_loss(NodeId neighbor) override { purge_link(node_->self(), neighbor); }

    // Test visibility.
    const std::vector<CachedRoute>* cached_routes(NodeId dest) const {
        auto it = cache_.find(dest);
        return it == cache_.end() ? nullptr : &it->second;
    }

private:
    RouteDecision forward_on_route(Packet& pkt) {
        const auto& hops = pkt.source_route;
        const std::size_t i = pkt.route_index;
        // Defensive: a packet whose routing state does not place it here is
        // unroutable, not repairable.
        if (i >= hops.size() || hops[i] != node_->self() || i + 1 >= hops.size()) {
            return RouteDecision::drop(DropReason::no_route);
        }
        pkt.route_index = i + 1;
        return RouteDecision::forward(hops[i + 1]);
    }

    void start_discovery(NodeId dest) {
        if (pending_.count(dest) != 0) {
            return;
        }
        pending_[dest] = Discovery{0};
        send_request(dest);
        arm_retry_timer(dest, 0);
    }

    void send_request(NodeId dest) {
        ++request_id_;
        seen_requests_.insert({node_->self(), request_id_});
        node_->broadcast(DsrRequest{node_->self(), request_id_, dest, {node_->self()}});
    }

    void arm_retry_timer(NodeId dest, int attempt) {
        const double wait = params_.request_base_wait_s * static_cast<double>(1 << attempt);
        node_->timer_in(SimTime::from_seconds(wait), [this, dest] { retry_tick(dest); });
    }

    void retry_tick(NodeId dest) {
        auto it = pending_.find(dest);
        if (it == pending_.end()) {
            return;
        }
        if (lookup(dest) != nullptr) {
            pending_.erase(it);
            return;
        }
        if (++it->second.attempts > params_.request_retries) {
            pending_.erase(it);
            node_->drop_buffered(dest, DropReason::no_route);
            return;
        }
        send_request(dest);
        arm_retry_timer(dest, it->second.attempts);
    }

    void handle_request(const DsrRequest& req) {
        const NodeId self = node_->self();
        if (!seen_requests_.insert({req.initiator, req.request_id}).second) {
            return;
        }
        if (std::find(req.accumulated.begin(), req.accumulated.end(), self) !=
            req.accumulated.end()) {
            return;
        }
        if (req.target == self) {
            std::vector<NodeId> full = req.accumulated;
            full.push_back(self);
            send_reply_back(full);
            return;
        }
        const std::vector<NodeId>* cached = lookup(req.target);
        if (cached != nullptr) {
            // Splice: accumulated prefix + self + cached tail, valid only if
            // the concatenation stays repeat-free.
            std::vector<NodeId> full = req.accumulated;
            full.insert(full.end(), cached->begin(), cached->end());
            if (repeat_free(full)) {
                send_reply_back(full);
                return;
            }
        }
        DsrRequest onward = req;
        onward.accumulated.push_back(self);
        node_->broadcast(onward);
    }

    // The reply retraces the accumulated route in reverse; this node is the
    // last entry of the prefix that reached it.
    void send_reply_back(std::vector<NodeId> full_route) {
        const NodeId self = node_->self();
        auto me = std::find(full_route.begin(), full_route.end(), self);
        if (me == full_route.begin()) {
            return;
        }
        const NodeId back = *(me - 1);
        node_->unicast(back, DsrReply{std::move(full_route)});
    }

    void handle_reply(const DsrReply& rep) {
        const NodeId self = node_->self();
        auto me = std::find(rep.route.begin(), rep.route.end(), self);
        if (me == rep.route.end()) {
            return;
        }
        // Everyone on the return path learns the suffix from itself to the
        // target, not just the initiator.
        insert_route(std::vector<NodeId>(me, rep.route.end()));
        if (me == rep.route.begin()) {
            pending_.erase(rep.route.back());
            return;
        }
        node_->unicast(*(me - 1), DsrReply{rep.route});
    }

    void send_error_toward_source(const Packet& pkt, NodeId failed_hop) {
        const NodeId self = node_->self();
        auto me = std::find(pkt.source_route.begin(), pkt.source_route.end(), self);
        if (me == pkt.source_route.end() || me == pkt.source_route.begin()) {
            return;
        }
        std::vector<NodeId> back(pkt.source_route.begin(), me + 1);
        std::reverse(back.begin(), back.end());
        DsrError err{self, failed_hop, pkt.dst, std::move(back), 1};
        const NodeId next = err.return_path[1];
        node_->unicast(next, std::move(err));
    }

    void handle_error(const DsrError& err) {
        purge_link(err.broken_from, err.broken_to);
        const NodeId self = node_->self();
        if (err.path_index >= err.return_path.size() || err.return_path[err.path_index] != self) {
            return;
        }
        if (err.path_index + 1 == err.return_path.size()) {
            // This is the source. Waiting packets ride a surviving cached
            // route if any; otherwise discovery starts over.
            const NodeId dest = err.dest;
            if (node_->has_buffered(dest)) {
                if (lookup(dest) != nullptr) {
                    node_->route_available(dest);
                } else {
                    start_discovery(dest);
                }
            }
            return;
        }
        DsrError onward = err;
        onward.path_index += 1;
        const NodeId next = onward.return_path[onward.path_index];
        node_->unicast(next, std::move(onward));
    }

    static bool repeat_free(const std::vector<NodeId>& route) {
        std::vector<NodeId> sorted(route);
        std::sort(sorted.begin(), sorted.end());
        return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    }

    // Shortest cached route; ties keep the earliest-stored one.
    const std::vector<NodeId>* lookup(NodeId dest) const {
        auto it = cache_.find(dest);
        if (it == cache_.end() || it->second.empty()) {
            return nullptr;
        }
        const CachedRoute* best = &it->second.front();
        for (const CachedRoute& r : it->second) {
            if (r.hops.size() < best->hops.size()) {
                best = &r;
            }
        }
        return &best->hops;
    }

    void insert_route(std::vector<NodeId> hops) {
        if (hops.size() < 2 || hops.front() != node_->self() || !repeat_free(hops)) {
            return;
        }
        const NodeId dest = hops.back();
        auto& routes = cache_[dest];
        for (const CachedRoute& r : routes) {
            if (r.hops == hops) {
                return;
            }
        }
        routes.push_back({std::move(hops), node_->now()});
        if (static_cast<int>(routes.size()) > params_.cache_capacity) {
            evict_one(routes);
        }
        if (node_->has_buffered(dest)) {
            pending_.erase(dest);
            node_->route_available(dest);
        }
    }

    // Eviction victim: longest route; among equals, the oldest discovery.
    static void evict_one(std::vector<CachedRoute>& routes) {
        auto victim = routes.begin();
        for (auto it = routes.begin(); it != routes.end(); ++it) {
            if (it->hops.size() > victim->hops.size() ||
                (it->hops.size() == victim->hops.size() &&
                 it->discovered_at < victim->discovered_at)) {
                victim = it;
            }
        }
        routes.erase(victim);
    }

    void purge_link(NodeId a, NodeId b) {
        for (auto& [dest, routes] : cache_) {
            routes.erase(std::remove_if(routes.begin(), routes.end(),
                                        [a, b](const CachedRoute& r) {
                                            return contains_link(r.hops, a, b);
                                        }),
                         routes.end());
        }
    }

    static bool contains_link(const std::vector<NodeId>& hops, NodeId a, NodeId b) {
        for (std::size_t i = 0; i + 1 < hops.size(); ++i) {
            if ((hops[i] == a && hops[i + 1] == b) || (hops[i] == b && hops[i + 1] == a)) {
                return true;
            }
        }
        return false;
    }

    struct Discovery {
        int attempts = 0;
    };

    DsrParams params_;
    std::map<NodeId, std::vector<CachedRoute>> cache_;
    std::map<NodeId, Discovery> pending_;
    std::set<std::pair<NodeId, std::uint32_t>> seen_requests_;
    std::uint32_t request_id_ = 0;
};

}  // namespace manetsim
