#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <tuple>
#include <vector>

#include "packet.hpp"
#include "router.hpp"
#include "sim_time.hpp"

namespace manetsim {

struct ToraParams {
    int query_retries = 2;
    double query_base_wait_s = 1.0;
};

// Link-reversal routing with scalar per-destination heights. The destination
// sits at height 0; queries pull updates outward and each joining node takes
// one more than the smallest height it can hear, which orients every link
// from higher to lower and yields a destination-rooted DAG. Losing the last
// downstream link reverses the node by raising it above all remaining
// neighbors. Receiving an update never changes an already-set height, so
// reversal cascades are driven only by link loss and forwarding attempts.
class ToraRouter final : public Router {
public:
    static constexpr int kUnset = -1;

    explicit ToraRouter(ToraParams params = {}) : params_(params) {}

    // Observer fires after every own-height change; the simulation hangs
    // the DAG acyclicity audit on it.
    void set_height_observer(std::function<void(NodeId dest)> fn) {
        height_observer_ = std::move(fn);
    }

    RouteDecision route(Packet& pkt) override {
        DestState& st = state(pkt.dst);
        if (st.height == kUnset) {
            start_query(pkt.dst);
            return RouteDecision::buffer();
        }
        NodeId nh = downstream(st);
        if (nh != kNoNode) {
            return RouteDecision::forward(nh);
        }
        return maintain_no_downstream(pkt.dst, st);
    }

    RouteDecision on_forward_failure(Packet& pkt, NodeId failed_hop) override {
        DestState& st = state(pkt.dst);
        st.neighbor_heights.erase(failed_hop);
        NodeId nh = downstream(st);
        if (nh != kNoNode) {
            return RouteDecision::forward(nh);
        }
        return maintain_no_downstream(pkt.dst, st);
    }

    void on_control(ControlBody body, NodeId from) override {
        if (auto* qry = std::get_if<Qry>(&body)) {
            handle_qry(*qry);
        } else if (auto* upd = std::get_if<Upd>(&body)) {
            handle_upd(*upd, from);
        }
    }

    void on_link_loss(NodeId neighbor) override {
        for (auto& [dest, st] : dests_) {
            if (st.neighbor_heights.erase(neighbor) == 0 || dest == node_->self() ||
                st.height == kUnset) {
                continue;
            }
            if (downstream(st) != kNoNode) {
                continue;
            }
            const std::vector<std::pair<NodeId, int>> known = known_in_range(st);
            if (!known.empty()) {
                reverse_height(dest, st, known);
            } else {
                set_height(dest, st, kUnset);
                if (node_->has_buffered(dest)) {
                    if (node_->neighbors().empty()) {
                        node_->drop_buffered(dest, DropReason::link_failure_unrecoverable);
                    } else {
                        start_query(dest);
                    }
                }
            }
        }
    }

    // A fresh link is useless until the other side's height is known, so
    // advertise ours; the newcomer records it and may route through us.
    void on_link_gain(NodeId /*neighbor*/) override {
        for (auto& [dest, st] : dests_) {
            if (st.height != kUnset) {
                node_->broadcast(Upd{dest, st.height});
            }
        }
    }

    // Test visibility.
    int height(NodeId dest) const {
        auto it = dests_.find(dest);
        if (dest == node_->self()) {
            return 0;
        }
        return it == dests_.end() ? kUnset : it->second.height;
    }
    const std::map<NodeId, int>* known_neighbor_heights(NodeId dest) const {
        auto it = dests_.find(dest);
        return it == dests_.end() ? nullptr : &it->second.neighbor_heights;
    }

private:
    struct DestState {
        int height = kUnset;
        std::map<NodeId, int> neighbor_heights;
        bool route_required = false;
        bool pending = false;
        int attempts = 0;
        std::uint32_t next_epoch = 0;
    };

    DestState& state(NodeId dest) {
        auto [it, inserted] = dests_.try_emplace(dest);
        if (inserted && dest == node_->self()) {
            it->second.height = 0;
        }
        return it->second;
    }

    // Known heights restricted to the current neighbor sample.
    std::vector<std::pair<NodeId, int>> known_in_range(const DestState& st) const {
        std::vector<std::pair<NodeId, int>> out;
        for (NodeId n : node_->neighbors()) {
            auto it = st.neighbor_heights.find(n);
            if (it != st.neighbor_heights.end()) {
                out.emplace_back(n, it->second);
            }
        }
        return out;
    }

    // Smallest-height in-range neighbor strictly below us; ties fall to the
    // smallest node id because neighbors come sorted.
    NodeId downstream(const DestState& st) const {
        NodeId best = kNoNode;
        int best_h = st.height;
        for (const auto& [n, h] : known_in_range(st)) {
            if (h < best_h) {
                best = n;
                best_h = h;
            }
        }
        return best;
    }

    RouteDecision maintain_no_downstream(NodeId dest, DestState& st) {
        const std::vector<std::pair<NodeId, int>> known = known_in_range(st);
        if (!known.empty()) {
            reverse_height(dest, st, known);
            return RouteDecision::forward(downstream(st));
        }
        set_height(dest, st, kUnset);
        if (node_->neighbors().empty()) {
            return RouteDecision::drop(DropReason::link_failure_unrecoverable);
        }
        start_query(dest);
        return RouteDecision::buffer();
    }

    // Full reversal: rise above every remaining known neighbor, turning all
    // incident links downstream at once.
    void reverse_height(NodeId dest, DestState& st,
                        const std::vector<std::pair<NodeId, int>>& known) {
        int max_h = known.front().second;
        for (const auto& [n, h] : known) {
            if (h > max_h) {
                max_h = h;
            }
        }
        set_height(dest, st, 1 + max_h);
        node_->broadcast(Upd{dest, st.height});
    }

    void set_height(NodeId dest, DestState& st, int h) {
        st.height = h;
        if (height_observer_) {
            height_observer_(dest);
        }
    }

    void start_query(NodeId dest) {
        DestState& st = state(dest);
        st.route_required = true;
        if (st.pending) {
            return;
        }
        st.pending = true;
        st.attempts = 0;
        send_qry(dest, st);
        arm_retry_timer(dest, 0);
    }

    void send_qry(NodeId dest, DestState& st) {
        const std::uint32_t epoch = st.next_epoch++;
        seen_qry_.insert({node_->self(), epoch, dest});
        node_->broadcast(Qry{dest, node_->self(), epoch});
    }

    void arm_retry_timer(NodeId dest, int attempt) {
        const double wait = params_.query_base_wait_s * static_cast<double>(1 << attempt);
        node_->timer_in(SimTime::from_seconds(wait), [this, dest] { retry_tick(dest); });
    }

    void retry_tick(NodeId dest) {
        DestState& st = state(dest);
        if (!st.pending) {
            return;
        }
        if (st.height != kUnset) {
            st.pending = false;
            return;
        }
        if (++st.attempts > params_.query_retries) {
            st.pending = false;
            st.route_required = false;
            // Exhaustion with an empty neighbor sample means this node is
            // cut off, not merely unanswered.
            node_->drop_buffered(dest, node_->neighbors().empty()
                                           ? DropReason::link_failure_unrecoverable
                                           : DropReason::no_route);
            return;
        }
        send_qry(dest, st);
        arm_retry_timer(dest, st.attempts);
    }

    void handle_qry(const Qry& qry) {
        if (!seen_qry_.insert({qry.originator, qry.epoch, qry.dest}).second) {
            return;
        }
        DestState& st = state(qry.dest);
        if (qry.dest == node_->self() || st.height != kUnset) {
            node_->broadcast(Upd{qry.dest, st.height});
            return;
        }
        st.route_required = true;
        node_->broadcast(qry);
    }

    void handle_upd(const Upd& upd, NodeId from) {
        DestState& st = state(upd.dest);
        st.neighbor_heights[from] = upd.sender_height;
        if (st.height == kUnset && st.route_required) {
            const std::vector<std::pair<NodeId, int>> known = known_in_range(st);
            if (known.empty()) {
                return;
            }
            int min_h = known.front().second;
            for (const auto& [n, h] : known) {
                if (h < min_h) {
                    min_h = h;
                }
            }
            st.route_required = false;
            st.pending = false;
            set_height(upd.dest, st, 1 + min_h);
            node_->broadcast(Upd{upd.dest, st.height});
            node_->route_available(upd.dest);
            return;
        }
        // Height already set: record only. Still an opportunity to move
        // anything waiting on a downstream link that just materialized.
        if (st.height != kUnset && node_->has_buffered(upd.dest) && downstream(st) != kNoNode) {
            node_->route_available(upd.dest);
        }
    }

    ToraParams params_;
    std::map<NodeId, DestState> dests_;
    std::set<std::tuple<NodeId, std::uint32_t, NodeId>> seen_qry_;
    std::function<void(NodeId dest)> height_observer_;
};

}  // namespace manetsim
