#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "packet.hpp"
#include "router.hpp"
#include "sim_time.hpp"

namespace manetsim {

struct AodvParams {
    double active_route_timeout_s = 3.0;
    double hello_interval_s = 1.0;
    bool gratuitous_reply = false;
    int rreq_retries = 2;
    double rreq_base_wait_s = 1.0;
};

// On-demand distance-vector routing. Discovery floods a request that plants
// reverse routes; the reply travels those back, planting forward routes.
// Routes are single next-hop entries with a lifetime extended on every use.
class AodvRouter final : public Router {
public:
    struct RouteEntry {
        NodeId next_hop = kNoNode;
        int hop_count = 0;
        std::uint32_t dest_seq = 0;
        SimTime expiry;
        bool valid = false;
        // Sources whose data this node forwarded over the route; they get a
        // route-error if the next hop is lost.
        std::set<NodeId> sources;
    };

    explicit AodvRouter(AodvParams params = {}) : params_(params) {}

    void start() override {
        if (params_.hello_interval_s > 0) {
            schedule_hello();
        }
    }

    RouteDecision route(Packet& pkt) override {
        RouteEntry* e = usable_route(pkt.dst);
        if (e != nullptr) {
            e->expiry = node_->now() + timeout();
            return RouteDecision::forward(e->next_hop);
        }
        if (pkt.src == node_->self()) {
            start_discovery(pkt.dst);
            return RouteDecision::buffer();
        }
        // Mid-path hole: this node cannot repair on the source's behalf.
        send_rerr(pkt.dst, pkt.src);
        return RouteDecision::drop(DropReason::no_route);
    }

    RouteDecision on_forward_failure(Packet& pkt, NodeId failed_hop) override {
        on_link_loss(failed_hop);
        if (pkt.src == node_->self()) {
            start_discovery(pkt.dst);
            return RouteDecision::buffer();
        }
        return RouteDecision::drop(DropReason::link_failure_unrecoverable);
    }

    void on_control(ControlBody body, NodeId from) override {
        if (auto* rreq = std::get_if<Rreq>(&body)) {
            handle_rreq(*rreq, from);
        } else if (auto* rrep = std::get_if<Rrep>(&body)) {
            handle_rrep(*rrep, from);
        } else if (auto* rerr = std::get_if<Rerr>(&body)) {
            handle_rerr(*rerr);
        }
        // Hello frames carry no state beyond the sender being alive, which
        // on_frame_heard already recorded.
    }

    void on_link_loss(NodeId neighbor) override {
        for (auto& [dest, entry] : table_) {
            if (!entry.valid || entry.next_hop != neighbor) {
                continue;
            }
            entry.valid = false;
            for (NodeId src : entry.sources) {
                if (src != node_->self()) {
                    send_rerr(dest, src, entry.dest_seq);
                }
            }
            entry.sources.clear();
        }
    }

    void on_frame_heard(NodeId from) override { last_seen_[from] = node_->now(); }

    void on_data_forwarded(const Packet& pkt, NodeId prev_hop, NodeId /*next_hop*/) override {
        auto it = table_.find(pkt.dst);
        if (it != table_.end() && it->second.valid && pkt.src != node_->self()) {
            it->second.sources.insert(pkt.src);
        }
        // Keep the path back to the source alive while its data flows, so a
        // later route-error can actually reach it.
        if (prev_hop != kNoNode && pkt.src != node_->self()) {
            refresh_reverse_route(pkt.src, prev_hop,
                                  static_cast<int>(pkt.visited.size()) - 1);
        }
    }

    // Test visibility.
    const RouteEntry* route_entry(NodeId dest) const {
        auto it = table_.find(dest);
        return it == table_.end() ? nullptr : &it->second;
    }
    std::uint32_t own_seq() const { return own_seq_; }
    std::uint32_t rreq_id() const { return rreq_id_; }

private:
    SimTime timeout() const { return SimTime::from_seconds(params_.active_route_timeout_s); }

    RouteEntry* usable_route(NodeId dest) {
        auto it = table_.find(dest);
        if (it == table_.end() || !it->second.valid || it->second.expiry < node_->now()) {
            return nullptr;
        }
        return &it->second;
    }

    // Freshness order: higher sequence wins; equal sequence keeps the
    // shorter path. Stale or expired entries always yield.
    void upsert_route(NodeId dest, NodeId next_hop, int hop_count, std::uint32_t seq) {
        RouteEntry& e = table_[dest];
        const bool stale = !e.valid || e.expiry < node_->now();
        if (stale || seq > e.dest_seq || (seq == e.dest_seq && hop_count <= e.hop_count)) {
            e.next_hop = next_hop;
            e.hop_count = hop_count;
            if (seq > e.dest_seq) {
                e.dest_seq = seq;
            }
            e.valid = true;
            e.expiry = node_->now() + timeout();
        }
        after_route_change(dest);
    }

    void refresh_reverse_route(NodeId dest, NodeId next_hop, int hop_count) {
        RouteEntry& e = table_[dest];
        if (!e.valid || e.expiry < node_->now()) {
            e.next_hop = next_hop;
            e.hop_count = hop_count;
            e.valid = true;
        }
        if (e.next_hop == next_hop) {
            e.expiry = node_->now() + timeout();
        }
        after_route_change(dest);
    }

    // Any route appearing while packets wait for it releases them, however
    // it was learned; otherwise packets planted behind a passing flood would
    // sit until the buffer timeout.
    void after_route_change(NodeId dest) {
        if (node_->has_buffered(dest) && usable_route(dest) != nullptr) {
            pending_.erase(dest);
            node_->route_available(dest);
        }
    }

    void start_discovery(NodeId dest) {
        if (pending_.count(dest) != 0) {
            return;
        }
        pending_[dest] = Discovery{0};
        send_rreq(dest);
        arm_retry_timer(dest, 0);
    }

    void send_rreq(NodeId dest) {
        ++own_seq_;
        ++rreq_id_;
        seen_rreq_.insert({node_->self(), rreq_id_});
        auto it = table_.find(dest);
        const std::uint32_t known = it == table_.end() ? 0 : it->second.dest_seq;
        node_->broadcast(Rreq{node_->self(), own_seq_, rreq_id_, dest, known, 0});
    }

    void arm_retry_timer(NodeId dest, int attempt) {
        const double wait = params_.rreq_base_wait_s * static_cast<double>(1 << attempt);
        node_->timer_in(SimTime::from_seconds(wait), [this, dest] { retry_tick(dest); });
    }

    void retry_tick(NodeId dest) {
        auto it = pending_.find(dest);
        if (it == pending_.end()) {
            return;
        }
        if (usable_route(dest) != nullptr) {
            pending_.erase(it);
            return;
        }
        if (++it->second.attempts > params_.rreq_retries) {
            pending_.erase(it);
            node_->drop_buffered(dest, DropReason::no_route);
            return;
        }
        send_rreq(dest);
        arm_retry_timer(dest, it->second.attempts);
    }

    void handle_rreq(const Rreq& rreq, NodeId from) {
        if (!seen_rreq_.insert({rreq.orig, rreq.rreq_id}).second) {
            return;
        }
        upsert_route(rreq.orig, from, rreq.hop_count + 1, rreq.orig_seq);
        if (rreq.dest == node_->self()) {
            // Answer with a number at least as fresh as the requester asked
            // for; own discoveries are what advance the counter.
            if (own_seq_ < rreq.dest_seq_known) {
                own_seq_ = rreq.dest_seq_known;
            }
            reply_toward(rreq.orig, Rrep{rreq.orig, node_->self(), own_seq_, 0, timeout()});
            return;
        }
        if (params_.gratuitous_reply) {
            RouteEntry* cached = usable_route(rreq.dest);
            if (cached != nullptr && cached->dest_seq >= rreq.dest_seq_known) {
                reply_toward(rreq.orig, Rrep{rreq.orig, rreq.dest, cached->dest_seq,
                                             cached->hop_count, timeout()});
                return;
            }
        }
        Rreq onward = rreq;
        onward.hop_count += 1;
        node_->broadcast(onward);
    }

    void handle_rrep(const Rrep& rrep, NodeId from) {
        upsert_route(rrep.dest, from, rrep.hop_count + 1, rrep.dest_seq);
        if (rrep.orig == node_->self()) {
            pending_.erase(rrep.dest);
            return;
        }
        Rrep onward = rrep;
        onward.hop_count += 1;
        reply_toward(rrep.orig, onward);
    }

    // Unicast a reply (or relayed error) one hop along this node's route
    // toward the target; silently dies if that route has expired.
    void reply_toward(NodeId target, Rrep rrep) {
        RouteEntry* back = usable_route(target);
        if (back != nullptr) {
            back->expiry = node_->now() + timeout();
            node_->unicast(back->next_hop, std::move(rrep));
        }
    }

    void send_rerr(NodeId unreachable, NodeId toward, std::uint32_t seq = 0) {
        RouteEntry* back = usable_route(toward);
        if (back != nullptr) {
            node_->unicast(back->next_hop, Rerr{unreachable, seq, toward});
        }
    }

    void handle_rerr(const Rerr& rerr) {
        auto it = table_.find(rerr.unreachable);
        if (it != table_.end() && it->second.valid) {
            it->second.valid = false;
            if (rerr.unreachable_seq > it->second.dest_seq) {
                it->second.dest_seq = rerr.unreachable_seq;
            }
            it->second.sources.clear();
        }
        if (rerr.toward == node_->self()) {
            if (node_->has_buffered(rerr.unreachable)) {
                start_discovery(rerr.unreachable);
            }
            return;
        }
        send_rerr(rerr.unreachable, rerr.toward, rerr.unreachable_seq);
    }

    void schedule_hello() {
        node_->timer_in(SimTime::from_seconds(params_.hello_interval_s), [this] {
            node_->broadcast(Hello{own_seq_});
            check_next_hop_silence();
            schedule_hello();
        });
    }

    // A next hop silent for two full hello intervals counts as a lost link.
    void check_next_hop_silence() {
        const SimTime horizon = SimTime::from_seconds(2.0 * params_.hello_interval_s);
        std::vector<NodeId> lost;
        for (const auto& [dest, entry] : table_) {
            if (!entry.valid) {
                continue;
            }
            auto seen = last_seen_.find(entry.next_hop);
            if (seen != last_seen_.end() && node_->now() - seen->second > horizon) {
                lost.push_back(entry.next_hop);
            }
        }
        for (NodeId n : lost) {
            last_seen_.erase(n);
            on_link_loss(n);
        }
    }

    struct Discovery {
        int attempts = 0;
    };

    AodvParams params_;
    std::map<NodeId, RouteEntry> table_;
    std::map<NodeId, Discovery> pending_;
    std::set<std::pair<NodeId, std::uint32_t>> seen_rreq_;
    std::map<NodeId, SimTime> last_seen_;
    std::uint32_t own_seq_ = 0;
    std::uint32_t rreq_id_ = 0;
};

}  // namespace manetsim
