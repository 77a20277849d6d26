#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "engine.hpp"
#include "errors.hpp"
#include "node.hpp"
#include "packet.hpp"
#include "sim_time.hpp"

namespace manetsim {

// One application traffic source. packet_bits is the on-wire size of each
// data packet; the application payload is what remains after the flat data
// header. For file transfers, file_bits counts the total wire volume and the
// final packet carries the remainder.
struct SessionSpec {
    enum class Kind { Cbr, FileTransfer };

    Kind kind = Kind::Cbr;
    NodeId src = 0;
    NodeId dst = 0;
    double start_s = 0.0;
    std::int64_t packet_bits = 1024;
    // cbr only
    double stop_s = 0.0;
    double interval_s = 1.0;
    // file transfer only
    std::int64_t file_bits = 0;
};

struct TransferReport {
    std::size_t session = 0;
    bool finished = false;
    double completion_s = 0.0;  // first packet sent to last delivered
};

// Drives sessions against the node shells. Constant-rate sources are
// fire-and-forget; file transfers pace packets back to back at the wire rate
// and re-originate a dropped packet up to the per-packet budget.
class TrafficManager {
public:
    static constexpr int kTransferRetransmitBudget = 3;

    TrafficManager(Engine& engine, std::vector<std::unique_ptr<Node>>& nodes,
                   std::vector<SessionSpec> sessions, std::int64_t data_rate_bps,
                   int hop_limit)
        : engine_(engine),
          nodes_(nodes),
          sessions_(std::move(sessions)),
          data_rate_bps_(data_rate_bps),
          hop_limit_(hop_limit) {
        transfers_.resize(sessions_.size());
        for (std::size_t i = 0; i < sessions_.size(); ++i) {
            const SessionSpec& s = sessions_[i];
            if (s.kind == SessionSpec::Kind::FileTransfer) {
                TransferState& ts = transfers_[i];
                ts.packet_count = (s.file_bits + s.packet_bits - 1) / s.packet_bits;
                ts.delivered.assign(static_cast<std::size_t>(ts.packet_count), false);
                ts.attempts.assign(static_cast<std::size_t>(ts.packet_count), 0);
            }
        }
    }

    void start() {
        for (std::size_t i = 0; i < sessions_.size(); ++i) {
            const SessionSpec& s = sessions_[i];
            const SimTime at = SimTime::from_seconds(s.start_s);
            if (s.kind == SessionSpec::Kind::Cbr) {
                engine_.schedule(at, [this, i] { cbr_tick(i); });
            } else {
                engine_.schedule(at, [this, i] { transfer_send(i, 0); });
            }
        }
    }

    // Wired into the node shells' packet hooks.
    void on_delivered(const Packet& pkt) {
        if (pkt.session == 0) {
            return;
        }
        const std::size_t idx = static_cast<std::size_t>(pkt.session - 1);
        if (sessions_[idx].kind != SessionSpec::Kind::FileTransfer) {
            return;
        }
        TransferState& ts = transfers_[idx];
        auto delivered = ts.delivered[static_cast<std::size_t>(pkt.seq)];
        if (!delivered) {
            ts.delivered[static_cast<std::size_t>(pkt.seq)] = true;
            ts.delivered_count += 1;
            if (engine_.now() > ts.last_delivery) {
                ts.last_delivery = engine_.now();
            }
        }
    }

    void on_dropped(const Packet& pkt, DropReason /*reason*/) {
        if (pkt.session == 0) {
            return;
        }
        const std::size_t idx = static_cast<std::size_t>(pkt.session - 1);
        if (sessions_[idx].kind != SessionSpec::Kind::FileTransfer) {
            return;
        }
        TransferState& ts = transfers_[idx];
        int& used = ts.attempts[static_cast<std::size_t>(pkt.seq)];
        if (used < kTransferRetransmitBudget) {
            used += 1;
            originate_transfer_packet(idx, static_cast<std::int64_t>(pkt.seq));
        } else {
            ts.budget_exhausted = true;
        }
    }

    std::vector<TransferReport> transfer_reports() const {
        std::vector<TransferReport> out;
        for (std::size_t i = 0; i < sessions_.size(); ++i) {
            if (sessions_[i].kind != SessionSpec::Kind::FileTransfer) {
                continue;
            }
            const TransferState& ts = transfers_[i];
            TransferReport r;
            r.session = i;
            r.finished = ts.delivered_count == ts.packet_count;
            if (r.finished) {
                r.completion_s =
                    (ts.last_delivery - SimTime::from_seconds(sessions_[i].start_s)).ns() * 1e-9;
            }
            out.push_back(r);
        }
        return out;
    }

    const std::vector<SessionSpec>& sessions() const { return sessions_; }

private:
    struct TransferState {
        std::int64_t packet_count = 0;
        std::int64_t delivered_count = 0;
        std::vector<bool> delivered;
        std::vector<int> attempts;  // retransmissions used per packet
        SimTime last_delivery;
        bool budget_exhausted = false;
    };

    void cbr_tick(std::size_t idx) {
        const SessionSpec& s = sessions_[idx];
        if (engine_.now() >= SimTime::from_seconds(s.stop_s)) {
            return;
        }
        Packet pkt;
        pkt.id = ++next_packet_id_;
        pkt.src = s.src;
        pkt.dst = s.dst;
        pkt.app_bits = s.packet_bits - kDataHeaderBits;
        pkt.hop_limit = hop_limit_;
        pkt.created_at = engine_.now();
        pkt.session = idx + 1;
        nodes_[static_cast<std::size_t>(s.src)]->originate(std::move(pkt));
        engine_.schedule_in(SimTime::from_seconds(s.interval_s), [this, idx] { cbr_tick(idx); });
    }

    std::int64_t transfer_wire_bits(std::size_t idx, std::int64_t seq) const {
        const SessionSpec& s = sessions_[idx];
        const TransferState& ts = transfers_[idx];
        if (seq + 1 < ts.packet_count) {
            return s.packet_bits;
        }
        const std::int64_t remainder = s.file_bits - (ts.packet_count - 1) * s.packet_bits;
        return remainder > 0 ? remainder : s.packet_bits;
    }

    // Packets leave back to back: each origination is spaced by exactly the
    // previous packet's serialization time, so on one ideal hop the transfer
    // finishes in packet_count serialization slots.
    void transfer_send(std::size_t idx, std::int64_t seq) {
        const TransferState& ts = transfers_[idx];
        if (seq >= ts.packet_count) {
            return;
        }
        originate_transfer_packet(idx, seq);
        if (seq + 1 < ts.packet_count) {
            const SimTime gap =
                serialization_delay(transfer_wire_bits(idx, seq), data_rate_bps_);
            engine_.schedule_in(gap, [this, idx, seq] { transfer_send(idx, seq + 1); });
        }
    }

    void originate_transfer_packet(std::size_t idx, std::int64_t seq) {
        const SessionSpec& s = sessions_[idx];
        Packet pkt;
        pkt.id = ++next_packet_id_;
        pkt.src = s.src;
        pkt.dst = s.dst;
        pkt.app_bits = transfer_wire_bits(idx, seq) - kDataHeaderBits;
        pkt.hop_limit = hop_limit_;
        pkt.created_at = engine_.now();
        pkt.session = idx + 1;
        pkt.seq = static_cast<std::uint64_t>(seq);
        nodes_[static_cast<std::size_t>(s.src)]->originate(std::move(pkt));
    }

    Engine& engine_;
    std::vector<std::unique_ptr<Node>>& nodes_;
    std::vector<SessionSpec> sessions_;
    std::int64_t data_rate_bps_;
    int hop_limit_;
    std::vector<TransferState> transfers_;
    std::uint64_t next_packet_id_ = 0;
};

}  // namespace manetsim
