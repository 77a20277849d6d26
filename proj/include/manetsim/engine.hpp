#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "random.hpp"
#include "sim_time.hpp"

namespace manetsim {

// Discrete-event core. Events fire in (time, insertion sequence) order; the
// sequence number breaks ties so simultaneous events replay in the order they
// were scheduled, which makes whole runs byte-for-byte reproducible.
class Engine {
public:
    using Handler = std::function<void()>;

    explicit Engine(std::uint64_t scenario_seed = 0) : seed_(scenario_seed) {}

    SimTime now() const { return now_; }
    std::uint64_t seed() const { return seed_; }

    void schedule(SimTime at, Handler fn) {
        if (at < now_) {
            throw SchedulingInPast("event scheduled at " + at.to_string() +
                                   " before current time " + now_.to_string());
        }
        queue_.push(Event{at, next_seq_++, std::move(fn)});
    }

    void schedule_in(SimTime delay, Handler fn) { schedule(now_ + delay, std::move(fn)); }

    RandomStream stream(std::string_view label) const { return RandomStream(seed_, label); }

    bool empty() const { return queue_.empty(); }
    std::size_t pending() const { return queue_.size(); }
    std::uint64_t dispatched() const { return dispatched_; }

    // Called just before each event fires. Tests hook this to record the
    // dispatch order.
    void set_probe(std::function<void(SimTime, std::uint64_t)> probe) {
        probe_ = std::move(probe);
    }

    // Runs until the queue drains or the clock passes `until`. Events at
    // exactly `until` still fire.
    void run_until(SimTime until) {
        while (!queue_.empty() && queue_.top().at <= until) {
            Event ev = std::move(const_cast<Event&>(queue_.top()));
            queue_.pop();
            now_ = ev.at;
            ++dispatched_;
            if (probe_) {
                probe_(ev.at, ev.seq);
            }
            ev.fn();
        }
        if (now_ < until) {
            now_ = until;
        }
    }

    void run_all() {
        while (!queue_.empty()) {
            Event ev = std::move(const_cast<Event&>(queue_.top()));
            queue_.pop();
            now_ = ev.at;
            ++dispatched_;
            if (probe_) {
                probe_(ev.at, ev.seq);
            }
            ev.fn();
        }
    }

private:
    struct Event {
        SimTime at;
        std::uint64_t seq;
        Handler fn;
    };
    struct Later {
        bool operator()(const Event& a, const Event& b) const {
            if (a.at != b.at) {
                return b.at < a.at;
            }
            return b.seq < a.seq;
        }
    };

    SimTime now_;
    std::uint64_t seed_;
    std::uint64_t next_seq_ = 0;
    std::uint64_t dispatched_ = 0;
    std::priority_queue<Event, std::vector<Event>, Later> queue_;
    std::function<void(SimTime, std::uint64_t)> probe_;
};

}  // namespace manetsim
