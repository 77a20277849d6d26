#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "errors.hpp"
#include "sim_time.hpp"

namespace manetsim {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(Vec2 a, double k) { return {a.x * k, a.y * k}; }
    friend bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }
};

inline double distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Piecewise-linear path through timestamped waypoints. Positions before the
// first waypoint clamp to it, positions after the last clamp to the last, so
// a single waypoint describes a stationary node.
class Trajectory {
public:
    Trajectory() = default;
    explicit Trajectory(Vec2 fixed) { waypoints_.push_back({SimTime::zero(), fixed}); }

    void add(SimTime at, Vec2 pos) {
        if (!waypoints_.empty() && at < waypoints_.back().at) {
            throw InvariantViolation("trajectory waypoints must be time-ordered");
        }
        waypoints_.push_back({at, pos});
    }

    bool empty() const { return waypoints_.empty(); }
    std::size_t size() const { return waypoints_.size(); }

    Vec2 position_at(SimTime t) const {
        if (waypoints_.empty()) {
            return {};
        }
        if (t <= waypoints_.front().at) {
            return waypoints_.front().pos;
        }
        if (t >= waypoints_.back().at) {
            return waypoints_.back().pos;
        }
        auto it = std::lower_bound(
            waypoints_.begin(), waypoints_.end(), t,
            [](const Waypoint& w, SimTime when) { return w.at < when; });
        const Waypoint& a = *(it - 1);
        const Waypoint& b = *it;
        const double span = static_cast<double>((b.at - a.at).ns());
        const double frac = span > 0.0 ? static_cast<double>((t - a.at).ns()) / span : 0.0;
        return a.pos + (b.pos - a.pos) * frac;
    }

private:
    struct Waypoint {
        SimTime at;
        Vec2 pos;
    };
    std::vector<Waypoint> waypoints_;
};

}  // namespace manetsim
