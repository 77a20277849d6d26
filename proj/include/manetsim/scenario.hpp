#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <utility>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "aodv.hpp"
#include "dsr.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "node.hpp"
#include "radio.hpp"
#include "random.hpp"
#include "tora.hpp"
#include "traffic.hpp"

namespace manetsim {

struct PlacementSpec {
    enum class Kind { TwoClouds, Explicit, RandomBox };
    Kind kind = Kind::Explicit;
    // two_clouds: a central server node (id 0) with per_side workstations in
    // a jittered grid on each side.
    int per_side = 0;
    double cloud_offset_m = 1000.0;
    double cloud_extent_m = 800.0;
    // explicit
    std::vector<Vec2> coords;
    // random_box
    double box_m = 2000.0;
};

struct MobilitySpec {
    enum class Kind { Static, Sweep, Bounce };
    Kind kind = Kind::Static;
    double speed_mps = 5.0;
    // sweep: horizontal triangle-wave oscillation around the home position;
    // the server (node 0) stays put.
    double amplitude_m = 250.0;
    // bounce: straight-line travel reflecting off the walls of a centered
    // square box.
    double box_m = 2000.0;
};

struct Scenario {
    std::string name = "scenario";
    std::uint64_t seed = 1;
    double duration_s = 0.0;
    std::string protocol;  // "aodv" | "dsr" | "tora"
    RadioConfig radio;
    CoreParams core;
    AodvParams aodv;
    DsrParams dsr;
    ToraParams tora;
    int node_count = 0;
    PlacementSpec placement;
    MobilitySpec mobility;
    std::map<NodeId, Trajectory> explicit_trajectories;
    std::vector<SessionSpec> sessions;
    // Preset traffic patterns, expanded at materialization time.
    bool auto_perf_traffic = false;       // every workstation: cbr to opposite peer (+ server)
    bool auto_perf_server_flow = true;    // false = light load, peer session only
    bool auto_pair_traffic = false;       // node i: cbr to node i + half
    std::int64_t auto_packet_bits = 1024;
    double auto_interval_s = 1.0;
    double auto_start_jitter_s = 10.0;
};

// Everything the simulation needs that depends on the seed.
struct WorldPlan {
    std::vector<Trajectory> trajectories;
    std::vector<SessionSpec> sessions;
    bool static_topology = true;
};

namespace detail {

inline double triangle_wave(double u) {
    u -= std::floor(u);
    if (u < 0.25) {
        return 4.0 * u;
    }
    if (u < 0.75) {
        return 2.0 - 4.0 * u;
    }
    return 4.0 * u - 4.0;
}

inline Trajectory sweep_trajectory(Vec2 home, double amplitude, double speed, double phase,
                                   double duration_s) {
    const double period = 4.0 * amplitude / speed;
    Trajectory tr;
    auto pos_at = [&](double t) {
        return Vec2{home.x + amplitude * triangle_wave(t / period + phase), home.y};
    };
    tr.add(SimTime::zero(), pos_at(0.0));
    // Vertices of the triangle wave land where u mod 1 hits 0.25 or 0.75,
    // every half period.
    const double u0 = phase - std::floor(phase);
    double next_vertex = (u0 < 0.25 ? 0.25 - u0 : u0 < 0.75 ? 0.75 - u0 : 1.25 - u0) * period;
    for (double t = next_vertex; t < duration_s; t += period / 2.0) {
        tr.add(SimTime::from_seconds(t), pos_at(t));
    }
    tr.add(SimTime::from_seconds(duration_s), pos_at(duration_s));
    return tr;
}

inline Trajectory bounce_trajectory(Vec2 start, double angle_rad, double speed, double box,
                                    double duration_s) {
    const double half = box / 2.0;
    Trajectory tr;
    tr.add(SimTime::zero(), start);
    Vec2 p = start;
    double vx = speed * std::cos(angle_rad);
    double vy = speed * std::sin(angle_rad);
    double t = 0.0;
    while (t < duration_s) {
        double hit = duration_s - t;
        if (vx > 1e-12) {
            hit = std::min(hit, (half - p.x) / vx);
        } else if (vx < -1e-12) {
            hit = std::min(hit, (-half - p.x) / vx);
        }
        if (vy > 1e-12) {
            hit = std::min(hit, (half - p.y) / vy);
        } else if (vy < -1e-12) {
            hit = std::min(hit, (-half - p.y) / vy);
        }
        if (hit < 1e-9) {
            hit = 1e-9;
        }
        t += hit;
        if (t > duration_s) {
            hit -= t - duration_s;
            t = duration_s;
        }
        p = {p.x + vx * hit, p.y + vy * hit};
        tr.add(SimTime::from_seconds(t), p);
        if (p.x >= half - 1e-9 || p.x <= -half + 1e-9) {
            vx = -vx;
        }
        if (p.y >= half - 1e-9 || p.y <= -half + 1e-9) {
            vy = -vy;
        }
    }
    return tr;
}

}  // namespace detail

inline std::vector<Vec2> place_nodes(const Scenario& sc, std::uint64_t seed) {
    const PlacementSpec& ps = sc.placement;
    RandomStream jitter(seed, "placement");
    std::vector<Vec2> out;
    switch (ps.kind) {
        case PlacementSpec::Kind::Explicit:
            out = ps.coords;
            break;
        case PlacementSpec::Kind::RandomBox: {
            for (int i = 0; i < sc.node_count; ++i) {
                const double x = jitter.uniform(-ps.box_m / 2.0, ps.box_m / 2.0);
                const double y = jitter.uniform(-ps.box_m / 2.0, ps.box_m / 2.0);
                out.push_back({x, y});
            }
            break;
        }
        case PlacementSpec::Kind::TwoClouds: {
            const int n = ps.per_side;
            const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
            const int rows = (n + cols - 1) / cols;
            const double cell_x = ps.cloud_extent_m / cols;
            const double cell_y = ps.cloud_extent_m / rows;
            if (cell_x < 1.0 || cell_y < 1.0) {
                throw ConfigError("nodes.cloud_extent_m",
                                  "cloud extent too small for the per-side node count");
            }
            out.push_back({0.0, 0.0});  // server
            for (double side : {-1.0, 1.0}) {
                const double cx = side * ps.cloud_offset_m;
                for (int k = 0; k < n; ++k) {
                    const int col = k % cols;
                    const int row = k / cols;
                    const double x = cx - ps.cloud_extent_m / 2.0 + (col + 0.5) * cell_x +
                                     jitter.uniform(-cell_x / 4.0, cell_x / 4.0);
                    const double y = -ps.cloud_extent_m / 2.0 + (row + 0.5) * cell_y +
                                     jitter.uniform(-cell_y / 4.0, cell_y / 4.0);
                    out.push_back({x, y});
                }
            }
            break;
        }
    }
    return out;
}

inline WorldPlan materialize(const Scenario& sc, std::uint64_t seed) {
    WorldPlan plan;
    const std::vector<Vec2> base = place_nodes(sc, seed);
    if (static_cast<int>(base.size()) != sc.node_count) {
        throw ConfigError("nodes.count", "placement produced " + std::to_string(base.size()) +
                                             " positions for node_count " +
                                             std::to_string(sc.node_count));
    }

    RandomStream mobility(seed, "mobility");
    plan.trajectories.reserve(base.size());
    for (NodeId id = 0; id < sc.node_count; ++id) {
        auto explicit_it = sc.explicit_trajectories.find(id);
        if (explicit_it != sc.explicit_trajectories.end()) {
            plan.trajectories.push_back(explicit_it->second);
            continue;
        }
        switch (sc.mobility.kind) {
            case MobilitySpec::Kind::Static:
                plan.trajectories.emplace_back(base[static_cast<std::size_t>(id)]);
                break;
            case MobilitySpec::Kind::Sweep: {
                const double phase = mobility.next_double();
                if (id == 0) {
                    plan.trajectories.emplace_back(base[0]);
                } else {
                    plan.trajectories.push_back(detail::sweep_trajectory(
                        base[static_cast<std::size_t>(id)], sc.mobility.amplitude_m,
                        sc.mobility.speed_mps, phase, sc.duration_s));
                }
                break;
            }
            case MobilitySpec::Kind::Bounce: {
                const double angle = mobility.uniform(0.0, 6.283185307179586);
                plan.trajectories.push_back(
                    detail::bounce_trajectory(base[static_cast<std::size_t>(id)], angle,
                                              sc.mobility.speed_mps, sc.mobility.box_m,
                                              sc.duration_s));
                break;
            }
        }
    }

    plan.sessions = sc.sessions;
    RandomStream traffic(seed, "traffic");
    auto jittered_start = [&] { return 1.0 + traffic.uniform(0.0, sc.auto_start_jitter_s); };
    if (sc.auto_perf_traffic) {
        const int per_side = sc.placement.per_side;
        for (NodeId w = 1; w <= 2 * per_side; ++w) {
            const NodeId peer = w <= per_side ? w + per_side : w - per_side;
            SessionSpec to_peer;
            to_peer.kind = SessionSpec::Kind::Cbr;
            to_peer.src = w;
            to_peer.dst = peer;
            to_peer.start_s = jittered_start();
            to_peer.stop_s = sc.duration_s;
            to_peer.packet_bits = sc.auto_packet_bits;
            to_peer.interval_s = sc.auto_interval_s;
            SessionSpec to_server = to_peer;
            to_server.dst = 0;
            to_server.start_s = jittered_start();
            plan.sessions.push_back(to_peer);
            if (sc.auto_perf_server_flow) {
                plan.sessions.push_back(to_server);
            }
        }
    }
    if (sc.auto_pair_traffic) {
        const int half = sc.node_count / 2;
        for (NodeId i = 0; i < half; ++i) {
            SessionSpec s;
            s.kind = SessionSpec::Kind::Cbr;
            s.src = i;
            s.dst = i + half;
            s.start_s = jittered_start();
            s.stop_s = sc.duration_s;
            s.packet_bits = sc.auto_packet_bits;
            s.interval_s = sc.auto_interval_s;
            plan.sessions.push_back(s);
        }
    }

    plan.static_topology = true;
    for (const Trajectory& tr : plan.trajectories) {
        if (tr.size() > 1) {
            plan.static_topology = false;
            break;
        }
    }
    return plan;
}

// ---- configuration text ----

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])) != 0) {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])) != 0) {
        --e;
    }
    return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

inline double parse_double(const std::string& key, const std::string& v, int line) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) {
            throw std::invalid_argument(v);
        }
        return d;
    } catch (const std::exception&) {
        throw ConfigError(key, "expected a number, got '" + v + "'", line);
    }
}

inline std::int64_t parse_int(const std::string& key, const std::string& v, int line) {
    try {
        std::size_t used = 0;
        const long long i = std::stoll(v, &used);
        if (used != v.size()) {
            throw std::invalid_argument(v);
        }
        return i;
    } catch (const std::exception&) {
        throw ConfigError(key, "expected an integer, got '" + v + "'", line);
    }
}

inline bool parse_bool(const std::string& key, const std::string& v, int line) {
    if (v == "true" || v == "yes" || v == "on" || v == "1") {
        return true;
    }
    if (v == "false" || v == "no" || v == "off" || v == "0") {
        return false;
    }
    throw ConfigError(key, "expected a boolean, got '" + v + "'", line);
}

// "(a,b,...)" -> numbers
inline std::vector<double> parse_tuple(const std::string& key, const std::string& v, int line,
                                       std::size_t arity) {
    const std::string t = trim(v);
    if (t.size() < 2 || t.front() != '(' || t.back() != ')') {
        throw ConfigError(key, "expected a (…) tuple, got '" + v + "'", line);
    }
    std::vector<std::string> parts = split(t.substr(1, t.size() - 2), ',');
    if (parts.size() != arity) {
        throw ConfigError(key, "expected " + std::to_string(arity) + " tuple fields", line);
    }
    std::vector<double> out;
    for (const std::string& p : parts) {
        out.push_back(parse_double(key, p, line));
    }
    return out;
}

}  // namespace detail

inline void validate_scenario(Scenario& sc);

// Scenario text: '[section]' headers with 'key = value' lines, '#' comments,
// lists comma-separated, coordinate/waypoint tuples ';'-separated, and
// trajectory lines written as 'node_id: (t,x,y);(t,x,y);…'.
inline Scenario parse_scenario_text(const std::string& text) {
    using detail::parse_bool;
    using detail::parse_double;
    using detail::parse_int;
    using detail::parse_tuple;
    using detail::split;
    using detail::trim;

    Scenario sc;
    sc.placement.kind = PlacementSpec::Kind::Explicit;
    bool protocol_set = false;

    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) {
            raw.erase(hash);
        }
        const std::string line = trim(raw);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("section", "unterminated section header", line_no);
            }
            section = trim(line.substr(1, line.size() - 2));
            static const char* known[] = {"scenario", "radio",        "nodes", "core", "aodv",
                                          "dsr",      "tora",         "trajectories", "sessions"};
            bool ok = false;
            for (const char* k : known) {
                if (section == k) {
                    ok = true;
                }
            }
            if (!ok) {
                throw ConfigError(section, "unknown section", line_no);
            }
            continue;
        }
        if (section == "trajectories") {
            const std::size_t colon = line.find(':');
            if (colon == std::string::npos) {
                throw ConfigError("trajectories", "expected 'node_id: (t,x,y);…'", line_no);
            }
            const std::string key = "trajectories." + trim(line.substr(0, colon));
            const NodeId id =
                static_cast<NodeId>(parse_int(key, trim(line.substr(0, colon)), line_no));
            Trajectory tr;
            for (const std::string& wp : split(line.substr(colon + 1), ';')) {
                const std::vector<double> v = parse_tuple(key, wp, line_no, 3);
                try {
                    tr.add(SimTime::from_seconds(v[0]), {v[1], v[2]});
                } catch (const InvariantViolation& e) {
                    throw ConfigError(key, e.what(), line_no);
                }
            }
            sc.explicit_trajectories[id] = std::move(tr);
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(section.empty() ? "config" : section,
                              "expected 'key = value'", line_no);
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string path = section + "." + key;

        if (section == "scenario") {
            if (key == "name") {
                sc.name = value;
            } else if (key == "seed") {
                sc.seed = static_cast<std::uint64_t>(parse_int(path, value, line_no));
            } else if (key == "duration_s") {
                sc.duration_s = parse_double(path, value, line_no);
            } else if (key == "protocol") {
                sc.protocol = value;
                protocol_set = true;
            } else {
                throw ConfigError(path, "unknown key", line_no);
            }
        } else if (section == "radio") {
            if (key == "range_m") {
                sc.radio.range_m = parse_double(path, value, line_no);
            } else if (key == "data_rate_bps") {
                sc.radio.data_rate_bps = parse_int(path, value, line_no);
            } else if (key == "refresh_interval_s") {
                sc.radio.refresh_interval_s = parse_double(path, value, line_no);
            } else {
                throw ConfigError(path, "unknown key", line_no);
            }
        } else if (section == "nodes") {
            if (key == "count") {
                sc.node_count = static_cast<int>(parse_int(path, value, line_no));
            } else if (key == "placement") {
                if (value == "two_clouds") {
                    sc.placement.kind = PlacementSpec::Kind::TwoClouds;
                } else if (value == "explicit") {
                    sc.placement.kind = PlacementSpec::Kind::Explicit;
                } else if (value == "random_box") {
                    sc.placement.kind = PlacementSpec::Kind::RandomBox;
                } else {
                    throw ConfigError(path, "unknown placement '" + value + "'", line_no);
                }
            } else if (key == "per_side") {
                sc.placement.per_side = static_cast<int>(parse_int(path, value, line_no));
            } else if (key == "cloud_offset_m") {
                sc.placement.cloud_offset_m = parse_double(path, value, line_no);
            } else if (key == "cloud_extent_m") {
                sc.placement.cloud_extent_m = parse_double(path, value, line_no);
            } else if (key == "box_m") {
                sc.placement.box_m = parse_double(path, value, line_no);
            } else if (key == "positions") {
                sc.placement.coords.clear();
                for (const std::string& p : split(value, ';')) {
                    const std::vector<double> v = parse_tuple(path, p, line_no, 2);
                    sc.placement.coords.push_back({v[0], v[1]});
                }
            } else {
                throw ConfigError(path, "unknown key", line_no);
            }
        } else if (section == "core") {
            if (key == "hop_limit") {
                sc.core.hop_limit = static_cast<int>(parse_int(path, value, line_no));
            } else if (key == "buffer_capacity") {
                sc.core.buffer_capacity = static_cast<int>(parse_int(path, value, line_no));
            } else if (key == "buffer_timeout_s") {
                sc.core.buffer_timeout_s = parse_double(path, value, line_no);
            } else {
                throw ConfigError(path, "unknown key", line_no);
            }
        } else if (section == "aodv") {
            if (key == "active_route_timeout_s") {
                sc.aodv.active_route_timeout_s = parse_double(path, value, line_no);
            } else if (key == "hello_interval_s") {
                sc.aodv.hello_interval_s = parse_double(path, value, line_no);
            } else if (key == "gratuitous_reply") {
                sc.aodv.gratuitous_reply = parse_bool(path, value, line_no);
            } else if (key == "rreq_retries") {
                sc.aodv.rreq_retries = static_cast<int>(parse_int(path, value, line_no));
            } else {
                throw ConfigError(path, "unknown key", line_no);
            }
        } else if (section == "dsr") {
            if (key == "cache_capacity") {
                sc.dsr.cache_capacity = static_cast<int>(parse_int(path, value, line_no));
            } else if (key == "request_retries") {
                sc.dsr.request_retries = static_cast<int>(parse_int(path, value, line_no));
            } else {
                throw ConfigError(path, "unknown key", line_no);
            }
        } else if (section == "tora") {
            if (key == "query_retries") {
                sc.tora.query_retries = static_cast<int>(parse_int(path, value, line_no));
            } else {
                throw ConfigError(path, "unknown key", line_no);
            }
        } else if (section == "sessions") {
            const std::vector<std::string> f = split(value, ',');
            SessionSpec s;
            if (key == "cbr") {
                if (f.size() != 6) {
                    throw ConfigError(path,
                                      "expected src,dst,start_s,stop_s,packet_bits,interval_s",
                                      line_no);
                }
                s.kind = SessionSpec::Kind::Cbr;
                s.src = static_cast<NodeId>(parse_int(path, f[0], line_no));
                s.dst = static_cast<NodeId>(parse_int(path, f[1], line_no));
                s.start_s = parse_double(path, f[2], line_no);
                s.stop_s = parse_double(path, f[3], line_no);
                s.packet_bits = parse_int(path, f[4], line_no);
                s.interval_s = parse_double(path, f[5], line_no);
            } else if (key == "file") {
                if (f.size() != 5) {
                    throw ConfigError(path, "expected src,dst,start_s,file_bits,packet_bits",
                                      line_no);
                }
                s.kind = SessionSpec::Kind::FileTransfer;
                s.src = static_cast<NodeId>(parse_int(path, f[0], line_no));
                s.dst = static_cast<NodeId>(parse_int(path, f[1], line_no));
                s.start_s = parse_double(path, f[2], line_no);
                s.file_bits = parse_int(path, f[3], line_no);
                s.packet_bits = parse_int(path, f[4], line_no);
            } else {
                throw ConfigError(path, "unknown key", line_no);
            }
            sc.sessions.push_back(s);
        } else {
            throw ConfigError(path, "key outside any section", line_no);
        }
    }

    if (!protocol_set) {
        throw ConfigError("scenario.protocol", "missing protocol");
    }
    validate_scenario(sc);
    return sc;
}

inline Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("file", "cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str());
}

inline void validate_scenario(Scenario& sc) {
    if (sc.protocol != "aodv" && sc.protocol != "dsr" && sc.protocol != "tora") {
        throw ConfigError("scenario.protocol", "unknown protocol '" + sc.protocol + "'");
    }
    if (sc.duration_s <= 0) {
        throw ConfigError("scenario.duration_s", "duration must be positive");
    }
    if (sc.radio.range_m <= 0 || sc.radio.data_rate_bps <= 0 ||
        sc.radio.refresh_interval_s <= 0) {
        throw ConfigError("radio", "range, data rate, and refresh interval must be positive");
    }
    if (sc.placement.kind == PlacementSpec::Kind::Explicit) {
        if (sc.node_count == 0) {
            sc.node_count = static_cast<int>(sc.placement.coords.size());
        }
        if (sc.node_count != static_cast<int>(sc.placement.coords.size())) {
            throw ConfigError("nodes.positions", "position count does not match nodes.count");
        }
    }
    if (sc.placement.kind == PlacementSpec::Kind::TwoClouds) {
        if (sc.placement.per_side <= 0) {
            throw ConfigError("nodes.per_side", "two_clouds placement needs per_side > 0");
        }
        const int expected = 2 * sc.placement.per_side + 1;
        if (sc.node_count == 0) {
            sc.node_count = expected;
        }
        if (sc.node_count != expected) {
            throw ConfigError("nodes.count", "two_clouds with per_side " +
                                                 std::to_string(sc.placement.per_side) +
                                                 " implies count " + std::to_string(expected));
        }
    }
    if (sc.node_count <= 0) {
        throw ConfigError("nodes.count", "node count must be positive");
    }
    for (const auto& [id, tr] : sc.explicit_trajectories) {
        if (id < 0 || id >= sc.node_count) {
            throw ConfigError("trajectories." + std::to_string(id), "node id out of range");
        }
        if (tr.empty()) {
            throw ConfigError("trajectories." + std::to_string(id), "empty trajectory");
        }
    }
    for (std::size_t i = 0; i < sc.sessions.size(); ++i) {
        const SessionSpec& s = sc.sessions[i];
        const std::string path = "sessions[" + std::to_string(i) + "]";
        if (s.src < 0 || s.src >= sc.node_count || s.dst < 0 || s.dst >= sc.node_count) {
            throw ConfigError(path, "session endpoint out of range");
        }
        if (s.packet_bits <= kDataHeaderBits) {
            throw ConfigError(path, "packet_bits must exceed the " +
                                        std::to_string(kDataHeaderBits) + "-bit data header");
        }
        if (s.kind == SessionSpec::Kind::Cbr) {
            if (s.interval_s <= 0) {
                throw ConfigError(path, "interval_s must be positive");
            }
            if (s.start_s >= s.stop_s) {
                throw ConfigError(path, "start_s must precede stop_s");
            }
        } else {
            if (s.file_bits <= 0) {
                throw ConfigError(path, "file_bits must be positive");
            }
            const std::int64_t remainder = s.file_bits % s.packet_bits;
            if (remainder != 0 && remainder <= kDataHeaderBits) {
                throw ConfigError(path, "final transfer packet would not fit its header");
            }
        }
    }
}

// ---- presets ----

namespace detail {

inline Scenario perf_preset(const std::string& name, const std::string& protocol,
                            int per_side) {
    Scenario sc;
    sc.name = name;
    sc.protocol = protocol;
    sc.duration_s = 1800.0;
    sc.radio = RadioConfig{1500.0, 1'000'000, 10.0};
    sc.placement.kind = PlacementSpec::Kind::TwoClouds;
    sc.placement.per_side = per_side;
    sc.placement.cloud_offset_m = 1000.0;
    sc.placement.cloud_extent_m = 800.0;
    sc.node_count = 2 * per_side + 1;
    sc.mobility.kind = MobilitySpec::Kind::Sweep;
    sc.mobility.speed_mps = 5.0;
    sc.mobility.amplitude_m = 250.0;
    sc.auto_perf_traffic = true;
    sc.auto_packet_bits = 1024;
    sc.auto_interval_s = 1.0;
    return sc;
}

inline Scenario mobility_preset(const std::string& name, const std::string& protocol,
                                double range_m, double refresh_s) {
    Scenario sc;
    sc.name = name;
    sc.protocol = protocol;
    sc.duration_s = 1800.0;
    sc.radio = RadioConfig{range_m, 1'000'000, refresh_s};
    sc.placement.kind = PlacementSpec::Kind::RandomBox;
    sc.placement.box_m = 2000.0;
    sc.node_count = 20;
    sc.mobility.kind = MobilitySpec::Kind::Bounce;
    sc.mobility.speed_mps = 5.0;
    sc.mobility.box_m = 2000.0;
    sc.auto_pair_traffic = true;
    sc.auto_packet_bits = 1024;
    sc.auto_interval_s = 1.0;
    return sc;
}

}  // namespace detail

inline const std::vector<std::pair<std::string, std::string>>& preset_catalog() {
    static const std::vector<std::pair<std::string, std::string>> catalog = {
        {"dsr40", "DSR, 40 workstations + server in two clouds, uniform cbr load"},
        {"dsr80", "DSR, 80 workstations + server in two clouds, uniform cbr load"},
        {"tora40", "TORA, 40 workstations + server in two clouds, uniform cbr load"},
        {"tora80", "TORA, 80 workstations + server in two clouds, uniform cbr load"},
        {"aodv40_default", "AODV, 40 workstations, default timeout, no gratuitous replies"},
        {"aodv40_lt", "AODV, 40 workstations, light traffic, 30 s timeout, gratuitous replies"},
        {"mob_dsr_500", "DSR, 20 roaming nodes, 500 m reception range, 10 s refresh"},
        {"mob_dsr_1000", "DSR, 20 roaming nodes, 1000 m reception range, 10 s refresh"},
        {"mob_aodv_500", "AODV, 20 roaming nodes, 500 m reception range, 5 s refresh"},
        {"mob_aodv_1000", "AODV, 20 roaming nodes, 1000 m reception range, 5 s refresh"},
        {"mob_aodv_1500", "AODV, 20 roaming nodes, 1500 m reception range, 5 s refresh"},
    };
    return catalog;
}

inline bool is_preset(const std::string& name) {
    for (const auto& [n, d] : preset_catalog()) {
        if (n == name) {
            return true;
        }
    }
    return false;
}

inline Scenario make_preset(const std::string& name) {
    using detail::mobility_preset;
    using detail::perf_preset;
    Scenario sc;
    if (name == "dsr40") {
        sc = perf_preset(name, "dsr", 20);
    } else if (name == "dsr80") {
        sc = perf_preset(name, "dsr", 40);
    } else if (name == "tora40") {
        sc = perf_preset(name, "tora", 20);
    } else if (name == "tora80") {
        sc = perf_preset(name, "tora", 40);
    } else if (name == "aodv40_default") {
        sc = perf_preset(name, "aodv", 20);
        sc.aodv.active_route_timeout_s = 3.0;
        sc.aodv.gratuitous_reply = false;
    } else if (name == "aodv40_lt") {
        // Light-traffic variant: half the sessions (peer flow only), long
        // route lifetimes, and gratuitous replies quenching floods early.
        sc = perf_preset(name, "aodv", 20);
        sc.aodv.active_route_timeout_s = 30.0;
        sc.aodv.gratuitous_reply = true;
        sc.auto_perf_server_flow = false;
    } else if (name == "mob_dsr_500") {
        sc = mobility_preset(name, "dsr", 500.0, 10.0);
    } else if (name == "mob_dsr_1000") {
        sc = mobility_preset(name, "dsr", 1000.0, 10.0);
    } else if (name == "mob_aodv_500") {
        sc = mobility_preset(name, "aodv", 500.0, 5.0);
    } else if (name == "mob_aodv_1000") {
        sc = mobility_preset(name, "aodv", 1000.0, 5.0);
    } else if (name == "mob_aodv_1500") {
        sc = mobility_preset(name, "aodv", 1500.0, 5.0);
    } else {
        throw ConfigError("preset", "unknown preset '" + name + "'");
    }
    validate_scenario(sc);
    return sc;
}

}  // namespace manetsim
