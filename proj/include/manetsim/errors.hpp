#pragma once

#include <stdexcept>
#include <string>

namespace manetsim {

// Raised when an event is scheduled before the current simulation clock.
class SchedulingInPast : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Raised when a scenario file or scenario value is invalid. Carries the
// offending key path and, when parsed from a file, the line number.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key_path, std::string message, int line = 0)
        : std::runtime_error(format(key_path, message, line)),
          key_path_(std::move(key_path)),
          line_(line) {}

    const std::string& key_path() const noexcept { return key_path_; }
    int line() const noexcept { return line_; }

private:
    static std::string format(const std::string& key, const std::string& msg, int line) {
        std::string out = "config error";
        if (line > 0) {
            out += " (line " + std::to_string(line) + ")";
        }
        if (!key.empty()) {
            out += " at '" + key + "'";
        }
        out += ": " + msg;
        return out;
    }

    std::string key_path_;
    int line_ = 0;
};

// Raised when a run violates one of the simulator's internal invariants
// (packet conservation, loop freedom in static topologies, DAG acyclicity).
class InvariantViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A fault raised from an event handler, annotated with event context.
class SimulationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace manetsim
