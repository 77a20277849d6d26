#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>

namespace manetsim {

// Simulation time as a signed count of nanoseconds. All clock arithmetic is
// integral so that identical scenarios produce identical event orderings and
// identical CSV output on every platform.
class SimTime {
public:
    constexpr SimTime() = default;

    static constexpr SimTime zero() { return SimTime{}; }
    static constexpr SimTime from_ns(std::int64_t ns) { return SimTime{ns}; }

    // Rounds to the nearest nanosecond.
    static SimTime from_seconds(double s) {
        return SimTime{static_cast<std::int64_t>(std::llround(s * 1e9))};
    }

    constexpr std::int64_t ns() const { return ns_; }
    double seconds() const { return static_cast<double>(ns_) * 1e-9; }

    // Fixed-point decimal rendering, e.g. "12.345678900". Digits beyond the
    // requested precision are truncated, never rounded, so the text is a
    // deterministic function of the tick count.
    std::string to_string(int decimals = 9) const {
        std::int64_t ns = ns_;
        std::string sign;
        if (ns < 0) {
            sign = "-";
            ns = -ns;
        }
        std::string whole = std::to_string(ns / 1'000'000'000);
        std::string frac = std::to_string(ns % 1'000'000'000);
        frac.insert(frac.begin(), 9 - frac.size(), '0');
        if (decimals <= 0) {
            return sign + whole;
        }
        if (decimals < 9) {
            frac.resize(static_cast<std::size_t>(decimals));
        }
        return sign + whole + "." + frac;
    }

    friend constexpr SimTime operator+(SimTime a, SimTime b) { return SimTime{a.ns_ + b.ns_}; }
    friend constexpr SimTime operator-(SimTime a, SimTime b) { return SimTime{a.ns_ - b.ns_}; }
    constexpr SimTime& operator+=(SimTime o) {
        ns_ += o.ns_;
        return *this;
    }
    friend constexpr SimTime operator*(SimTime a, std::int64_t k) { return SimTime{a.ns_ * k}; }

    friend constexpr auto operator<=>(SimTime, SimTime) = default;

private:
    constexpr explicit SimTime(std::int64_t ns) : ns_(ns) {}

    std::int64_t ns_ = 0;
};

inline SimTime seconds(double s) { return SimTime::from_seconds(s); }
inline constexpr SimTime milliseconds(std::int64_t ms) { return SimTime::from_ns(ms * 1'000'000); }

// Frame serialization time: size_bits / rate_bps, rounded to the nearest
// nanosecond. This is the only per-hop delay in the radio model.
inline SimTime serialization_delay(std::int64_t size_bits, std::int64_t rate_bps) {
    const std::int64_t ns = (size_bits * 1'000'000'000 + rate_bps / 2) / rate_bps;
    return SimTime::from_ns(ns);
}

}  // namespace manetsim
