#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace gcf {

// One exception type for all engine failures; `kind` carries the stable
// machine-readable tag the CLI and tests match on.
class FlowError : public std::runtime_error {
public:
    FlowError(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

[[noreturn]] inline void fail(const char* kind, const std::string& msg) {
    throw FlowError(kind, msg);
}

inline constexpr double pi = 3.14159265358979323846;

// |S^n| for the dimensions this lab runs.
inline double sphere_area(int n) {
    switch (n) {
        case 1: return 2.0 * pi;
        case 2: return 4.0 * pi;
        case 3: return 2.0 * pi * pi;
        default: fail("UnsupportedDimension", "sphere_area n=" + std::to_string(n));
    }
}

// splitmix64: deterministic seed expansion for perturbation amplitudes.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline double uniform01(std::uint64_t& state) {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

}  // namespace gcf
