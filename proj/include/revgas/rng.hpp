#pragma once

#include <cmath>
#include <cstdint>

namespace revgas {

// PCG32 (O'Neill), fixed algorithm so runs reproduce across platforms.
class Pcg32 {
public:
    Pcg32(std::uint64_t seed, std::uint64_t stream) {
        state_ = 0;
        inc_ = (stream << 1u) | 1u;
        next_u32();
        state_ += seed;
        next_u32();
    }

    std::uint32_t next_u32() {
        std::uint64_t old = state_;
        state_ = old * 6364136223846793005ULL + inc_;
        std::uint32_t xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
        std::uint32_t rot = static_cast<std::uint32_t>(old >> 59u);
        return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
    }

    // uniform in [0, 1)
    double uniform01() {
        return static_cast<double>(next_u32()) * 0x1p-32;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // standard normal via Box-Muller, one spare cached
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1, u2;
        do {
            u1 = uniform01();
        } while (u1 <= 0.0);
        u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::uint64_t state_ = 0;
    std::uint64_t inc_ = 1;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Fixed per-purpose stream ids; adding a consumer never shifts existing streams.
enum class RngStream : std::uint64_t {
    Placement = 1,
    Velocities = 2,
    KickDirections = 3,
};

inline Pcg32 make_rng(std::uint64_t seed, RngStream stream) {
    std::uint64_t s = static_cast<std::uint64_t>(stream);
    return Pcg32(splitmix64(seed ^ splitmix64(s)), splitmix64(s * 0x632be59bd9b4e019ULL + 0xc90fdaa22168c234ULL));
}

} // namespace revgas
