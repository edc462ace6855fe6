#pragma once

#include <cmath>
#include <cstdint>

#include "ersa/geometry.hpp"

// Counter-based variate generation: every variate is a pure function of
// (seed, stream, site, salt), so a fixed (seed, stream) reproduces the
// same arrival field no matter how trials are scheduled across workers.

namespace ersa {

namespace detail {

inline uint64_t splitmix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline uint64_t zigzag32(int v) {
    return static_cast<uint64_t>((static_cast<uint32_t>(v) << 1) ^ static_cast<uint32_t>(v >> 31));
}

}  // namespace detail

enum class Salt : uint64_t {
    ArrivalExp = 1,   // standard exponential at an octagon
    DelayUniform = 2, // U_x deciding a zero arrival time at an odd site
    DiamondUniform = 3,
    AuxExp = 4,       // extra delay for even-site pivotality
    Generic = 5,
};

struct RngKey {
    uint64_t state;

    RngKey(uint64_t seed, uint64_t stream) {
        state = detail::splitmix64(seed ^ detail::splitmix64(stream * 0xd1342543de82ef95ULL + 1));
    }

    uint64_t bits(const Site& s, Salt salt, uint64_t extra = 0) const {
        uint64_t k = state;
        k = detail::splitmix64(k ^ (detail::zigzag32(s.x) | (detail::zigzag32(s.y) << 32)));
        k = detail::splitmix64(k ^ (static_cast<uint64_t>(salt) << 8) ^
                               (s.kind == SiteKind::Diamond ? 0x80ULL : 0x0ULL));
        if (extra) k = detail::splitmix64(k ^ extra);
        return k;
    }

    // uniform on the open interval (0,1)
    double uniform(const Site& s, Salt salt, uint64_t extra = 0) const {
        return (static_cast<double>(bits(s, salt, extra) >> 11) + 0.5) * 0x1.0p-53;
    }

    // standard exponential, strictly positive
    double std_exponential(const Site& s, Salt salt, uint64_t extra = 0) const {
        return -std::log(uniform(s, salt, extra));
    }
};

}  // namespace ersa
