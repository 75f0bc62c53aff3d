#pragma once

#include <cmath>
#include <cstdint>

namespace sram {

// splitmix64 step; used only to derive well-separated xoshiro states.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Documented stream-splitting function: the splitmix base state for a given
// (run seed, stream index). Recorded per experiment in TTF batch exports.
inline uint64_t stream_seed(uint64_t seed, uint64_t stream_index) {
    return seed + 0x9E3779B97F4A7C15ULL * (stream_index + 1);
}

// xoshiro256++ by Blackman & Vigna (public domain reference algorithm).
class Xoshiro256pp {
public:
    Xoshiro256pp() : Xoshiro256pp(0xDEADBEEFCAFEF00DULL, 0) {}

    // Independent stream for (seed, stream_index): each stream jumps its
    // splitmix base so streams are decorrelated regardless of index spacing.
    Xoshiro256pp(uint64_t seed, uint64_t stream_index) {
        uint64_t base = stream_seed(seed, stream_index);
        s_[0] = splitmix64(base);
        s_[1] = splitmix64(base);
        s_[2] = splitmix64(base);
        s_[3] = splitmix64(base);
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;  // forbidden state
    }

    uint64_t next() {
        uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in (0, 1]: top 53 bits, never exactly 0 (safe for log()).
    double uniform() {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    uint64_t s_[4];
};

// Box-Muller pair cache on top of the generator.
class NormalSampler {
public:
    explicit NormalSampler(Xoshiro256pp rng) : rng_(rng) {}
    NormalSampler(uint64_t seed, uint64_t stream_index)
        : rng_(seed, stream_index) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = rng_.uniform();
        double u2 = rng_.uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    Xoshiro256pp& raw() { return rng_; }

private:
    Xoshiro256pp rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}
